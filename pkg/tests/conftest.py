"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the package's log/Zech tables: they
multiply polynomials coefficient by coefficient and reduce by long division,
and rank F_q matrices by plain elimination on Python lists.
"""

from __future__ import annotations

import random

import pytest

from rankmetric.gf import default_field, make_field

MOD_Q3_M5 = (1, 1, 2, 0, 0, 1)        # x^5 + 2x^2 + x + 1
MOD_Q3_M4 = (2, 0, 0, 2, 1)           # x^4 - x^3 - 1
MOD_Q5_M4 = (3, 1, 1, 1, 1)           # x^4 + x^3 + x^2 + x + 3
MOD_Q2_M8 = (1, 0, 1, 1, 1, 0, 0, 0, 1)  # x^8 + x^4 + x^3 + x^2 + 1


def digits(value: int, q: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        value, d = divmod(value, q)
        out.append(d)
    return out


def undigits(ds, q: int) -> int:
    return sum(int(d) * q**i for i, d in enumerate(ds))


def poly_mulmod(a: int, b: int, q: int, modulus) -> int:
    """Schoolbook product of two canonical elements, reduced by long division."""
    m = len(modulus) - 1
    pa, pb = digits(a, q, m), digits(b, q, m)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(pa):
        for j, y in enumerate(pb):
            prod[i + j] = (prod[i + j] + x * y) % q
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg]
        if c:
            for t in range(m + 1):
                prod[deg - m + t] = (prod[deg - m + t] - c * modulus[t]) % q
    return undigits(prod[:m], q)


def poly_pow(a: int, e: int, q: int, modulus) -> int:
    out = 1
    for _ in range(e):
        out = poly_mulmod(out, a, q, modulus)
    return out


def rank_mod_q(rows, q: int) -> int:
    """Plain Gaussian elimination over F_q on a list of lists."""
    a = [[x % q for x in r] for r in rows]
    if not a:
        return 0
    r = 0
    for c in range(len(a[0])):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        iv = pow(a[r][c], -1, q)
        a[r] = [x * iv % q for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[r])]
        r += 1
    return r


def rank_q_oracle(v, q: int, m: int) -> int:
    """F_q-rank of the m x n expansion of an F_{q^m}-vector."""
    cols = [digits(x, q, m) for x in v]
    return rank_mod_q([list(r) for r in zip(*cols)], q) if cols else 0


@pytest.fixture(scope="session")
def f35():
    return make_field(3, 5, MOD_Q3_M5)


@pytest.fixture(scope="session")
def f34():
    return make_field(3, 4, MOD_Q3_M4)


@pytest.fixture(scope="session")
def f54():
    return make_field(5, 4, MOD_Q5_M4)


@pytest.fixture(scope="session")
def f28():
    return make_field(2, 8, MOD_Q2_M8)


@pytest.fixture(scope="session")
def f24():
    return default_field(2, 4)


@pytest.fixture
def rng():
    return random.Random(20240601)


# -- acceptance summary ---------------------------------------------------------------
#
# Tests marked ``@pytest.mark.criterion(n)`` report into one PASS/FAIL line per
# acceptance criterion, printed in the terminal summary.

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion n from the spec")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when == "teardown":
        return
    entry = _CRITERIA.setdefault(marker.args[0], {"passed": 0, "failed": 0, "seconds": 0.0, "notes": []})
    entry["seconds"] += rep.duration  # setup time covers the shared corpora
    if rep.when == "call" or rep.failed:
        entry["failed" if rep.failed else "passed"] += 1
        entry["notes"].extend(getattr(item, "_criterion_notes", []))


@pytest.fixture
def note(request):
    """Attach a short measured fact to the criterion's summary line."""
    notes = []
    request.node._criterion_notes = notes
    return notes.append


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "PASS" if e["failed"] == 0 else "FAIL"
        detail = "; ".join(e["notes"])
        terminalreporter.write_line(
            f"CRITERION {n}: {status} ({e['passed']} passed, {e['failed']} failed, {e['seconds']:.1f}s)"
            + (f" -- {detail}" if detail else ""))
