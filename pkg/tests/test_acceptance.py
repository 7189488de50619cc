"""Acceptance criteria 1-8 of the specification.

Each test carries ``@pytest.mark.criterion(n)``; the terminal summary prints
one PASS/FAIL line per criterion (see conftest.py).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import pytest

from conftest import MOD_Q3_M5
from rankmetric.codes import RankCode, dual, frobenius_code, gabidulin, min_rank_distance
from rankmetric.constructions import CONSTRUCTION4, builtin_examples, construct4, validate_gamma
from rankmetric.criteria import (
    admissible_steps,
    detect_gabidulin,
    is_mrd_distance,
    is_mrd_minor,
    is_mrd_subspace,
    replay_witness,
)
from rankmetric.gf import default_field, make_field
from rankmetric.isometry import apply, iter_random_isometries
from rankmetric.linalg import Matrix, frobenius_matrix, rank, rank_q
from rankmetric.search import MRD_NON_GABIDULIN, SearchSpace, run_search


@dataclass
class Checked:
    label: str
    code: RankCode
    distance: bool
    subspace: bool
    minor: bool
    min_distance: int | None = None
    gabidulin: bool | None = None
    valid_steps: tuple = ()

    @property
    def agree(self) -> bool:
        return self.distance == self.subspace == self.minor

    @property
    def is_mrd(self) -> bool:
        return self.minor


def check_code(label: str, code: RankCode, with_distance: bool = False) -> Checked:
    vd, vs, vm = is_mrd_distance(code), is_mrd_subspace(code), is_mrd_minor(code)
    for v in (vd, vs, vm):
        if not v.is_mrd:
            assert replay_witness(code, v), (label, v.method)
    out = Checked(label, code, vd.is_mrd, vs.is_mrd, vm.is_mrd)
    if with_distance:
        out.min_distance = min_rank_distance(code)
    if vm.is_mrd and code.k < code.n:
        g = detect_gabidulin(code, assume_mrd=True)
        out.gabidulin, out.valid_steps = g.is_generalized_gabidulin, g.valid_steps
    return out


def powers(F, n):
    return [F.pow(F.alpha, j) for j in range(n)]


# -- shared corpora -----------------------------------------------------------------------

@pytest.fixture(scope="module")
def gabidulin_sweep():
    """Criterion 1 corpus: every (q, m, n, k, s) of the sweep, checked by every method."""
    t0 = time.perf_counter()
    rows = []
    for q, m in [(2, 4), (3, 4), (3, 5)]:
        F = default_field(q, m)
        for n in range(2, m + 1):
            for k in range(1, n):
                for s in admissible_steps(m):
                    code = gabidulin(F, powers(F, n), k, s)
                    rows.append(((q, m, n, k, s), check_code(f"gab q={q} m={m} n={n} k={k} s={s}", code, True)))
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="module")
def random_corpus():
    """Criterion 4 corpus: 200 seeded random codes with q=3, m=4, n=4, k=2."""
    F = default_field(3, 4)
    rng = random.Random(4)
    out = []
    t0 = time.perf_counter()
    while len(out) < 200:
        G = [[rng.randrange(F.order) for _ in range(4)] for _ in range(2)]
        if rank(Matrix.from_rows(F, G)) < 2:
            continue
        out.append(check_code(f"random #{len(out)}", RankCode(F, G)))
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def builtin_checked():
    t0 = time.perf_counter()
    out = [(ex, check_code(ex.name, ex.code, True)) for ex in builtin_examples()]
    return out, time.perf_counter() - t0


# -- criterion 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_c1_gabidulin_sweep(gabidulin_sweep, note):
    rows, seconds = gabidulin_sweep
    for (q, m, n, k, s), c in rows:
        assert c.min_distance == n - k + 1, c.label
        assert c.distance and c.subspace and c.minor, c.label
        assert c.gabidulin is True and s in c.valid_steps, c.label
    assert seconds < 60
    note(f"{len(rows)} codes, d = n-k+1 and s in valid_steps for all, {seconds:.1f}s")


# -- criterion 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_c2_prop_q2_reproduction(note):
    F = default_field(2, 4)
    t0 = time.perf_counter()
    report = run_search(SearchSpace(F, 4, 2, mode="exhaustive"))
    seconds = time.perf_counter() - t0
    c = report.counts
    assert c["candidates_scanned"] == 38416
    assert c[MRD_NON_GABIDULIN] == 0
    assert seconds < 30
    note(f"scanned {c['candidates_scanned']}, mrd_gabidulin={c['mrd_gabidulin']}, "
         f"mrd_non_gabidulin={c[MRD_NON_GABIDULIN]}, {seconds:.1f}s")


# -- criterion 3 ---------------------------------------------------------------------------

@pytest.mark.criterion(3)
def test_c3_worked_examples(builtin_checked, note):
    rows, seconds = builtin_checked
    assert [ex.name for ex, _ in rows] == ["q3-m5", "q3-m4", "q5-m4", "q2-m8"]
    for ex, c in rows:
        assert c.distance and c.subspace and c.minor, ex.name
        assert c.min_distance == ex.code.n - ex.code.k + 1
        assert c.gabidulin is False and c.valid_steps == (), ex.name
    assert seconds < 30
    note(f"4 examples MRD x3 methods, non-Gabidulin, {seconds:.1f}s")


# -- criterion 4 ---------------------------------------------------------------------------

@pytest.mark.criterion(4)
def test_c4_criterion_equivalence(random_corpus, gabidulin_sweep, note):
    rand, seconds = random_corpus
    sweep = [c for _, c in gabidulin_sweep[0]]
    disagreements = [c.label for c in rand + sweep if not c.agree]
    assert disagreements == []
    n_mrd = sum(c.is_mrd for c in rand)
    assert 0 < n_mrd < len(rand)  # both verdicts are exercised
    assert seconds < 300
    note(f"{len(rand)} random ({n_mrd} MRD) + {len(sweep)} sweep codes, 0 disagreements, {seconds:.1f}s")


# -- criterion 5 ---------------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_c5_duality(random_corpus, gabidulin_sweep, builtin_checked, note):
    corpus = [c for _, c in gabidulin_sweep[0]] + random_corpus[0] + [c for _, c in builtin_checked[0]]
    t = time.perf_counter()
    mrd = [c for c in corpus if c.is_mrd]
    for c in mrd:
        d = dual(c.code)
        assert is_mrd_minor(d).is_mrd, c.label
        assert detect_gabidulin(d).is_generalized_gabidulin == c.gabidulin, c.label
    # the converse direction of Prop. dual1 on the non-MRD part of the corpus
    for c in corpus:
        if not c.is_mrd:
            assert not is_mrd_minor(dual(c.code)).is_mrd, c.label
    note(f"{len(mrd)} MRD codes: duals MRD with matching Gabidulin verdict, {time.perf_counter() - t:.1f}s")


# -- criterion 6 ---------------------------------------------------------------------------

LEMMA_FIELDS = [(2, 4), (3, 4), (3, 5), (2, 5), (5, 3), (2, 6)]


@pytest.mark.criterion(6)
def test_c6_lemma_help_fixed_points(note):
    rng = random.Random(61)
    for _ in range(200):
        q, m = rng.choice(LEMMA_FIELDS)
        F = default_field(q, m)
        s = rng.choice(admissible_steps(m))
        fixed = [a for a in F.elements() if F.frobenius(a, s) == a]
        assert len(fixed) == q and fixed == list(range(q))
    note("lem:help 200 trials")


@pytest.mark.criterion(6)
def test_c6_lemma_indep(note):
    rng = random.Random(62)
    for _ in range(200):
        q, m = rng.choice(LEMMA_FIELDS)
        F = default_field(q, m)
        n = rng.randrange(1, m + 1)
        v = [rng.randrange(F.order) for _ in range(n)]
        r = rank_q(F, v)
        s = rng.choice(admissible_steps(m))
        M = Matrix.from_rows(F, [[F.frobenius(x, i * s) for x in v] for i in range(r)], n)
        assert rank(M) == r
    note("lem:indep 200 trials")


@pytest.mark.criterion(6)
def test_c6_lemma_indep2(note):
    rng = random.Random(63)
    for _ in range(200):
        q, m = rng.choice(LEMMA_FIELDS)
        F = default_field(q, m)
        rows, cols = rng.randrange(1, 4), rng.randrange(1, m + 1)
        M = Matrix.from_rows(F, [[rng.randrange(F.order) for _ in range(cols)] for _ in range(rows)], cols)
        assert rank(frobenius_matrix(M, rng.randrange(1, m))) == rank(M)
    note("lem:indep2 200 trials")


@pytest.mark.criterion(6)
def test_c6_lemma_main_forward(note):
    rng = random.Random(64)
    trials = 0
    while trials < 200:
        q, m = rng.choice([(2, 4), (3, 4), (3, 5), (2, 5)])
        F = default_field(q, m)
        n = rng.randrange(2, m + 1)
        k = rng.randrange(1, n)
        G = [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        if rank(Matrix.from_rows(F, G)) < k:
            continue
        trials += 1
        c = RankCode(F, G)
        assert all(frobenius_code(c, s) == c for s in range(1, m))
        assert min_rank_distance(c) == 1
    note("lem:main 200 trials")


@pytest.mark.criterion(6)
def test_c6_isometry_invariance(builtin_checked, note):
    corpus = [(ex.name, c) for ex, c in builtin_checked[0]]
    for q, m in [(2, 4), (3, 4)]:
        F = default_field(q, m)
        gab = gabidulin(F, powers(F, 4), 2)
        corpus.append((f"gab q={q}", check_code("gab", gab, True)))
        non = RankCode(F, [[1, 0, 1, 1], [0, 1, F.alpha, F.pow(F.alpha, 2)]])
        corpus.append((f"non-mrd q={q}", check_code("non", non, True)))
    count = 0
    for name, c in corpus:
        for iso in iter_random_isometries(c.code.field, c.code.n, 600 + count, 50):
            img = apply(c.code, iso)
            assert img.k == c.code.k
            assert min_rank_distance(img) == c.min_distance, name
            assert is_mrd_minor(img).is_mrd == c.minor, name
            if c.minor:
                assert detect_gabidulin(img).is_generalized_gabidulin == c.gabidulin, name
            count += 1
    note(f"isometries: {len(corpus)} codes x 50")


# -- criterion 7 ---------------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_c7_trivial_dimensions_are_gabidulin(note):
    F = default_field(3, 4)
    rng = random.Random(7)
    mrd_seen = {1: 0, 3: 0}
    for trial in range(100):
        k = 1 if trial % 2 == 0 else 3
        while True:
            if k == 1:
                g = [rng.randrange(F.order) for _ in range(4)]
                if rank_q(F, g) == 4:
                    G = [g]
                    break
            else:
                G = [[rng.randrange(F.order) for _ in range(4)] for _ in range(3)]
                if rank(Matrix.from_rows(F, G)) == 3:
                    break
        c = RankCode(F, G)
        if is_mrd_minor(c).is_mrd:
            mrd_seen[k] += 1
            assert detect_gabidulin(c, assume_mrd=True).is_generalized_gabidulin
    assert mrd_seen[1] == 50 and mrd_seen[3] > 0
    note(f"100 trials; MRD and Gabidulin: k=1 {mrd_seen[1]}/50, k=3 {mrd_seen[3]}/50")


# -- criterion 8 ---------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_c8_gamma_exhaustion(note):
    F = make_field(3, 5, MOD_Q3_M5)
    r1 = validate_gamma(CONSTRUCTION4, F, 1)
    r2 = validate_gamma(CONSTRUCTION4, F, 2)
    assert not r1.passed and r1.qnr is False
    assert any("quadratic residue" in reason for reason in r1.reasons)
    assert r2.passed
    for g, r in ((1, r1), (2, r2)):
        if r.passed:
            c = check_code(f"gamma={g}", construct4(F, g), True)
            assert c.distance and c.subspace and c.minor and c.min_distance == 3
            assert c.gabidulin is False
    note("gamma=1 rejected (QR), gamma=2 accepted and verified")
