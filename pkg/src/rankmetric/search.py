"""Search over systematic generators ``[I_k | X]`` with entries of X outside F_q.

Every MRD code has a unique systematic generator whose non-identity block
avoids F_q, so enumerating such ``X`` visits each MRD code exactly once.
Candidates are indexed lexicographically: the index written in base
``q^m - q`` (most significant digit first) gives the entries of ``X``
row-major, digit ``d`` standing for the element ``q + d``.  Shard ``i`` of
``T`` holds the indices congruent to ``i`` mod ``T``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .codes import RankCode, code_from_json, code_to_json
from .criteria import MrdVerdict, GabidulinVerdict, detect_gabidulin, is_mrd_minor
from .errors import BadShard, BudgetExceeded, EntryInBaseField, FormatError
from .gf import FieldSpec

SHARD_BUDGET = 1 << 32

NON_MRD = "non_mrd"
MRD_GABIDULIN = "mrd_gabidulin"
MRD_NON_GABIDULIN = "mrd_non_gabidulin"
LABELS = (NON_MRD, MRD_GABIDULIN, MRD_NON_GABIDULIN)


@dataclass
class Classification:
    label: str
    code: RankCode
    mrd: MrdVerdict
    gabidulin: GabidulinVerdict | None

    def to_json(self) -> dict:
        return {
            "classification": self.label,
            "code": code_to_json(self.code),
            "mrd": self.mrd.to_json(),
            "gabidulin": None if self.gabidulin is None else self.gabidulin.to_json(),
        }


def systematic_code(field: FieldSpec, n: int, k: int, X: Sequence[Sequence[int]]) -> RankCode:
    rows = [[1 if j == i else 0 for j in range(k)] + list(X[i]) for i in range(k)]
    return RankCode(field, rows)


def classify_candidate(field: FieldSpec, n: int, k: int, X: Sequence[Sequence[int]]) -> Classification:
    """Minor criterion first (cheap early exit), then the Frobenius test if MRD."""
    X = [list(map(int, r)) for r in X]
    if len(X) != k or any(len(r) != n - k for r in X):
        raise ValueError(f"X must be {k} x {n - k}")
    for i, r in enumerate(X):
        for j, x in enumerate(r):
            if not 0 <= x < field.order:
                raise ValueError(f"X[{i}][{j}] = {x} is not a field element")
            if field.in_base_field(x):
                raise EntryInBaseField(f"X[{i}][{j}] = {x} lies in F_{field.q}")
    code = systematic_code(field, n, k, X)
    mrd = is_mrd_minor(code)
    if not mrd.is_mrd:
        return Classification(NON_MRD, code, mrd, None)
    gab = detect_gabidulin(code, assume_mrd=True)
    return Classification(MRD_GABIDULIN if gab.is_generalized_gabidulin else MRD_NON_GABIDULIN, code, mrd, gab)


# -- search space ---------------------------------------------------------------------

@dataclass(frozen=True)
class SearchSpace:
    field: FieldSpec
    n: int
    k: int
    mode: str = "exhaustive"
    seed: int | None = None
    sample_count: int = 0
    shard: tuple[int, int] = (0, 1)
    max_exemplars: int = 10
    include: tuple[tuple[tuple[int, ...], ...], ...] = ()

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 1 <= self.k < self.n <= self.field.m:
            raise ValueError(f"need 1 <= k < n <= m, got k={self.k}, n={self.n}, m={self.field.m}")
        i, T = self.shard
        if T < 1 or not 0 <= i < T:
            raise BadShard(f"shard {i}/{T}: need total >= 1 and 0 <= index < total")
        if self.mode == "random" and self.seed is None:
            raise ValueError("random mode needs a seed")
        if self.sample_count < 0:
            raise ValueError("sample_count must be non-negative")

    @property
    def radix(self) -> int:
        return self.field.order - self.field.q

    @property
    def cells(self) -> int:
        return self.k * (self.n - self.k)

    @property
    def cell_count(self) -> int:
        return self.radix ** self.cells

    def candidate(self, index: int) -> tuple[tuple[int, ...], ...]:
        """``X`` for a lexicographic candidate index."""
        digits = []
        for _ in range(self.cells):
            index, d = divmod(index, self.radix)
            digits.append(d)
        entries = [self.field.q + d for d in reversed(digits)]
        w = self.n - self.k
        return tuple(tuple(entries[i * w:(i + 1) * w]) for i in range(self.k))

    def candidate_index(self, X) -> int:
        idx = 0
        for r in X:
            for x in r:
                idx = idx * self.radix + (x - self.field.q)
        return idx

    def with_shard(self, index: int, total: int) -> "SearchSpace":
        return SearchSpace(self.field, self.n, self.k, self.mode, self.seed, self.sample_count,
                           (index, total), self.max_exemplars, self.include)

    def shard_size(self) -> int:
        i, T = self.shard
        N = self.cell_count if self.mode == "exhaustive" else self.sample_count
        return max(0, (N - i + T - 1) // T)

    def parameters(self) -> dict:
        return {
            "q": self.field.q,
            "m": self.field.m,
            "modulus": list(self.field.modulus),
            "n": self.n,
            "k": self.k,
            "mode": self.mode,
            "seed": self.seed,
            "samples": self.sample_count if self.mode == "random" else None,
            "cell_count": self.cell_count,
        }


# -- report ---------------------------------------------------------------------------

def _zero_counts() -> dict[str, int]:
    return {"candidates_scanned": 0, NON_MRD: 0, MRD_GABIDULIN: 0, MRD_NON_GABIDULIN: 0}


@dataclass
class SearchReport:
    parameters: dict
    shards: list[tuple[int, int]]
    counts: dict[str, int] = dc_field(default_factory=_zero_counts)
    exemplars: list[RankCode] = dc_field(default_factory=list)
    max_exemplars: int = 10
    included: list[Classification] = dc_field(default_factory=list)
    seconds: float = 0.0

    def add_exemplar(self, code: RankCode) -> None:
        if len(self.exemplars) < self.max_exemplars and code not in self.exemplars:
            self.exemplars.append(code)

    def merge(self, other: "SearchReport") -> "SearchReport":
        """Componentwise sum; exemplars concatenated then deduplicated by row space."""
        out = SearchReport(self.parameters, sorted(self.shards + other.shards),
                           {key: self.counts[key] + other.counts[key] for key in self.counts},
                           [], self.max_exemplars, list(self.included), self.seconds + other.seconds)
        for c in self.exemplars + other.exemplars:
            out.add_exemplar(c)
        for c in other.included:
            if all(c.code != d.code for d in out.included):
                out.included.append(c)
        return out

    def to_json(self) -> dict:
        return {
            "parameters": self.parameters,
            "shards": [{"index": i, "total": t} for i, t in self.shards],
            "counts": dict(self.counts),
            "exemplars": [code_to_json(c) for c in self.exemplars],
            "included": [c.to_json() for c in self.included],
            "timing": {"seconds": round(self.seconds, 3)},
        }


def report_exemplars_from_json(obj) -> list[RankCode]:
    if not isinstance(obj, dict) or not isinstance(obj.get("exemplars"), list):
        raise FormatError("report.exemplars: expected a list of codes")
    return [code_from_json(c) for c in obj["exemplars"]]


# -- running ---------------------------------------------------------------------------

def _candidates(space: SearchSpace):
    i, T = space.shard
    if space.mode == "exhaustive":
        for idx in range(i, space.cell_count, T):
            yield space.candidate(idx)
        return
    # Random mode draws every sample (all shards share one stream) and keeps
    # those whose sample number falls in this shard.
    rng = np.random.default_rng(space.seed)
    F = space.field
    chunk = 4096
    for start in range(0, space.sample_count, chunk):
        stop = min(space.sample_count, start + chunk)
        block = rng.integers(F.q, F.order, size=(stop - start, space.k, space.n - space.k))
        for j in range((i - start) % T, stop - start, T):
            yield tuple(tuple(int(x) for x in r) for r in block[j])


def _run_single(space: SearchSpace) -> SearchReport:
    t0 = time.perf_counter()
    report = SearchReport(space.parameters(), [space.shard], max_exemplars=space.max_exemplars)
    counts = report.counts
    F, n, k = space.field, space.n, space.k
    for X in _candidates(space):
        c = classify_candidate(F, n, k, X)
        counts["candidates_scanned"] += 1
        counts[c.label] += 1
        if c.label == MRD_NON_GABIDULIN:
            report.add_exemplar(c.code)
    report.seconds = time.perf_counter() - t0
    return report


def run_search(space: SearchSpace, jobs: int = 1) -> SearchReport:
    """Classify every candidate of the space's shard; deterministic for a fixed space.

    ``jobs > 1`` splits shard ``(i, T)`` into the sub-shards ``(i + j T, T jobs)``
    and runs them in worker processes.  Candidates passed through ``include``
    are classified and reported separately; they do not enter the counts.
    """
    i, T = space.shard
    if space.mode == "exhaustive" and space.cell_count > SHARD_BUDGET * T:
        raise BudgetExceeded(
            f"{space.cell_count} candidates over {T} shard(s) exceed {SHARD_BUDGET} per shard")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if jobs == 1:
        report = _run_single(space)
    else:
        subs = [space.with_shard(i + j * T, T * jobs) for j in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_single, subs))
        report = parts[0]
        for p in parts[1:]:
            report = report.merge(p)
        report.shards = [space.shard]
    for X in space.include:
        report.included.append(classify_candidate(space.field, space.n, space.k, X))
    return report


def merge_reports(reports: Sequence[SearchReport]) -> SearchReport:
    out = reports[0]
    for r in reports[1:]:
        out = out.merge(r)
    return out
