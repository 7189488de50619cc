"""F_{q^m}-linear rank-metric codes given by a generator matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _batch
from .errors import (
    BadStep,
    BudgetExceeded,
    DependentEvaluationPoints,
    DimensionOutOfRange,
    FieldMismatch,
    FormatError,
    LengthExceedsDegree,
    RankDeficientGenerator,
    SingularLeadingBlock,
)
from .gf import FieldSpec, field_from_json
from .linalg import (
    Matrix,
    frobenius_matrix,
    inverse,
    kernel,
    matmul,
    rank,
    rank_q,
    rref_nonzero,
    submatrix,
)

SCAN_BUDGET = 1 << 24


class RankCode:
    """A ``k``-dimensional subspace of F_{q^m}^n with ``1 <= k <= n <= m``.

    Equality and hashing compare row spaces (through the reduced echelon
    basis), not generator matrices.
    """

    def __init__(self, field: FieldSpec, generator: Matrix | Sequence[Sequence[int]]):
        if isinstance(generator, Matrix):
            if generator.field != field:
                generator = generator.lift(field)
        else:
            generator = Matrix.from_rows(field, generator)
        k, n = generator.shape
        if n > field.m:
            raise LengthExceedsDegree(f"length n={n} exceeds the extension degree m={field.m}")
        if k == 0 or k > n or rank(generator) < k:
            raise RankDeficientGenerator(f"generator of shape {k}x{n} does not have full row rank")
        self.field = field
        self.generator = generator
        self.k = k
        self.n = n
        self._scan: ScanResult | None = None

    def __repr__(self) -> str:
        return f"RankCode(q={self.field.q}, m={self.field.m}, n={self.n}, k={self.k}, G={self.generator.tolist()})"

    @cached_property
    def canonical(self) -> Matrix:
        return rref_nonzero(self.generator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankCode):
            return NotImplemented
        return self.field == other.field and self.canonical.rows == other.canonical.rows

    def __hash__(self) -> int:
        return hash((self.field, self.canonical.rows))

    @property
    def singleton_bound(self) -> int:
        return self.n - self.k + 1

    @cached_property
    def systematic(self) -> Matrix:
        return systematic_form(self)

    @cached_property
    def dual(self) -> "RankCode":
        return dual(self)

    @property
    def parity_check(self) -> Matrix:
        return self.dual.generator

    def encode(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        F = self.field
        out = [0] * self.n
        for c, row in zip(coeffs, self.generator.rows):
            if c:
                out = [F.add(o, F.mul(c, g)) for o, g in zip(out, row)]
        return tuple(out)

    def to_json(self) -> dict:
        return code_to_json(self)


def new_code(field: FieldSpec, generator) -> RankCode:
    return RankCode(field, generator)


# -- Moore matrices and (generalized) Gabidulin codes -------------------------

@dataclass(frozen=True)
class MooreSpec:
    g: tuple[int, ...]
    k: int
    s: int = 1

    def validate(self, field: FieldSpec) -> None:
        if math.gcd(self.s, field.m) != 1:
            raise BadStep(f"gcd(s={self.s}, m={field.m}) != 1")
        if not 1 <= self.k <= len(self.g):
            raise RankDeficientGenerator(f"k={self.k} outside 1..{len(self.g)}")
        if len(self.g) > field.m:
            raise LengthExceedsDegree(f"length n={len(self.g)} exceeds m={field.m}")
        if rank_q(field, self.g) != len(self.g):
            raise DependentEvaluationPoints("evaluation points are F_q-linearly dependent")


def moore_matrix(field: FieldSpec, g: Sequence[int], k: int, s: int = 1) -> Matrix:
    """Rows ``g^[0], g^[s], ..., g^[(k-1)s]`` with Frobenius applied entrywise."""
    fr = field.frobenius
    return Matrix(field, tuple(tuple(fr(x, i * s) for x in g) for i in range(k)), len(g))


def gabidulin(field: FieldSpec, spec: MooreSpec | Sequence[int], k: int | None = None, s: int = 1) -> RankCode:
    if not isinstance(spec, MooreSpec):
        spec = MooreSpec(tuple(spec), k, s)
    spec.validate(field)
    return RankCode(field, moore_matrix(field, spec.g, spec.k, spec.s))


# -- derived codes -------------------------------------------------------------

def systematic_form(code: RankCode) -> Matrix:
    """``[I_k | X]`` spanning the code; needs an invertible leading block."""
    k = code.k
    lead = submatrix(code.generator, cols=range(k))
    if rank(lead) < k:
        raise SingularLeadingBlock("leading k x k block is singular; the code is not MRD")
    return matmul(inverse(lead), code.generator)


def dual(code: RankCode) -> RankCode:
    if code.k == code.n:
        raise DimensionOutOfRange("the dual of the full space is the zero code")
    return RankCode(code.field, kernel(code.generator))


def frobenius_code(code: RankCode, s: int) -> RankCode:
    return RankCode(code.field, frobenius_matrix(code.generator, s % code.field.m))


def codeword_rank(code: RankCode, coeffs: Sequence[int]) -> int:
    return rank_q(code.field, code.encode(coeffs))


# -- brute-force codeword scan ---------------------------------------------------

@dataclass
class ScanResult:
    """Outcome of walking one representative per projective codeword class.

    ``counts[r]`` tallies scanned representatives of rank ``r``; ``witness``
    holds the coefficient vector that stopped an early-exit scan.
    """

    min_rank: int
    counts: list[int]
    scanned: int
    complete: bool
    witness: tuple[int, ...] | None = None
    witness_rank: int | None = None


def projective_count(q: int, m: int, k: int) -> int:
    return (q ** (m * k) - 1) // (q**m - 1)


def _basis_images(code: RankCode) -> np.ndarray:
    """``out[i, t]`` = expansion (digit-major, ``m x n`` flattened) of ``alpha^t * G_i``."""
    F = code.field
    q, m, n = F.q, F.m, code.n
    out = np.zeros((code.k, m, m * n), dtype=np.int64)
    for i, row in enumerate(code.generator.rows):
        for t in range(m):
            beta = q**t
            for j, g in enumerate(row):
                for d, c in enumerate(F.expand(F.mul(beta, g))):
                    out[i, t, d * n + j] = c
    return out


def scan_codewords(code: RankCode, stop_rank: int = 0, budget: int = SCAN_BUDGET) -> ScanResult:
    """Rank every projective representative, stopping at the first of rank ``<= stop_rank``.

    Representatives have their first non-zero coefficient equal to 1; they are
    visited by position of that 1, then by the remaining coefficients in lex
    order of their canonical integers.
    """
    F = code.field
    q, m, n, k = F.q, F.m, code.n, code.k
    if q ** (m * (k - 1)) > budget:
        raise BudgetExceeded(f"{projective_count(q, m, k)} codewords to enumerate exceed the budget {budget}")
    images = _basis_images(code)
    counts = np.zeros(n + 1, dtype=np.int64)
    scanned = 0
    for j in range(k):
        base = images[j, 0]
        rows = np.array([images[i, t] for i in range(j + 1, k) for t in range(m - 1, -1, -1)],
                        dtype=np.int64).reshape(-1, m * n)
        idx, r = _batch.scan_span(base, rows, q, m, n, stop_rank, counts)
        if idx >= 0:
            scanned += idx + 1
            digits = _batch.base_q_digits(np.array([idx]), q, rows.shape[0])[0] if len(rows) else []
            coeffs = [0] * k
            coeffs[j] = 1
            for pos, i in enumerate(range(j + 1, k)):
                block = [int(d) for d in digits[pos * m:(pos + 1) * m]]
                coeffs[i] = F.from_vector(block[::-1])
            return ScanResult(int(r), counts.tolist(), scanned, False, tuple(coeffs), int(r))
        scanned += q ** rows.shape[0]
    nonzero = [r for r in range(1, n + 1) if counts[r]]
    result = ScanResult(min(nonzero), counts.tolist(), scanned, True)
    code._scan = result
    return result


def _full_scan(code: RankCode, budget: int) -> ScanResult:
    if code._scan is None:
        scan_codewords(code, stop_rank=-1, budget=budget)
    return code._scan


def min_rank_distance(code: RankCode, budget: int = SCAN_BUDGET) -> int:
    """Minimum rank weight over all non-zero codewords (exhaustive)."""
    if code._scan is not None:
        return code._scan.min_rank
    res = scan_codewords(code, stop_rank=1, budget=budget)
    return res.min_rank


def rank_weight_distribution(code: RankCode, budget: int = SCAN_BUDGET) -> list[int]:
    """Number of codewords of each rank ``0..n`` (all ``q^{mk}`` codewords)."""
    res = _full_scan(code, budget)
    scale = code.field.order - 1
    out = [c * scale for c in res.counts]
    out[0] = 1
    return out


# -- JSON ------------------------------------------------------------------------

def code_to_json(code: RankCode) -> dict:
    return {
        "field": code.field.to_json(),
        "n": code.n,
        "k": code.k,
        "generator": code.generator.tolist(),
    }


def code_from_json(obj) -> RankCode:
    if not isinstance(obj, dict):
        raise FormatError("code: expected a JSON object")
    if "field" not in obj:
        raise FormatError("code.field: missing")
    field = field_from_json(obj["field"])
    G = obj.get("generator")
    if not isinstance(G, list) or not G or not all(isinstance(r, list) for r in G):
        raise FormatError("code.generator: expected a non-empty list of rows")
    declared = obj.get("n")
    width = declared if isinstance(declared, int) and not isinstance(declared, bool) else len(G[0])
    for i, r in enumerate(G):
        if len(r) != width:
            raise FormatError(f"code.generator[{i}]: expected {width} entries, got {len(r)}")
        for j, x in enumerate(r):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < field.order:
                raise FormatError(f"code.generator[{i}][{j}]: {x!r} is not an element of F_{field.q}^{field.m}")
    for key, val in (("k", len(G)), ("n", width)):
        if key in obj and obj[key] != val:
            raise FormatError(f"code.{key}: declared {obj[key]!r} but the generator implies {val}")
    return RankCode(field, G)


def require_same_field(a: RankCode, b: RankCode) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
