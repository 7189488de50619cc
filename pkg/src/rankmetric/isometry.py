"""Semilinear rank isometries ``v -> sigma(lambda v) A`` acting on codes.

An isometry is a triple ``(lambda, A, sigma)`` with ``lambda`` a non-zero
element of F_{q^m}, ``A`` in GL_n(q) and ``sigma = x -> x^[i]`` stored as the
Frobenius exponent ``i``.  Codes are row spaces acted on from the right, so in
``compose(g, h)`` the left factor ``g`` is applied first:

    apply(apply(c, g), h) == apply(c, compose(g, h))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._batch import batch_rank
from .codes import RankCode, rank_weight_distribution
from .criteria import detect_gabidulin, is_mrd_minor, iter_gl
from .errors import BudgetExceeded, DimensionMismatch, FieldMismatch, FormatError, SingularA
from .gf import FieldSpec, PrimeField
from .linalg import Matrix, frobenius_matrix, identity, matmul, rank, rref_nonzero


@dataclass(frozen=True)
class Isometry:
    lam: int
    A: Matrix
    sigma: int

    def to_json(self) -> dict:
        return {"lambda": self.lam, "A": self.A.tolist(), "sigma": self.sigma}


def _validate(field: FieldSpec, iso: Isometry, n: int) -> None:
    if iso.A.shape != (n, n):
        raise DimensionMismatch(f"A has shape {iso.A.shape}, expected {n}x{n}")
    if iso.A.level != "base" or iso.A.field.q != field.q:
        raise FieldMismatch("A must be a matrix over the base field F_q")
    if not 0 < iso.lam < field.order:
        raise ValueError(f"lambda must be a non-zero element of the field, got {iso.lam}")
    if rank(iso.A) < n:
        raise SingularA("A is not invertible over F_q")


def identity_isometry(field: FieldSpec, n: int) -> Isometry:
    return Isometry(1, identity(PrimeField(field.q), n), 0)


def apply_to_vector(field: FieldSpec, v, iso: Isometry) -> tuple[int, ...]:
    s = iso.sigma % field.m
    w = [field.frobenius(field.mul(iso.lam, x), s) for x in v]
    A = iso.A.rows
    n = len(w)
    out = []
    for j in range(n):
        acc = 0
        for i in range(n):
            if A[i][j] and w[i]:
                acc = field.add(acc, field.mul(A[i][j], w[i]))
        out.append(acc)
    return tuple(out)


def apply(code: RankCode, iso: Isometry) -> RankCode:
    """Image of ``code`` under ``v -> sigma(lambda v) A`` applied row by row."""
    F = code.field
    _validate(F, iso, code.n)
    rows = [[F.mul(iso.lam, x) for x in row] for row in code.generator.rows]
    scaled = frobenius_matrix(Matrix.from_rows(F, rows, code.n), iso.sigma % F.m)
    return RankCode(F, matmul(scaled, iso.A.lift(F)))


def compose(field: FieldSpec, g: Isometry, h: Isometry) -> Isometry:
    """The isometry ``g`` followed by ``h``.

    ``sigma_h(lambda_h sigma_g(lambda_g v) A_g) A_h
    = sigma_{g+h}(sigma_g^{-1}(lambda_h) lambda_g v) A_g A_h``.
    """
    m = field.m
    lam = field.mul(g.lam, field.frobenius(h.lam, (-g.sigma) % m))
    return Isometry(lam, matmul(g.A, h.A), (g.sigma + h.sigma) % m)


def random_invertible(rng: np.random.Generator, q: int, n: int) -> tuple[Matrix, int]:
    """Uniform element of GL_n(q) by rejection; also returns the number of draws."""
    Fq = PrimeField(q)
    attempts = 0
    while True:
        attempts += 1
        A = rng.integers(0, q, size=(n, n))
        M = Matrix.from_rows(Fq, A.tolist(), n)
        if rank(M) == n:
            return M, attempts


def random_isometry(field: FieldSpec, n: int, seed) -> Isometry:
    """Uniform ``lambda``, uniform invertible ``A`` and uniform ``sigma``; deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    lam = int(rng.integers(1, field.order))
    A, _ = random_invertible(rng, field.q, n)
    sigma = int(rng.integers(0, field.m))
    return Isometry(lam, A, sigma)


def invertibility_rate(q: int, n: int, samples: int, seed) -> float:
    """Fraction of uniform ``n x n`` matrices over F_q that are invertible."""
    rng = np.random.default_rng(seed)
    mats = rng.integers(0, q, size=(samples, n, n))
    return float((batch_rank(mats, q) == n).mean())


def expected_invertibility_rate(q: int, n: int) -> float:
    out = 1.0
    for i in range(1, n + 1):
        out *= 1 - q ** (-i)
    return out


def isometry_from_json(obj, field: FieldSpec, n: int) -> Isometry:
    if not isinstance(obj, dict):
        raise FormatError("isometry: expected a JSON object")
    for key in ("lambda", "A", "sigma"):
        if key not in obj:
            raise FormatError(f"isometry.{key}: missing")
    lam, sigma = obj["lambda"], obj["sigma"]
    if not isinstance(lam, int) or not 0 < lam < field.order:
        raise FormatError(f"isometry.lambda: {lam!r} is not a non-zero field element")
    if not isinstance(sigma, int):
        raise FormatError(f"isometry.sigma: {sigma!r} is not an integer")
    A = obj["A"]
    if not isinstance(A, list) or len(A) != n or not all(isinstance(r, list) and len(r) == n for r in A):
        raise FormatError(f"isometry.A: expected {n} rows of {n} entries")
    for i, r in enumerate(A):
        for j, x in enumerate(r):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < field.q:
                raise FormatError(f"isometry.A[{i}][{j}]: {x!r} is not an element of F_{field.q}")
    A = Matrix.from_rows(PrimeField(field.q), A, n)
    return Isometry(lam, A, sigma % field.m)


# -- equivalence screening --------------------------------------------------------------

@dataclass
class Screening:
    """Invariants compared by :func:`screen`; different invariants prove inequivalence."""

    same_parameters: bool
    same_weight_distribution: bool
    same_gabidulin_verdict: bool

    @property
    def possibly_equivalent(self) -> bool:
        return self.same_parameters and self.same_weight_distribution and self.same_gabidulin_verdict

    def to_json(self) -> dict:
        return {
            "same_parameters": self.same_parameters,
            "same_weight_distribution": self.same_weight_distribution,
            "same_gabidulin_verdict": self.same_gabidulin_verdict,
            "possibly_equivalent": self.possibly_equivalent,
        }


def _gab(code: RankCode) -> bool | None:
    if code.k >= code.n:
        return None
    if not is_mrd_minor(code).is_mrd:
        return None
    return detect_gabidulin(code, assume_mrd=True).is_generalized_gabidulin


def screen(a: RankCode, b: RankCode) -> Screening:
    same = a.field == b.field and (a.n, a.k) == (b.n, b.k)
    if not same:
        return Screening(False, False, False)
    return Screening(
        True,
        rank_weight_distribution(a) == rank_weight_distribution(b),
        _gab(a) == _gab(b),
    )


ORBIT_WALK_LIMIT = 1 << 20


def orbit_walk(a: RankCode, b: RankCode, limit: int = ORBIT_WALK_LIMIT) -> Isometry | None:
    """Brute-force search for an isometry mapping ``a`` onto ``b``.

    ``lambda`` acts trivially on linear codes, so only ``sigma`` and ``A``
    are enumerated: ``m * q^(n^2)`` products, meant for q=2, m=n=4.
    """
    F = a.field
    if F != b.field or (a.n, a.k) != (b.n, b.k):
        return None
    n = a.n
    if F.m * F.q ** (n * n) > limit:
        raise BudgetExceeded(f"{F.m * F.q ** (n * n)} candidate isometries exceed the limit {limit}")
    target = b.canonical.rows
    images = [frobenius_matrix(a.generator, s) for s in range(F.m)]
    for A in iter_gl(n, F.q):
        AF = A.lift(F)
        for s, G in enumerate(images):
            if rref_nonzero(matmul(G, AF)).rows == target:
                return Isometry(1, A, s)
    return None


def iter_random_isometries(field: FieldSpec, n: int, seed: int, count: int) -> Iterator[Isometry]:
    for i in range(count):
        yield random_isometry(field, n, [seed, i])
