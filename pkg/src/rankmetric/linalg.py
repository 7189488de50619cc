"""Dense matrices over F_q or F_{q^m} and the eliminations built on them.

A :class:`Matrix` stores canonical integers together with the field that
interprets them (:class:`~rankmetric.gf.PrimeField` for the base level,
:class:`~rankmetric.gf.FieldSpec` for the extension).  All routines go through
one elimination kernel parameterized by the field's ``add/sub/mul/inv``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    FormatError,
    NonSquare,
    RankDeficientInput,
    RowsExceedCols,
)
from .gf import FieldSpec, PrimeField

Field = Union[PrimeField, FieldSpec]


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has {len(r)} entries, expected {ncols}")
            for x in r:
                if not 0 <= x < field.order:
                    raise ValueError(f"entry {x} is not an element of {field!r}")
        return cls(field, rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    @property
    def level(self) -> str:
        return self.field.level

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix(self.field, tuple(() for _ in range(self.ncols)), 0)
        return Matrix(self.field, tuple(zip(*self.rows)), len(self.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def lift(self, field: FieldSpec) -> "Matrix":
        """View a base-level matrix over the extension (values are unchanged)."""
        if self.field == field:
            return self
        if not (isinstance(self.field, PrimeField) and field.q == self.field.q):
            raise FieldMismatch(f"cannot lift {self.field!r} into {field!r}")
        return Matrix(field, self.rows, self.ncols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_json(self) -> dict:
        return {"field": self.level, "rows": self.nrows, "cols": self.ncols, "entries": self.tolist()}

    def __repr__(self) -> str:
        return f"Matrix({self.level}, {self.tolist()})"


def identity(field: Field, k: int) -> Matrix:
    return Matrix(field, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), k)


def zeros(field: Field, r: int, c: int) -> Matrix:
    return Matrix(field, tuple((0,) * c for _ in range(r)), c)


def _unify(*fields: Field) -> Field:
    """Smallest level holding all operands; F_q embeds into F_{q^m} as 0..q-1."""
    out = fields[0]
    for f in fields[1:]:
        if f == out:
            continue
        if isinstance(out, PrimeField) and isinstance(f, FieldSpec) and f.q == out.q:
            out = f
        elif not (isinstance(f, PrimeField) and isinstance(out, FieldSpec) and f.q == out.q):
            raise FieldMismatch(f"{out!r} vs {f!r}")
    return out


def _common_field(a: Matrix, b: Matrix) -> Field:
    return _unify(a.field, b.field)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    F = _common_field(a, b)
    add, mul = F.add, F.mul
    cols = list(zip(*b.rows)) if b.nrows else [()] * b.ncols
    out = []
    for r in a.rows:
        row = []
        for c in cols:
            acc = 0
            for x, y in zip(r, c):
                if x and y:
                    acc = add(acc, mul(x, y))
            row.append(acc)
        out.append(tuple(row))
    return Matrix(F, tuple(out), b.ncols)


def hstack(*ms: Matrix) -> Matrix:
    if len({m.nrows for m in ms}) > 1:
        raise DimensionMismatch("hstack needs equal row counts")
    F = _unify(*(m.field for m in ms))
    rows = tuple(tuple(x for m in ms for x in m.rows[i]) for i in range(ms[0].nrows))
    return Matrix(F, rows, sum(m.ncols for m in ms))


def vstack(*ms: Matrix) -> Matrix:
    if len({m.ncols for m in ms}) > 1:
        raise DimensionMismatch("vstack needs equal column counts")
    F = _unify(*(m.field for m in ms))
    return Matrix(F, tuple(r for m in ms for r in m.rows), ms[0].ncols)


def submatrix(m: Matrix, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> Matrix:
    rows = range(m.nrows) if rows is None else rows
    cols = range(m.ncols) if cols is None else cols
    return Matrix(m.field, tuple(tuple(m.rows[i][j] for j in cols) for i in rows), len(cols))


def frobenius_matrix(m: Matrix, s: int) -> Matrix:
    """Entrywise ``x -> x^(q^s)``; the identity on base-level matrices."""
    if isinstance(m.field, PrimeField):
        return m
    fr = m.field.frobenius
    return Matrix(m.field, tuple(tuple(fr(x, s) for x in r) for r in m.rows), m.ncols)


def _echelon(field: Field, rows: Sequence[Sequence[int]], ncols: int, reduced: bool):
    """Gauss-Jordan elimination.

    Returns ``(rows, pivots, det)`` where ``det`` is the product of the pivots
    with the sign of the row swaps folded in; it is the determinant when the
    input is square and of full rank.
    """
    add, sub, mul, inv, neg = field.add, field.sub, field.mul, field.inv, field.neg
    a = [list(r) for r in rows]
    nr = len(a)
    pivots: list[int] = []
    det = 1
    r = 0
    for c in range(ncols):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            det = neg(det)
        pv = a[r][c]
        det = mul(det, pv)
        if pv != 1:
            ip = inv(pv)
            a[r] = [mul(ip, x) if x else 0 for x in a[r]]
        prow = a[r]
        for i in range(0 if reduced else r + 1, nr):
            f = a[i][c]
            if i != r and f:
                a[i] = [sub(x, mul(f, y)) if y else x for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return a, pivots, det


def rank(m: Matrix) -> int:
    if not m.rows or not m.ncols:
        return 0
    return len(_echelon(m.field, m.rows, m.ncols, reduced=False)[1])


def rref(m: Matrix) -> Matrix:
    rows, pivots, _ = _echelon(m.field, m.rows, m.ncols, reduced=True)
    return Matrix(m.field, tuple(tuple(r) for r in rows), m.ncols)


def rref_nonzero(m: Matrix) -> Matrix:
    """RREF with the zero rows dropped: a canonical basis of the row space."""
    rows, pivots, _ = _echelon(m.field, m.rows, m.ncols, reduced=True)
    return Matrix(m.field, tuple(tuple(r) for r in rows[: len(pivots)]), m.ncols)


def pivot_columns(m: Matrix) -> list[int]:
    return _echelon(m.field, m.rows, m.ncols, reduced=False)[1]


def det(m: Matrix) -> int:
    if m.nrows != m.ncols:
        raise NonSquare(f"determinant of a {m.nrows}x{m.ncols} matrix")
    if m.nrows == 0:
        return 1
    if m.nrows == 2:
        (a, b), (c, d) = m.rows
        F = m.field
        return F.sub(F.mul(a, d), F.mul(b, c))
    _, pivots, d = _echelon(m.field, m.rows, m.ncols, reduced=False)
    return d if len(pivots) == m.nrows else 0


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise NonSquare(f"inverse of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    aug = hstack(m, identity(m.field, n))
    rows, pivots, _ = _echelon(m.field, aug.rows, 2 * n, reduced=True)
    if pivots[:n] != list(range(n)):
        raise RankDeficientInput("matrix is singular")
    return Matrix(m.field, tuple(tuple(r[n:]) for r in rows), n)


def kernel(m: Matrix) -> Matrix:
    """Basis (as rows) of the right kernel ``{x : M x^T = 0}``."""
    F = m.field
    rows, pivots, _ = _echelon(F, m.rows, m.ncols, reduced=True)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * m.ncols
        x[f] = 1
        for i, p in enumerate(pivots):
            x[p] = F.neg(rows[i][f])
        basis.append(tuple(x))
    return Matrix(F, tuple(basis), m.ncols)


def solve_left(m: Matrix, v: Sequence[int]) -> tuple[int, ...] | None:
    """Some ``x`` with ``x M = v``, or ``None`` when ``v`` is outside the row space."""
    F = m.field
    aug = hstack(m.T, Matrix.from_rows(F, [[x] for x in v], 1) if v else zeros(F, m.ncols, 1))
    rows, pivots, _ = _echelon(F, aug.rows, aug.ncols, reduced=True)
    if m.nrows in pivots:
        return None
    x = [0] * m.nrows
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.nrows]
    return tuple(x)


def maximal_minors(m: Matrix) -> list[int]:
    """All ``k x k`` minors of a ``k x n`` matrix, column sets in lex order."""
    k, n = m.shape
    if k > n:
        raise RowsExceedCols(f"{k} rows exceed {n} columns")
    cols = list(zip(*m.rows))
    out = []
    for S in combinations(range(n), k):
        sub = Matrix(m.field, tuple(zip(*(cols[j] for j in S))), k) if k else Matrix(m.field, (), 0)
        out.append(det(sub))
    return out


def expand_to_base(field: FieldSpec, v: Sequence[int]) -> Matrix:
    """``m x n`` matrix over F_q whose column ``j`` is the expansion of ``v[j]``."""
    cols = [field.expand(x) for x in v]
    return Matrix(field.base, tuple(zip(*cols)) if cols else tuple(() for _ in range(field.m)), len(v))


def rank_q(field: FieldSpec, v: Sequence[int]) -> int:
    """Rank weight of a vector over F_{q^m}: the F_q-rank of its expansion."""
    return rank(expand_to_base(field, v))


def intersection_dim(g1: Matrix, g2: Matrix) -> int:
    """``dim(rowspace(g1) & rowspace(g2))`` for full-row-rank inputs."""
    if g1.ncols != g2.ncols:
        raise DimensionMismatch("generators have different lengths")
    k1, k2 = g1.nrows, g2.nrows
    if rank(g1) != k1 or rank(g2) != k2:
        raise RankDeficientInput("intersection_dim needs full-row-rank generators")
    return k1 + k2 - rank(vstack(g1, g2))


def same_row_space(a: Matrix, b: Matrix) -> bool:
    if a.ncols != b.ncols:
        return False
    F = _common_field(a, b)
    return rref_nonzero(a.lift(F)).rows == rref_nonzero(b.lift(F)).rows


def matrix_from_json(obj, field: FieldSpec) -> Matrix:
    if not isinstance(obj, dict):
        raise FormatError("matrix: expected an object")
    level = obj.get("field")
    if level not in ("base", "ext"):
        raise FormatError("matrix.field: expected 'base' or 'ext'")
    F = field.base if level == "base" else field
    entries = obj.get("entries")
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise FormatError("matrix.entries: expected a list of rows")
    rows, cols = obj.get("rows", len(entries)), obj.get("cols")
    if rows != len(entries):
        raise FormatError(f"matrix.rows: {rows} does not match {len(entries)} entry rows")
    if cols is None:
        cols = len(entries[0]) if entries else 0
    for i, r in enumerate(entries):
        if len(r) != cols:
            raise FormatError(f"matrix.entries[{i}]: expected {cols} entries")
        for j, x in enumerate(r):
            if not isinstance(x, int) or not 0 <= x < F.order:
                raise FormatError(f"matrix.entries[{i}][{j}]: {x!r} is not an element of {F!r}")
    return Matrix(F, tuple(tuple(r) for r in entries), cols)
