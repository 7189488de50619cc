"""Explicit MRD codes of dimension 2 that are not generalized Gabidulin codes.

Two families, both parameterized by a primitive ``alpha`` and ``gamma`` in F_q:

* length 4:  rows ``(1, 0, a, a^2)`` and ``(0, 1, a^2, gamma a)``
  (``q`` odd, ``gamma`` a non-residue in F_q, ``m >= 4``);
* length 5:  rows ``(1, 0, a, a^2, a^3)`` and ``(0, 1, a^2, a^4, gamma a)``
  (``m >= 5``).

``gamma`` must avoid a finite list of excluded values, one per admissible
Frobenius step.  Below the degree where the MRD property is automatic
(``m = 4`` resp. ``5 <= m <= 7``) the minor criterion is run before a code is
returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .codes import RankCode
from .criteria import admissible_steps, is_mrd_minor
from .errors import (
    EvenCharacteristic,
    GammaRejected,
    LengthExceedsDegree,
    MrdCheckFailed,
)
from .gf import FieldSpec, is_quadratic_residue_base, make_field

CONSTRUCTION4 = "construction4"
CONSTRUCTION5 = "construction5"
KINDS = (CONSTRUCTION4, CONSTRUCTION5)


@dataclass
class ExcludedValue:
    s: int
    variant: str
    value: int
    in_base_field: bool
    collides: bool

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "variant": self.variant,
            "value": self.value,
            "vacuous": not self.in_base_field,
            "collides": self.collides,
        }


@dataclass
class GammaCondition:
    kind: str
    gamma: int
    excluded: list[ExcludedValue]
    qnr_required: bool
    qnr: bool | None
    qnr_in_extension: bool | None
    passed: bool
    reasons: list[str] = dc_field(default_factory=list)

    @property
    def excluded_values(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for e in self.excluded:
            out.setdefault(e.s, []).append(e.value)
        return out

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "gamma": self.gamma,
            "passed": self.passed,
            "qnr_required": self.qnr_required,
            "qnr": self.qnr,
            "qnr_in_extension": self.qnr_in_extension,
            "excluded": [e.to_json() for e in self.excluded],
            "reasons": self.reasons,
        }


def _excluded(kind: str, F: FieldSpec, s: int) -> list[tuple[str, int]]:
    a = F.alpha
    a_s = F.frobenius(a, s)
    a2 = F.mul(a, a)
    lin = F.add(a_s, a)
    if kind == CONSTRUCTION4:
        return [("square", F.mul(lin, lin))]
    a2_s = F.frobenius(a2, s)
    cross = F.mul(a_s, a)
    out = []
    for variant, mid in (("plus", cross), ("minus", F.neg(cross))):
        out.append((variant, F.mul(lin, F.add(F.add(a2_s, mid), a2))))
    return out


def validate_gamma(kind: str, field: FieldSpec, gamma: int) -> GammaCondition:
    """Report on every condition ``gamma`` must meet for the given construction.

    Never raises on a failing ``gamma``; the verdict is ``passed`` together
    with a per-step list of excluded values.  Excluded values outside F_q can
    never equal ``gamma`` and are flagged as vacuous.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown construction {kind!r}; expected one of {KINDS}")
    q = field.q
    if not isinstance(gamma, int) or not 0 <= gamma < q:
        raise ValueError(f"gamma must be an element of F_{q} (0..{q - 1}), got {gamma!r}")
    reasons = []
    excluded = []
    for s in admissible_steps(field.m):
        for variant, value in _excluded(kind, field, s):
            hit = value == gamma
            excluded.append(ExcludedValue(s, variant, value, field.in_base_field(value), hit))
            if hit:
                reasons.append(f"gamma equals the excluded value for s={s} ({variant})")
    if gamma == 0:
        reasons.append("gamma must be non-zero")

    qnr_required = kind == CONSTRUCTION4
    qnr = None
    qnr_ext = None
    if q == 2:
        if qnr_required:
            reasons.append("even characteristic: F_2 has no quadratic non-residue")
    elif gamma:
        qnr = not is_quadratic_residue_base(gamma, q)
        qnr_ext = not field.is_square(gamma)
        if qnr_required and not qnr:
            reasons.append(f"gamma={gamma} is a quadratic residue in F_{q}")
    return GammaCondition(kind, gamma, excluded, qnr_required, qnr, qnr_ext, not reasons, reasons)


def _checked(code: RankCode, label: str) -> RankCode:
    verdict = is_mrd_minor(code)
    if not verdict.is_mrd:
        raise MrdCheckFailed(f"{label}: the minor criterion fails for this modulus", verdict)
    return code


def construct4(field: FieldSpec, gamma: int) -> RankCode:
    """Length-4 code ``[[1, 0, a, a^2], [0, 1, a^2, gamma a]]``."""
    if field.q == 2:
        raise EvenCharacteristic("the length-4 construction needs odd q")
    if field.m < 4:
        raise LengthExceedsDegree(f"length 4 needs m >= 4, got m={field.m}")
    report = validate_gamma(CONSTRUCTION4, field, gamma)
    if not report.passed:
        raise GammaRejected("; ".join(report.reasons), report)
    F, a = field, field.alpha
    a2 = F.mul(a, a)
    code = RankCode(F, [[1, 0, a, a2], [0, 1, a2, F.mul(gamma, a)]])
    return _checked(code, "m = 4") if field.m == 4 else code


def construct5(field: FieldSpec, gamma: int) -> RankCode:
    """Length-5 code ``[[1, 0, a, a^2, a^3], [0, 1, a^2, a^4, gamma a]]``."""
    if field.m < 5:
        raise LengthExceedsDegree(f"length 5 needs m >= 5, got m={field.m}")
    report = validate_gamma(CONSTRUCTION5, field, gamma)
    if not report.passed:
        raise GammaRejected("; ".join(report.reasons), report)
    F, a = field, field.alpha
    p = F.pow
    code = RankCode(F, [[1, 0, a, p(a, 2), p(a, 3)], [0, 1, p(a, 2), p(a, 4), F.mul(gamma, a)]])
    return _checked(code, f"m = {field.m}") if field.m <= 7 else code


def construct(kind: str, field: FieldSpec, gamma: int) -> RankCode:
    if kind == CONSTRUCTION4:
        return construct4(field, gamma)
    if kind == CONSTRUCTION5:
        return construct5(field, gamma)
    raise ValueError(f"unknown construction {kind!r}")


@dataclass
class BuiltinExample:
    name: str
    kind: str
    gamma: int
    code: RankCode
    expected_mrd: bool = True
    expected_gabidulin: bool = False

    @property
    def field(self) -> FieldSpec:
        return self.code.field


# name, kind, q, m, modulus (constant term first), gamma
EXAMPLE_PARAMETERS = [
    ("q3-m5", CONSTRUCTION4, 3, 5, (1, 1, 2, 0, 0, 1), 2),        # x^5 + 2x^2 + x + 1
    ("q3-m4", CONSTRUCTION4, 3, 4, (2, 0, 0, 2, 1), 2),           # x^4 - x^3 - 1
    ("q5-m4", CONSTRUCTION4, 5, 4, (3, 1, 1, 1, 1), 2),           # x^4 + x^3 + x^2 + x + 3
    ("q2-m8", CONSTRUCTION5, 2, 8, (1, 0, 1, 1, 1, 0, 0, 0, 1), 1),  # x^8 + x^4 + x^3 + x^2 + 1
]


def builtin_examples() -> list[BuiltinExample]:
    out = []
    for name, kind, q, m, modulus, gamma in EXAMPLE_PARAMETERS:
        F = make_field(q, m, modulus)
        out.append(BuiltinExample(name, kind, gamma, construct(kind, F, gamma)))
    return out


def builtin_example(name: str) -> BuiltinExample:
    for name_, kind, q, m, modulus, gamma in EXAMPLE_PARAMETERS:
        if name_ == name:
            return BuiltinExample(name, kind, gamma, construct(kind, make_field(q, m, modulus), gamma))
    raise KeyError(f"no built-in example {name!r}; choose from {[p[0] for p in EXAMPLE_PARAMETERS]}")
