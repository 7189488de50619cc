"""Arithmetic in F_q (q prime) and in the extension F_{q^m} = F_q[alpha].

Extension elements are plain integers: the coefficient vector
``(c_0, ..., c_{m-1})`` of ``c_0 + c_1 alpha + ... + c_{m-1} alpha^{m-1}``
is stored as ``sum(c_i * q**i)``.  The embedded base field is therefore the
range ``0 .. q-1`` and ``alpha`` has value ``q`` whenever ``m >= 2``.

Multiplication, inversion and Frobenius powers go through discrete log /
antilog tables.  Addition uses XOR when ``q == 2`` and Zech logarithms
otherwise, so every table is linear in the field order.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    FieldMismatch,
    FormatError,
    NotIrreducible,
    NotPrime,
    NotPrimitive,
    TableBudgetExceeded,
    ZeroInput,
)

MAX_ORDER = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_q, constant term first --------------------------

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    a = _trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, q)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        f = a[-1] * inv_lead % q
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - f * c) % q
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _poly_rem(out, mod, q)


def _poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], q: int) -> list[int]:
    result = [1]
    base = _poly_rem(base, mod, q)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, q)
        base = _poly_mulmod(base, base, mod, q)
        e >>= 1
    return _poly_rem(result, mod, q)


def _is_irreducible(modulus: Sequence[int], q: int) -> bool:
    """Trial division by every monic polynomial of degree <= m/2."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(q), repeat=d):
            if not _poly_rem(modulus, list(low) + [1], q):
                return False
    return True


def _x_is_generator(modulus: Sequence[int], q: int) -> bool:
    m = len(modulus) - 1
    n1 = q**m - 1
    x = [0, 1]
    for r in prime_factors(n1):
        if _poly_powmod(x, n1 // r, modulus, q) == [1]:
            return False
    return True


def is_quadratic_residue_base(gamma: int, q: int) -> bool:
    """Euler's criterion in the prime field F_q."""
    if not is_prime(q):
        raise NotPrime(f"q={q} is not prime")
    if q == 2:
        raise EvenCharacteristic("every element of F_2 is a square; no non-residue exists")
    gamma %= q
    if gamma == 0:
        raise ZeroInput("quadratic residuosity is undefined for 0")
    return pow(gamma, (q - 1) // 2, q) == 1


class PrimeField:
    """The prime field F_q with elements ``0 .. q-1``."""

    level = "base"

    def __init__(self, q: int):
        if not is_prime(q):
            raise NotPrime(f"q={q} is not prime")
        self.q = q
        self.order = q
        self.zero = 0
        self.one = 1

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("F", self.q))

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.q)

    def contains(self, a: int) -> bool:
        return isinstance(a, int) and 0 <= a < self.q


class FieldSpec:
    """The tower F_q < F_{q^m} for a prime ``q`` and a primitive modulus.

    ``modulus`` lists the ``m + 1`` coefficients constant term first and must
    be monic.  Construction verifies irreducibility and that ``x`` generates
    the multiplicative group, then builds the log/antilog/Zech tables.
    Instances are immutable; build them through :func:`make_field` to share
    tables between equal fields.
    """

    level = "ext"

    def __init__(self, q: int, m: int, modulus: Sequence[int]):
        if not isinstance(q, int) or not is_prime(q):
            raise NotPrime(f"q={q!r} is not prime")
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"extension degree must be a positive integer, got {m!r}")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1:
            raise ValueError(f"modulus needs {m + 1} coefficients for degree {m}, got {len(modulus)}")
        if any(not 0 <= c < q for c in modulus):
            raise ValueError(f"modulus coefficients must lie in 0..{q - 1}")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic (last coefficient 1)")
        if q**m > MAX_ORDER:
            raise TableBudgetExceeded(f"q^m = {q**m} exceeds the table budget {MAX_ORDER}")
        if modulus[0] == 0:
            # x divides the modulus; for m = 1 this is the degenerate tower x = 0
            raise NotIrreducible("modulus has zero constant term, so x is not a unit")
        if not _is_irreducible(modulus, q):
            raise NotIrreducible(f"modulus {list(modulus)} is reducible over F_{q}")
        if not _x_is_generator(modulus, q):
            raise NotPrimitive(f"modulus {list(modulus)} is irreducible but x is not primitive")

        self.q = q
        self.m = m
        self.modulus = modulus
        self.order = q**m
        self.zero = 0
        self.one = 1
        self.base = PrimeField(q)
        self._build_tables()

    def _build_tables(self) -> None:
        q, m, n1 = self.q, self.m, self.order - 1
        hi = q ** (m - 1)
        # (x * v) reduction term for each possible top digit of v
        red = [self._from_digits([(-t * c) % q for c in self.modulus[:m]]) for t in range(q)]

        exp = [0] * (2 * n1)
        log = [-1] * self.order
        v = 1
        for i in range(n1):
            exp[i] = v
            log[v] = i
            top, rest = divmod(v, hi)
            v = self._digit_add(rest * q, red[top])
        exp[n1:] = exp[:n1]

        zech = [-1] * n1
        for t in range(n1):
            w = exp[t]
            w = w - (q - 1) if w % q == q - 1 else w + 1
            zech[t] = log[w] if w else -1

        self._exp = exp
        self._log = log
        self._zech = zech
        self._n1 = n1
        self._half = n1 // 2 if q != 2 else 0
        self._frob = [pow(q, s, n1) if n1 > 1 else 0 for s in range(m)]

    def _digit_add(self, a: int, b: int) -> int:
        q = self.q
        if q == 2:
            return a ^ b
        out, place = 0, 1
        while a or b:
            a, da = divmod(a, q)
            b, db = divmod(b, q)
            out += ((da + db) % q) * place
            place *= q
        return out

    def _from_digits(self, digits: Iterable[int]) -> int:
        out, place = 0, 1
        for d in digits:
            out += (d % self.q) * place
            place *= self.q
        return out

    # -- identity, pickling, serialization --------------------------------

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.q, self.m, self.modulus) == (other.q, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.q, self.m, self.modulus))

    def __reduce__(self):
        return make_field, (self.q, self.m, self.modulus)

    def to_json(self) -> dict:
        return {"q": self.q, "m": self.m, "modulus": list(self.modulus)}

    # -- element-level arithmetic on canonical integers ------------------

    @property
    def alpha(self) -> int:
        return self._exp[1]

    @property
    def n_nonzero(self) -> int:
        return self._n1

    def contains(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.order

    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._n1]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if not a or self.q == 2:
            return a
        return self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero")
        return self._exp[(self._n1 - self._log[a]) % self._n1]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % self._n1]

    def frobenius(self, a: int, s: int = 1) -> int:
        """``a ** (q ** s)``; ``s`` is reduced mod ``m`` so negative steps invert."""
        if not a:
            return 0
        return self._exp[self._log[a] * self._frob[s % self.m] % self._n1]

    def log(self, a: int) -> int:
        if not a:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def exp(self, e: int) -> int:
        return self._exp[e % self._n1]

    def in_base_field(self, a: int) -> bool:
        return a < self.q

    def is_square(self, a: int) -> bool:
        """Square test in F_{q^m}; every element is a square in characteristic 2."""
        if self.q == 2 or not a:
            return True
        return self._log[a] % 2 == 0

    def expand(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of ``a`` in the basis ``1, alpha, ..., alpha^{m-1}``."""
        out = []
        for _ in range(self.m):
            a, d = divmod(a, self.q)
            out.append(d)
        return tuple(out)

    def from_vector(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return self._from_digits(coeffs)

    def element(self, value: int) -> "FqmElement":
        return FqmElement(self, value)

    def elements(self) -> range:
        return range(self.order)


# Unbounded: pickling and JSON round-trips rely on one FieldSpec instance per modulus.
@lru_cache(maxsize=None)
def _make_field(q: int, m: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(q, m, modulus)


def make_field(q: int, m: int, modulus: Sequence[int]) -> FieldSpec:
    """Validated, cached :class:`FieldSpec` constructor."""
    return _make_field(q, m, tuple(int(c) for c in modulus))


def find_primitive_modulus(q: int, m: int) -> tuple[int, ...]:
    """Smallest primitive modulus, ordering lower coefficients by ``sum c_i q^i``."""
    if not is_prime(q):
        raise NotPrime(f"q={q} is not prime")
    if q**m > MAX_ORDER:
        raise TableBudgetExceeded(f"q^m = {q**m} exceeds the table budget {MAX_ORDER}")
    for low in range(1, q**m):
        coeffs = []
        v = low
        for _ in range(m):
            v, d = divmod(v, q)
            coeffs.append(d)
        modulus = coeffs + [1]
        if modulus[0] and _is_irreducible(modulus, q) and _x_is_generator(modulus, q):
            return tuple(modulus)
    raise NotPrimitive(f"no primitive modulus of degree {m} over F_{q}")  # pragma: no cover


def default_field(q: int, m: int) -> FieldSpec:
    return make_field(q, m, find_primitive_modulus(q, m))


def field_from_json(obj) -> FieldSpec:
    if not isinstance(obj, dict):
        raise FormatError("field: expected an object with keys q, m, modulus")
    for key in ("q", "m", "modulus"):
        if key not in obj:
            raise FormatError(f"field.{key}: missing")
    q, m, modulus = obj["q"], obj["m"], obj["modulus"]
    if not isinstance(q, int) or isinstance(q, bool):
        raise FormatError("field.q: expected an integer")
    if not isinstance(m, int) or isinstance(m, bool):
        raise FormatError("field.m: expected an integer")
    if not isinstance(modulus, list) or not all(isinstance(c, int) for c in modulus):
        raise FormatError("field.modulus: expected a list of integers")
    return make_field(q, m, modulus)


class FqmElement:
    """Operator-friendly wrapper around a canonical integer of one field.

    Mixing elements of different fields raises :class:`FieldMismatch`.  Plain
    ints are accepted as the other operand and read as canonical values.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        value = int(value)
        if not 0 <= value < field.order:
            raise ValueError(f"{value} is not a canonical element of F_{field.q}^{field.m}")
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FqmElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return FqmElement(self.field, other).value
        return NotImplemented

    def _wrap(self, v: int) -> "FqmElement":
        return FqmElement(self.field, v)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FqmElement":
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, s: int = 1) -> "FqmElement":
        return self._wrap(self.field.frobenius(self.value, s))

    def expand(self) -> tuple[int, ...]:
        return self.field.expand(self.value)

    def in_base_field(self) -> bool:
        return self.field.in_base_field(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FqmElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FqmElement({self.value}, {list(self.expand())})"
