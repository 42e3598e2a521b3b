"""Exact coefficient rings: integers, rationals and prime fields.

Elements of the algebra store *raw* values (``int`` or ``Fraction``) and
consult the owning :class:`RingSpec` for normalisation; :class:`Coefficient`
is the checked, self-describing wrapper used at API boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, MixedRings, NonInvertible, NotDivisible

INTEGERS = "Z"
RATIONALS = "Q"
PRIME_FIELD = "Fp"

_PRIME_LIMIT = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class RingSpec:
    """One of ``Z``, ``Q`` or ``F_p``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == PRIME_FIELD:
            if self.p is None or not isinstance(self.p, int):
                raise ValueError("prime field needs an integer p")
            if self.p > _PRIME_LIMIT or not is_prime(self.p):
                raise ValueError(f"{self.p} is not a supported prime")
        elif self.kind in (INTEGERS, RATIONALS):
            if self.p is not None:
                raise ValueError(f"ring {self.kind} takes no modulus")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> RingSpec:
        """Parse ``"Z"``, ``"Q"`` or ``"Fp:<p>"``."""
        text = text.strip()
        if text in (INTEGERS, RATIONALS):
            return cls(text)
        if text.startswith("Fp:"):
            return cls(PRIME_FIELD, int(text[3:]))
        raise ValueError(f"unknown ring {text!r}")

    def __str__(self):
        return f"Fp:{self.p}" if self.kind == PRIME_FIELD else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != INTEGERS

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == PRIME_FIELD else 0

    # raw-value arithmetic ------------------------------------------------

    def norm(self, v):
        """Canonical raw representative of ``v``."""
        if self.kind == PRIME_FIELD:
            if isinstance(v, Fraction):
                return self.div(v.numerator, v.denominator)
            return v % self.p
        if isinstance(v, Fraction):
            if v.denominator == 1:
                return v.numerator
            if self.kind == INTEGERS:
                raise NonInvertible(f"{v} is not an integer")
            return v
        return int(v)

    def from_rational(self, num: int, den: int = 1):
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den == 1:
            return self.norm(num)
        return self.div(self.norm(num), self.norm(den))

    def add(self, a, b):
        return self.norm(a + b)

    def sub(self, a, b):
        return self.norm(a - b)

    def mul(self, a, b):
        return self.norm(a * b)

    def neg(self, a):
        return self.norm(-a)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.kind == PRIME_FIELD:
            return self.div(1, a)
        if self.kind == RATIONALS:
            return self.norm(Fraction(1) / a)
        if a in (1, -1):
            return a
        raise NonInvertible(f"{a} is not a unit in Z")

    def div(self, a, b):
        if self.kind == PRIME_FIELD:
            b %= self.p
        if b == 0:
            raise DivisionByZero("division by zero")
        if self.kind == PRIME_FIELD:
            return (a * pow(b, -1, self.p)) % self.p
        if self.kind == RATIONALS:
            return self.norm(Fraction(a) / b)
        q, r = divmod(a, b)
        if r:
            raise NonInvertible(f"{a} is not divisible by {b} in Z")
        return q

    def render(self, v) -> str:
        return str(v)


ZZ = RingSpec(INTEGERS)
QQ = RingSpec(RATIONALS)


def GF(p: int) -> RingSpec:
    return RingSpec(PRIME_FIELD, p)


@dataclass(frozen=True)
class Coefficient:
    """An exact ring element tagged with its ring."""

    ring: RingSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.norm(self.value))

    def _check(self, other):
        if not isinstance(other, Coefficient):
            return Coefficient(self.ring, other)
        if other.ring != self.ring:
            raise MixedRings(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        return Coefficient(self.ring, self.value + self._check(other).value)

    def __sub__(self, other):
        return Coefficient(self.ring, self.value - self._check(other).value)

    def __mul__(self, other):
        return Coefficient(self.ring, self.value * self._check(other).value)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return Coefficient(self.ring, self._check(other).value - self.value)

    def __neg__(self):
        return Coefficient(self.ring, -self.value)

    def __truediv__(self, other):
        return Coefficient(self.ring, self.ring.div(self.value, self._check(other).value))

    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return self.ring == other.ring and self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash((self.ring, self.value))

    def __str__(self):
        return str(self.value)

    def lift(self) -> Coefficient:
        """Prime-field residue as an integer in ``[0, p)``."""
        if self.ring.kind != PRIME_FIELD:
            return self
        return Coefficient(ZZ, self.value)

    def reduce(self, p: int) -> Coefficient:
        return Coefficient(GF(p), self.value)


def divide_exact_by_prime(a: int, p: int) -> int:
    """``a / p`` for an integer ``a`` known to be divisible by ``p``."""
    if isinstance(a, Coefficient):
        if a.ring != ZZ:
            raise MixedRings("exact division by p needs an integer")
        return Coefficient(ZZ, divide_exact_by_prime(a.value, p))
    q, r = divmod(a, p)
    if r:
        raise NotDivisible(f"{a} is not divisible by {p}")
    return q
