"""Sparse commutative polynomials over a prime field, in variables ``u1..uk``."""

from __future__ import annotations

from .coeff import RingSpec
from .errors import NegativeExponent, NonInvertible, SignatureMismatch
from .weyl import render_terms


class Poly:
    __slots__ = ("nvars", "ring", "terms")

    def __init__(self, nvars: int, ring: RingSpec, terms: dict | None = None):
        self.nvars = nvars
        self.ring = ring
        norm = ring.norm
        clean = {}
        for alpha, c in (terms or {}).items():
            c = norm(c)
            if c:
                if len(alpha) != nvars:
                    raise SignatureMismatch(f"exponent {alpha} has wrong length")
                clean[tuple(alpha)] = c
        self.terms = clean

    @classmethod
    def const(cls, nvars, ring, c) -> Poly:
        return cls(nvars, ring, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, ring, i) -> Poly:
        """``u_i`` (1-based)."""
        alpha = [0] * nvars
        alpha[i - 1] = 1
        return cls(nvars, ring, {tuple(alpha): 1})

    def _like(self, terms) -> Poly:
        return Poly(self.nvars, self.ring, terms)

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars or other.ring != self.ring:
                raise SignatureMismatch("polynomials over different rings")
            return other
        if isinstance(other, int):
            return Poly.const(self.nvars, self.ring, other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(u + v for u, v in zip(a, b))
                out[key] = out.get(key, 0) + ca * cb
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise NegativeExponent(f"negative power {k}")
        result = Poly.const(self.nvars, self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def degree(self):
        if not self.terms:
            return float("-inf")
        return max(sum(a) for a in self.terms)

    def is_constant(self) -> bool:
        return all(not any(a) for a in self.terms)

    def constant(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def diff(self, i: int) -> Poly:
        """Formal partial derivative by ``u_i`` (1-based)."""
        k = i - 1
        out = {}
        for a, c in self.terms.items():
            if a[k]:
                b = list(a)
                b[k] -= 1
                out[tuple(b)] = c * a[k]
        return self._like(out)

    def leading(self):
        return max(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def exact_div(self, other: Poly) -> Poly:
        """Quotient of an exact division; raises if a remainder appears."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        lead_a, lead_c = other.leading()
        rem = self
        quot = self._like({})
        while rem:
            ra, rc = rem.leading()
            shift = tuple(x - y for x, y in zip(ra, lead_a))
            if any(s < 0 for s in shift):
                raise NonInvertible(f"{self} is not divisible by {other}")
            t = self._like({shift: self.ring.div(rc, lead_c)})
            quot = quot + t
            rem = rem - t * other
        return quot

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        return render_terms(self.sorted_terms(), prefix="u")

    def __repr__(self):
        return f"Poly({self}, nvars={self.nvars}, ring={self.ring})"
