"""Normal-ordered arithmetic in the Weyl algebra ``A_n(K[z_1..z_m])``.

Generators are ``x1 .. x{2n+m}``. For ``1 <= i <= n`` generator ``n+i`` is
the momentum partner of ``x_i`` (``[x_{n+i}, x_i] = 1``); the last ``m``
generators are central. A monomial with exponent vector ``alpha`` always
means ``x_1^a1 ... x_n^an * x_{n+1}^.. x_{2n}^.. * z^..`` (positions left of
momenta).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from math import comb, factorial

from .coeff import QQ, RATIONALS, INTEGERS, Coefficient, RingSpec
from .errors import NegativeExponent, SignatureMismatch, UnsupportedRing

NEG_INF = float("-inf")


@dataclass(frozen=True)
class AlgebraSignature:
    n: int
    m: int = 0
    ring: RingSpec = QQ

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one Weyl pair")
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    @property
    def nvars(self) -> int:
        return 2 * self.n + self.m

    def with_ring(self, ring: RingSpec) -> AlgebraSignature:
        return AlgebraSignature(self.n, self.m, ring)

    def zero(self) -> WeylElement:
        return WeylElement(self, {})

    def one(self) -> WeylElement:
        return self.scalar(1)

    def scalar(self, c) -> WeylElement:
        if isinstance(c, Coefficient):
            c = c.value
        return WeylElement(self, {(0,) * self.nvars: c})

    def monomial(self, alpha, c=1) -> WeylElement:
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise SignatureMismatch(f"exponent vector {alpha} has wrong length")
        return WeylElement(self, {alpha: c})

    def gen(self, i: int) -> WeylElement:
        """Generator ``x_i`` (1-based)."""
        if not 1 <= i <= self.nvars:
            raise IndexError(f"no generator x{i}")
        alpha = [0] * self.nvars
        alpha[i - 1] = 1
        return WeylElement(self, {tuple(alpha): 1})

    def gens(self) -> list[WeylElement]:
        return [self.gen(i) for i in range(1, self.nvars + 1)]

    def is_central_index(self, i: int) -> bool:
        return i > 2 * self.n


@lru_cache(maxsize=None)
def _reorder_coeffs(b: int, c: int) -> tuple[int, ...]:
    # y^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) y^(b-k)
    return tuple(comb(b, k) * comb(c, k) * factorial(k) for k in range(min(b, c) + 1))


@lru_cache(maxsize=1 << 16)
def _contractions(ay: tuple, bx: tuple, p: int) -> tuple:
    combos = [((), 1)]
    for yb, xc in zip(ay, bx):
        if yb == 0 or xc == 0:
            combos = [(ks + (0,), w) for ks, w in combos]
            continue
        coeffs = _reorder_coeffs(yb, xc)
        combos = [(ks + (k,), w * ck) for ks, w in combos for k, ck in enumerate(coeffs)]
    if p:
        combos = [(ks, w % p) for ks, w in combos if w % p]
    return tuple(combos)


def _mul_terms(ta: dict, tb: dict, n: int, p: int) -> dict:
    out: dict = {}
    get = out.get
    for a, ca in ta.items():
        ay = a[n : 2 * n]
        for b, cb in tb.items():
            c = ca * cb
            base = [u + v for u, v in zip(a, b)]
            for ks, w in _contractions(ay, b[:n], p):
                key = base[:]
                for i, k in enumerate(ks):
                    if k:
                        key[i] -= k
                        key[n + i] -= k
                key = tuple(key)
                out[key] = get(key, 0) + c * w
    return out


class WeylElement:
    """Sparse normal-ordered element: a map exponent vector -> coefficient."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: AlgebraSignature, terms: dict | None = None):
        self.sig = sig
        norm = sig.ring.norm
        clean = {}
        for alpha, c in (terms or {}).items():
            if isinstance(c, Coefficient):
                c = c.value
            c = norm(c)
            if c:
                if len(alpha) != sig.nvars:
                    raise SignatureMismatch(f"exponent vector {alpha} has wrong length")
                clean[tuple(alpha)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, sig, terms):
        # terms already canonical
        obj = cls.__new__(cls)
        obj.sig = sig
        obj.terms = terms
        return obj

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> WeylElement:
        if isinstance(other, WeylElement):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig} vs {other.sig}")
            return other
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.sig.scalar(other)
        return NotImplemented

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self):
        """Total degree with every generator weighted 1; ``NEG_INF`` for 0."""
        if not self.terms:
            return NEG_INF
        return max(sum(alpha) for alpha in self.terms)

    def coefficient(self, alpha):
        return self.terms.get(tuple(alpha), 0)

    def is_constant(self) -> bool:
        return all(not any(alpha) for alpha in self.terms)

    def constant(self):
        """The scalar value of a constant element."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.sig.nvars, 0)

    def in_coefficient_ring(self) -> bool:
        """True when only central variables occur."""
        k = 2 * self.sig.n
        return all(not any(alpha[:k]) for alpha in self.terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            out[alpha] = out.get(alpha, 0) + c
        return WeylElement(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.sig, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> WeylElement:
        if isinstance(c, Coefficient):
            c = c.value
        return WeylElement(self.sig, {a: v * c for a, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.sig.zero()
        p = self.sig.ring.characteristic
        return WeylElement(self.sig, _mul_terms(self.terms, other.terms, self.sig.n, p))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise NegativeExponent(f"negative power {k}")
        # noncommutative ring: plain left fold, no squaring tricks
        result = self.sig.one()
        for _ in range(k):
            result = result * self
        return result

    # -- comparison / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.sig == other.sig and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.sig.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"WeylElement({render(self)!r}, n={self.sig.n}, m={self.sig.m}, ring={self.sig.ring})"


def monomial_name(alpha, prefix="x") -> str:
    parts = []
    for i, e in enumerate(alpha, start=1):
        if e == 1:
            parts.append(f"{prefix}{i}")
        elif e:
            parts.append(f"{prefix}{i}^{e}")
    return "*".join(parts)


def render_terms(terms, prefix="x") -> str:
    """Render ``(alpha, coeff)`` pairs, already ordered, as canonical text."""
    out = []
    for alpha, c in terms:
        mono = monomial_name(alpha, prefix)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) or "0"


def render(a: WeylElement) -> str:
    """Canonical text, e.g. ``"x1^2*x2 + 3*x2 - 1/2"``."""
    return render_terms(a.sorted_terms())


def monomial_product(sig: AlgebraSignature, alpha, beta) -> WeylElement:
    return sig.monomial(alpha) * sig.monomial(beta)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b - b * a


def ad_power(a: WeylElement, b: WeylElement, k: int) -> WeylElement:
    """``(ad a)^k (b)``."""
    if k < 0:
        raise NegativeExponent(f"negative power {k}")
    for _ in range(k):
        if not b:
            break
        b = commutator(a, b)
    return b


# -- independent oracle ------------------------------------------------------


def _apply_operator(terms, n, f):
    """Act with the differential operator ``terms`` on polynomial ``f``."""
    out: dict = {}
    for alpha, c in terms.items():
        mult, der = alpha[:n], alpha[n:]
        for gamma, fc in f.items():
            if any(g < d for g, d in zip(gamma, der)):
                continue
            w = fc * c
            for g, d in zip(gamma, der):
                for j in range(d):
                    w *= g - j
            key = tuple(g - d + t for g, d, t in zip(gamma, der, mult))
            out[key] = out.get(key, 0) + w
    return {k: v for k, v in out.items() if v}


def oracle_product(a: WeylElement, b: WeylElement) -> WeylElement:
    """Product computed through the differential-operator representation.

    ``x_i`` acts on ``Q[t_1..t_n]`` by multiplication with ``t_i`` and
    ``x_{n+i}`` by ``d/dt_i``. The composite operator is applied to all
    monomials ``t^gamma`` of small enough degree and its normal form is read
    off by triangular back-substitution. Shares no code with ``__mul__``.
    """
    sig = a.sig
    if b.sig != sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")
    if sig.ring.kind not in (RATIONALS, INTEGERS) or sig.m:
        raise UnsupportedRing("oracle needs Z or Q coefficients and m = 0")
    n = sig.n
    if not a.terms or not b.terms:
        return sig.zero()
    top = a.degree() + b.degree()
    gammas = [g for g in _cartesian(range(top + 1), repeat=n) if sum(g) <= top]
    gammas.sort(key=sum)

    found: dict = {}  # (mult, der) -> coefficient
    for gamma in gammas:
        image = _apply_operator(a.terms, n, _apply_operator(b.terms, n, {gamma: 1}))
        for (mult, der), c in found.items():
            if any(g < d for g, d in zip(gamma, der)):
                continue
            w = c
            for g, d in zip(gamma, der):
                for j in range(d):
                    w *= g - j
            key = tuple(g - d + t for g, d, t in zip(gamma, der, mult))
            image[key] = image.get(key, 0) - w
        gfact = 1
        for g in gamma:
            gfact *= factorial(g)
        for mult, c in image.items():
            if c:
                found[(mult, gamma)] = Fraction(c, gfact) if not isinstance(c, Fraction) else c / gfact
    return WeylElement(sig, {m + d: c for (m, d), c in found.items()})
