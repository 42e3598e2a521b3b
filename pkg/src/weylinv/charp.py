"""Reduction modulo p, the Frobenius centre and its Poisson bracket.

In ``A_n(F_p)`` the centre is ``C_p = F_p[x_1^p, ..., x_{2n}^p]`` and the
whole algebra is free over it with basis ``{x^r : 0 <= r_i < p}``. For
central ``a, b`` the integer commutator of any lifts is divisible by ``p``;
``([a, b] / p) mod p`` is a Poisson bracket on ``C_p``, which in the
coordinates ``u_i = x_i^p`` is a constant-coefficient symplectic bracket.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import GF, PRIME_FIELD, ZZ, divide_exact_by_prime
from .errors import CenterNotPreserved, NotCentralInput, UnsupportedRing
from .morphism import Endomorphism
from .poly import Poly
from .weyl import AlgebraSignature, WeylElement, commutator


def _need_plain(sig: AlgebraSignature):
    if sig.m:
        raise UnsupportedRing("characteristic-p tools need m = 0")


def _need_fp(a: WeylElement) -> int:
    if a.sig.ring.kind != PRIME_FIELD:
        raise UnsupportedRing(f"expected an element over F_p, got {a.sig.ring}")
    return a.sig.ring.p


def reduce_mod_p(a: WeylElement, p: int) -> WeylElement:
    """Termwise reduction of an integral element."""
    sig = a.sig.with_ring(GF(p))
    return WeylElement(sig, a.terms)


def reduce_endomorphism(e: Endomorphism, p: int) -> Endomorphism:
    return e.change_ring(GF(p))


def lift_to_Z(a: WeylElement) -> WeylElement:
    """Representatives in ``[0, p)`` over the integers."""
    _need_fp(a)
    return WeylElement(a.sig.with_ring(ZZ), a.terms)


def is_central(a: WeylElement) -> bool:
    """Commutator test against all ``2n`` generators."""
    _need_plain(a.sig)
    return all(not commutator(a, g) for g in a.sig.gens())


def has_p_divisible_exponents(a: WeylElement) -> bool:
    p = _need_fp(a)
    return all(e % p == 0 for alpha in a.terms for e in alpha)


def _require_central(a: WeylElement):
    if not has_p_divisible_exponents(a):
        raise NotCentralInput(f"{a} is not in F_p[x_i^p]")


def central_decompose(a: WeylElement) -> dict:
    """Split ``a = sum_r c_r * x^r`` with central ``c_r`` and ``0 <= r_i < p``.

    Keys are residue exponent vectors, values central elements.
    """
    _need_plain(a.sig)
    p = _need_fp(a)
    parts: dict = {}
    for alpha, c in a.terms.items():
        r = tuple(e % p for e in alpha)
        q = tuple(e - e % p for e in alpha)
        parts.setdefault(r, {})[q] = c
    return {r: WeylElement(a.sig, t) for r, t in sorted(parts.items())}


def recompose(parts: dict, sig: AlgebraSignature) -> WeylElement:
    out = sig.zero()
    for r, c in parts.items():
        out = out + c * sig.monomial(r)
    return out


def poisson_bracket(a: WeylElement, b: WeylElement) -> WeylElement:
    """``([lift a, lift b] / p) mod p`` for central ``a, b``."""
    _need_plain(a.sig)
    p = _need_fp(a)
    _require_central(a)
    _require_central(b)
    c = commutator(lift_to_Z(a), lift_to_Z(b))
    divided = {alpha: divide_exact_by_prime(v, p) for alpha, v in c.terms.items()}
    return WeylElement(a.sig, divided)


def to_poisson_poly(c: WeylElement) -> Poly:
    """Rewrite a central element in ``u_i = x_i^p``."""
    _need_plain(c.sig)
    p = _need_fp(c)
    _require_central(c)
    return Poly(2 * c.sig.n, c.sig.ring, {tuple(e // p for e in alpha): v for alpha, v in c.terms.items()})


def from_poisson_poly(f: Poly, sig: AlgebraSignature) -> WeylElement:
    p = f.ring.p
    return WeylElement(sig.with_ring(f.ring), {tuple(e * p for e in alpha): v for alpha, v in f.terms.items()})


@dataclass(frozen=True)
class PoissonStructure:
    """Generator brackets ``{u_i, u_j}`` measured from the divided commutator."""

    n: int
    p: int
    constants: tuple

    @classmethod
    def measure(cls, n: int, p: int) -> PoissonStructure:
        sig = AlgebraSignature(n, 0, GF(p))
        us = [g ** p for g in sig.gens()]
        rows = []
        for i in range(2 * n):
            row = []
            for j in range(2 * n):
                val = poisson_bracket(us[i], us[j])
                if not val.is_constant():
                    raise AssertionError(f"generator bracket {{u{i+1}, u{j+1}}} = {val} is not constant")
                row.append(val.constant())
            rows.append(tuple(row))
        return cls(n, p, tuple(rows))

    @property
    def ring(self):
        return GF(self.p)

    def matrix(self) -> list:
        """Constants as a matrix of constant polynomials."""
        k = 2 * self.n
        return [[Poly.const(k, self.ring, c) for c in row] for row in self.constants]


def canonical_bracket(f: Poly, g: Poly, S: PoissonStructure) -> Poly:
    """``sum_ij b_ij (df/du_i)(dg/du_j)``."""
    k = 2 * S.n
    if f.nvars != k or g.nvars != k or f.ring != S.ring or g.ring != S.ring:
        raise ValueError("bracket operands do not match the Poisson structure")
    out = Poly(k, S.ring)
    df = [f.diff(i) for i in range(1, k + 1)]
    dg = [g.diff(j) for j in range(1, k + 1)]
    for i in range(k):
        if not df[i]:
            continue
        for j in range(k):
            b = S.constants[i][j]
            if b and dg[j]:
                out = out + df[i] * dg[j] * b
    return out


# -- endomorphisms mod p --------------------------------------------------------


def center_images(e: Endomorphism, p: int, method: str = "power") -> list:
    """``sigma_p(x_i^p)`` for ``i = 1..2n``.

    ``"power"`` raises the reduced image to the p-th power in ``A_n(F_p)``;
    ``"lift"`` computes ``sigma(x_i)^p`` over the integers and reduces.
    """
    _need_plain(e.sig)
    n2 = 2 * e.sig.n
    if method == "power":
        ep = reduce_endomorphism(e, p)
        return [ep.image_power(i, p) for i in range(n2)]
    if method == "lift":
        ez = e if e.sig.ring == ZZ else e.change_ring(ZZ)
        return [reduce_mod_p(ez.image_power(i, p), p) for i in range(n2)]
    raise ValueError(f"unknown method {method!r}")


@dataclass
class CenterCheck:
    ok: bool
    index: int | None = None
    remainder: WeylElement | None = None
    images: list | None = None

    def __bool__(self):
        return self.ok


def check_center_preserved(e: Endomorphism, p: int) -> CenterCheck:
    """Is every ``sigma_p(x_i^p)`` central? Witness on failure.

    The remainder reported is the non-central part: terms with an exponent
    not divisible by ``p``.
    """
    e._require_valid()
    images = center_images(e, p)
    for i, img in enumerate(images, 1):
        if not has_p_divisible_exponents(img):
            bad = WeylElement(img.sig, {a: c for a, c in img.terms.items() if any(x % p for x in a)})
            return CenterCheck(False, i, bad, images)
    return CenterCheck(True, images=images)


def induced_poisson_endo(e: Endomorphism, p: int) -> list:
    """The self-map ``(F_1..F_2n)`` of ``F_p[u]`` induced on the centre."""
    check = check_center_preserved(e, p)
    if not check:
        raise CenterNotPreserved(check.index, check.remainder)
    return [to_poisson_poly(img) for img in check.images]
