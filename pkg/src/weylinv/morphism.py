"""Endomorphisms of ``A_n(K[z])`` and the automorphism inversion formula.

An endomorphism is given by the images of the ``2n+m`` generators. The
inverse of an automorphism ``sigma`` is computed coefficient by coefficient:

    sigma^{-1}(a) = sum_alpha  phi_sigma( (d')^alpha a / alpha! ) * x^alpha

where ``d'_i = ad sigma(x_{n+i})``, ``d'_{n+i} = -ad sigma(x_i)`` and
``phi_sigma`` projects onto the coefficient ring along the basis of
``sigma``-monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .coeff import QQ, RATIONALS, RingSpec
from .errors import (
    BoundViolated,
    IndexOutOfRange,
    NonTerminating,
    NotScalar,
    NotValidated,
    RelationViolated,
    SignatureMismatch,
    UnsupportedCentralMap,
    UnsupportedRing,
    VerificationFailed,
)
from .weyl import AlgebraSignature, WeylElement, commutator


def expected_bracket(sig: AlgebraSignature, i: int, j: int) -> int:
    """The scalar ``[x_i, x_j]`` in the algebra (1-based indices)."""
    n = sig.n
    if i <= n and j == n + i:
        return -1
    if j <= n and i == n + j:
        return 1
    return 0


class Endomorphism:
    """Generator images of a (candidate) algebra endomorphism."""

    def __init__(self, sig: AlgebraSignature, images, validated: bool = False):
        images = tuple(images)
        if len(images) != sig.nvars:
            raise SignatureMismatch(f"expected {sig.nvars} images, got {len(images)}")
        for img in images:
            if img.sig != sig:
                raise SignatureMismatch(f"image {img} lives in {img.sig}, not {sig}")
        self.sig = sig
        self.images = images
        self.validated = validated
        self._powers = {}

    @classmethod
    def identity(cls, sig: AlgebraSignature) -> Endomorphism:
        return cls(sig, sig.gens(), validated=True)

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.sig == other.sig and self.images == other.images

    def __hash__(self):
        return hash((self.sig, self.images))

    def __repr__(self):
        body = ", ".join(f"x{i} -> {img}" for i, img in enumerate(self.images, 1))
        return f"Endomorphism({body})"

    def is_identity(self) -> bool:
        return self.images == tuple(self.sig.gens())

    def change_ring(self, ring: RingSpec) -> Endomorphism:
        sig = self.sig.with_ring(ring)
        return Endomorphism(sig, [WeylElement(sig, img.terms) for img in self.images], self.validated)

    # -- relations --------------------------------------------------------

    def relation_violations(self) -> list:
        """Every failing relation as ``(i, j, value, expected)``."""
        sig = self.sig
        n, N = sig.n, sig.nvars
        pairs = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                pairs.append((n + i, j))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                pairs.append((i, j))
                pairs.append((n + i, n + j))
        for c in range(2 * n + 1, N + 1):
            for k in range(1, N + 1):
                if k != c and not (k > 2 * n and k < c):
                    pairs.append((c, k))
        bad = []
        for i, j in pairs:
            value = commutator(self.images[i - 1], self.images[j - 1])
            want = expected_bracket(sig, i, j)
            if value != sig.scalar(want):
                bad.append((i, j, value, want))
        return bad

    def validate(self) -> Endomorphism:
        bad = self.relation_violations()
        if bad:
            raise RelationViolated(bad)
        return Endomorphism(self.sig, self.images, validated=True)

    def _require_valid(self):
        if not self.validated:
            raise NotValidated("endomorphism has not been validated")

    # -- evaluation -------------------------------------------------------

    def image_power(self, i: int, k: int) -> WeylElement:
        """``images[i]^k`` (0-based ``i``), memoised."""
        key = (i, k)
        hit = self._powers.get(key)
        if hit is None:
            hit = self.sig.one() if k == 0 else self.image_power(i, k - 1) * self.images[i]
            self._powers[key] = hit
        return hit

    def apply(self, a: WeylElement) -> WeylElement:
        """Substitute the images into the normal form of ``a``."""
        self._require_valid()
        if a.sig != self.sig:
            raise SignatureMismatch(f"{a.sig} vs {self.sig}")
        out = self.sig.zero()
        for alpha, c in a.terms.items():
            term = self.sig.scalar(c)
            for i, k in enumerate(alpha):
                if k:
                    term = term * self.image_power(i, k)
            out = out + term
        return out

    __call__ = apply

    def compose(self, other: Endomorphism) -> Endomorphism:
        """``self o other``: first ``other``, then ``self``."""
        self._require_valid()
        other._require_valid()
        if other.sig != self.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")
        return Endomorphism(self.sig, [self.apply(img) for img in other.images], validated=True)

    def degree(self) -> int:
        return max(img.degree() for img in self.images)


def degree_of(e: Endomorphism) -> int:
    return e.degree()


# -- inversion formula ---------------------------------------------------------


def partial_prime(e: Endomorphism, i: int):
    """The derivation ``d'_i`` attached to ``e`` (``1 <= i <= 2n``)."""
    e._require_valid()
    n = e.sig.n
    if not 1 <= i <= 2 * n:
        raise IndexOutOfRange(f"d'_{i} needs 1 <= i <= {2 * n}")
    if i <= n:
        partner = e.images[n + i - 1]
        return lambda b: commutator(partner, b)
    partner = e.images[i - n - 1]
    return lambda b: commutator(b, partner)


def _cap(e: Endomorphism, b: WeylElement) -> int:
    sig = e.sig
    return int(b.degree()) * e.degree() ** (2 * sig.n + sig.m - 1) + 1


def _require_rationals(e: Endomorphism):
    if e.sig.ring.kind != RATIONALS:
        raise UnsupportedRing(f"the inversion formula divides by factorials; ring {e.sig.ring} is not Q")


def _phi_i(e: Endomorphism, i: int, b: WeylElement) -> WeylElement:
    # sum_k (-1)^k / k! * sigma(x_i)^k * (d'_i)^k b
    d = partial_prime(e, i)
    limit = _cap(e, b)
    total = b
    term = b
    k = 0
    while True:
        term = d(term)
        if not term:
            return total
        k += 1
        if k > limit:
            raise NonTerminating(f"(d'_{i})^k did not vanish within {limit} steps")
        total = total + (e.image_power(i - 1, k) * term).scale(Fraction((-1) ** k, factorial(k)))


def phi_sigma(e: Endomorphism, b: WeylElement) -> WeylElement:
    """Projection of ``b`` onto the coefficient ring ``K[z]``.

    ``phi_1`` is applied first and ``phi_{2n}`` last. The result has no
    Weyl-generator content; for ``m = 0`` it is a constant (use
    ``.constant()`` for the scalar).
    """
    _require_rationals(e)
    e._require_valid()
    if b.sig != e.sig:
        raise SignatureMismatch(f"{b.sig} vs {e.sig}")
    cur = b
    for i in range(1, 2 * e.sig.n + 1):
        if not cur:
            break
        cur = _phi_i(e, i, cur)
    if not cur.in_coefficient_ring():
        raise NotScalar(f"phi_sigma left a non-scalar remainder: {cur}")
    return cur


def _solve_affine_center(e: Endomorphism):
    """Split off the action on central variables.

    Returns ``(fixed, undo)`` where ``fixed`` has the same Weyl images and
    fixes every central variable, and ``undo`` is the endomorphism
    ``x -> x, z -> psi^{-1}(z)`` (``None`` when the centre is already fixed).
    """
    sig = e.sig
    n2, m = 2 * sig.n, sig.m
    central = e.images[n2:]
    gens = sig.gens()
    if all(img == g for img, g in zip(central, gens[n2:])):
        return e, None
    A = [[Fraction(0)] * m for _ in range(m)]
    shift = [Fraction(0)] * m
    for k, img in enumerate(central):
        if not img.in_coefficient_ring() or img.degree() > 1:
            raise UnsupportedCentralMap(f"central image {img} is not affine in the central variables")
        for alpha, c in img.terms.items():
            if not any(alpha):
                shift[k] = Fraction(c)
            else:
                A[k][alpha.index(1) - n2] = Fraction(c)
    inv = _invert_matrix(A)
    if inv is None:
        raise NotScalar("central part is not invertible")
    undo_images = list(gens[:n2])
    for k in range(m):
        img = sig.zero()
        for l in range(m):
            img = img + (gens[n2 + l] - shift[l]).scale(inv[k][l])
        undo_images.append(img)
    fixed = Endomorphism(sig, list(e.images[:n2]) + gens[n2:], validated=True)
    return fixed, Endomorphism(sig, undo_images, validated=True)


def _invert_matrix(A):
    m = len(A)
    M = [row[:] + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(A)]
    for col in range(m):
        piv = next((r for r in range(col, m) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(m):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[m:] for row in M]


def _outer_sum(e: Endomorphism, a: WeylElement, primed: bool):
    sig = e.sig
    n2 = 2 * sig.n
    partials = [partial_prime(e, j) for j in range(1, n2 + 1)]
    zero_alpha = (0,) * n2
    level = {zero_alpha: a}
    cap = _cap(e, a)
    result = sig.zero()
    used = 0
    depth = 0
    while level:
        for alpha, d in level.items():
            c = phi_sigma(e, d)
            if not c:
                continue
            denom = 1
            for k in alpha:
                denom *= factorial(k)
            full = alpha + (0,) * sig.m
            basis = e.apply(sig.monomial(full)) if primed else sig.monomial(full)
            result = result + c.scale(Fraction(1, denom)) * basis
            used += 1
        nxt = {}
        for alpha, d in level.items():
            last = max((j for j, k in enumerate(alpha) if k), default=0)
            for j in range(last, n2):
                child = partials[j](d)
                if child:
                    beta = list(alpha)
                    beta[j] += 1
                    nxt[tuple(beta)] = child
        level = nxt
        depth += 1
        if level and depth > cap:
            raise NonTerminating(f"outer sum still nonzero at level {depth} > cap {cap}")
    return result, used


def invert_element(e: Endomorphism, a: WeylElement, primed: bool = False) -> WeylElement:
    """``e^{-1}(a)`` via the inversion formula.

    With ``primed=True`` the basis monomials ``x^alpha`` are read as
    products of images ``e(x_1)^a1 ...``; that literal reading reproduces
    ``a`` rather than its preimage and exists only for comparison.
    """
    _require_rationals(e)
    e._require_valid()
    if a.sig != e.sig:
        raise SignatureMismatch(f"{a.sig} vs {e.sig}")
    if not a:
        return a
    fixed, undo = _solve_affine_center(e)
    result, _ = _outer_sum(fixed, a, primed)
    return undo.apply(result) if undo is not None and not primed else result


@dataclass
class InversionReport:
    inverse: Endomorphism
    degree_sigma: int
    degree_inverse: int
    bound: int
    terms_of_outer_sum: int


def invert(e: Endomorphism) -> InversionReport:
    """Invert ``e`` and verify the result both ways.

    Raises :class:`NotScalar` or :class:`VerificationFailed` when ``e`` is
    not an automorphism.
    """
    _require_rationals(e)
    e._require_valid()
    sig = e.sig
    fixed, undo = _solve_affine_center(e)
    images = []
    used = 0
    for g in sig.gens():
        img, count = _outer_sum(fixed, g, primed=False)
        if undo is not None:
            img = undo.apply(img)
        images.append(img)
        used += count
    try:
        inverse = Endomorphism(sig, images).validate()
    except RelationViolated as exc:
        raise VerificationFailed(f"candidate inverse is not an endomorphism: {exc}") from exc
    if not e.compose(inverse).is_identity():
        raise VerificationFailed("sigma o tau != id")
    if not inverse.compose(e).is_identity():
        raise VerificationFailed("tau o sigma != id")
    deg_s = e.degree()
    deg_i = inverse.degree()
    bound = deg_s ** (2 * sig.n + sig.m - 1)
    if deg_i > bound:
        raise BoundViolated(f"deg inverse {deg_i} exceeds (deg sigma)^(2n+m-1) = {bound}")
    return InversionReport(inverse, deg_s, deg_i, bound, used)


def rational_endomorphism(e: Endomorphism) -> Endomorphism:
    """Base change to ``Q`` (a no-op for rational input)."""
    return e if e.sig.ring == QQ else e.change_ring(QQ)
