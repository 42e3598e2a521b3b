"""Random generators shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from weylinv.coeff import PRIME_FIELD, RATIONALS
from weylinv.weyl import AlgebraSignature, WeylElement


def _coeff(rng, ring):
    if ring.kind == PRIME_FIELD:
        return rng.randrange(1, ring.p) if ring.p > 2 else 1
    c = rng.choice([-3, -2, -1, 1, 1, 2, 5])
    if ring.kind == RATIONALS and rng.random() < 0.25:
        c = Fraction(c, rng.choice([2, 3]))
    return c


def random_monomial(rng, sig, max_deg):
    deg = rng.randint(0, max_deg)
    alpha = [0] * sig.nvars
    for _ in range(deg):
        alpha[rng.randrange(sig.nvars)] += 1
    return tuple(alpha)


def random_element(rng, sig, max_deg=4, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_monomial(rng, sig, max_deg)] = _coeff(rng, sig.ring)
    return WeylElement(sig, terms)


def random_central(rng, sig, max_udeg=2, max_terms=3):
    """Random element of F_p[x_i^p]."""
    p = sig.ring.p
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        alpha = random_monomial(rng, sig, max_udeg)
        terms[tuple(p * a for a in alpha)] = _coeff(rng, sig.ring)
    return WeylElement(sig, terms)


def random_mixed(rng, sig, max_terms=3):
    """Elements whose exponents are often, but not always, multiples of p."""
    p = sig.ring.p
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        alpha = tuple(rng.choice([0, 0, p, 1, 2 * p]) for _ in range(sig.nvars))
        terms[alpha] = _coeff(rng, sig.ring)
    return WeylElement(sig, terms)


def coefficients(ring):
    if ring.kind == PRIME_FIELD:
        return st.integers(0, ring.p - 1)
    ints = st.integers(-5, 5)
    if ring.kind == RATIONALS:
        return st.one_of(ints, st.fractions(max_denominator=4).filter(lambda f: abs(f) <= 5))
    return ints


@st.composite
def elements(draw, sig: AlgebraSignature, max_deg=4, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        idx = draw(st.lists(st.integers(0, sig.nvars - 1), max_size=max_deg))
        alpha = [0] * sig.nvars
        for i in idx:
            alpha[i] += 1
        terms[tuple(alpha)] = draw(coefficients(sig.ring))
    return WeylElement(sig, terms)
