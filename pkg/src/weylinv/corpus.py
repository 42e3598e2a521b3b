"""Elementary automorphisms and a seeded corpus of their compositions.

All elementary maps have integer coefficients, so corpus members can be
reduced modulo any prime.
"""

from __future__ import annotations

import random

from .coeff import QQ
from .morphism import Endomorphism
from .weyl import AlgebraSignature, WeylElement


def _d(f: WeylElement, idx: int) -> WeylElement:
    # termwise derivative; only used on commuting variables
    out = {}
    for alpha, c in f.terms.items():
        e = alpha[idx]
        if e:
            beta = list(alpha)
            beta[idx] -= 1
            out[tuple(beta)] = c * e
    return WeylElement(f.sig, out)


def swap(sig: AlgebraSignature, i: int) -> Endomorphism:
    """``x_i -> x_{n+i}``, ``x_{n+i} -> -x_i``."""
    n = sig.n
    g = sig.gens()
    imgs = list(g)
    imgs[i - 1] = g[n + i - 1]
    imgs[n + i - 1] = -g[i - 1]
    return Endomorphism(sig, imgs, validated=True)


def mix(sig: AlgebraSignature, i: int, j: int, c: int) -> Endomorphism:
    """``x_i -> x_i + c x_j``, ``x_{n+j} -> x_{n+j} - c x_{n+i}`` (i != j)."""
    n = sig.n
    g = sig.gens()
    imgs = list(g)
    imgs[i - 1] = g[i - 1] + g[j - 1] * c
    imgs[n + j - 1] = g[n + j - 1] - g[n + i - 1] * c
    return Endomorphism(sig, imgs, validated=True)


def shear_momenta(sig: AlgebraSignature, f: WeylElement) -> Endomorphism:
    """``x_{n+i} -> x_{n+i} + df/dx_i`` for ``f`` in positions and centrals."""
    n = sig.n
    imgs = sig.gens()
    for i in range(n):
        imgs[n + i] = imgs[n + i] + _d(f, i)
    return Endomorphism(sig, imgs, validated=True)


def shear_positions(sig: AlgebraSignature, h: WeylElement) -> Endomorphism:
    """``x_i -> x_i + dh/dx_{n+i}`` for ``h`` in momenta and centrals."""
    n = sig.n
    imgs = sig.gens()
    for i in range(n):
        imgs[i] = imgs[i] + _d(h, n + i)
    return Endomorphism(sig, imgs, validated=True)


def central_affine(sig: AlgebraSignature, k: int, sign: int, shift: int) -> Endomorphism:
    """``z_k -> sign * z_k + shift``."""
    imgs = sig.gens()
    idx = 2 * sig.n + k - 1
    imgs[idx] = imgs[idx] * sign + shift
    return Endomorphism(sig, imgs, validated=True)


def _random_poly(rng: random.Random, sig: AlgebraSignature, variables, max_deg: int) -> WeylElement:
    f = sig.zero()
    for _ in range(rng.randint(1, 2)):
        deg = rng.randint(2, max_deg)
        alpha = [0] * sig.nvars
        for _ in range(deg):
            alpha[rng.choice(variables)] += 1
        f = f + sig.monomial(alpha, rng.choice([-2, -1, 1, 1, 2, 3]))
    return f


def random_elementary(rng: random.Random, sig: AlgebraSignature) -> Endomorphism:
    n, m = sig.n, sig.m
    central = list(range(2 * n, sig.nvars))
    kinds = ["swap", "shear_p", "shear_m", "shear_m"]
    if n > 1:
        kinds.append("mix")
    if m:
        kinds.append("central")
    kind = rng.choice(kinds)
    if kind == "swap":
        return swap(sig, rng.randint(1, n))
    if kind == "mix":
        i, j = rng.sample(range(1, n + 1), 2)
        return mix(sig, i, j, rng.choice([-1, 1, 2]))
    if kind == "central":
        return central_affine(sig, rng.randint(1, m), rng.choice([-1, 1]), rng.randint(-2, 2))
    if kind == "shear_m":
        f = _random_poly(rng, sig, list(range(n)) + central, 4)
        return shear_momenta(sig, f)
    h = _random_poly(rng, sig, list(range(n, 2 * n)) + central, 3)
    return shear_positions(sig, h)


def random_automorphism(rng: random.Random, sig: AlgebraSignature, max_factors: int = 4, max_degree: int = 6):
    """Compose up to ``max_factors`` elementary maps keeping degree bounded."""
    while True:
        e = Endomorphism.identity(sig)
        for _ in range(rng.randint(1, max_factors)):
            for _attempt in range(4):
                cand = e.compose(random_elementary(rng, sig))
                if cand.degree() <= max_degree:
                    e = cand
                    break
        if e.degree() > 1 or (not e.is_identity() and rng.random() < 0.1):
            return e


CORPUS_LAYOUT = ((1, 0, 40), (1, 1, 25), (2, 0, 25), (2, 1, 15))


def generate_corpus(seed: int = 2024, layout=CORPUS_LAYOUT, ring=QQ, max_degree: int = 6):
    """Deterministic list of ``(name, automorphism)`` pairs."""
    rng = random.Random(seed)
    out = []
    for n, m, count in layout:
        sig = AlgebraSignature(n, m, ring)
        for k in range(count):
            out.append((f"n{n}m{m}-{k:03d}", random_automorphism(rng, sig, max_degree=max_degree)))
    return out
