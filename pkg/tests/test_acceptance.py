"""Exit criteria. Run with ``pytest -s tests/test_acceptance.py`` to see the
one-line PASS/FAIL summary for each criterion."""

import random
from collections import Counter
from itertools import product

import pytest

from helpers import random_central, random_element, random_mixed
from weylinv.certify import certify
from weylinv.charp import (
    PoissonStructure,
    canonical_bracket,
    central_decompose,
    check_center_preserved,
    has_p_divisible_exponents,
    induced_poisson_endo,
    is_central,
    poisson_bracket,
    recompose,
    to_poisson_poly,
)
from weylinv.coeff import GF, QQ, ZZ
from weylinv.errors import DeterminantNotUnit
from weylinv.expr import parse
from weylinv.morphism import Endomorphism, phi_sigma
from weylinv.poly import Poly
from weylinv.symplectic import verify_step6
from weylinv.weyl import AlgebraSignature, oracle_product, render

pytestmark = pytest.mark.acceptance

PRIMES = (2, 3, 5, 7)
NS = (1, 2)


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_inversion_round_trip(capsys, corpus, inversions):
    failures = []
    for name, e in corpus:
        tau = inversions[name].inverse
        ident = Endomorphism.identity(e.sig)
        if not (e.compose(tau) == ident and tau.compose(e) == ident):
            failures.append(name)
    ok = len(corpus) >= 100 and not failures
    report(capsys, 1, ok, f"{len(corpus) - len(failures)}/{len(corpus)} exact round trips, failures={failures}")


def test_criterion_02_degree_bound(capsys, corpus, inversions):
    hist = Counter()
    bad = []
    for name, e in corpus:
        rep = inversions[name]
        hist[(rep.degree_sigma, rep.degree_inverse, rep.bound)] += 1
        if rep.degree_inverse > rep.bound:
            bad.append(name)
    with capsys.disabled():
        print("\n  deg sigma | deg inverse | bound | count")
        for (ds, di, b), c in sorted(hist.items()):
            print(f"  {ds:>9} | {di:>11} | {b:>5} | {c}")
    report(capsys, 2, not bad, f"bound holds on {len(corpus) - len(bad)}/{len(corpus)}, violations={bad}")


def test_criterion_03_phi_of_identity(capsys):
    checked, bad = 0, []
    for n in NS:
        sig = AlgebraSignature(n, 0, QQ)
        ident = Endomorphism.identity(sig).validate()
        if phi_sigma(ident, sig.one()) != sig.one():
            bad.append("phi(1)")
        for alpha in product(range(7), repeat=sig.nvars):
            if 1 <= sum(alpha) <= 6:
                checked += 1
                if phi_sigma(ident, sig.monomial(alpha)):
                    bad.append((n, alpha))
    report(capsys, 3, not bad, f"{checked} monomials projected to 0, phi(1)=1, failures={bad[:5]}")


def test_criterion_04_wilson_constant(capsys):
    bad = []
    for n, p in product(NS, PRIMES):
        us = [g**p for g in AlgebraSignature(n, 0, GF(p)).gens()]
        for i, j in product(range(n), repeat=2):
            got = poisson_bracket(us[n + i], us[j])
            if got != got.sig.scalar(-int(i == j)):
                bad.append((n, p, i + 1, j + 1, render(got)))
    report(capsys, 4, not bad, f"{{x(n+i)^p, xj^p}} = -delta_ij for n in {NS}, p in {PRIMES}, failures={bad}")


def _pairs_and_triples(n, p, count, arity):
    rng = random.Random(1000 * n + p + 17 * arity)
    sig = AlgebraSignature(n, 0, GF(p))
    return [tuple(random_central(rng, sig) for _ in range(arity)) for _ in range(count)]


def test_criterion_05_bracket_transport(capsys):
    total, bad = 0, []
    for n, p in product(NS, PRIMES):
        S = PoissonStructure.measure(n, p)
        for a, b in _pairs_and_triples(n, p, 200, 2):
            total += 1
            lhs = to_poisson_poly(poisson_bracket(a, b))
            if lhs != canonical_bracket(to_poisson_poly(a), to_poisson_poly(b), S):
                bad.append((n, p, render(a), render(b)))
    report(capsys, 5, not bad, f"{total} pairs (200 per (n,p)) agree, failures={bad[:3]}")


def _axioms(br, a, b, c, zero):
    ab = br(a, b)
    antisym = ab == zero - br(b, a)
    leibniz = br(a, b * c) == ab * c + b * br(a, c)
    jacobi = not (br(a, br(b, c)) + br(b, br(c, a)) + br(c, ab))
    return antisym and leibniz and jacobi


def test_criterion_06_poisson_axioms(capsys):
    total, bad = 0, []
    for n, p in product(NS, PRIMES):
        S = PoissonStructure.measure(n, p)
        zero_w = AlgebraSignature(n, 0, GF(p)).zero()
        zero_p = Poly(2 * n, GF(p))

        def canon(f, g):
            return canonical_bracket(f, g, S)

        for a, b, c in _pairs_and_triples(n, p, 100, 3):
            total += 1
            if not _axioms(poisson_bracket, a, b, c, zero_w):
                bad.append(("commutator", n, p))
            fa, fb, fc = map(to_poisson_poly, (a, b, c))
            if not _axioms(canon, fa, fb, fc, zero_p):
                bad.append(("canonical", n, p))
    report(capsys, 6, not bad, f"{total} triples x 2 brackets satisfy all axioms, failures={bad[:3]}")


def test_criterion_07_center(capsys):
    bad = []
    for n, p in product(NS, (2, 3, 5)):
        sig = AlgebraSignature(n, 0, GF(p))
        bad += [("gen", n, p, i) for i, g in enumerate(sig.gens(), 1) if not is_central(g**p)]
    rng = random.Random(7)
    samples = 0
    for _ in range(600):
        n, p = rng.choice(NS), rng.choice((2, 3, 5))
        sig = AlgebraSignature(n, 0, GF(p))
        a = random_mixed(rng, sig) if rng.random() < 0.7 else random_element(rng, sig, max_deg=6)
        samples += 1
        central = is_central(a)
        if central != has_p_divisible_exponents(a):
            bad.append(("criterion", render(a)))
        if central and recompose(central_decompose(a), sig) != a:
            bad.append(("decompose", render(a)))
    report(capsys, 7, not bad and samples >= 500, f"x_i^p central; {samples} elements agree on both tests, failures={bad[:3]}")


def test_criterion_08_center_preserved(capsys, corpus_m0):
    bad = [(name, p) for name, e in corpus_m0 for p in PRIMES if not check_center_preserved(e, p)]
    report(capsys, 8, not bad, f"{len(corpus_m0)} m=0 corpus maps x p in {PRIMES}, failures={bad[:5]}")


def test_criterion_09_step6_certificate(capsys, corpus_m0):
    bad, dets = [], Counter()
    for name, e in corpus_m0:
        for p in PRIMES:
            rep = verify_step6(induced_poisson_endo(e, p), PoissonStructure.measure(e.sig.n, p))
            dets[str(rep.det_j)] += 1
            if not (rep.passed and rep.identity_ok):
                bad.append((name, p))
    S = PoissonStructure.measure(1, 5)
    u1, u2 = Poly.var(2, GF(5), 1), Poly.var(2, GF(5), 2)
    with pytest.raises(DeterminantNotUnit) as info:
        verify_step6([u1 * u1, u2], S)
    rejected = str(info.value.report.det_j) == "2*u1" and info.value.report.identity_ok
    ok = not bad and rejected
    report(capsys, 9, ok, f"det J in {{+-1}} on all {sum(dets.values())} checks {dict(dets)}; (u1^2, u2) at p=5 rejected with det J = {info.value.report.det_j}")


def test_criterion_10_oracle_equivalence(capsys):
    total, bad = 0, []
    rng = random.Random(10)
    for n in NS:
        sig = AlgebraSignature(n, 0, QQ)
        for _ in range(100):
            a = random_element(rng, sig, max_deg=5, max_terms=5)
            b = random_element(rng, sig, max_deg=5, max_terms=5)
            total += 1
            if a * b != oracle_product(a, b):
                bad.append((render(a), render(b)))
    report(capsys, 10, total >= 200 and not bad, f"{total} products match the differential-operator oracle, failures={bad[:2]}")


def test_criterion_11_cli_determinism(capsys, tmp_path, corpus):
    from weylinv.certify import dumps
    from weylinv.cli import main

    runs_ok = True
    for name, e in corpus[::20]:
        path = tmp_path / f"{name}.json"
        path.write_text(dumps(e, name))
        outs = []
        for _ in range(2):
            main(["certify", str(path), "--format", "structured"])
            outs.append(capsys.readouterr().out.encode())
        runs_ok &= outs[0] == outs[1] and certify(e, endo_id=name).to_json().encode() == outs[0]
    rng = random.Random(11)
    sigs = [AlgebraSignature(n, m, r) for n, m, r in product(NS, (0, 1), (QQ, ZZ, GF(5)))]
    bad = []
    for _ in range(500):
        sig = rng.choice(sigs)
        a = random_element(rng, sig, max_deg=5)
        if parse(render(a), sig) != a:
            bad.append(render(a))
    report(capsys, 11, runs_ok and not bad, f"certify byte-identical: {runs_ok}; 500 parse/render round trips, failures={bad[:3]}")
