"""Command line front end: ``weylinv {invert,certify,reduce,poisson,selftest}``."""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import expr
from .certify import AUTOMORPHISM, DEFAULT_PRIMES, certify, dump_document, load_file
from .charp import (
    PoissonStructure,
    canonical_bracket,
    check_center_preserved,
    poisson_bracket,
    reduce_endomorphism,
    to_poisson_poly,
)
from .coeff import GF, QQ, RingSpec
from .errors import (
    NonTerminating,
    NotScalar,
    ParseError,
    RelationViolated,
    UnsupportedCentralMap,
    VerificationFailed,
    WeylError,
)
from .morphism import invert
from .weyl import AlgebraSignature, render

GRAMMAR_HELP = """\
expressions: sums/differences of products of factors; '^' takes a
nonnegative integer literal and binds tighter than '*'; 'x1^2^3' is an error;
'-x1^2' means -(x1^2), write '(-x1)^2' for the square of -x1. Products are
noncommutative and evaluated left to right. Variables x1..x{2n+m}; y1..yn
alias x{n+1}..x{2n}. Rational literals: 3/2.
"""


def _primes(text: str):
    try:
        primes = tuple(int(t) for t in text.split(",") if t.strip())
        for p in primes:
            GF(p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}: {exc}") from exc
    return primes


def _ring(text: str):
    try:
        return RingSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _emit(args, structured: dict, text: str):
    if args.format == "structured":
        sys.stdout.write(json.dumps(structured, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def cmd_certify(args) -> int:
    ef = load_file(args.file, args.ring)
    cert = certify(ef.endo, args.primes, modp_only=args.modp_only, endo_id=ef.name)
    _emit(args, cert.to_dict(), cert.to_text())
    return 0 if cert.verdict == AUTOMORPHISM else 1


def cmd_invert(args) -> int:
    ef = load_file(args.file, args.ring)
    e = ef.endo
    try:
        e = e.validate()
        rep = invert(e if e.sig.ring == QQ else e.change_ring(QQ))
    except (RelationViolated, NotScalar, VerificationFailed, NonTerminating, UnsupportedCentralMap) as exc:
        print(f"not invertible: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    doc = dump_document(rep.inverse, f"inverse of {ef.name}")
    doc.update(degree_sigma=rep.degree_sigma, degree_inverse=rep.degree_inverse, bound=rep.bound)
    lines = [f"x{i} -> {img}" for i, img in enumerate(doc["images"], 1)]
    lines.append(f"deg sigma = {rep.degree_sigma}, deg inverse = {rep.degree_inverse}, bound = {rep.bound}")
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def cmd_reduce(args) -> int:
    ef = load_file(args.file, args.ring)
    e = ef.endo
    try:
        e = e.validate()
    except RelationViolated as exc:
        print(f"not an endomorphism: {exc}", file=sys.stderr)
        return 1
    p = args.p
    ep = reduce_endomorphism(e, p)
    check = check_center_preserved(e, p)
    doc = {
        "p": p,
        "images": [render(img) for img in ep.images],
        "center_images": [render(img) for img in check.images],
        "center_preserved": check.ok,
        "induced_map": [str(to_poisson_poly(img)) for img in check.images] if check.ok else None,
    }
    lines = [f"p = {p}"]
    lines += [f"x{i} -> {img}" for i, img in enumerate(doc["images"], 1)]
    lines += [f"x{i}^{p} -> {img}" for i, img in enumerate(doc["center_images"], 1)]
    lines.append(f"center preserved: {check.ok}")
    if check.ok:
        lines += [f"u{i} -> {f}" for i, f in enumerate(doc["induced_map"], 1)]
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0 if check.ok else 1


def cmd_poisson(args) -> int:
    sig = AlgebraSignature(args.n, 0, GF(args.p))
    a = expr.parse(args.a, sig)
    b = expr.parse(args.b, sig)
    bracket = poisson_bracket(a, b)
    S = PoissonStructure.measure(args.n, args.p)
    canon = canonical_bracket(to_poisson_poly(a), to_poisson_poly(b), S)
    agree = to_poisson_poly(bracket) == canon
    doc = {"p": args.p, "bracket": render(bracket), "in_u": str(to_poisson_poly(bracket)), "canonical": str(canon), "agree": agree}
    text = f"{{a, b}} = {doc['bracket']}\n  in u-coordinates: {doc['in_u']}\n  canonical bracket: {doc['canonical']}\n  agree: {agree}\n"
    _emit(args, doc, text)
    return 0 if agree else 1


def _selftest_rows(primes, trials, seed):
    rng = random.Random(seed)
    rows = []
    for n in (1, 2):
        for p in primes:
            sig = AlgebraSignature(n, 0, GF(p))
            us = [g ** p for g in sig.gens()]
            wilson = all(
                poisson_bracket(us[n + i], us[j]).constant() == ((p - 1) if i == j else 0)
                for i in range(n)
                for j in range(n)
            )
            S = PoissonStructure.measure(n, p)
            ok = True
            for _ in range(trials):
                a, b, c = (_random_central(rng, sig, p) for _ in range(3))
                ab = poisson_bracket(a, b)
                ok &= ab == -poisson_bracket(b, a)
                ok &= poisson_bracket(a, b * c) == ab * c + b * poisson_bracket(a, c)
                jac = (
                    poisson_bracket(a, poisson_bracket(b, c))
                    + poisson_bracket(b, poisson_bracket(c, a))
                    + poisson_bracket(c, poisson_bracket(a, b))
                )
                ok &= not jac
                ok &= to_poisson_poly(ab) == canonical_bracket(to_poisson_poly(a), to_poisson_poly(b), S)
            rows.append((n, p, wilson, ok))
    return rows


def _random_central(rng, sig, p):
    out = sig.zero()
    for _ in range(rng.randint(1, 2)):
        alpha = [p * rng.randint(0, 1) for _ in range(sig.nvars)]
        out = out + sig.monomial(alpha, rng.randint(1, p - 1) if p > 2 else 1)
    return out


def cmd_selftest(args) -> int:
    rows = _selftest_rows(args.primes, args.trials, args.seed)
    print(f"{'n':>2} {'p':>3} {'wilson':>7} {'axioms+transport':>17}")
    for n, p, wilson, ok in rows:
        print(f"{n:>2} {p:>3} {'ok' if wilson else 'FAIL':>7} {'ok' if ok else 'FAIL':>17}")
    good = all(w and o for _, _, w, o in rows)
    print("selftest:", "pass" if good else "FAIL")
    return 0 if good else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylinv",
        description="Exact Weyl-algebra automorphism inversion and characteristic-p certificates.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_file=True):
        if with_file:
            sp.add_argument("file", help="endomorphism JSON file")
            sp.add_argument("--ring", type=_ring, default=None, help="override the file's ring: Q, Z or Fp:<p>")
        sp.add_argument("--format", choices=("text", "structured"), default="text")

    sp = sub.add_parser("certify", help="run the full per-prime certification pipeline")
    common(sp)
    sp.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES, help="comma separated, default 2,3,5,7")
    sp.add_argument("--modp-only", action="store_true", help="skip inversion over Q")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("invert", help="invert an automorphism over Q")
    common(sp)
    sp.set_defaults(func=cmd_invert)

    sp = sub.add_parser("reduce", help="reduce modulo p and show the induced map on the centre")
    common(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("poisson", help="divided-commutator bracket of two central elements")
    common(sp, with_file=False)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.set_defaults(func=cmd_poisson)

    sp = sub.add_parser("selftest", help="Wilson constants and bracket axioms")
    sp.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WeylError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
