"""Endomorphism files and the per-prime certification pipeline.

File format (JSON)::

    {"n": 1, "m": 0, "ring": "Q", "images": ["x1", "x2 + x1^2"]}

An optional ``"name"`` field labels the certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .charp import PoissonStructure, check_center_preserved, to_poisson_poly
from .coeff import PRIME_FIELD, QQ, RingSpec
from .errors import (
    DeterminantNotUnit,
    IdentityFailed,
    NonTerminating,
    NotScalar,
    RelationViolated,
    UnsupportedCentralMap,
    VerificationFailed,
)
from .expr import parse
from .morphism import Endomorphism, invert
from .symplectic import verify_step6
from .weyl import AlgebraSignature, render

AUTOMORPHISM = "Automorphism"
NOT_ENDOMORPHISM = "NotEndomorphism"
INCONCLUSIVE = "Inconclusive"

DEFAULT_PRIMES = (2, 3, 5, 7)


@dataclass
class EndoFile:
    name: str
    endo: Endomorphism


def load_document(doc: dict, ring_override: RingSpec | None = None, name: str = "") -> EndoFile:
    try:
        n, m = int(doc["n"]), int(doc.get("m", 0))
        ring = ring_override or RingSpec.parse(str(doc.get("ring", "Q")))
        images = doc["images"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed endomorphism document: missing {exc}") from exc
    sig = AlgebraSignature(n, m, ring)
    if not isinstance(images, list) or len(images) != sig.nvars:
        raise ValueError(f"expected a list of {sig.nvars} image expressions")
    elems = [parse(str(text), sig) for text in images]
    return EndoFile(str(doc.get("name", name)), Endomorphism(sig, elems))


def load_file(path, ring_override=None) -> EndoFile:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return load_document(doc, ring_override, name=str(path))


def dump_document(e: Endomorphism, name: str | None = None) -> dict:
    doc = {}
    if name:
        doc["name"] = name
    doc.update(n=e.sig.n, m=e.sig.m, ring=str(e.sig.ring), images=[render(img) for img in e.images])
    return doc


def dumps(e: Endomorphism, name: str | None = None) -> str:
    return json.dumps(dump_document(e, name), indent=2) + "\n"


def _p_integral(e: Endomorphism, p: int) -> bool:
    for img in e.images:
        for c in img.terms.values():
            if isinstance(c, Fraction) and c.denominator % p == 0:
                return False
    return True


@dataclass
class Certificate:
    endo_id: str
    ring: RingSpec
    n: int
    m: int
    relation_check: dict
    q_inverse: dict | None = None
    per_prime: list = field(default_factory=list)
    skipped_primes: list = field(default_factory=list)
    verdict: str = INCONCLUSIVE

    def to_dict(self) -> dict:
        return {
            "endo_id": self.endo_id,
            "ring": str(self.ring),
            "n": self.n,
            "m": self.m,
            "relation_check": self.relation_check,
            "q_inverse": self.q_inverse,
            "per_prime": self.per_prime,
            "skipped_primes": self.skipped_primes,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"endo_id: {self.endo_id}", f"ring: {self.ring}", f"n: {self.n}", f"m: {self.m}"]
        rc = self.relation_check
        lines.append(f"relations: {'pass' if rc['ok'] else 'FAIL'}")
        for v in rc["violations"]:
            lines.append(f"  [x{v['i']}, x{v['j']}] = {v['value']} (expected {v['expected']})")
        q = self.q_inverse
        if q is None:
            lines.append("q_inverse: skipped")
        elif "error" in q:
            lines.append(f"q_inverse: FAIL ({q['error']})")
        else:
            lines.append(
                f"q_inverse: deg sigma {q['degree_sigma']}, deg inverse {q['degree_inverse']}, "
                f"bound {q['bound']}, outer terms {q['terms_of_outer_sum']}"
            )
            for i, img in enumerate(q["images"], 1):
                lines.append(f"  x{i} -> {img}")
        for entry in self.per_prime:
            s6 = entry.get("step6") or {}
            lines.append(
                f"p={entry['p']}: center_preserved={entry['center_preserved']} "
                f"detJ={s6.get('detJ', '-')} identity_ok={s6.get('identity_ok', '-')} "
                f"preserves_bracket={s6.get('preserves_bracket', '-')} verdict={s6.get('verdict', 'fail')}"
            )
        for skipped in self.skipped_primes:
            lines.append(f"p={skipped['p']}: skipped ({skipped['reason']})")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def run_prime(e: Endomorphism, p: int) -> dict:
    """Centre check, induced map and unit-determinant check at one prime."""
    entry = {"p": p, "center_preserved": False, "center_witness": None, "induced_map": None, "step6": None}
    check = check_center_preserved(e, p)
    if not check:
        entry["center_witness"] = {"index": check.index, "remainder": render(check.remainder)}
        return entry
    entry["center_preserved"] = True
    F = [to_poisson_poly(img) for img in check.images]
    entry["induced_map"] = [str(f) for f in F]
    S = PoissonStructure.measure(e.sig.n, p)
    try:
        report = verify_step6(F, S)
    except (IdentityFailed, DeterminantNotUnit) as exc:
        report = exc.report
    entry["step6"] = report.to_dict()
    return entry


def _prime_passes(entry: dict) -> bool:
    s6 = entry.get("step6")
    return bool(entry["center_preserved"] and s6 and s6["verdict"] == "pass" and s6["preserves_bracket"])


def certify(e: Endomorphism, primes=DEFAULT_PRIMES, modp_only: bool = False, endo_id: str = "") -> Certificate:
    sig = e.sig
    cert = Certificate(endo_id, sig.ring, sig.n, sig.m, {"ok": True, "violations": []})
    try:
        e = e.validate()
    except RelationViolated as exc:
        cert.relation_check = {
            "ok": False,
            "violations": [{"i": i, "j": j, "value": render(v), "expected": w} for i, j, v, w in exc.violations],
        }
        cert.verdict = NOT_ENDOMORPHISM
        return cert

    if not modp_only and sig.ring.kind != PRIME_FIELD:
        try:
            rep = invert(e if sig.ring == QQ else e.change_ring(QQ))
            cert.q_inverse = {
                "images": [render(img) for img in rep.inverse.images],
                "degree_sigma": rep.degree_sigma,
                "degree_inverse": rep.degree_inverse,
                "bound": rep.bound,
                "terms_of_outer_sum": rep.terms_of_outer_sum,
            }
        except (NotScalar, VerificationFailed, NonTerminating, UnsupportedCentralMap) as exc:
            cert.q_inverse = {"error": f"{type(exc).__name__}: {exc}"}

    if sig.ring.kind == PRIME_FIELD:
        primes = (sig.ring.p,)
    for p in sorted(set(primes)):
        if sig.m:
            cert.skipped_primes.append({"p": p, "reason": "central variables present"})
        elif not _p_integral(e, p):
            cert.skipped_primes.append({"p": p, "reason": "coefficient denominator divisible by p"})
        else:
            cert.per_prime.append(run_prime(e, p))

    q_ok = cert.q_inverse is not None and "error" not in cert.q_inverse
    if q_ok and all(_prime_passes(entry) for entry in cert.per_prime):
        cert.verdict = AUTOMORPHISM
    else:
        cert.verdict = INCONCLUSIVE
    return cert
