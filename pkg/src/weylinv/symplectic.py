"""Jacobian matrices, exact determinants and the unit-determinant certificate.

Convention: ``J[i][j] = dF_i/du_j`` (rows are components). With the
constant bracket matrix ``P`` the chain rule reads ``{F_i, F_j} = (J P J^T)_ij``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .charp import PoissonStructure, canonical_bracket
from .errors import DeterminantNotUnit, DimensionMismatch, IdentityFailed
from .poly import Poly


def _check_map(F, k=None):
    F = list(F)
    if not F:
        raise DimensionMismatch("empty map")
    k = len(F) if k is None else k
    if len(F) != k or any(f.nvars != k for f in F):
        raise DimensionMismatch(f"map needs {k} components in {k} variables")
    return F


def jacobian(F) -> list:
    F = _check_map(F)
    k = len(F)
    return [[f.diff(j) for j in range(1, k + 1)] for f in F]


def identity_matrix(k, ring) -> list:
    return [[Poly.const(k, ring, int(i == j)) for j in range(k)] for i in range(k)]


def matmul(A, B) -> list:
    if len(A[0]) != len(B):
        raise DimensionMismatch("inner dimensions differ")
    out = []
    for row in A:
        new = []
        for j in range(len(B[0])):
            acc = row[0] * B[0][j]
            for t in range(1, len(B)):
                acc = acc + row[t] * B[t][j]
            new.append(acc)
        out.append(new)
    return out


def transpose(A) -> list:
    return [list(col) for col in zip(*A)]


def _square(M):
    k = len(M)
    if any(len(row) != k for row in M):
        raise DimensionMismatch("matrix is not square")
    return k


def det_bareiss(M) -> Poly:
    """Fraction-free elimination; every division is exact in ``F_p[u]``."""
    k = _square(M)
    A = [list(row) for row in M]
    sign = 1
    prev = None
    for col in range(k - 1):
        piv = next((r for r in range(col, k) if A[r][col]), None)
        if piv is None:
            return A[0][0] * 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        pc = A[col][col]
        for r in range(col + 1, k):
            for c in range(col + 1, k):
                num = pc * A[r][c] - A[r][col] * A[col][c]
                A[r][c] = num if prev is None else num.exact_div(prev)
            A[r][col] = A[r][col] * 0
        prev = pc
    d = A[k - 1][k - 1]
    return d if sign == 1 else -d


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_cofactor(M) -> Poly:
    """Leibniz expansion; only sensible for tiny matrices."""
    k = _square(M)
    total = M[0][0] * 0
    for perm in permutations(range(k)):
        term = M[0][perm[0]]
        for i in range(1, k):
            if not term:
                break
            term = term * M[i][perm[i]]
        if term:
            total = total + term * _perm_sign(perm)
    return total


def det_exact(M) -> Poly:
    """Bareiss determinant, cross-checked by cofactor expansion up to 4x4."""
    d = det_bareiss(M)
    if _square(M) <= 4:
        check = det_cofactor(M)
        if check != d:
            raise AssertionError(f"determinant methods disagree: {d} vs {check}")
    return d


def bracket_matrix(F, S: PoissonStructure) -> list:
    F = _check_map(F, 2 * S.n)
    return [[canonical_bracket(f, g, S) for g in F] for f in F]


@dataclass
class Step6Report:
    p: int
    det_j: Poly
    identity_ok: bool
    det_identity_ok: bool
    preserves_bracket: bool
    verdict: str
    jacobian: list = field(repr=False, default=None)
    brackets: list = field(repr=False, default=None)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "detJ": str(self.det_j),
            "identity_ok": self.identity_ok,
            "det_identity_ok": self.det_identity_ok,
            "preserves_bracket": self.preserves_bracket,
            "verdict": self.verdict,
        }


def verify_step6(F, S: PoissonStructure) -> Step6Report:
    """Check ``B = J P J^T`` and that ``det J`` is the constant ``+-1``.

    Raises :class:`IdentityFailed` or :class:`DeterminantNotUnit`; the
    exception carries the full report in ``.report``.
    """
    F = _check_map(F, 2 * S.n)
    P = S.matrix()
    B = bracket_matrix(F, S)
    J = jacobian(F)
    chain = matmul(matmul(J, P), transpose(J))
    identity_ok = all(b == c for rb, rc in zip(B, chain) for b, c in zip(rb, rc))
    d = det_exact(J)
    det_identity_ok = det_exact(B) == d * d * det_exact(P)
    preserves = all(b == c for rb, rc in zip(B, P) for b, c in zip(rb, rc))
    unit = d.is_constant() and d.constant() in (1, S.p - 1)
    verdict = "pass" if identity_ok and det_identity_ok and unit else "fail"
    report = Step6Report(S.p, d, identity_ok, det_identity_ok, preserves, verdict, J, B)
    if not identity_ok or not det_identity_ok:
        raise IdentityFailed("chain-rule identity B = J P J^T failed", report)
    if not unit:
        raise DeterminantNotUnit(f"det J = {d} is not +-1", report)
    return report
