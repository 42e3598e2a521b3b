"""Exact arithmetic in Weyl algebras, automorphism inversion and mod-p certificates."""

from .coeff import GF, QQ, ZZ, Coefficient, RingSpec
from .morphism import Endomorphism, InversionReport, invert, invert_element, phi_sigma
from .weyl import AlgebraSignature, WeylElement, commutator, render

__all__ = [
    "GF",
    "QQ",
    "ZZ",
    "AlgebraSignature",
    "Coefficient",
    "Endomorphism",
    "InversionReport",
    "RingSpec",
    "WeylElement",
    "commutator",
    "invert",
    "invert_element",
    "phi_sigma",
    "render",
]
