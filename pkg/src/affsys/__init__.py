"""Finite affine spaces and affine systems over a fixed algebra L, with the
Sierpinski system, its powers, sobriety and injectivity checks."""

from .algebra import FiniteAlgebra, Hom, Variety, enumerate_homs, is_homomorphism, validate_algebra
from .catalog import chain, diamond, lukasiewicz, two
from .coproducts import coproduct, mediate, verify_coproduct_universal
from .errors import AffsysError, Verdict
from .free import FinNatSet, extend, free_on_one
from .spaces import AffineSpace, sierpinski_space, validate_space
from .systems import (
    AffineSystem,
    SystemMorphism,
    canonical_to_power,
    embed_E,
    is_sober,
    is_t0,
    morphisms_to_S,
    product_systems,
    sierpinski_system,
    spatialize,
    theta_comparison,
    validate_morphism,
    validate_system,
)
from .verify import GenConfig, run_suite

__all__ = [
    "AffineSpace",
    "AffineSystem",
    "AffsysError",
    "FinNatSet",
    "FiniteAlgebra",
    "GenConfig",
    "Hom",
    "SystemMorphism",
    "Variety",
    "Verdict",
    "canonical_to_power",
    "chain",
    "coproduct",
    "diamond",
    "embed_E",
    "enumerate_homs",
    "extend",
    "free_on_one",
    "is_homomorphism",
    "is_sober",
    "is_t0",
    "lukasiewicz",
    "mediate",
    "morphisms_to_S",
    "product_systems",
    "run_suite",
    "sierpinski_space",
    "sierpinski_system",
    "spatialize",
    "theta_comparison",
    "two",
    "validate_algebra",
    "validate_morphism",
    "validate_space",
    "validate_system",
    "verify_coproduct_universal",
]
