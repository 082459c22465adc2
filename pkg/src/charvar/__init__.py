"""Twisted first cohomology of finitely presented groups at exact characters.

The package computes dim H^1(G; C_chi) by Fox calculus over cyclotomic
fields and Laurent polynomial rings, lists the closed-form characteristic
varieties of orbifold groups, manipulates torsion-translated subtori and
runs quasi-projectivity obstruction checks on candidate component data.
"""

from .cyclotomic import CyclotomicNumber
from .fox import dim_h1, fox_matrix, fox_rank, generic_dim, scan_torsion, sigma_membership
from .intmat import IntegerMatrix, hermite_normal_form, smith_normal_form
from .laurent import LaurentPolynomial
from .obstructions import ComponentDatum, ObstructionReport, OrbifoldMorphismDatum, full_report
from .orbifold import OrbifoldSurface, enumerate_labels, orbifold_dim_h1, sigma_k
from .presentation import (
    Character,
    CharvarError,
    Presentation,
    PresentationError,
    RelatorViolation,
    character_from_assignment,
    trivial_character,
)
from .torus import TranslatedSubtorus, intersect

__version__ = "0.1.0"

__all__ = [
    "CyclotomicNumber",
    "LaurentPolynomial",
    "IntegerMatrix",
    "smith_normal_form",
    "hermite_normal_form",
    "Presentation",
    "Character",
    "CharvarError",
    "PresentationError",
    "RelatorViolation",
    "character_from_assignment",
    "trivial_character",
    "fox_matrix",
    "fox_rank",
    "dim_h1",
    "sigma_membership",
    "generic_dim",
    "scan_torsion",
    "OrbifoldSurface",
    "enumerate_labels",
    "orbifold_dim_h1",
    "sigma_k",
    "TranslatedSubtorus",
    "intersect",
    "ComponentDatum",
    "OrbifoldMorphismDatum",
    "ObstructionReport",
    "full_report",
]
