"""Exact computational engine for the two-colour bubble algebra.

Diagrams with red and blue strands compose exactly over integer Laurent
polynomials in the two loop weights; on top of that sit basis
enumeration, standard modules with Gram forms, a spin-chain matrix
representation, and spectral-parameter (Yang-Baxter, transfer matrix)
verification.  The `bubble` console script exposes the same reports.
"""

from .basis import (
    enumerate_basis,
    enumerate_bras,
    rank_identity,
    standard_labels,
    walk_count,
)
from .diagram import (
    BLUE,
    RED,
    Diagram,
    Element,
    SizeMismatchError,
    compose,
    identity_element,
    make_diagram,
    white_generator,
)
from .exactpoly import DB, DR, LaurentPoly, PolyMatrix, poly_det
from .spinchain import NumericParams, diagram_matrix, element_matrix, homomorphism_report
from .stdmod import (
    gram_blocks,
    gram_det_report,
    gram_matrix,
    localisation_report,
    restriction_report,
    scan_gram_roots,
)
from .yangbaxter import (
    rmatrix,
    transfer_commutator,
    transfer_matrix,
    unitarity_residual,
    ybe_residual,
    ybe_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BLUE",
    "DB",
    "DR",
    "Diagram",
    "Element",
    "LaurentPoly",
    "NumericParams",
    "PolyMatrix",
    "RED",
    "SizeMismatchError",
    "compose",
    "diagram_matrix",
    "element_matrix",
    "enumerate_basis",
    "enumerate_bras",
    "gram_blocks",
    "gram_det_report",
    "gram_matrix",
    "homomorphism_report",
    "identity_element",
    "localisation_report",
    "make_diagram",
    "poly_det",
    "rank_identity",
    "restriction_report",
    "rmatrix",
    "scan_gram_roots",
    "standard_labels",
    "transfer_commutator",
    "transfer_matrix",
    "unitarity_residual",
    "walk_count",
    "white_generator",
    "ybe_residual",
    "ybe_sweep",
]
