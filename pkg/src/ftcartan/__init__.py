"""Exact combinatorics of generalized Cartan matrices.

Validation, the Dynkin-diagram dictionary, finite/affine/indefinite
classification, positive-root enumeration, the 0-Hecke chain calculus,
marked-diagram induction steps, the rank-2 exact numeric core, and a
verification pipeline for flag-type intersection data.
"""

from .cartan import (
    AFFINE,
    FINITE,
    INDEFINITE,
    ClassificationVerdict,
    Component,
    DiagramEdge,
    DynkinDiagram,
    GeneralizedCartanMatrix,
    catalog,
    classify,
    connected_components,
    diagram_to_dot,
    direct_sum,
    from_diagram,
    parse_dsl,
    principal_submatrix,
    to_diagram,
    validate_gcm,
)
from .coxeter import (
    HeckeElement,
    WeylElement,
    chain_dimension,
    chain_equal,
    coxeter_exponents,
    demazure_product,
    element_of_word,
    hecke_lengths,
    is_reduced,
    length,
    longest_element,
    reduced_words,
    weyl_elements,
)
from .flags import (
    MarkedDiagram,
    OnestepResult,
    fiber_diagram,
    induction_sequence,
    induction_start,
    is_exposed_short,
    marked_diagram_from_json,
    marked_diagram_to_json,
    minimal_ample_weight,
    neighbors,
    onestep_extend,
)
from .ftverify import FTReport, decompose_product, ingest, verdict
from .picard2 import (
    ExactComplex,
    Rank2Classification,
    Rank2Data,
    admissible_degrees,
    basechange_matrix,
    classify_rank2,
    discriminant_for,
    im_power_vanishes,
    verify_cos_identity,
)
from .rootsys import (
    FiltrationStep,
    anticanonical_coefficients,
    build_filtration,
    flag_dimension,
    height,
    is_admissible,
    phi_plus_sub,
    positive_roots,
    reflect,
    relative_canonical_coefficients,
    root_to_weight,
    sum_roots_coords,
)

__version__ = "0.1.0"
