"""Verification pipeline for intersection data of flag-type spaces.

Input is a square integer matrix of intersection numbers (row i =
anticanonical degree of the i-th fibration against the extremal curves).
Ingestion enforces the rank-2 realizability constraints; the verdict then
classifies the matrix and reports either a dimension bound (finite case) or
a witness of the contradiction (a positive kernel curve class, or an affine
principal subconfiguration).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cartan import (
    AFFINE,
    CONSISTENT,
    CONTRADICTS_FINITENESS,
    FINITE,
    ClassificationVerdict,
    ConsistencyError,
    GeneralizedCartanMatrix,
    NotFinite,
    classify,
    principal_submatrix,
    validate_gcm,
)
from .rootsys import flag_dimension


class ProductOutOfRange(ValueError):
    def __init__(self, i: int, j: int, product: int):
        super().__init__(
            f"entries ({i},{j}) and ({j},{i}) multiply to {product}; "
            "realizable intersection data needs 1, 2 or 3"
        )
        self.i, self.j = i, j
        self.product = product


@dataclass(frozen=True)
class FTReport:
    verdict: ClassificationVerdict
    dimension_bound: int | None
    affine_witness: tuple[int, ...] | None
    product_factors: tuple[tuple[int, ...], ...]
    violating_nodes: tuple[int, ...] | None
    consistency: str


def ingest(raw) -> GeneralizedCartanMatrix:
    """Validate intersection data: Cartan sign pattern plus the rank-2 bound
    that nonzero opposite entries multiply to 1, 2 or 3."""
    m = validate_gcm(raw)
    for i in range(1, m.n + 1):
        for j in range(i + 1, m.n + 1):
            a, b = m.entry(i, j), m.entry(j, i)
            if a != 0 and a * b not in (1, 2, 3):
                raise ProductOutOfRange(i, j, a * b)
    return m


def minimal_affine_subconfiguration(m: GeneralizedCartanMatrix) -> tuple[int, ...] | None:
    """Smallest node subset whose principal submatrix is affine, if any;
    ties broken lexicographically."""
    for size in range(2, m.n + 1):
        for nodes in combinations(m.nodes, size):
            if classify(principal_submatrix(m, nodes)).kind == AFFINE:
                return nodes
    return None


def verdict(m: GeneralizedCartanMatrix) -> FTReport:
    """Classify ingested data and phrase the outcome as a report.

    Finite data is consistent and carries the flag dimension bound.  Affine
    data contradicts finiteness and carries the positive integer kernel
    vector (the class of a curve with zero anticanonical degree on every
    fibration).  Indefinite data also contradicts finiteness; a minimal
    affine principal subconfiguration is reported when one exists.
    """
    cls = classify(m)
    factors = tuple(c.nodes for c in cls.components)
    if cls.kind == FINITE:
        return FTReport(cls, flag_dimension(m, m.nodes), None, factors, None, CONSISTENT)
    if cls.kind == AFFINE:
        witness = cls.affine_kernel
        check = tuple(sum(m.entries[i][j] * witness[j] for j in range(m.n)) for i in range(m.n))
        if any(check):
            raise ConsistencyError(f"claimed kernel {witness} fails: m.v = {check}")
        return FTReport(cls, None, witness, factors, None, CONTRADICTS_FINITENESS)
    return FTReport(
        cls, None, None, factors, minimal_affine_subconfiguration(m), CONTRADICTS_FINITENESS
    )


def decompose_product(m: GeneralizedCartanMatrix) -> list[tuple[tuple[int, ...], str]]:
    """Connected components of a finite matrix with their catalog labels."""
    cls = classify(m)
    if cls.kind != FINITE:
        raise NotFinite("only finite matrices decompose into catalog factors")
    return [(c.nodes, c.type_name) for c in cls.components]
