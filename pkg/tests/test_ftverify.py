"""Ingest constraints, verdict reports, and product decomposition."""

from itertools import combinations, product

import pytest

from ftcartan.cartan import (
    AFFINE,
    CONSISTENT,
    CONTRADICTS_FINITENESS,
    FINITE,
    INDEFINITE,
    ZeroAsymmetry,
    catalog,
    direct_sum,
    validate_gcm,
)
from ftcartan.ftverify import (
    NotFinite,
    ProductOutOfRange,
    decompose_product,
    ingest,
    minimal_affine_subconfiguration,
    verdict,
)
from ftcartan.rootsys import flag_dimension

# the four admissible rank-2 shapes, up to transpose
ALLOWED_RANK2 = set()
for a, b in [(0, 0), (-1, -1), (-1, -2), (-1, -3)]:
    ALLOWED_RANK2.add(((2, a), (b, 2)))
    ALLOWED_RANK2.add(((2, b), (a, 2)))


class TestIngest:
    def test_valid(self):
        assert ingest([[2, -1], [-2, 2]]).entries == ((2, -1), (-2, 2))
        assert ingest([[2, -1], [-1, 2]]).entries == ((2, -1), (-1, 2))

    def test_product_out_of_range(self):
        with pytest.raises(ProductOutOfRange) as exc:
            ingest([[2, -2], [-2, 2]])
        assert exc.value.product == 4

    def test_gcm_errors_first(self):
        with pytest.raises(ZeroAsymmetry):
            ingest([[2, -1], [0, 2]])

    def test_rank3_exhaustive_matches_rank2_characterization(self):
        """Accepted exactly when every 2x2 principal block is an allowed shape."""
        values = (0, -1, -2, -3)
        for a12, a21, a13, a31, a23, a32 in product(values, repeat=6):
            raw = [[2, a12, a13], [a21, 2, a23], [a31, a32, 2]]
            expected = True
            for (i, j) in combinations(range(3), 2):
                block = ((2, raw[i][j]), (raw[j][i], 2))
                if block not in ALLOWED_RANK2:
                    expected = False
            try:
                ingest(raw)
                accepted = True
            except (ProductOutOfRange, ZeroAsymmetry):
                accepted = False
            assert accepted == expected, raw


class TestVerdict:
    def test_finite(self):
        report = verdict(catalog("A", 3))
        assert report.verdict.kind == FINITE
        assert report.dimension_bound == 6
        assert report.consistency == CONSISTENT
        assert report.affine_witness is None
        assert report.product_factors == ((1, 2, 3),)

    def test_affine(self):
        m = ingest([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
        report = verdict(m)
        assert report.verdict.kind == AFFINE
        assert report.affine_witness == (1, 1, 1)
        assert report.consistency == CONTRADICTS_FINITENESS
        assert report.dimension_bound is None
        witness = report.affine_witness
        for i in range(3):
            assert sum(m.entries[i][j] * witness[j] for j in range(3)) == 0

    def test_indefinite_without_affine_subconfiguration(self):
        report = verdict(ingest([[2, -1, -1], [-1, 2, -2], [-1, -1, 2]]))
        assert report.verdict.kind == INDEFINITE
        assert report.consistency == CONTRADICTS_FINITENESS
        assert report.violating_nodes is None

    def test_indefinite_reports_minimal_affine_subconfiguration(self):
        m = ingest([[2, -1, -1, 0], [-1, 2, -1, 0], [-1, -1, 2, -1], [0, 0, -1, 2]])
        report = verdict(m)
        assert report.verdict.kind == INDEFINITE
        assert report.violating_nodes == (1, 2, 3)
        assert minimal_affine_subconfiguration(m) == (1, 2, 3)


class TestDecompose:
    def test_two_points(self):
        assert decompose_product(validate_gcm([[2, 0], [0, 2]])) == [((1,), "A1"), ((2,), "A1")]

    def test_block_sum(self):
        m = direct_sum([catalog("A", 2), catalog("A", 1)])
        assert decompose_product(m) == [((1, 2), "A2"), ((3,), "A1")]

    def test_connected(self):
        assert decompose_product(catalog("G", 2)) == [((1, 2), "G2")]

    def test_not_finite(self):
        with pytest.raises(NotFinite):
            decompose_product(validate_gcm([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]))

    def test_dimension_additivity(self):
        m = direct_sum([catalog("B", 2), catalog("A", 3), catalog("G", 2)])
        total = flag_dimension(m, m.nodes)
        parts = sum(flag_dimension(m, nodes) for nodes, _ in decompose_product(m))
        assert parts == total == 4 + 6 + 6
