"""Fibers of contractions, exposed short nodes, and extension chains."""

from itertools import combinations

import pytest

from ftcartan.cartan import IndexOutOfRange, catalog, validate_gcm
from ftcartan.flags import (
    EmptyResidualMarking,
    MarkedDiagram,
    NodeNotMarked,
    NotNested,
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

A3 = catalog("A", 3)
A4 = catalog("A", 4)
B2 = catalog("B", 2)
F4 = catalog("F", 4)


class TestFiberDiagram:
    def test_remove_ends(self):
        md = fiber_diagram(A3, {1, 2, 3}, {1, 3})
        assert md.matrix.entries == ((2,),)
        assert md.marked == (1,)
        assert md.labels == (2,)

    def test_remove_one(self):
        md = fiber_diagram(A3, {1, 3}, {1})
        assert md.matrix.entries == ((2, -1), (-1, 2))
        assert md.marked == (2,)  # original node 3, renumbered
        assert md.labels == (2, 3)

    def test_full_flag(self):
        md = fiber_diagram(A3, {1, 2, 3}, set())
        assert md.matrix == A3
        assert md.marked == (1, 2, 3)

    def test_errors(self):
        with pytest.raises(NotNested):
            fiber_diagram(A3, {1, 2}, {3})
        with pytest.raises(EmptyResidualMarking):
            fiber_diagram(A3, {1, 2}, {1, 2})

    def test_composition(self):
        """Removing nodes in two stages matches removing them at once."""
        m = catalog("A", 5)
        once = fiber_diagram(m, {1, 2, 3, 4, 5}, {1, 4})
        stage1 = fiber_diagram(m, {1, 2, 3, 4, 5}, {1})
        relabel = {old: new for new, old in enumerate(stage1.labels, start=1)}
        stage2 = fiber_diagram(stage1.matrix, stage1.marked, {relabel[4]})
        assert stage2.matrix == once.matrix
        assert stage2.marked == once.marked
        # compose label maps back to original names
        assert tuple(stage1.labels[i - 1] for i in stage2.labels) == once.labels


class TestNeighbors:
    def test_examples(self):
        assert neighbors(A4, 2) == (1, 3)
        assert neighbors(A4, 1) == (2,)
        assert neighbors(validate_gcm([[2, 0], [0, 2]]), 1) == ()

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            neighbors(A4, 5)


class TestExposedShort:
    def test_b2(self):
        assert is_exposed_short(B2, {1}, 1)  # the arrow points to node 1
        assert not is_exposed_short(B2, {2}, 2)

    def test_node_not_marked(self):
        with pytest.raises(NodeNotMarked):
            is_exposed_short(B2, {1}, 2)

    def test_simply_laced_always_false(self):
        sweep = [catalog("A", n) for n in range(1, 7)]
        sweep += [catalog("D", n) for n in (4, 5, 6)]
        sweep.append(catalog("E", 6))
        for m in sweep:
            nodes = m.nodes
            for size in range(1, m.n + 1):
                for marked in combinations(nodes, size):
                    for i in marked:
                        assert not is_exposed_short(m, marked, i)

    def test_f4_incident_arrow(self):
        # the F4 arrow points to node 3
        assert is_exposed_short(F4, {3}, 3)
        assert not is_exposed_short(F4, {2}, 2)
        assert not is_exposed_short(F4, {1, 2}, 2)

    def test_non_incident_arrow_uses_graph_distance(self):
        assert not is_exposed_short(F4, {1}, 1)  # head of the arrow is farther from 1
        assert is_exposed_short(F4.transpose(), {1}, 1)  # reversed arrow heads towards 1
        assert is_exposed_short(F4, {4}, 4)  # node 4 lies on the short side
        assert not is_exposed_short(F4.transpose(), {4}, 4)  # reversed arrow heads away from 4

    def test_marking_can_cut_the_component(self):
        # deleting node 3 disconnects node 4 from the double edge
        assert not is_exposed_short(F4, {3, 4}, 4)


class TestOnestep:
    def test_valid_step(self):
        res = onestep_extend(A4, {1, 4}, 1)
        assert res.extended == (1, 2, 4)
        assert res.residual == (2, 4)
        assert res.valid

    def test_two_new_nodes(self):
        res = onestep_extend(A4, {2}, 2)
        assert res.extended == (1, 2, 3)
        assert not res.valid
        assert any("adds 2 nodes" in f for f in res.failures)

    def test_too_small(self):
        res = onestep_extend(B2, {1, 2}, 1)
        assert res.extended == (1, 2)
        assert not res.valid
        assert len(res.failures) == 2  # adds 0 nodes and stays below 3

    def test_exposed_short_blocks(self):
        res = onestep_extend(F4.transpose(), {1, 2}, 2)
        assert not res.valid
        assert "exposed short node" in res.failures

    def test_node_not_marked(self):
        with pytest.raises(NodeNotMarked):
            onestep_extend(A4, {1, 4}, 2)


class TestInductionSequence:
    def test_start_table(self):
        assert induction_start("A", 5) == (1, 5)
        assert induction_start("E", 7) == (2, 7)
        assert induction_start("F", 4) == (1, 2)
        assert induction_start("G", 2) == (1, 2)

    def test_a_family_closed_form(self):
        for n in range(3, 9):
            expected = tuple(
                (tuple(sorted(set(range(1, k + 1)) | {n})), k) for k in range(1, n)
            )
            assert induction_sequence("A", n) == expected

    def test_frozen_small_cases(self):
        assert induction_sequence("A", 3) == (((1, 3), 1), ((1, 2, 3), 2))
        assert induction_sequence("A", 4) == (((1, 4), 1), ((1, 2, 4), 2), ((1, 2, 3, 4), 3))
        assert induction_sequence("D", 4) == (((1, 4), 1), ((1, 2, 4), 2), ((1, 2, 3, 4), 3))
        assert induction_sequence("F", 4) == (((1, 2), 2), ((1, 2, 3), 3), ((1, 2, 3, 4), 4))

    def test_rank_two_trivial(self):
        assert induction_sequence("A", 2) == (((1, 2), 1),)
        assert induction_sequence("G", 2) == (((1, 2), 1),)

    @pytest.mark.parametrize(
        "family,n",
        [("B", 3), ("B", 4), ("B", 5), ("C", 3), ("C", 4), ("C", 5),
         ("D", 4), ("D", 5), ("D", 6), ("F", 4), ("E", 6), ("E", 7), ("E", 8)],
    )
    def test_chains_are_valid(self, family, n):
        m = catalog(family, n)
        seq = induction_sequence(family, n)
        assert seq[0][0] == induction_start(family, n)
        assert set(seq[-1][0]) == set(m.nodes)
        for (marking, pivot), (nxt, nxt_pivot) in zip(seq, seq[1:]):
            step = onestep_extend(m, marking, pivot)
            assert step.valid
            assert step.extended == nxt
            assert set(nxt) == set(marking) | {nxt_pivot}
            assert set(nxt) == set(marking) | set(neighbors(m, pivot))


class TestMinimalAmpleWeight:
    def test_examples(self):
        assert minimal_ample_weight(MarkedDiagram(A3, (1, 3))) == (1, 0, 1)
        assert minimal_ample_weight(MarkedDiagram(catalog("A", 2), (1, 2))) == (1, 1)
        assert minimal_ample_weight(MarkedDiagram(A4, (2,))) == (0, 1, 0, 0)

    def test_marked_must_be_nonempty(self):
        with pytest.raises(EmptyResidualMarking):
            MarkedDiagram(A3, ())


class TestMarkedDiagramJson:
    def test_round_trip(self):
        md = marked_diagram_from_json({"diagram": "A4", "marked": [1, 4]})
        assert md.matrix == A4
        assert md.marked == (1, 4)
        assert marked_diagram_to_json(md, "A4") == {"diagram": "A4", "marked": [1, 4]}

    def test_bad_shape(self):
        with pytest.raises(ValueError):
            marked_diagram_from_json({"matrix": [[2]]})
