"""Marked-diagram calculus: contraction fibers, exposed short nodes, and
the one-node-at-a-time extension chains used to grow a marking to the full
node set."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .cartan import (
    GeneralizedCartanMatrix,
    IllegalType,
    MultiplicityOverflow,
    catalog,
    principal_submatrix,
    _check_node,
)


class NotNested(ValueError):
    pass


class EmptyResidualMarking(ValueError):
    pass


class NodeNotMarked(ValueError):
    pass


class NoValidSequence(ValueError):
    pass


@dataclass(frozen=True)
class MarkedDiagram:
    """A finite matrix with a nonempty marked node subset.

    ``labels`` remembers original node names when the diagram arose by
    deleting nodes from a larger one; by default it is the identity.
    """

    matrix: GeneralizedCartanMatrix
    marked: tuple[int, ...]
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", self.matrix.nodes)
        if len(self.labels) != self.matrix.n:
            raise ValueError("one label per node is required")
        marked = tuple(sorted(set(self.marked)))
        if not marked:
            raise EmptyResidualMarking("a marked diagram needs at least one marked node")
        for i in marked:
            _check_node(self.matrix, i)
        object.__setattr__(self, "marked", marked)


@dataclass(frozen=True)
class OnestepResult:
    """Outcome of a one-step extension attempt; failures are reported, not raised."""

    extended: tuple[int, ...]
    residual: tuple[int, ...]
    valid: bool
    failures: tuple[str, ...]


def fiber_diagram(m: GeneralizedCartanMatrix, outer: Iterable[int], inner: Iterable[int]) -> MarkedDiagram:
    """Fiber of the contraction between the markings: delete the inner
    nodes, mark what is left of the outer ones."""
    inner = set(inner)
    outer = set(outer)
    for i in inner | outer:
        _check_node(m, i)
    if not inner <= outer:
        raise NotNested(f"{sorted(inner)} is not contained in {sorted(outer)}")
    residual = sorted(outer - inner)
    if not residual:
        raise EmptyResidualMarking("the two markings coincide; the fiber is a point")
    keep = [i for i in m.nodes if i not in inner]
    sub = principal_submatrix(m, keep)
    renumber = {old: new for new, old in enumerate(keep, start=1)}
    return MarkedDiagram(sub, tuple(renumber[i] for i in residual), tuple(keep))


def neighbors(m: GeneralizedCartanMatrix, i: int) -> tuple[int, ...]:
    """Nodes joined to i by at least one edge."""
    _check_node(m, i)
    return tuple(j for j in m.nodes if j != i and m.entry(i, j) != 0)


def _component_and_distances(m: GeneralizedCartanMatrix, keep: set[int], start: int):
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in keep:
                if w not in dist and m.entry(v, w) != 0:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def is_exposed_short(m: GeneralizedCartanMatrix, marked: Iterable[int], i: int) -> bool:
    """Whether some arrow points towards i inside its connected component of
    the diagram with the other marked nodes deleted.

    An arrow on an edge incident to i points towards i exactly when its head
    is i; on a non-incident edge, when its head end is strictly closer to i
    than its tail end.
    """
    marked = set(marked)
    for v in marked:
        _check_node(m, v)
    if i not in marked:
        raise NodeNotMarked(f"node {i} is not in the marked set {sorted(marked)}")
    keep = {v for v in m.nodes if v not in marked or v == i}
    dist = _component_and_distances(m, keep, i)
    component = sorted(dist)
    for u in component:
        for v in component:
            if u >= v:
                continue
            a, b = m.entry(u, v), m.entry(v, u)
            if a == 0:
                continue
            product = a * b
            if product == 1:
                continue
            if product >= 4:
                raise MultiplicityOverflow(u, v, product)
            head, tail = (u, v) if a > b else (v, u)
            if dist[head] < dist[tail]:
                return True
    return False


def onestep_extend(m: GeneralizedCartanMatrix, marked: Iterable[int], i: int) -> OnestepResult:
    """Extend a marking by the neighbors of one of its nodes.

    The step is valid when i is not an exposed short node, the extension
    adds exactly one node, and the extended marking has at least 3 nodes.
    """
    marked = set(marked)
    if i not in marked:
        raise NodeNotMarked(f"node {i} is not in the marked set {sorted(marked)}")
    grown = tuple(sorted(marked | set(neighbors(m, i))))
    residual = tuple(sorted((marked - {i}) | set(neighbors(m, i))))
    failures = []
    if is_exposed_short(m, marked, i):
        failures.append("exposed short node")
    if len(grown) != len(marked) + 1:
        failures.append(f"extension adds {len(grown) - len(marked)} nodes, expected 1")
    if len(grown) < 3:
        failures.append(f"extended marking has {len(grown)} nodes, expected >= 3")
    return OnestepResult(grown, residual, not failures, tuple(failures))


_START_TABLE = {
    "A": lambda n: (1, n),
    "B": lambda n: (1, n),
    "C": lambda n: (1, n),
    "D": lambda n: (1, n),
    "E": lambda n: (2, n),
    "F": lambda n: (1, 2),
}


def induction_start(family: str, n: int) -> tuple[int, ...]:
    """The marking a valid extension chain starts from, per type."""
    catalog(family, n)  # legality check
    if family == "G" or n == 2:
        return (1, 2)
    if family not in _START_TABLE:
        raise IllegalType(f"unknown family {family!r}")
    return tuple(sorted(set(_START_TABLE[family](n))))


def induction_sequence(family: str, n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """A chain of (marking, node) pairs from the start marking to the full set.

    Each non-final pair passes :func:`onestep_extend`; the next pair's node
    is the single node the step added, so after the first choice the chain is
    forced.  Rank-2 types start and end at the full set.  Raises
    :class:`NoValidSequence` when no first choice works, which no catalog
    type triggers.
    """
    m = catalog(family, n)
    start = induction_start(family, n)
    full = set(m.nodes)
    if set(start) == full:
        return ((start, 1),)
    for first in start:
        seq = [(start, first)]
        current, pivot = set(start), first
        while True:
            step = onestep_extend(m, current, pivot)
            if not step.valid:
                seq = None
                break
            (added,) = set(step.extended) - current
            current = set(step.extended)
            pivot = added
            seq.append((step.extended, added))
            if current == full:
                break
        if seq is not None:
            return tuple(seq)
    raise NoValidSequence(f"no valid extension chain from {start} for {family}{n}")


def minimal_ample_weight(md: MarkedDiagram) -> tuple[int, ...]:
    """Weight-base vector with coordinate 1 on marked nodes, 0 elsewhere."""
    return tuple(1 if i in md.marked else 0 for i in md.matrix.nodes)


def marked_diagram_from_json(data: dict) -> MarkedDiagram:
    """Read the wire shape {"diagram": "A4", "marked": [1, 4]}."""
    if not isinstance(data, dict) or "diagram" not in data or "marked" not in data:
        raise ValueError('expected {"diagram": "...", "marked": [...]}')
    from .cartan import parse_dsl

    return MarkedDiagram(parse_dsl(data["diagram"]), tuple(data["marked"]))


def marked_diagram_to_json(md: MarkedDiagram, name: str) -> dict:
    """Wire shape for a marked diagram whose matrix has the given name."""
    return {"diagram": name, "marked": list(md.marked)}
