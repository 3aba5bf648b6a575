"""Generalized Cartan matrices, Dynkin diagrams, and their classification.

A generalized Cartan matrix (GCM) is a square integer matrix with 2 on the
diagonal, non-positive entries off it, and symmetric vanishing: an entry is
zero exactly when its mirror is.  Whenever every off-diagonal product
``m[i][j] * m[j][i]`` stays below 4 the matrix can be drawn as a Dynkin
diagram, and the two encodings round-trip losslessly.

Classification splits a matrix into connected components and sorts each one
into the finite / affine / indefinite trichotomy.  Finiteness is decided
twice, by independent routes (positive definiteness of the symmetrized form,
and graph isomorphism against the fixed catalog of connected finite
diagrams); a disagreement raises :class:`ConsistencyError` since it can only
come from a bug.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import _linalg

FINITE = "Finite"
AFFINE = "Affine"
INDEFINITE = "Indefinite"

CONSISTENT = "Consistent"
CONTRADICTS_FINITENESS = "ContradictsFiniteness"


class NotSquare(ValueError):
    pass


class BadDiagonal(ValueError):
    def __init__(self, i: int, value: int):
        super().__init__(f"diagonal entry ({i},{i}) is {value}, expected 2")
        self.i = i


class PositiveOffDiagonal(ValueError):
    def __init__(self, i: int, j: int, value: int):
        super().__init__(f"off-diagonal entry ({i},{j}) is {value}, expected <= 0")
        self.i, self.j = i, j


class ZeroAsymmetry(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"exactly one of entries ({i},{j}) and ({j},{i}) is zero")
        self.i, self.j = i, j


class MultiplicityOverflow(ValueError):
    def __init__(self, i: int, j: int, product: int):
        super().__init__(f"edge {{{i},{j}}} has multiplicity {product} >= 4, not drawable")
        self.i, self.j = i, j


class EmptySubset(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class IllegalType(ValueError):
    pass


class NotFinite(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """Two supposedly equivalent internal computations disagreed."""


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    """Immutable square integer matrix with the Cartan sign pattern.

    Entries are stored as a tuple of row tuples; node indices in the public
    API are 1-based.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise NotSquare(f"row of length {len(row)} in a {n}-row matrix")
        for i in range(n):
            if self.entries[i][i] != 2:
                raise BadDiagonal(i + 1, self.entries[i][i])
            for j in range(n):
                if i == j:
                    continue
                if self.entries[i][j] > 0:
                    raise PositiveOffDiagonal(i + 1, j + 1, self.entries[i][j])
                if (self.entries[i][j] == 0) != (self.entries[j][i] == 0):
                    raise ZeroAsymmetry(*sorted((i + 1, j + 1)))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based position (i, j)."""
        _check_node(self, i)
        _check_node(self, j)
        return self.entries[i - 1][j - 1]

    def transpose(self) -> "GeneralizedCartanMatrix":
        return GeneralizedCartanMatrix(tuple(zip(*self.entries)))

    def __repr__(self):
        rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.entries)
        return f"GeneralizedCartanMatrix([{rows}])"


@dataclass(frozen=True)
class DiagramEdge:
    """Undirected edge {i,j} with multiplicity and optional arrow target."""

    i: int
    j: int
    multiplicity: int
    arrow_to: int | None

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError("edge endpoints must satisfy i < j")
        if self.multiplicity not in (1, 2, 3):
            raise MultiplicityOverflow(self.i, self.j, self.multiplicity)
        if self.multiplicity == 1:
            if self.arrow_to is not None:
                raise ValueError("single edges carry no arrow")
        elif self.arrow_to not in (self.i, self.j):
            raise ValueError("multiple edges need an arrow to one endpoint")


@dataclass(frozen=True)
class DynkinDiagram:
    """Nodes 1..n plus multi-edges; equivalent to a GCM with products <= 3."""

    n: int
    edges: tuple[DiagramEdge, ...]

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if not (1 <= e.i <= self.n and 1 <= e.j <= self.n):
                raise IndexOutOfRange(f"edge {{{e.i},{e.j}}} outside 1..{self.n}")
            if (e.i, e.j) in seen:
                raise ValueError(f"duplicate edge {{{e.i},{e.j}}}")
            seen.add((e.i, e.j))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: (e.i, e.j))))


@dataclass(frozen=True)
class Component:
    """One connected component of a classified matrix."""

    nodes: tuple[int, ...]
    kind: str
    type_name: str | None
    kernel: tuple[int, ...] | None


@dataclass(frozen=True)
class ClassificationVerdict:
    kind: str
    components: tuple[Component, ...]
    affine_kernel: tuple[int, ...] | None


def _check_node(m: GeneralizedCartanMatrix, i) -> None:
    if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= m.n:
        raise IndexOutOfRange(f"node {i!r} outside 1..{m.n}")


def validate_gcm(raw) -> GeneralizedCartanMatrix:
    """Check the Cartan sign pattern on a raw square integer matrix.

    Entries are preserved bit-exactly.  Raises :class:`NotSquare`,
    :class:`BadDiagonal`, :class:`PositiveOffDiagonal` or
    :class:`ZeroAsymmetry`.
    """
    try:
        rows = tuple(tuple(row) for row in raw)
    except TypeError:
        raise NotSquare("input is not a matrix")
    if not rows:
        raise NotSquare("empty matrix")
    for row in rows:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError(f"entry {x!r} is not an integer")
    return GeneralizedCartanMatrix(rows)


def to_diagram(m: GeneralizedCartanMatrix) -> DynkinDiagram:
    """Dynkin diagram of a matrix: multiplicity is the off-diagonal product,
    the arrow points to node i when entry (i,j) exceeds entry (j,i)."""
    edges = []
    for i in range(1, m.n + 1):
        for j in range(i + 1, m.n + 1):
            a, b = m.entry(i, j), m.entry(j, i)
            if a == 0:
                continue
            product = a * b
            if product >= 4:
                raise MultiplicityOverflow(i, j, product)
            arrow = None
            if product > 1:
                arrow = i if a > b else j
            edges.append(DiagramEdge(i, j, product, arrow))
    return DynkinDiagram(m.n, tuple(edges))


def from_diagram(d: DynkinDiagram) -> GeneralizedCartanMatrix:
    """Inverse of :func:`to_diagram`.

    Multiplicity k in {1,2,3} splits into entries {-1,-k}; the arrow says
    which endpoint's row carries the -1.
    """
    entries = [[2 if i == j else 0 for j in range(d.n)] for i in range(d.n)]
    for e in d.edges:
        if e.multiplicity == 1:
            entries[e.i - 1][e.j - 1] = entries[e.j - 1][e.i - 1] = -1
        else:
            head, tail = (e.i, e.j) if e.arrow_to == e.i else (e.j, e.i)
            entries[head - 1][tail - 1] = -1
            entries[tail - 1][head - 1] = -e.multiplicity
    return GeneralizedCartanMatrix(tuple(tuple(row) for row in entries))


def principal_submatrix(m: GeneralizedCartanMatrix, nodes: Iterable[int]) -> GeneralizedCartanMatrix:
    """Submatrix on the given nodes, in ascending induced order."""
    idx = sorted(set(nodes))
    if not idx:
        raise EmptySubset("principal submatrix needs at least one node")
    for i in idx:
        _check_node(m, i)
    rows = tuple(tuple(m.entries[i - 1][j - 1] for j in idx) for i in idx)
    return GeneralizedCartanMatrix(rows)


def _adjacency_components(entries: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    n = len(entries)
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(w for w in range(n) if w != v and entries[v][w] != 0 and w not in comp)
        seen |= comp
        comps.append(tuple(sorted(i + 1 for i in comp)))
    return sorted(comps, key=min)


def connected_components(d: DynkinDiagram) -> list[tuple[int, ...]]:
    """Partition of the node set into maximal connected subsets."""
    adj = [[0] * d.n for _ in range(d.n)]
    for e in d.edges:
        adj[e.i - 1][e.j - 1] = adj[e.j - 1][e.i - 1] = 1
    return _adjacency_components(adj)


_LEGAL_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _catalog_edges(family: str, n: int) -> list[tuple[int, int, int, int]]:
    """Edges as (i, j, entry_ij, entry_ji)."""
    path = [(i, i + 1, -1, -1) for i in range(1, n)]
    if family == "A":
        return path
    if family == "B":
        return path[:-1] + [(n - 1, n, -1, -2)]
    if family == "C":
        return path[:-1] + [(n - 1, n, -2, -1)]
    if family == "D":
        return [(i, i + 1, -1, -1) for i in range(1, n - 2)] + [(n - 2, n - 1, -1, -1), (n - 2, n, -1, -1)]
    if family == "E":
        chain = [1, 3, 4, 5, 6, 7, 8][:n - 1]
        return [(a, b, -1, -1) for a, b in zip(chain, chain[1:])] + [(2, 4, -1, -1)]
    if family == "F":
        return [(1, 2, -1, -1), (2, 3, -2, -1), (3, 4, -1, -1)]
    if family == "G":
        return [(1, 2, -1, -3)]
    raise IllegalType(f"unknown family {family!r}")


@lru_cache(maxsize=None)
def catalog(family: str, n: int) -> GeneralizedCartanMatrix:
    """Fixed matrix of a connected finite type.

    Node numbering: paths run 1..n; B_n doubles its last edge with entries
    (n-1,n) = -1, (n,n-1) = -2 and C_n is the transpose; D_n forks at n-2;
    E_n hangs node 2 off node 4 of the path 1-3-4-...-n; F_4 has entries
    (2,3) = -2, (3,2) = -1; G_2 is [[2,-1],[-3,2]].
    """
    if family not in _LEGAL_RANKS:
        raise IllegalType(f"unknown family {family!r}")
    if not isinstance(n, int) or isinstance(n, bool) or not _LEGAL_RANKS[family](n):
        raise IllegalType(f"{family}{n} is not a legal finite type")
    entries = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, a, b in _catalog_edges(family, n):
        entries[i - 1][j - 1] = a
        entries[j - 1][i - 1] = b
    return GeneralizedCartanMatrix(tuple(tuple(row) for row in entries))


def _catalog_candidates(rank: int) -> list[tuple[str, GeneralizedCartanMatrix]]:
    out = []
    for family in "ABCDEFG":
        if _LEGAL_RANKS[family](rank):
            out.append((f"{family}{rank}", catalog(family, rank)))
    return out


def _node_profile(entries, v: int, n: int) -> tuple:
    return tuple(sorted((entries[v][w], entries[w][v]) for w in range(n) if w != v and entries[v][w] != 0))


def _permutation_equal(a: GeneralizedCartanMatrix, b: GeneralizedCartanMatrix) -> tuple[int, ...] | None:
    """A node bijection sending b onto a, as a tuple p with a[p[i]][p[j]] == b[i][j]."""
    n = a.n
    if b.n != n:
        return None
    ae, be = a.entries, b.entries
    prof_a = [_node_profile(ae, v, n) for v in range(n)]
    prof_b = [_node_profile(be, v, n) for v in range(n)]
    if sorted(prof_a) != sorted(prof_b):
        return None

    assign: list[int] = []
    used = [False] * n

    def extend() -> bool:
        i = len(assign)
        if i == n:
            return True
        for cand in range(n):
            if used[cand] or prof_a[cand] != prof_b[i]:
                continue
            if any(ae[cand][assign[j]] != be[i][j] or ae[assign[j]][cand] != be[j][i] for j in range(i)):
                continue
            assign.append(cand)
            used[cand] = True
            if extend():
                return True
            assign.pop()
            used[cand] = False
        return False

    return tuple(assign) if extend() else None


def _symmetrized(m: GeneralizedCartanMatrix) -> list[list[Fraction]] | None:
    """diag(d) . m with d > 0 rational making it symmetric; None if impossible."""
    n = m.n
    d: list[Fraction | None] = [None] * n
    for comp in _adjacency_components(m.entries):
        root = comp[0] - 1
        d[root] = Fraction(1)
        stack = [root]
        while stack:
            v = stack.pop()
            for w in range(n):
                if w != v and m.entries[v][w] != 0 and d[w] is None:
                    d[w] = d[v] * m.entries[v][w] / m.entries[w][v]
                    stack.append(w)
    for i in range(n):
        for j in range(n):
            if d[i] * m.entries[i][j] != d[j] * m.entries[j][i]:
                return None
    return [[d[i] * m.entries[i][j] for j in range(n)] for i in range(n)]


def _finite_by_minors(m: GeneralizedCartanMatrix) -> bool:
    s = _symmetrized(m)
    if s is None:
        return False
    return all(minor > 0 for minor in _linalg.leading_principal_minors(s))


def _positive_kernel(m: GeneralizedCartanMatrix) -> tuple[int, ...] | None:
    basis = _linalg.kernel_basis(m.entries)
    if len(basis) != 1:
        return None
    vec = _linalg.coprime_integers(basis[0])
    if all(x < 0 for x in vec):
        vec = tuple(-x for x in vec)
    return vec if all(x > 0 for x in vec) else None


def _classify_component(m: GeneralizedCartanMatrix, nodes: tuple[int, ...]) -> Component:
    sub = principal_submatrix(m, nodes)
    by_minors = _finite_by_minors(sub)
    match = next((name for name, cat in _catalog_candidates(sub.n) if _permutation_equal(sub, cat)), None)
    if by_minors != (match is not None):
        raise ConsistencyError(
            f"finiteness checks disagree on nodes {nodes}: minors say {by_minors}, catalog match is {match}"
        )
    if match is not None:
        return Component(nodes, FINITE, match, None)
    kernel = _positive_kernel(sub)
    if kernel is not None:
        return Component(nodes, AFFINE, None, kernel)
    return Component(nodes, INDEFINITE, None, None)


@lru_cache(maxsize=None)
def classify(m: GeneralizedCartanMatrix) -> ClassificationVerdict:
    """Finite / affine / indefinite trichotomy, per connected component.

    A component is finite when its symmetrized form is positive definite,
    which must agree with matching a catalog diagram; affine when its kernel
    is one-dimensional and spanned by a strictly positive vector (returned
    with coprime positive integer entries); indefinite otherwise.  The whole
    matrix is finite when every component is, affine when all components are
    finite or affine with at least one affine, indefinite otherwise.
    """
    components = tuple(_classify_component(m, nodes) for nodes in _adjacency_components(m.entries))
    kinds = {c.kind for c in components}
    if kinds == {FINITE}:
        kind = FINITE
    elif INDEFINITE in kinds:
        kind = INDEFINITE
    else:
        kind = AFFINE
    affine_kernel = None
    if kind == AFFINE:
        full = [0] * m.n
        for c in components:
            if c.kind == AFFINE:
                for node, value in zip(c.nodes, c.kernel):
                    full[node - 1] = value
        affine_kernel = tuple(full)
    return ClassificationVerdict(kind, components, affine_kernel)


def direct_sum(parts: Sequence[GeneralizedCartanMatrix]) -> GeneralizedCartanMatrix:
    """Block-diagonal join, numbering nodes consecutively."""
    total = sum(p.n for p in parts)
    entries = [[0] * total for _ in range(total)]
    offset = 0
    for p in parts:
        for i in range(p.n):
            for j in range(p.n):
                entries[offset + i][offset + j] = p.entries[i][j]
        offset += p.n
    return GeneralizedCartanMatrix(tuple(tuple(row) for row in entries))


_DSL_TOKEN = re.compile(r"([A-G])([0-9]+)\Z")


def parse_dsl(spec: str) -> GeneralizedCartanMatrix:
    """Parse strings like ``"A3"``, ``"G2"``, ``"A2xA1"`` (x = disjoint union)."""
    parts = []
    for token in spec.split("x"):
        match = _DSL_TOKEN.match(token.strip())
        if match is None:
            raise IllegalType(f"bad diagram token {token!r}")
        parts.append(catalog(match.group(1), int(match.group(2))))
    return direct_sum(parts)


def diagram_to_dot(d: DynkinDiagram, name: str = "dynkin") -> str:
    """Graphviz source: multiple edges become parallel lines, the arrowed
    copy uses dir/arrowhead attributes."""
    lines = [f'graph "{name}" {{']
    for v in range(1, d.n + 1):
        lines.append(f"  {v};")
    for e in d.edges:
        if e.multiplicity == 1:
            lines.append(f"  {e.i} -- {e.j};")
        else:
            tail = e.j if e.arrow_to == e.i else e.i
            head = e.arrow_to
            lines.append(f'  {tail} -- {head} [dir=forward, arrowhead=normal];')
            for _ in range(e.multiplicity - 1):
                lines.append(f"  {e.i} -- {e.j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
