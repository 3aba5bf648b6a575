"""Positive roots of finite matrices, heights, admissible sets, filtrations.

Roots are plain integer tuples holding coordinates in the simple-root base;
weights are integer tuples in the fundamental-weight base.  Conversion uses
the matrix itself: the i-th simple root has weight coordinates equal to the
i-th matrix row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import _linalg
from functools import lru_cache

from .cartan import (
    FINITE,
    ConsistencyError,
    GeneralizedCartanMatrix,
    NotFinite,
    classify,
    _check_node,
)

Root = tuple[int, ...]


class NegativeRoot(ValueError):
    pass


class NotARoot(ValueError):
    def __init__(self, coords):
        super().__init__(f"{coords} is not a positive root here")
        self.coords = coords


class FullSubset(ValueError):
    pass


class EmptyMarking(ValueError):
    pass


class SingularSystem(RuntimeError):
    pass


class NoStepFound(RuntimeError):
    """No filtration step exists at some position; signals a convention bug."""

    def __init__(self, k: int):
        super().__init__(f"no admissible step found for position {k}")
        self.k = k


@dataclass(frozen=True)
class FiltrationStep:
    """Witness that the k-th root is the j-th root plus the ell-th simple root."""

    k: int
    j: int
    ell: int


def reflect(m: GeneralizedCartanMatrix, coords: Root, i: int) -> Root:
    """Simple reflection: subtract (pairing with the i-th simple root) times e_i."""
    _check_node(m, i)
    pairing = sum(c * m.entries[j][i - 1] for j, c in enumerate(coords))
    return tuple(c - pairing if j == i - 1 else c for j, c in enumerate(coords))


@lru_cache(maxsize=None)
def positive_roots(m: GeneralizedCartanMatrix) -> tuple[Root, ...]:
    """All positive roots, by closure of the simple roots under reflections.

    Ordered by height ascending, ties broken by ascending lexicographic
    order of the coordinate tuples.
    """
    if classify(m).kind != FINITE:
        raise NotFinite("positive roots are only enumerated for finite matrices")
    n = m.n
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        fresh = []
        for beta in frontier:
            for i in range(1, n + 1):
                image = reflect(m, beta, i)
                if image not in found and all(c >= 0 for c in image):
                    found.add(image)
                    fresh.append(image)
        frontier = fresh
    return tuple(sorted(found, key=lambda r: (sum(r), r)))


def height(root: Root) -> int:
    """Sum of the coordinates of a positive root."""
    if not any(root) or any(c < 0 for c in root):
        raise NegativeRoot(f"{root} is not a positive root")
    return sum(root)


def phi_plus_sub(m: GeneralizedCartanMatrix, generators: Iterable[int]) -> tuple[Root, ...]:
    """Positive roots supported entirely on the given generating node set."""
    gen = set(generators)
    for i in gen:
        _check_node(m, i)
    return tuple(r for r in positive_roots(m) if all(r[i - 1] == 0 for i in set(m.nodes) - gen))


def is_admissible(m: GeneralizedCartanMatrix, psi: Iterable[Root]) -> bool:
    """True when every two-summand decomposition of a member has both summands
    in the set."""
    phi = set(positive_roots(m))
    members = set()
    for coords in psi:
        coords = tuple(coords)
        if coords not in phi:
            raise NotARoot(coords)
        members.add(coords)
    for gamma in members:
        for alpha in phi:
            beta = tuple(g - a for g, a in zip(gamma, alpha))
            if beta in phi and (alpha not in members or beta not in members):
                return False
    return True


def build_filtration(m: GeneralizedCartanMatrix) -> tuple[FiltrationStep, ...]:
    """One step per non-simple position k of the canonical root ordering.

    The step (k, j, ell) witnesses root_k = root_j + alpha_ell, with j < k
    chosen so that root_j' + alpha_ell already lies among the first k roots
    (or is no root at all) for every j' < j.  Ties break to the smallest j,
    then the smallest ell.
    """
    roots = positive_roots(m)
    phi = set(roots)
    n = m.n
    position = {r: idx for idx, r in enumerate(roots)}
    steps = []
    for k in range(n, len(roots)):
        target = roots[k]
        found = None
        for j in range(k):
            if found:
                break
            for ell in range(1, n + 1):
                summed = tuple(c + (1 if idx == ell - 1 else 0) for idx, c in enumerate(roots[j]))
                if summed != target:
                    continue
                ok = True
                for jp in range(j):
                    other = tuple(c + (1 if idx == ell - 1 else 0) for idx, c in enumerate(roots[jp]))
                    if other in phi and position[other] > k:
                        ok = False
                        break
                if ok:
                    found = FiltrationStep(k + 1, j + 1, ell)
                    break
        if found is None:
            raise NoStepFound(k + 1)
        steps.append(found)
    return tuple(steps)


def sum_roots_coords(roots: Iterable[Root], rank: int | None = None) -> tuple[int, ...]:
    """Componentwise sum of coordinate vectors; rank disambiguates the empty sum."""
    roots = [tuple(r) for r in roots]
    if not roots:
        if rank is None:
            raise ValueError("rank is needed to sum an empty root list")
        return (0,) * rank
    return tuple(sum(col) for col in zip(*roots))


def root_to_weight(m: GeneralizedCartanMatrix, coords: Root) -> tuple[int, ...]:
    """Coordinates in the fundamental-weight base of a simple-root vector."""
    return tuple(sum(c * m.entries[i][j] for i, c in enumerate(coords)) for j in range(m.n))


def anticanonical_coefficients(m: GeneralizedCartanMatrix) -> tuple[int, ...]:
    """Coefficients of the weight that pairs to 2 with every simple root.

    Computed twice: as the solution v of v^T . m = (2,...,2) and as the
    componentwise sum over all positive roots.  The two must agree.
    """
    target = (2,) * m.n
    solved = _linalg.solve([list(col) for col in zip(*m.entries)], target)
    if solved is None:
        raise SingularSystem("the pairing system is singular; not a finite matrix?")
    summed = sum_roots_coords(positive_roots(m), rank=m.n)
    if tuple(solved) != summed:
        raise ConsistencyError(f"linear solve {solved} disagrees with root sum {summed}")
    return summed


def relative_canonical_coefficients(m: GeneralizedCartanMatrix, marked: Iterable[int]) -> Mapping[int, int]:
    """Coefficients of the relative canonical class for a marking, as a map
    on the unmarked nodes."""
    marked = set(marked)
    for i in marked:
        _check_node(m, i)
    rest = [i for i in m.nodes if i not in marked]
    if not rest:
        raise FullSubset("marking the whole node set leaves nothing to sum over")
    coords = sum_roots_coords(phi_plus_sub(m, rest), rank=m.n)
    return {i: coords[i - 1] for i in rest}


def flag_dimension(m: GeneralizedCartanMatrix, marked: Iterable[int]) -> int:
    """Dimension of the flag space with the given marking: all positive roots
    minus those supported away from the marking."""
    marked = set(marked)
    if not marked:
        raise EmptyMarking("a marking needs at least one node")
    for i in marked:
        _check_node(m, i)
    rest = [i for i in m.nodes if i not in marked]
    return len(positive_roots(m)) - len(phi_plus_sub(m, rest))
