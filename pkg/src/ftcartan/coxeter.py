"""Weyl group actions, word lengths, and the 0-Hecke monoid.

Group and monoid elements are canonicalized by their integer action matrix
on the simple-root base (row i = image of the i-th simple root), so equality
is extensional and hashable.  The monoid product follows the saturation
rule: appending a generator keeps the element unchanged unless it increases
the length.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cartan import (
    ConsistencyError,
    GeneralizedCartanMatrix,
    MultiplicityOverflow,
)
from .rootsys import positive_roots

Word = tuple[int, ...]


class BadLetter(ValueError):
    def __init__(self, letter):
        super().__init__(f"letter {letter!r} is not a node index")
        self.letter = letter


class RankTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    """Action on the root lattice; rows[i] = image of simple root i+1."""

    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(c * self.rows[i][j] for i, c in enumerate(coords)) for j in range(self.n)
        )


@dataclass(frozen=True)
class HeckeElement:
    """Monoid element, realized by its carrier Weyl action."""

    carrier: WeylElement


def coxeter_exponents(m: GeneralizedCartanMatrix) -> dict[tuple[int, int], int]:
    """Relation exponent for each node pair: 2, 3, 4, 6 as the edge
    multiplicity is 0, 1, 2, 3."""
    exponent = {0: 2, 1: 3, 2: 4, 3: 6}
    out = {}
    for i in range(1, m.n + 1):
        for j in range(i + 1, m.n + 1):
            product = m.entry(i, j) * m.entry(j, i)
            if product >= 4:
                raise MultiplicityOverflow(i, j, product)
            out[(i, j)] = exponent[product]
    return out


def _right_mult(m: GeneralizedCartanMatrix, rows, i: int):
    """Rows of w . s_i, i.e. apply the reflection before w."""
    base = rows[i - 1]
    return tuple(
        tuple(row[c] - m.entries[j][i - 1] * base[c] for c in range(m.n))
        for j, row in enumerate(rows)
    )


def _validate_word(m: GeneralizedCartanMatrix, word: Iterable[int]) -> Word:
    letters = tuple(word)
    for letter in letters:
        if not isinstance(letter, int) or isinstance(letter, bool) or not 1 <= letter <= m.n:
            raise BadLetter(letter)
    return letters


def element_of_word(m: GeneralizedCartanMatrix, word: Iterable[int]) -> WeylElement:
    """Product of simple reflections in word order; empty word is the identity."""
    letters = _validate_word(m, word)
    rows = WeylElement.identity(m.n).rows
    for letter in letters:
        rows = _right_mult(m, rows, letter)
    return WeylElement(rows)


def length(m: GeneralizedCartanMatrix, w: WeylElement) -> int:
    """Number of positive roots sent negative."""
    return sum(1 for beta in positive_roots(m) if any(c < 0 for c in w.apply(beta)))


def is_reduced(m: GeneralizedCartanMatrix, word: Iterable[int]) -> bool:
    letters = _validate_word(m, word)
    return length(m, element_of_word(m, letters)) == len(letters)


def _is_positive(coords) -> bool:
    return all(c >= 0 for c in coords)


def demazure_product(m: GeneralizedCartanMatrix, word: Iterable[int]) -> HeckeElement:
    """Left-to-right fold of the saturation rule over the word.

    A letter extends the element exactly when the current action keeps the
    corresponding simple root positive (which is the length-increase test).
    """
    letters = _validate_word(m, word)
    positive_roots(m)  # finiteness guard
    rows = WeylElement.identity(m.n).rows
    for letter in letters:
        if _is_positive(rows[letter - 1]):
            rows = _right_mult(m, rows, letter)
    return HeckeElement(WeylElement(rows))


def hecke_lengths(m: GeneralizedCartanMatrix) -> dict[HeckeElement, int]:
    """Every monoid element with its length, by breadth-first saturation
    from the identity."""
    positive_roots(m)
    identity = WeylElement.identity(m.n).rows
    depth = {identity: 0}
    queue = deque([identity])
    while queue:
        rows = queue.popleft()
        for i in range(1, m.n + 1):
            if _is_positive(rows[i - 1]):
                nxt = _right_mult(m, rows, i)
                if nxt not in depth:
                    depth[nxt] = depth[rows] + 1
                    queue.append(nxt)
    return {HeckeElement(WeylElement(rows)): d for rows, d in depth.items()}


def weyl_elements(m: GeneralizedCartanMatrix) -> frozenset[WeylElement]:
    """The full group, by closure under right multiplication."""
    positive_roots(m)
    identity = WeylElement.identity(m.n).rows
    seen = {identity}
    queue = deque([identity])
    while queue:
        rows = queue.popleft()
        for i in range(1, m.n + 1):
            nxt = _right_mult(m, rows, i)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(WeylElement(rows) for rows in seen)


def longest_element(m: GeneralizedCartanMatrix) -> tuple[HeckeElement, int]:
    """The unique maximal-length monoid element and its length.

    Cross-checked against the number of positive roots; a mismatch or a tie
    would be a bug, not a property of the input.
    """
    lengths = hecke_lengths(m)
    top = max(lengths.values())
    winners = [h for h, d in lengths.items() if d == top]
    if len(winners) != 1 or top != len(positive_roots(m)):
        raise ConsistencyError(
            f"longest element mismatch: {len(winners)} maxima of length {top}, "
            f"expected a unique one of length {len(positive_roots(m))}"
        )
    return winners[0], top


def reduced_words(m: GeneralizedCartanMatrix, h: HeckeElement, max_rank: int = 4) -> frozenset[Word]:
    """All minimal words presenting h, by peeling descents off the carrier.

    Brute-force enumeration; refuses ranks above ``max_rank``.
    """
    if m.n > max_rank:
        raise RankTooLarge(f"rank {m.n} exceeds the word-enumeration bound {max_rank}")
    positive_roots(m)
    identity = WeylElement.identity(m.n).rows
    cache: dict[tuple, frozenset[Word]] = {identity: frozenset({()})}

    def rec(rows) -> frozenset[Word]:
        if rows in cache:
            return cache[rows]
        out = set()
        for i in range(1, m.n + 1):
            if not _is_positive(rows[i - 1]):  # a reduced word can end in i
                for sub in rec(_right_mult(m, rows, i)):
                    out.add(sub + (i,))
        cache[rows] = frozenset(out)
        return cache[rows]

    return rec(h.carrier.rows)


def chain_dimension(m: GeneralizedCartanMatrix, word: Iterable[int]) -> int:
    """Dimension of the chain locus traced by the word: the length of its
    saturated product."""
    h = demazure_product(m, word)
    return length(m, h.carrier)


def chain_equal(m: GeneralizedCartanMatrix, word_a: Iterable[int], word_b: Iterable[int]) -> bool:
    """Whether two words trace the same chain locus (equal saturated products)."""
    return demazure_product(m, word_a) == demazure_product(m, word_b)


def alternating_word(i: int, j: int, k: int) -> Word:
    """Word of length k alternating i, j, i, ... starting with i."""
    return tuple(i if p % 2 == 0 else j for p in range(k))
