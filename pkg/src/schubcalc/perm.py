"""Finitely supported permutations of the positive integers.

Permutations are stored in one-line notation with trailing fixed points
trimmed, so ``Permutation((1, 4, 2, 3))`` and ``Permutation((1, 4, 2, 3, 5))``
are the same value.  Everything else in this module (Bruhat order, covers,
Rothe diagrams and their relatives) is computed inside an explicit S_n.

>>> p = parse_permutation("1423")
>>> length(p), sorted(str(s) for s in covers_above(p, 4))
(2, ['1432', '2413', '4123'])
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import DomainError, FormatError

__all__ = [
    "Permutation", "PartialPermutation", "Diagram",
    "parse_permutation", "identity", "longest", "simple_reflection", "transposition",
    "length", "compose", "inverse", "permutations", "covers_above", "bruhat_leq",
    "rothe_diagram", "essential_set", "dominant_part", "extend_partial",
]

Cell = tuple[int, int]


@dataclass(frozen=True, order=False)
class Permutation:
    """A permutation of {1, 2, ...} fixing all but finitely many points."""

    images: tuple[int, ...] = ()

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise DomainError(f"{images} is not a bijection of 1..{len(images)}")
        while images and images[-1] == len(images):
            images = images[:-1]
        object.__setattr__(self, "images", images)

    def __call__(self, k: int) -> int:
        if k < 1:
            raise DomainError(f"permutations act on positive integers, got {k}")
        return self.images[k - 1] if k <= len(self.images) else k

    def __len__(self) -> int:
        # size of the smallest S_m containing this permutation
        return len(self.images)

    def __str__(self) -> str:
        return format_one_line(self.one_line(max(len(self.images), 1)))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    @property
    def support_size(self) -> int:
        return len(self.images)

    def one_line(self, n: int) -> tuple[int, ...]:
        """Images of 1..n; ``n`` must be at least the support size."""
        if n < len(self.images):
            raise DomainError(f"{self} does not lie in S_{n}")
        return self.images + tuple(range(len(self.images) + 1, n + 1))

    def in_S(self, n: int) -> bool:
        return len(self.images) <= n

    def key(self, n: int) -> tuple[int, ...]:
        """Sort key: lexicographic one-line notation inside S_n."""
        return self.one_line(n)

    @cached_property
    def length(self) -> int:
        w = self.images
        return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])

    def inverse(self) -> Permutation:
        return inverse(self)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def swap_positions(self, a: int, b: int) -> Permutation:
        """Return ``self ∘ (a↔b)``: the values in positions a and b exchanged."""
        w = list(self.one_line(max(len(self.images), a, b)))
        w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
        return Permutation(tuple(w))

    def is_identity(self) -> bool:
        return not self.images


def format_one_line(values: Iterable[int]) -> str:
    values = list(values)
    if all(v <= 9 for v in values):
        return "".join(map(str, values))
    return ",".join(map(str, values))


_SEPARATED = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Permutation:
    """Read a permutation from a digit string ("1423") or a separated list ("10,1,2,...")."""
    s = text.strip()
    if not s:
        raise FormatError("empty permutation")
    if _SEPARATED.search(s):
        parts = [p for p in _SEPARATED.split(s) if p]
    else:
        parts = list(s)
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"not a permutation: {text!r}") from None
    seen = set()
    for v in values:
        if v < 1 or v > len(values):
            raise FormatError(f"value {v} out of range 1..{len(values)}")
        if v in seen:
            raise FormatError(f"value {v} repeated")
        seen.add(v)
    return Permutation(tuple(values))


def identity() -> Permutation:
    return Permutation()


def longest(n: int) -> Permutation:
    """The order-reversing permutation w_0^n of S_n."""
    return Permutation(tuple(range(n, 0, -1)))


def simple_reflection(i: int) -> Permutation:
    return transposition(i, i + 1)


def transposition(a: int, b: int) -> Permutation:
    return identity().swap_positions(a, b)


def length(p: Permutation) -> int:
    """Number of inversions."""
    return p.length


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation k ↦ p(q(k))."""
    m = max(len(p), len(q))
    return Permutation(tuple(p(q(k)) for k in range(1, m + 1)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for k, v in enumerate(p.images, start=1):
        inv[v - 1] = k
    return Permutation(tuple(inv))


def permutations(n: int) -> list[Permutation]:
    """All of S_n, in lexicographic order of one-line notation."""
    return [Permutation(w) for w in itertools.permutations(range(1, n + 1))]


def _require_in(p: Permutation, n: int) -> None:
    if not p.in_S(n):
        raise DomainError(f"{p} does not lie in S_{n}")


def covers_above(p: Permutation, n: int) -> set[Permutation]:
    """All σ ∈ S_n covering p in Bruhat order.

    σ = p∘(a↔b) with a < b, p(a) < p(b) and no position strictly between
    a and b holding a value strictly between p(a) and p(b).
    """
    _require_in(p, n)
    w = p.one_line(n)
    out = set()
    for a in range(n):
        for b in range(a + 1, n):
            lo, hi = w[a], w[b]
            if lo > hi:
                continue
            if any(lo < w[c] < hi for c in range(a + 1, b)):
                continue
            out.add(p.swap_positions(a + 1, b + 1))
    return out


def _rank_table(w: tuple[int, ...]) -> list[list[int]]:
    n = len(w)
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        row, prev = table[i], table[i - 1]
        for j in range(1, n + 1):
            row[j] = prev[j] + (1 if w[i - 1] <= j else 0)
    return table


def bruhat_leq(p: Permutation, q: Permutation) -> bool:
    """p ≤ q in Bruhat order, by comparing northwest rank matrices."""
    n = max(len(p), len(q), 1)
    rp = _rank_table(p.one_line(n))
    rq = _rank_table(q.one_line(n))
    return all(rq[i][j] <= rp[i][j] for i in range(1, n + 1) for j in range(1, n + 1))


@dataclass(frozen=True)
class PartialPermutation:
    """An n×n 0/1 matrix with at most one 1 in each row and column."""

    n: int
    ones: frozenset[Cell]

    def __post_init__(self):
        ones = frozenset((int(a), int(b)) for a, b in self.ones)
        rows = [a for a, _ in ones]
        cols = [b for _, b in ones]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise DomainError("partial permutation has two 1s in a row or column")
        for a, b in ones:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise DomainError(f"cell {(a, b)} outside the {self.n}x{self.n} square")
        object.__setattr__(self, "ones", ones)

    @property
    def corank(self) -> int:
        return self.n - len(self.ones)

    @classmethod
    def from_permutation(cls, p: Permutation, n: int | None = None) -> PartialPermutation:
        n = len(p) if n is None else n
        return cls(n, frozenset((a, p(a)) for a in range(1, n + 1)))


def partial_permutations(n: int) -> Iterator[PartialPermutation]:
    """Every partial permutation matrix of size n (all ranks)."""
    for k in range(n + 1):
        for rows in itertools.combinations(range(1, n + 1), k):
            for cols in itertools.permutations(range(1, n + 1), k):
                yield PartialPermutation(n, frozenset(zip(rows, cols)))


@dataclass(frozen=True)
class Diagram:
    """A finite set of matrix cells (row, column), 1-indexed."""

    cells: frozenset[Cell] = frozenset()

    def __post_init__(self):
        cells = frozenset((int(a), int(b)) for a, b in self.cells)
        if any(a < 1 or b < 1 for a, b in cells):
            raise DomainError("diagram cells must have positive coordinates")
        object.__setattr__(self, "cells", cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self.cells))

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def __le__(self, other: Diagram) -> bool:
        return self.cells <= other.cells

    def render(self, n: int | None = None) -> str:
        """Grid picture: 'o' for a cell, '.' otherwise."""
        if n is None:
            n = max((max(a, b) for a, b in self.cells), default=0)
        return "\n".join(
            "".join("o" if (a, b) in self.cells else "." for b in range(1, n + 1))
            for a in range(1, n + 1)
        )


def rothe_diagram(p: Permutation | PartialPermutation) -> Diagram:
    """Cells not hit by the death rays shot South and East from each 1."""
    if isinstance(p, PartialPermutation):
        n, ones = p.n, p.ones
        row_of = {b: a for a, b in ones}
        col_of = {a: b for a, b in ones}
        cells = {
            (a, b)
            for a in range(1, n + 1)
            for b in range(1, n + 1)
            if col_of.get(a, n + 1) > b and row_of.get(b, n + 1) > a
        }
        return Diagram(frozenset(cells))
    inv = inverse(p)
    m = len(p)
    return Diagram(frozenset(
        (a, b)
        for a in range(1, m + 1)
        for b in range(1, m + 1)
        if p(a) > b and inv(b) > a
    ))


def essential_set(p: Permutation) -> Diagram:
    """SE corners of the Rothe diagram."""
    d = rothe_diagram(p).cells
    return Diagram(frozenset(
        (a, b) for a, b in d if (a + 1, b) not in d and (a, b + 1) not in d
    ))


def dominant_part(p: Permutation) -> Diagram:
    """Diagram cells whose whole weakly-NW rectangle lies in the diagram.

    For Rothe diagrams this is the edge-connected component of (1, 1).
    """
    d = rothe_diagram(p).cells
    return Diagram(frozenset(
        (a, b)
        for a, b in d
        if all((r, c) in d for r in range(1, a + 1) for c in range(1, b + 1))
    ))


def extend_partial(pp: PartialPermutation) -> Permutation:
    """The unique permutation in S_{n+k} with the same Rothe diagram.

    Empty rows get 1s in the new columns n+1, n+2, ... top to bottom, and
    empty columns get 1s in the new rows, left to right.
    """
    n = pp.n
    filled_rows = {a for a, _ in pp.ones}
    filled_cols = {b for _, b in pp.ones}
    images = {a: b for a, b in pp.ones}
    empty_rows = [a for a in range(1, n + 1) if a not in filled_rows]
    empty_cols = [b for b in range(1, n + 1) if b not in filled_cols]
    for k, a in enumerate(empty_rows, start=1):
        images[a] = n + k
    for k, b in enumerate(empty_cols, start=1):
        images[n + k] = b
    size = n + len(empty_rows)
    return Permutation(tuple(images[a] for a in range(1, size + 1)))
