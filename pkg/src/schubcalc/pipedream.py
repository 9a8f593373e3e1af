"""Pipe dreams: crossing sets in the staircase {(a, b) : a + b <= n}.

Pipes enter along the North edge, pipe c in column c.  A cross tile lets
both strands go straight through; an elbow tile turns a strand arriving
from the North out to the West and one arriving from the East out to the
South.  The permutation of a pipe dream sends row r to the label of the
pipe leaving the West edge in row r.

Nonreduced dreams are read by following the strands and, whenever two
strands that have already crossed meet again at a cross tile, letting
that tile act as an elbow for them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError, FormatError
from .perm import Permutation, format_one_line, length
from .poly import K, Polynomial, X, Y, x, y

__all__ = [
    "PipeDream", "TraceResult", "staircase", "trace",
    "enumerate_reduced", "enumerate_nonreduced", "pipe_polynomial",
    "grothendieck_pipe_polynomial", "render_pipe_dream", "parse_pipe_dream_ascii",
    "format_pipe_dream", "parse_pipe_dream",
]

Cell = tuple[int, int]

# exhaustive subset tracing is used up to this staircase size
EXHAUSTIVE_MAX_N = 6


def staircase(n: int) -> list[Cell]:
    """Cells (a, b) with a + b <= n, row-major."""
    return [(a, b) for a in range(1, n) for b in range(1, n - a + 1)]


@dataclass(frozen=True)
class PipeDream:
    n: int
    crosses: frozenset[Cell] = frozenset()

    def __post_init__(self):
        crosses = frozenset((int(a), int(b)) for a, b in self.crosses)
        for a, b in crosses:
            if a < 1 or b < 1 or a + b > self.n:
                raise DomainError(f"cross {(a, b)} lies outside the size-{self.n} staircase")
        object.__setattr__(self, "crosses", crosses)

    def __len__(self) -> int:
        return len(self.crosses)

    def sorted_crosses(self) -> list[Cell]:
        return sorted(self.crosses)

    def with_cross(self, cell: Cell) -> PipeDream:
        return PipeDream(self.n, self.crosses | {cell})

    def without_cross(self, cell: Cell) -> PipeDream:
        return PipeDream(self.n, self.crosses - {cell})

    def embed(self, n: int) -> PipeDream:
        if n < self.n:
            raise DomainError("cannot shrink a pipe dream")
        return PipeDream(n, self.crosses)


@dataclass(frozen=True)
class TraceResult:
    permutation: Permutation
    reduced: bool


def _trace_cells(n: int, crosses: frozenset[Cell]) -> tuple[tuple[int, ...], int]:
    """Follow all pipes; return (row -> pipe label, number of bounced crosses)."""
    # north[c]: label of the pipe entering the current row from above in column c
    north = list(range(n + 2))
    crossed: set[tuple[int, int]] = set()
    exits = []
    bounces = 0
    for r in range(1, n + 1):
        last = n + 1 - r
        # the anti-diagonal cell (r, last) and everything East of it are elbows;
        # the strand arriving from the East at (r, last) is the one that came
        # down column last + 1
        east = north[last + 1]
        for c in range(last, 0, -1):
            top = north[c]
            if (r, c) in crosses:
                pair = (top, east) if top < east else (east, top)
                if pair in crossed:
                    bounces += 1
                    north[c], east = east, top
                else:
                    crossed.add(pair)
                    north[c] = top
            else:
                north[c], east = east, top
        exits.append(east)
    return tuple(exits), bounces


def trace(d: PipeDream) -> TraceResult:
    exits, bounces = _trace_cells(d.n, d.crosses)
    return TraceResult(Permutation(exits), bounces == 0)


@lru_cache(maxsize=None)
def _trace_table(n: int) -> dict[Permutation, tuple[tuple[frozenset[Cell], bool], ...]]:
    """Trace every subset of the staircase once; group by permutation."""
    cells = staircase(n)
    table: dict[Permutation, list[tuple[frozenset[Cell], bool]]] = {}
    for k in range(len(cells) + 1):
        for subset in itertools.combinations(cells, k):
            fs = frozenset(subset)
            exits, bounces = _trace_cells(n, fs)
            table.setdefault(Permutation(exits), []).append((fs, bounces == 0))
    return {p: tuple(v) for p, v in table.items()}


def _sorted_dreams(n: int, sets: Iterable[frozenset[Cell]]) -> list[PipeDream]:
    return [PipeDream(n, s) for s in sorted(sets, key=lambda s: (len(s), sorted(s)))]


def _word_search(p: Permutation, n: int, reduced: bool) -> Iterator[frozenset[Cell]]:
    """Depth-first search over the staircase in reading order.

    Reading rows top to bottom and each row right to left, a cross at (a, b)
    contributes the simple transposition of positions a+b-1, a+b on the
    strand order; the running (Demazure) product must stay below p in
    the right weak order, which prunes almost every dead branch.
    """
    target = p.one_line(n)
    cells = [(a, b) for a in range(1, n) for b in range(n - a, 0, -1)]
    goal_len = length(p)
    # inverse positions of target, to test weak-order prefixes
    pos_in_target = {v: k for k, v in enumerate(target)}

    def below(w: list[int]) -> bool:
        # w <=_R target  iff  every inversion (by value) of w is one of target
        lw = len(w)
        for i in range(lw):
            for j in range(i + 1, lw):
                if w[i] > w[j] and pos_in_target[w[i]] > pos_in_target[w[j]]:
                    return False
        return True

    start = list(range(1, n + 1))
    chosen: list[Cell] = []

    def rec(k: int, w: list[int], ell: int):
        if reduced and ell + (len(cells) - k) < goal_len:
            return
        if k == len(cells):
            if w == list(target):
                yield frozenset(chosen)
            return
        a, b = cells[k]
        s = a + b - 2
        yield from rec(k + 1, w, ell)
        if w[s] < w[s + 1]:
            w2 = list(w)
            w2[s], w2[s + 1] = w2[s + 1], w2[s]
            if below(w2):
                chosen.append((a, b))
                yield from rec(k + 1, w2, ell + 1)
                chosen.pop()
        elif not reduced:
            chosen.append((a, b))
            yield from rec(k + 1, w, ell)
            chosen.pop()

    yield from rec(0, start, 0)


def enumerate_reduced(p: Permutation, n: int, method: str = "auto") -> list[PipeDream]:
    """All reduced pipe dreams for p in the size-n staircase, each once.

    ``method`` is "exhaustive" (trace every subset), "search" (pruned
    reading-word search) or "auto" (exhaustive for n <= EXHAUSTIVE_MAX_N).
    """
    if not p.in_S(n):
        raise DomainError(f"{p} does not lie in S_{n}")
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_MAX_N else "search"
    if method == "exhaustive":
        sets = [s for s, red in _trace_table(n).get(p, ()) if red]
    elif method == "search":
        sets = list(_word_search(p, n, reduced=True))
    else:
        raise DomainError(f"unknown enumeration method {method!r}")
    return _sorted_dreams(n, sets)


def enumerate_nonreduced(p: Permutation, n: int, method: str = "auto") -> list[PipeDream]:
    """All subsets of the staircase whose (first-crossing) reading is p."""
    if not p.in_S(n):
        raise DomainError(f"{p} does not lie in S_{n}")
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_MAX_N else "search"
    if method == "exhaustive":
        sets = [s for s, _ in _trace_table(n).get(p, ())]
    elif method == "search":
        sets = list(_word_search(p, n, reduced=False))
    else:
        raise DomainError(f"unknown enumeration method {method!r}")
    return _sorted_dreams(n, sets)


def dream_weight(d: PipeDream) -> Polynomial:
    out = Polynomial.one()
    for a, b in d.sorted_crosses():
        out = out * (x(a) - y(b))
    return out


def dream_weight_k(d: PipeDream) -> Polynomial:
    out = Polynomial.one(K)
    for a, b in d.sorted_crosses():
        out = out * (1 - Y(b) * X(a, -1))
    return out


def pipe_polynomial(p: Permutation, n: int) -> Polynomial:
    """Σ over reduced pipe dreams of ∏_{crosses} (x_row - y_col)."""
    total = Polynomial.zero()
    for d in enumerate_reduced(p, n):
        total = total + dream_weight(d)
    return total


def grothendieck_pipe_polynomial(p: Permutation, n: int) -> Polynomial:
    """Σ over all pipe dreams for p of (-1)^{|D| - ℓ(p)} ∏ (1 - Y_col/X_row)."""
    ell = length(p)
    total = Polynomial.zero(K)
    for d in enumerate_nonreduced(p, n):
        term = dream_weight_k(d)
        total = total + (term if (len(d) - ell) % 2 == 0 else -term)
    return total


_GLYPHS = {
    "ascii": {"cross": "+", "elbow": ".", "outside": " "},
    "unicode": {"cross": "┼", "elbow": "╯", "outside": " "},
}


def render_pipe_dream(d: PipeDream, style: str = "ascii") -> str:
    """Column labels on top, traced permutation down the left side."""
    if style not in _GLYPHS:
        raise DomainError(f"unknown style {style!r}")
    glyph = _GLYPHS[style]
    perm = trace(d).permutation.one_line(d.n)
    width = len(str(d.n))
    lines = [" " * (width + 1) + " ".join(str(c).rjust(width) for c in range(1, d.n + 1))]
    for a in range(1, d.n + 1):
        row = []
        for b in range(1, d.n + 1):
            if a + b > d.n:
                g = glyph["outside"]
            elif (a, b) in d.crosses:
                g = glyph["cross"]
            else:
                g = glyph["elbow"]
            row.append(g.rjust(width))
        lines.append((str(perm[a - 1]).rjust(width) + " " + " ".join(row)).rstrip())
    return "\n".join(lines)


def parse_pipe_dream_ascii(text: str) -> PipeDream:
    """Inverse of ``render_pipe_dream(d, "ascii")``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty pipe dream picture")
    n = len(lines[0].split())
    crosses = set()
    for a, line in enumerate(lines[1:], start=1):
        cells = line.split()[1:]
        for b, g in enumerate(cells, start=1):
            if g == "+":
                crosses.add((a, b))
            elif g != ".":
                raise FormatError(f"unexpected tile {g!r} in row {a}")
    return PipeDream(n, frozenset(crosses))


def format_pipe_dream(d: PipeDream) -> str:
    """Fixture format: "n=<int>" then one "(row,col)" per cross, row-major."""
    return "\n".join([f"n={d.n}"] + [f"({a},{b})" for a, b in d.sorted_crosses()])


_CELL = re.compile(r"^\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def parse_pipe_dream(text: str) -> PipeDream:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise FormatError("pipe dream fixture must start with 'n=<int>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise FormatError(f"bad size line {lines[0]!r}") from None
    crosses = []
    for ln in lines[1:]:
        m = _CELL.match(ln)
        if not m:
            raise FormatError(f"bad cross line {ln!r}")
        crosses.append((int(m.group(1)), int(m.group(2))))
    return PipeDream(n, frozenset(crosses))


def describe(p: Permutation, n: int) -> str:
    return format_one_line(p.one_line(n))
