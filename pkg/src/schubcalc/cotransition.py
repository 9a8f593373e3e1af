"""The co-transition recurrence.

For π ≠ w_0^n and a pivot (i, π(i)),

    (x_i - y_{π(i)}) A_π = Σ { A_σ : σ ∈ S_n, σ ⋗ π, σ(i) ≠ π(i) },

so A_π can be computed top-down from A_{w_0^n} with one exact division per
step.  The K-theoretic version replaces the right side by an
inclusion-exclusion over least upper bounds of subsets of those covers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import ConsistencyError, DomainError, LubViolation, NotDivisibleError
from .perm import (
    Permutation, bruhat_leq, covers_above, dominant_part, length, longest, permutations,
)
from .poly import K, Polynomial, exact_divide_linear
from .schubert import base_grothendieck, base_schubert

__all__ = [
    "Pivot", "minimal_pivot", "valid_pivots", "cover_terms", "cotransition_schubert",
    "lub", "cotransition_grothendieck", "cotransition_subsets",
]


@dataclass(frozen=True, order=True)
class Pivot:
    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


def _require_in(p: Permutation, n: int) -> None:
    if not p.in_S(n):
        raise DomainError(f"{p} does not lie in S_{n}")


def minimal_pivot(p: Permutation, n: int, strict: bool = False) -> Pivot:
    """The least row i with i + π(i) <= n (or < n when ``strict``).

    Every π ∈ S_n other than w_0^n has a row with i + π(i) <= n: if all
    i + π(i) > n then π(i) = n + 1 - i throughout.  The strict condition can
    fail even so, e.g. for 213 in S_3, and then a DomainError is raised.
    """
    _require_in(p, n)
    for i in range(1, n + 1):
        if i + p(i) < n or (not strict and i + p(i) == n):
            return Pivot(i, p(i))
    if p == longest(n):
        raise DomainError(f"{p} is w_0^{n}: the base case has no pivot")
    raise DomainError(f"{p} has no row with i + π(i) < {n}")


def valid_pivots(p: Permutation, n: int) -> list[Pivot]:
    """Cells (i, π(i)) in the NW triangle whose NW rectangle, minus the cell
    itself, lies in the dominant part."""
    _require_in(p, n)
    dom = dominant_part(p).cells
    out = []
    for i in range(1, n + 1):
        j = p(i)
        if i + j > n:
            continue
        if all((a, b) in dom for a in range(1, i + 1) for b in range(1, j + 1) if (a, b) != (i, j)):
            out.append(Pivot(i, j))
    return out


def cover_terms(p: Permutation, pivot: Pivot, n: int) -> list[Permutation]:
    """{σ ∈ S_n : σ ⋗ π, σ(i) ≠ π(i)}, lexicographic."""
    _require_in(p, n)
    if pivot.col != p(pivot.row) or pivot not in valid_pivots(p, n):
        raise DomainError(f"{pivot} is not a valid pivot for {p} in S_{n}")
    i = pivot.row
    terms = [s for s in covers_above(p, n) if s(i) != p(i)]
    return sorted(terms, key=lambda s: s.key(n))


def cotransition_schubert(
    p: Permutation,
    n: int,
    pivot: Pivot | None = None,
    cache: dict | None = None,
) -> Polynomial:
    """A_π by the co-transition recurrence from A_{w_0^n}.

    ``pivot`` overrides the minimal pivot at the top level only; deeper
    levels always use the minimal pivot.  ``cache`` is a memo table that
    may be shared across calls within one session.
    """
    _require_in(p, n)
    memo = {} if cache is None else cache
    return _schubert(p, n, pivot, memo)


def _schubert(p: Permutation, n: int, pivot: Pivot | None, memo: dict) -> Polynomial:
    key = ("A", p.images, n)
    if pivot is None and key in memo:
        return memo[key]
    if p == longest(n):
        result = base_schubert(n)
    else:
        piv = pivot or minimal_pivot(p, n)
        total = Polynomial.zero()
        for s in cover_terms(p, piv, n):
            total = total + _schubert(s, n, None, memo)
        try:
            result = exact_divide_linear(total, piv.row, piv.col)
        except NotDivisibleError as exc:
            raise ConsistencyError(
                f"co-transition sum for {p} not divisible by x{piv.row} - y{piv.col}"
            ) from exc
    if pivot is None:
        memo[key] = result
    return result


def lub(covers: Iterable[Permutation], n: int, base_length: int | None = None) -> Permutation:
    """Unique Bruhat-least common upper bound inside S_n, by exhaustive scan.

    With ``base_length`` = ℓ(π), also checks ℓ(lub) = ℓ(π) + |S|.
    """
    covers = list(covers)
    if not covers:
        raise DomainError("lub of an empty set")
    for s in covers:
        _require_in(s, n)
    uppers = [t for t in permutations(n) if all(bruhat_leq(s, t) for s in covers)]
    minimal = [t for t in uppers if not any(u != t and bruhat_leq(u, t) for u in uppers)]
    if len(minimal) != 1:
        raise LubViolation(
            f"{len(minimal)} minimal upper bounds for {{{', '.join(map(str, covers))}}} in S_{n}"
        )
    top = minimal[0]
    if base_length is not None and length(top) != base_length + len(covers):
        raise LubViolation(
            f"lub {top} has length {length(top)}, expected {base_length + len(covers)}"
        )
    return top


def cotransition_subsets(p: Permutation, n: int, pivot: Pivot | None = None):
    """Yield (S, lub(S), sign) over the nonempty subsets S of the cover terms."""
    piv = pivot or minimal_pivot(p, n)
    terms = cover_terms(p, piv, n)
    ell = length(p)
    for k in range(1, len(terms) + 1):
        for subset in itertools.combinations(terms, k):
            top = lub(subset, n, base_length=ell)
            yield subset, top, (1 if k % 2 else -1)


def cotransition_grothendieck(
    p: Permutation,
    n: int,
    pivot: Pivot | None = None,
    cache: dict | None = None,
) -> Polynomial:
    """A'_π from Σ_S (-1)^{|S|-1} A'_{lub(S)} divided by 1 - Y_{π(i)}/X_i."""
    _require_in(p, n)
    memo = {} if cache is None else cache
    return _grothendieck(p, n, pivot, memo)


def _grothendieck(p: Permutation, n: int, pivot: Pivot | None, memo: dict) -> Polynomial:
    key = ("K", p.images, n)
    if pivot is None and key in memo:
        return memo[key]
    if p == longest(n):
        result = base_grothendieck(n)
    else:
        piv = pivot or minimal_pivot(p, n)
        total = Polynomial.zero(K)
        for _, top, sign in cotransition_subsets(p, n, piv):
            term = _grothendieck(top, n, None, memo)
            total = total + (term if sign > 0 else -term)
        try:
            result = exact_divide_linear(total, piv.row, piv.col)
        except NotDivisibleError as exc:
            raise ConsistencyError(
                f"K co-transition sum for {p} not divisible by 1 - Y{piv.col}/X{piv.row}"
            ) from exc
    if pivot is None:
        memo[key] = result
    return result
