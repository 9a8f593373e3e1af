"""Double Schubert and double Grothendieck polynomials by operator recursion.

A_π is obtained from the top class A_{w_0^n} = ∏_{i+j≤n} (x_i - y_j) by
divided differences, and the K-theoretic A'_π from
∏_{i+j≤n} (1 - Y_j/X_i) by isobaric Demazure operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .errors import ConsistencyError, DomainError, ExpansionError, NotDivisibleError
from .perm import (
    Permutation, compose, covers_above, inverse, length, longest, permutations,
    simple_reflection,
)
from .poly import (
    COHOMOLOGICAL, K, Polynomial, X, Y, divided_difference, exact_divide, isobaric_demazure,
    restrict, to_json, x, y,
)

__all__ = [
    "BasisExpansion", "base_schubert", "reduced_word", "reduced_words", "word_product",
    "schubert_dd", "monk_product", "expand", "base_grothendieck", "grothendieck_demazure",
]


def _require_in(p: Permutation, n: int) -> None:
    if not p.in_S(n):
        raise DomainError(f"{p} does not lie in S_{n}")


def base_schubert(n: int) -> Polynomial:
    """∏_{i+j≤n} (x_i - y_j)."""
    if n < 1:
        raise DomainError("n must be positive")
    out = Polynomial.one()
    for i in range(1, n):
        for j in range(1, n - i + 1):
            out = out * (x(i) - y(j))
    return out


def base_grothendieck(n: int) -> Polynomial:
    """∏_{i+j≤n} (1 - Y_j/X_i)."""
    if n < 1:
        raise DomainError("n must be positive")
    out = Polynomial.one(K)
    for i in range(1, n):
        for j in range(1, n - i + 1):
            out = out * (1 - Y(j) * X(i, -1))
    return out


def word_product(word: Sequence[int]) -> Permutation:
    """r_{i_1} r_{i_2} ... r_{i_k} as a permutation (composition of functions)."""
    out = Permutation()
    for i in word:
        out = compose(out, simple_reflection(i))
    return out


def reduced_word(p: Permutation) -> list[int]:
    """A reduced word for p, found by repeatedly removing the first descent."""
    letters = []
    w = list(p.images)
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                letters.append(i + 1)
                break
        else:
            break
    return letters[::-1]


def reduced_words(p: Permutation) -> Iterator[list[int]]:
    """Every reduced word of p (lexicographic order)."""
    if p.is_identity():
        yield []
        return
    w = p.images
    for i in range(len(w) - 1):
        if w[i] > w[i + 1]:
            for prefix in reduced_words(p.swap_positions(i + 1, i + 2)):
                yield prefix + [i + 1]


def _operator_word(p: Permutation, n: int, word: Sequence[int] | None) -> list[int]:
    # a reduced word of p^{-1} w_0^n; its letters are applied right to left
    target = compose(inverse(p), longest(n))
    if word is None:
        return reduced_word(target)
    word = list(word)
    if len(word) != target.length or word_product(word) != target:
        raise DomainError(f"{word} is not a reduced word for {target}")
    return word


def _first_ascent(p: Permutation, n: int) -> int:
    w = p.one_line(n)
    for i in range(n - 1):
        if w[i] < w[i + 1]:
            return i + 1
    raise DomainError(f"{p} is the longest element of S_{n}")


@lru_cache(maxsize=None)
def _schubert_cached(images: tuple[int, ...], n: int) -> Polynomial:
    p = Permutation(images)
    if p == longest(n):
        return base_schubert(n)
    i = _first_ascent(p, n)
    parent = p.swap_positions(i, i + 1)
    return divided_difference(_schubert_cached(parent.images, n), i)


@lru_cache(maxsize=None)
def _grothendieck_cached(images: tuple[int, ...], n: int) -> Polynomial:
    p = Permutation(images)
    if p == longest(n):
        return base_grothendieck(n)
    i = _first_ascent(p, n)
    parent = p.swap_positions(i, i + 1)
    return isobaric_demazure(_grothendieck_cached(parent.images, n), i)


def schubert_dd(p: Permutation, n: int, word: Sequence[int] | None = None) -> Polynomial:
    """A_p = ∂_{p^{-1} w_0^n} A_{w_0^n}.

    Without ``word`` the result comes from a memoized recursion
    A_p = ∂_i A_{p r_i} over first ascents i.  With ``word`` (a reduced word
    of p^{-1} w_0^n) the operators are applied literally, last letter first.
    """
    _require_in(p, n)
    if word is None:
        return _schubert_cached(p.images, n)
    f = base_schubert(n)
    for i in reversed(_operator_word(p, n, word)):
        f = divided_difference(f, i)
    return f


def grothendieck_demazure(p: Permutation, n: int, word: Sequence[int] | None = None) -> Polynomial:
    """A'_p from the K base case by isobaric Demazure operators."""
    _require_in(p, n)
    if word is None:
        return _grothendieck_cached(p.images, n)
    f = base_grothendieck(n)
    for i in reversed(_operator_word(p, n, word)):
        f = isobaric_demazure(f, i)
    return f


@dataclass
class BasisExpansion:
    """Σ coefficients[σ] · A_σ with coefficients in ℤ[y]."""

    coefficients: dict[Permutation, Polynomial] = field(default_factory=dict)

    def __post_init__(self):
        self.coefficients = {p: c for p, c in self.coefficients.items() if c}
        for c in self.coefficients.values():
            if not c.only_y():
                raise DomainError("expansion coefficients may only involve y variables")

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            other = BasisExpansion(dict(other))
        if not isinstance(other, BasisExpansion):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __len__(self) -> int:
        return len(self.coefficients)

    def sorted_items(self) -> list[tuple[Permutation, Polynomial]]:
        n = max((len(p) for p in self.coefficients), default=1)
        return sorted(self.coefficients.items(), key=lambda kv: kv[0].key(n))

    def reconstruct(self, n: int | None = None) -> Polynomial:
        total = Polynomial.zero()
        for p, c in self.coefficients.items():
            m = max(n or 1, len(p), 1)
            total = total + c * schubert_dd(p, m)
        return total

    def to_json(self) -> dict:
        return {"terms": [{"perm": str(p), "coeff": to_json(c)} for p, c in self.sorted_items()]}


def monk_product(p: Permutation, i: int, n: int) -> BasisExpansion:
    """Expansion of (x_i - y_{p(i)}) A_p over the covers of p in S_{n+1}."""
    _require_in(p, n)
    if i < 1:
        raise DomainError("i must be positive")
    m = max(n, i) + 1
    coeffs = {}
    for rho in covers_above(p, m):
        if rho(i) > p(i):
            coeffs[rho] = Polynomial.one()
        elif rho(i) < p(i):
            coeffs[rho] = Polynomial.constant(-1)
    return BasisExpansion(coeffs)


def expand(p: Polynomial, n: int) -> BasisExpansion:
    """Write p as a ℤ[y]-combination of A_σ, σ ∈ S_n.

    Scan S_n by length, then lexicographically.  At the first σ where the
    remainder does not vanish (a Bruhat-minimal point of its support),
    record p|_σ / A_σ|_σ and subtract that multiple of A_σ.  A_σ vanishes
    at every earlier point of the scan, so one pass suffices.
    """
    if p.mode != COHOMOLOGICAL:
        raise DomainError("expand works on cohomological polynomials")
    order = sorted(permutations(n), key=lambda s: (length(s), s.key(n)))
    coeffs: dict[Permutation, Polynomial] = {}
    remaining = p
    for sigma in order:
        if not remaining:
            break
        value = restrict(remaining, sigma)
        if not value:
            continue
        a_sigma = schubert_dd(sigma, n)
        try:
            c = exact_divide(value, restrict(a_sigma, sigma))
        except NotDivisibleError:
            raise ExpansionError(f"not expressible over S_{n}: inexact division at {sigma}") from None
        coeffs[sigma] = c
        remaining = remaining - c * a_sigma
        if restrict(remaining, sigma):
            raise ConsistencyError(f"expansion step at {sigma} did not clear the restriction")
    if remaining:
        raise ExpansionError(f"{remaining} vanishes on S_{n} but is nonzero; not expressible over S_{n}")
    return BasisExpansion(coeffs)
