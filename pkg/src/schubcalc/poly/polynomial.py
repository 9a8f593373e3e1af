"""Sparse exact-integer polynomials in two families of variables.

A monomial is a pair ``(xs, ys)`` of exponent tuples, ``xs[k]`` being the
exponent of x_{k+1}; both tuples have trailing zeros stripped so every
monomial has exactly one representation.  A polynomial maps monomials to
nonzero Python ints.

In K mode the same slots hold X_i = exp(x_i) and Y_j = exp(y_j) and
exponents may be negative, so 1 - Y_1/X_1 is stored as ``{((), ()): 1,
((-1,), (1,)): -1}``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from ..errors import DomainError

COHOMOLOGICAL = "cohomological"
K = "K"
MODES = (COHOMOLOGICAL, K)

Exps = tuple[int, ...]
Monomial = tuple[Exps, Exps]

ONE: Monomial = ((), ())


def trim(e: Iterable[int]) -> Exps:
    e = list(e)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def add_exps(a: Exps, b: Exps) -> Exps:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    for k, v in enumerate(b):
        out[k] += v
    return trim(out)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return add_exps(m1[0], m2[0]), add_exps(m1[1], m2[1])


def mono_degree(m: Monomial) -> int:
    return sum(m[0]) + sum(m[1])


def _unit(k: int, e: int = 1) -> Exps:
    return (0,) * (k - 1) + (e,) if e else ()


class Polynomial:
    """Immutable sparse polynomial; use the module helpers to build one."""

    __slots__ = ("mode", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, mode: str = COHOMOLOGICAL):
        if mode not in MODES:
            raise DomainError(f"unknown polynomial mode {mode!r}")
        clean = {}
        for (xs, ys), c in (terms or {}).items():
            if c:
                xs, ys = trim(xs), trim(ys)
                if mode == COHOMOLOGICAL and (any(e < 0 for e in xs) or any(e < 0 for e in ys)):
                    raise DomainError("negative exponent in a cohomological polynomial")
                clean[(xs, ys)] = clean.get((xs, ys), 0) + int(c)
        self.mode = mode
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, int], mode: str) -> Polynomial:
        # trusted constructor: terms already trimmed and zero-free
        p = cls.__new__(cls)
        p.mode = mode
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c: int, mode: str = COHOMOLOGICAL) -> Polynomial:
        return cls({ONE: c}, mode)

    @classmethod
    def zero(cls, mode: str = COHOMOLOGICAL) -> Polynomial:
        return cls._raw({}, mode)

    @classmethod
    def one(cls, mode: str = COHOMOLOGICAL) -> Polynomial:
        return cls._raw({ONE: 1}, mode)

    @classmethod
    def x(cls, i: int, mode: str = COHOMOLOGICAL, exponent: int = 1) -> Polynomial:
        _check_index(i)
        return cls({(_unit(i, exponent), ()): 1}, mode)

    @classmethod
    def y(cls, j: int, mode: str = COHOMOLOGICAL, exponent: int = 1) -> Polynomial:
        _check_index(j)
        return cls({((), _unit(j, exponent)): 1}, mode)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self._terms)

    def constant_term(self) -> int:
        return self._terms.get(ONE, 0)

    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((mono_degree(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((mono_degree(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self._terms}) <= 1

    def x_indices(self) -> set[int]:
        return {k + 1 for xs, _ in self._terms for k, e in enumerate(xs) if e}

    def y_indices(self) -> set[int]:
        return {k + 1 for _, ys in self._terms for k, e in enumerate(ys) if e}

    def only_y(self) -> bool:
        return all(not xs for xs, _ in self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms by total degree descending, then exponent vector
        (x_1, x_2, ..., y_1, y_2, ...) lexicographically descending."""
        nx = max((len(xs) for xs, _ in self._terms), default=0)
        ny = max((len(ys) for _, ys in self._terms), default=0)

        def key(item):
            (xs, ys), _ = item
            return (
                mono_degree((xs, ys)),
                xs + (0,) * (nx - len(xs)),
                ys + (0,) * (ny - len(ys)),
            )

        return sorted(self._terms.items(), key=key, reverse=True)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.mode != self.mode:
                raise DomainError(f"mode mismatch: {self.mode} vs {other.mode}")
            return other
        if isinstance(other, int):
            return Polynomial.constant(other, self.mode)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.mode)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.mode)

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c}, self.mode)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            if len(self._terms) == 1:
                (m, c), = self._terms.items()
                if c in (1, -1) and self.mode == K:
                    inv = (tuple(-e for e in m[0]), tuple(-e for e in m[1]))
                    return Polynomial._raw({inv: c}, K) ** (-k)
            raise DomainError("negative powers exist only for K-mode unit monomials")
        result = Polynomial.one(self.mode)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_monomial(self, mono: Monomial, coeff: int = 1) -> Polynomial:
        """Multiply every term by ``coeff * mono`` (cheaper than a full product)."""
        if not coeff:
            return Polynomial.zero(self.mode)
        return Polynomial._raw(
            {mono_mul(m, mono): c * coeff for m, c in self._terms.items()}, self.mode
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other, self.mode)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.mode == other.mode and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.mode, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .expr import render
        return f"Polynomial({render(self, 'text')!r}, mode={self.mode!r})"

    def __str__(self) -> str:
        from .expr import render
        return render(self, "text")


def _check_index(i: int) -> None:
    if not isinstance(i, int) or i < 1:
        raise DomainError(f"variable index must be a positive integer, got {i!r}")


def x(i: int) -> Polynomial:
    return Polynomial.x(i)


def y(j: int) -> Polynomial:
    return Polynomial.y(j)


def X(i: int, exponent: int = 1) -> Polynomial:
    return Polynomial.x(i, K, exponent)


def Y(j: int, exponent: int = 1) -> Polynomial:
    return Polynomial.y(j, K, exponent)


def arithmetic(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "subtract", "multiply"}; modes must agree."""
    if f.mode != g.mode:
        raise DomainError(f"mode mismatch: {f.mode} vs {g.mode}")
    if op == "add":
        return f + g
    if op == "subtract":
        return f - g
    if op == "multiply":
        return f * g
    raise DomainError(f"unknown operation {op!r}")


def product(factors: Iterable[Polynomial], mode: str = COHOMOLOGICAL) -> Polynomial:
    out = Polynomial.one(mode)
    for f in factors:
        out = out * f
    return out
