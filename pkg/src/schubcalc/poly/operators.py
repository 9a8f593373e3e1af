"""Nil Hecke operators, point restriction, support and exact division."""

from __future__ import annotations

from ..errors import ConsistencyError, DomainError, NotDivisibleError
from ..perm import Permutation, permutations
from .polynomial import (
    COHOMOLOGICAL, K, Exps, Monomial, Polynomial, _unit, add_exps, trim,
)

__all__ = [
    "swap_x", "divided_difference", "isobaric_demazure", "restrict", "support",
    "exact_divide_linear", "exact_divide", "divide_by_binomial",
]


def _swap(e: Exps, i: int) -> Exps:
    if len(e) < i:
        return e
    e = list(e) + [0] * (i + 1 - len(e))
    e[i - 1], e[i] = e[i], e[i - 1]
    return trim(e)


def swap_x(f: Polynomial, i: int) -> Polynomial:
    """Exchange x_i and x_{i+1} (X_i and X_{i+1} in K mode)."""
    out = {(_swap(xs, i), ys): c for (xs, ys), c in f.items()}
    return Polynomial._raw(out, f.mode)


def _x_exponent(m: Monomial, i: int) -> int:
    xs = m[0]
    return xs[i - 1] if len(xs) >= i else 0


def _without_x(m: Monomial, i: int) -> Monomial:
    xs, ys = m
    if len(xs) < i:
        return m
    xs = list(xs)
    xs[i - 1] = 0
    return trim(xs), ys


def _mul_into(acc: dict, coeffs: dict, mono: Monomial, scale: int = 1) -> None:
    for m, c in coeffs.items():
        key = (add_exps(m[0], mono[0]), add_exps(m[1], mono[1]))
        v = acc.get(key, 0) + c * scale
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def divide_by_binomial(f: Polynomial, i: int, u: Monomial) -> tuple[Polynomial, Polynomial]:
    """Divide ``f`` by ``x_i - u`` where the monomial ``u`` does not involve x_i.

    ``f`` is treated as a (Laurent) polynomial in x_i with coefficients in the
    remaining variables and divided synthetically.  Returns ``(q, r)`` with
    ``f = q*(x_i - u) + r`` and ``r`` free of x_i.
    """
    if _x_exponent(u, i):
        raise DomainError("the subtracted monomial must not involve the division variable")
    by_power: dict[int, dict[Monomial, int]] = {}
    for m, c in f.items():
        by_power.setdefault(_x_exponent(m, i), {})[_without_x(m, i)] = c
    if not by_power:
        return Polynomial.zero(f.mode), Polynomial.zero(f.mode)
    shift = -min(min(by_power), 0)
    top = max(by_power) + shift
    # Horner: q_{k-1} = c_k + u*q_k, remainder = c_0 + u*q_0
    quotient: dict[Monomial, int] = {}
    carry: dict[Monomial, int] = {}
    for k in range(top, 0, -1):
        q_k = dict(by_power.get(k - shift, {}))
        _mul_into(q_k, carry, u)
        carry = q_k
        if q_k:
            _mul_into(quotient, q_k, (_unit(i, k - 1 - shift), ()))
    rem = dict(by_power.get(-shift, {}))
    _mul_into(rem, carry, u)
    remainder: dict[Monomial, int] = {}
    _mul_into(remainder, rem, (_unit(i, -shift) if shift else (), ()))
    return Polynomial._raw(quotient, f.mode), Polynomial._raw(remainder, f.mode)


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    """(f - r_i f) / (x_i - x_{i+1})."""
    if f.mode != COHOMOLOGICAL:
        raise DomainError("divided differences act on cohomological polynomials")
    q, r = divide_by_binomial(f - swap_x(f, i), i, (_unit(i + 1), ()))
    if r:
        raise ConsistencyError(f"divided difference left remainder {r}")
    return q


def isobaric_demazure(f: Polynomial, i: int) -> Polynomial:
    """(X_i f - X_{i+1} r_i f) / (X_i - X_{i+1})."""
    if f.mode != K:
        raise DomainError("isobaric Demazure operators act on K-mode polynomials")
    numerator = f.scale_monomial((_unit(i), ())) - swap_x(f, i).scale_monomial((_unit(i + 1), ()))
    q, r = divide_by_binomial(numerator, i, (_unit(i + 1), ()))
    if r:
        raise ConsistencyError(f"Demazure operator left remainder {r}")
    return q


def restrict(f: Polynomial, rho: Permutation) -> Polynomial:
    """Substitute x_i ↦ y_{ρ(i)} (X_i ↦ Y_{ρ(i)} in K mode)."""
    images = rho.images
    m = len(images)
    out: dict[Monomial, int] = {}
    for (xs, ys), c in f.items():
        if not xs:
            new_ys = ys
        else:
            size = max(len(ys), m if len(xs) <= m else len(xs))
            new = list(ys) + [0] * (size - len(ys))
            for k, e in enumerate(xs):
                if e:
                    t = images[k] if k < m else k + 1
                    new[t - 1] += e
            new_ys = trim(new)
        key = ((), new_ys)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            del out[key]
    return Polynomial._raw(out, f.mode)


def support(f: Polynomial, n: int) -> set[Permutation]:
    """{σ ∈ S_n : f restricted to σ is nonzero}."""
    return {s for s in permutations(n) if restrict(f, s)}


def exact_divide_linear(f: Polynomial, i: int, j: int, family: str = "y") -> Polynomial:
    """Divide exactly by x_i - y_j (family "y") or x_i - x_j (family "x").

    In K mode the divisors are 1 - Y_j/X_i and 1 - X_j/X_i.
    Raises NotDivisibleError carrying the remainder when the division is inexact.
    """
    if family == "y":
        u: Monomial = ((), _unit(j))
    elif family == "x":
        if i == j:
            raise DomainError("x_i - x_i is zero")
        u = (_unit(j), ())
    else:
        raise DomainError(f"unknown divisor family {family!r}")
    dividend = f.scale_monomial((_unit(i), ())) if f.mode == K else f
    q, r = divide_by_binomial(dividend, i, u)
    if r:
        raise NotDivisibleError(f"not divisible by the linear factor (i={i}, {family}{j})", r)
    return q


def _leading(f: Polynomial) -> tuple[Monomial, int]:
    return f.sorted_terms()[0]


def _divides(a: Monomial, b: Monomial) -> Monomial | None:
    """b / a if a divides b (nonnegative exponents), else None."""
    xs = [0] * max(len(a[0]), len(b[0]))
    ys = [0] * max(len(a[1]), len(b[1]))
    for k, e in enumerate(b[0]):
        xs[k] += e
    for k, e in enumerate(a[0]):
        xs[k] -= e
    for k, e in enumerate(b[1]):
        ys[k] += e
    for k, e in enumerate(a[1]):
        ys[k] -= e
    if any(e < 0 for e in xs) or any(e < 0 for e in ys):
        return None
    return trim(xs), trim(ys)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact quotient f / g of cohomological polynomials.

    Long division by leading terms in the canonical (graded lex) order; with a
    single divisor the remainder vanishes exactly when g divides f.
    """
    if f.mode != COHOMOLOGICAL or g.mode != COHOMOLOGICAL:
        raise DomainError("exact_divide works on cohomological polynomials")
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    lead_m, lead_c = _leading(g)
    quotient: dict[Monomial, int] = {}
    r = f
    while r:
        m, c = _leading(r)
        shift = _divides(lead_m, m)
        if shift is None or c % lead_c:
            raise NotDivisibleError("polynomial division is not exact", r)
        qc = c // lead_c
        quotient[shift] = quotient.get(shift, 0) + qc
        r = r - g.scale_monomial(shift, qc)
    return Polynomial._raw({m: c for m, c in quotient.items() if c}, COHOMOLOGICAL)
