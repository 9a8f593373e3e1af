"""Cross-route verification over all of S_n.

Every suite records its outcomes as data: a failing identity produces a
failed check carrying a diagnostic, never an exception, so one wrong
convention shows its whole failure pattern in a single report.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .cotransition import (
    cotransition_grothendieck, cotransition_schubert, cotransition_subsets, cover_terms,
    minimal_pivot, valid_pivots,
)
from .errors import CapacityError, DomainError, NotDivisibleError, SchubcalcError
from .perm import (
    PartialPermutation, Permutation, bruhat_leq, format_one_line, length, longest,
    partial_permutations, permutations, rothe_diagram, extend_partial,
)
from .pipedream import (
    enumerate_nonreduced, enumerate_reduced, grothendieck_pipe_polynomial, pipe_polynomial,
)
from .poly import (
    COHOMOLOGICAL, K, Polynomial, divided_difference, exact_divide,
    exact_divide_linear, isobaric_demazure, render, restrict, swap_x, x, y,
)
from .schubert import (
    BasisExpansion, expand, grothendieck_demazure, monk_product, schubert_dd,
)

__all__ = [
    "Check", "VerificationReport", "check_equality", "run_suite", "SUITES",
    "DEFAULT_CAPS", "DEFAULT_SEED", "random_polynomial", "random_laurent",
]

SUITES = (
    "equality", "monk", "divisibility", "support", "stability",
    "pivots", "lub", "diagrams", "operators", "expansion",
)
# suites that only make sense for one family
_COHOMOLOGICAL_ONLY = {"monk", "expansion"}

DEFAULT_CAPS = {COHOMOLOGICAL: 6, K: 4}
DEFAULT_SEED = 20240229
OPERATOR_SAMPLES = 100
EXPANSION_SAMPLES = 50


@dataclass(frozen=True)
class Check:
    name: str
    instance: str
    passed: bool
    detail: str | None = None
    order: tuple = field(default=(), compare=False, repr=False)

    def to_json(self) -> dict:
        out = {"name": self.name, "instance": self.instance, "passed": self.passed}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    n: int
    family: str
    seed: int
    suites: tuple[str, ...]
    checks: list[Check]
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, include_elapsed: bool = True) -> dict:
        out = {
            "n": self.n,
            "family": self.family,
            "seed": self.seed,
            "suites": list(self.suites),
            "checks": [c.to_json() for c in self.checks],
            "status": self.status,
        }
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    def dumps(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_json(include_elapsed), indent=2)

    def table(self) -> str:
        width = max([len("instance")] + [len(c.instance) for c in self.checks])
        name_w = max([len("check")] + [len(c.name) for c in self.checks])
        lines = [f"{'instance'.ljust(width)}  {'check'.ljust(name_w)}  result"]
        for c in self.checks:
            line = f"{c.instance.ljust(width)}  {c.name.ljust(name_w)}  {'pass' if c.passed else 'FAIL'}"
            if c.detail and not c.passed:
                line += f"  {c.detail}"
            lines.append(line)
        failed = len(self.failures())
        lines.append(
            f"n={self.n} family={self.family} seed={self.seed}: "
            f"{len(self.checks) - failed}/{len(self.checks)} passed, status {self.status}"
        )
        return "\n".join(lines)


def _label(p: Permutation, n: int) -> str:
    return format_one_line(p.one_line(n))


def _perm_check(name: str, p: Permutation, n: int, passed: bool, detail: str | None = None,
                suffix: str = "") -> Check:
    inst = _label(p, n) + (f" {suffix}" if suffix else "")
    return Check(name, inst, passed, None if passed else detail, (0, p.one_line(n), suffix))


def _sample_check(name: str, k: int, passed: bool, detail: str | None = None) -> Check:
    return Check(name, f"sample {k:03d}", passed, None if passed else detail, (1, k, ""))


def _guard(name: str, p: Permutation, n: int, body: Callable[[], tuple[bool, str | None]],
           suffix: str = "") -> Check:
    try:
        ok, detail = body()
    except (SchubcalcError, ArithmeticError, ValueError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return _perm_check(name, p, n, ok, detail, suffix)


def _routes(family: str) -> dict[str, Callable]:
    if family == COHOMOLOGICAL:
        return {"dd": schubert_dd, "pipedream": pipe_polynomial, "cotransition": cotransition_schubert}
    if family == K:
        return {
            "demazure": grothendieck_demazure,
            "pipedream": grothendieck_pipe_polynomial,
            "cotransition": cotransition_grothendieck,
        }
    raise DomainError(f"unknown family {family!r}")


def check_equality(p: Permutation, n: int, family: str = COHOMOLOGICAL,
                   cache: dict | None = None) -> Check:
    """All three routes of ``family`` agree on A_p (or A'_p) in S_n."""
    routes = _routes(family)

    def body():
        values = {}
        for name, fn in routes.items():
            if name == "cotransition":
                values[name] = fn(p, n, cache=cache)
            else:
                values[name] = fn(p, n)
        first = next(iter(values.values()))
        if all(v == first for v in values.values()):
            return True, None
        return False, "; ".join(f"{k}: {render(v)}" for k, v in values.items())

    return _guard("equality", p, n, body)


# -- suites over S_n ---------------------------------------------------------


def _family_poly(family: str) -> Callable[[Permutation, int], Polynomial]:
    return schubert_dd if family == COHOMOLOGICAL else grothendieck_demazure


def _suite_equality(n, family, rng, cache):
    return [check_equality(p, n, family, cache) for p in permutations(n)]


def _suite_monk(n, family, rng, cache):
    out = []
    for p in permutations(n):
        a = schubert_dd(p, n)
        for i in range(1, n + 1):
            def body(p=p, i=i, a=a):
                lhs = (x(i) - y(p(i))) * a
                rhs = monk_product(p, i, n).reconstruct(n + 1)
                return lhs == rhs, f"(x{i} - y{p(i)})*A = {render(lhs)} but the cover sum is {render(rhs)}"
            out.append(_guard("monk", p, n, body, suffix=f"i={i}"))
    return out


def _suite_divisibility(n, family, rng, cache):
    poly = _family_poly(family)
    out = []
    for p in permutations(n):
        if p == longest(n):
            continue

        def body(p=p):
            piv = minimal_pivot(p, n)
            for s in cover_terms(p, piv, n):
                try:
                    exact_divide_linear(poly(s, n), piv.row, piv.col)
                except NotDivisibleError:
                    return False, f"A_{s} is not divisible at pivot {piv}"
            return True, None

        out.append(_guard("divisibility", p, n, body))
    return out


def _suite_support(n, family, rng, cache):
    poly = _family_poly(family)
    perms = permutations(n)
    out = []
    for p in perms:
        a = poly(p, n)

        def vanishing(p=p, a=a):
            bad = [r for r in perms if not bruhat_leq(p, r) and restrict(a, r)]
            return not bad, f"nonzero at {', '.join(_label(r, n) for r in bad)}"

        def diagonal(p=p, a=a):
            return bool(restrict(a, p)), "restriction to itself vanishes"

        out.append(_guard("support", p, n, vanishing))
        out.append(_guard("triangularity", p, n, diagonal))
    return out


def _suite_stability(n, family, rng, cache):
    poly = _family_poly(family)
    dreams = enumerate_reduced if family == COHOMOLOGICAL else enumerate_nonreduced
    out = []
    for p in permutations(n):
        def polys(p=p):
            a, b = poly(p, n), poly(p, n + 1)
            return a == b, f"n={n}: {render(a)}; n={n + 1}: {render(b)}"

        def sets(p=p):
            small = {d.embed(n + 1) for d in dreams(p, n)}
            big = set(dreams(p, n + 1))
            return small == big, f"{len(small)} pipe dreams at n={n}, {len(big)} at n={n + 1}"

        out.append(_guard("stability-poly", p, n, polys))
        out.append(_guard("stability-dreams", p, n, sets))
    return out


def _suite_pivots(n, family, rng, cache):
    engine = cotransition_schubert if family == COHOMOLOGICAL else cotransition_grothendieck
    out = []
    for p in permutations(n):
        if p == longest(n):
            out.append(_guard("pivot-set", p, n, lambda p=p: (
                valid_pivots(p, n) == [], "w_0 should have no pivot")))
            continue

        def minimal_valid(p=p):
            piv = minimal_pivot(p, n)
            return piv in valid_pivots(p, n), f"minimal pivot {piv} is not valid"

        def positivity(p=p):
            piv = minimal_pivot(p, n)
            terms = cover_terms(p, piv, n)
            bad = [s for s in terms if not s(piv.row) > p(piv.row)]
            if not terms:
                return False, "no cover terms"
            return not bad, f"covers {', '.join(map(str, bad))} do not raise position {piv.row}"

        def stable_terms(p=p):
            piv = minimal_pivot(p, n)
            a, b = cover_terms(p, piv, n), cover_terms(p, piv, n + 1)
            return a == b, f"S_{n}: {a}; S_{n + 1}: {b}"

        def monk_agrees(p=p):
            piv = minimal_pivot(p, n)
            monk = monk_product(p, piv.row, n).coefficients
            inside = {s for s, c in monk.items() if s.in_S(n)}
            signs_ok = all(monk[s] == 1 for s in inside)
            return set(cover_terms(p, piv, n)) == inside and signs_ok, "cover terms differ from Monk terms"

        def independent(p=p):
            ref = engine(p, n, cache=cache)
            bad = [str(v) for v in valid_pivots(p, n) if engine(p, n, pivot=v, cache=cache) != ref]
            return not bad, f"pivots {', '.join(bad)} give a different result"

        out.append(_guard("pivot-minimal", p, n, minimal_valid))
        out.append(_guard("cover-positivity", p, n, positivity))
        out.append(_guard("cover-stability", p, n, stable_terms))
        out.append(_guard("cover-monk", p, n, monk_agrees))
        out.append(_guard("pivot-independence", p, n, independent))
    return out


def _suite_lub(n, family, rng, cache):
    out = []
    for p in permutations(n):
        if p == longest(n):
            continue

        def body(p=p):
            # lub raises LubViolation on non-uniqueness or a length mismatch
            count = sum(1 for _ in cotransition_subsets(p, n))
            return count > 0, "no subsets"

        out.append(_guard("lub", p, n, body))
    return out


def _extension_oracle(pp: PartialPermutation) -> list[Permutation]:
    """Permutations in S_{n+k} with pp in the top-left corner and the same diagram."""
    n, k = pp.n, pp.corank
    target = rothe_diagram(pp).cells
    found = []
    for w in permutations(n + k):
        corner = {(a, w(a)) for a in range(1, n + 1) if w(a) <= n}
        if corner == pp.ones and rothe_diagram(w).cells == target:
            found.append(w)
    return found


def _suite_diagrams(n, family, rng, cache):
    out = []
    for p in permutations(n):
        out.append(_guard("rothe-size", p, n, lambda p=p: (
            len(rothe_diagram(p)) == length(p), f"|D| = {len(rothe_diagram(p))}, length {length(p)}")))
    m = min(n, 3)
    for k, pp in enumerate(partial_permutations(m)):
        def body(pp=pp):
            w = extend_partial(pp)
            found = _extension_oracle(pp)
            ok = found == [w] and len(rothe_diagram(pp)) == length(w)
            return ok, f"extension {w}, brute force {[str(f) for f in found]}"
        try:
            ok, detail = body()
        except (SchubcalcError, ArithmeticError, ValueError) as exc:
            ok, detail = False, str(exc)
        ones = ",".join(f"({a},{b})" for a, b in sorted(pp.ones)) or "empty"
        out.append(Check("extend-partial", f"partial {m}:{ones}", ok, None if ok else detail, (2, k, "")))
    return out


# -- random sampling ---------------------------------------------------------


def random_polynomial(rng: random.Random, nvars: int = 5, terms: int = 4, degree: int = 3,
                      mode: str = COHOMOLOGICAL) -> Polynomial:
    """A small random polynomial in x_1..x_nvars, y_1..y_nvars."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        xs = [0] * nvars
        ys = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            if rng.random() < 0.6:
                xs[rng.randrange(nvars)] += 1
            else:
                ys[rng.randrange(nvars)] += 1
        out[(tuple(xs), tuple(ys))] = rng.randint(-3, 3)
    return Polynomial(out, mode)


def random_laurent(rng: random.Random, nvars: int = 4, terms: int = 4, spread: int = 2) -> Polynomial:
    """A small random Laurent polynomial in X, Y."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        xs = tuple(rng.randint(-spread, spread) for _ in range(nvars))
        ys = tuple(rng.randint(-1, 1) for _ in range(nvars))
        out[(xs, ys)] = rng.choice([-2, -1, 1, 2])
    return Polynomial(out, K)


def _operator_checks_cohomological(rng: random.Random, samples: int) -> list[Check]:
    out = []
    rhos = permutations(4)
    for k in range(samples):
        f = random_polynomial(rng)
        g = random_polynomial(rng)
        i = rng.randint(1, 3)
        j = rng.choice([c for c in range(1, 5) if abs(c - i) >= 2] or [i])
        d = divided_difference
        tag = f"f = {render(f)}, g = {render(g)}, i = {i}"

        results = {
            "nil-square": d(d(f, i), i).is_zero(),
            "nil-commute": abs(i - j) < 2 or d(d(f, i), j) == d(d(f, j), i),
            "nil-braid": d(d(d(f, i), i + 1), i) == d(d(d(f, i + 1), i), i + 1),
            "twisted-leibniz": d(f * g, i) == d(f, i) * g + swap_x(f, i) * d(g, i),
        }
        for name, ok in results.items():
            out.append(_sample_check(name, k, ok, tag + (f", j = {j}" if name == "nil-commute" else "")))

        bad = []
        df = d(f, i)
        for rho in rhos:
            num = restrict(f, rho) - restrict(f, rho.swap_positions(i, i + 1))
            den = y(rho(i)) - y(rho(i + 1))
            try:
                if exact_divide(num, den) != restrict(df, rho):
                    bad.append(str(rho))
            except NotDivisibleError:
                bad.append(str(rho))
        out.append(_sample_check("restriction-identity", k, not bad, f"{tag}, fails at {', '.join(bad)}"))
    return out


def _operator_checks_k(rng: random.Random, samples: int) -> list[Check]:
    out = []
    for k in range(samples):
        f = random_laurent(rng)
        i = rng.randint(1, 2)
        d = isobaric_demazure
        sym = f + swap_x(f, i)
        tag = f"f = {render(f)}, i = {i}"
        results = {
            "demazure-idempotent": d(d(f, i), i) == d(f, i),
            "demazure-symmetric": d(sym, i) == sym,
            "demazure-braid": d(d(d(f, i), i + 1), i) == d(d(d(f, i + 1), i), i + 1),
        }
        for name, ok in results.items():
            out.append(_sample_check(name, k, ok, tag))
    return out


def _suite_operators(n, family, rng, cache, samples=OPERATOR_SAMPLES):
    if family == COHOMOLOGICAL:
        return _operator_checks_cohomological(rng, samples)
    return _operator_checks_k(rng, samples)


def _random_y_poly(rng: random.Random, n: int) -> Polynomial:
    out = Polynomial.constant(rng.choice([-2, -1, 1, 2, 3]))
    for _ in range(rng.randint(0, 2)):
        out = out + rng.choice([-1, 1]) * y(rng.randint(1, n))
    return out


def _suite_expansion(n, family, rng, cache, samples=EXPANSION_SAMPLES):
    perms = permutations(n)
    out = []
    for k in range(samples):
        chosen = rng.sample(perms, rng.randint(1, min(4, len(perms))))
        coeffs = {s: _random_y_poly(rng, n) for s in chosen}
        original = BasisExpansion(coeffs)
        f = original.reconstruct(n)
        tag = ", ".join(f"{s}: {render(c)}" for s, c in original.sorted_items())
        try:
            got = expand(f, n)
            ok = got == original
            detail = f"input {{{tag}}}, got {got.to_json()}"
        except (SchubcalcError, ArithmeticError, ValueError) as exc:
            ok, detail = False, f"input {{{tag}}}: {exc}"
        out.append(_sample_check("expansion", k, ok, detail))
    return out


_RUNNERS = {
    "equality": _suite_equality,
    "monk": _suite_monk,
    "divisibility": _suite_divisibility,
    "support": _suite_support,
    "stability": _suite_stability,
    "pivots": _suite_pivots,
    "lub": _suite_lub,
    "diagrams": _suite_diagrams,
    "operators": _suite_operators,
    "expansion": _suite_expansion,
}


def _resolve_suites(suites: Iterable[str] | str | None, family: str) -> tuple[str, ...]:
    if suites is None or suites == "all" or (not isinstance(suites, str) and "all" in suites):
        return tuple(s for s in SUITES if family == COHOMOLOGICAL or s not in _COHOMOLOGICAL_ONLY)
    if isinstance(suites, str):
        suites = [suites]
    chosen = []
    for s in suites:
        if s not in _RUNNERS:
            raise DomainError(f"unknown suite {s!r}")
        if family != COHOMOLOGICAL and s in _COHOMOLOGICAL_ONLY:
            raise DomainError(f"suite {s!r} applies to the cohomological family only")
        if s not in chosen:
            chosen.append(s)
    return tuple(sorted(chosen, key=SUITES.index))


def run_suite(
    n: int,
    family: str = COHOMOLOGICAL,
    suites: Iterable[str] | str | None = "all",
    seed: int = DEFAULT_SEED,
    cap: int | None = None,
) -> VerificationReport:
    """Run the named suites over S_n and collect every outcome."""
    if family not in DEFAULT_CAPS:
        raise DomainError(f"unknown family {family!r}")
    if n < 1:
        raise DomainError("n must be positive")
    limit = DEFAULT_CAPS[family] if cap is None else cap
    if n > limit:
        raise CapacityError(f"n = {n} exceeds the {family} cap of {limit}")
    names = _resolve_suites(suites, family)
    start = time.perf_counter()
    cache: dict = {}
    checks: list[Check] = []
    for name in names:
        # each suite gets its own generator so adding a suite never perturbs another
        rng = random.Random(f"{seed}:{name}")
        checks.extend(_RUNNERS[name](n, family, rng, cache))
    checks.sort(key=lambda c: (c.order[0], c.order[1], c.name, c.order[2], c.instance))
    return VerificationReport(n, family, seed, names, checks, time.perf_counter() - start)
