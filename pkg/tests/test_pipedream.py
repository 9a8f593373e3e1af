import itertools

import pytest
from hypothesis import given, strategies as st

from schubcalc.cotransition import cover_terms, minimal_pivot
from schubcalc.errors import DomainError, FormatError
from schubcalc.perm import Permutation, identity, length, longest, parse_permutation, permutations
from schubcalc.pipedream import (
    PipeDream, enumerate_nonreduced, enumerate_reduced, format_pipe_dream,
    grothendieck_pipe_polynomial, parse_pipe_dream, parse_pipe_dream_ascii, pipe_polynomial,
    render_pipe_dream, staircase, trace,
)
from schubcalc.poly import K, Polynomial, X, Y, parse_poly, x, y
from schubcalc.schubert import base_schubert, grothendieck_demazure, schubert_dd

P = parse_permutation


def walk(n, crosses):
    """Follow each pipe tile by tile from its North entry (reduced dreams only)."""
    exits = {}
    for start in range(1, n + 1):
        r, c, heading = 1, start, "S"
        while True:
            if (r, c) not in crosses:
                heading = "W" if heading == "S" else "S"
            if heading == "S":
                r += 1
            elif c == 1:
                exits[r] = start
                break
            else:
                c -= 1
    return Permutation(tuple(exits[r] for r in range(1, n + 1)))


def demazure_reading(n, crosses):
    """Demazure product of the reading word: rows top to bottom, each right to left."""
    w = list(range(1, n + 1))
    for a in range(1, n):
        for b in range(n - a, 0, -1):
            if (a, b) in crosses:
                s = a + b - 2
                if w[s] < w[s + 1]:
                    w[s], w[s + 1] = w[s + 1], w[s]
    return Permutation(tuple(w))


def all_subsets(n):
    cells = staircase(n)
    for k in range(len(cells) + 1):
        for sub in itertools.combinations(cells, k):
            yield frozenset(sub)


class TestTrace:
    def test_examples(self):
        assert trace(PipeDream(4)).permutation == identity()
        r = trace(PipeDream(3, frozenset({(1, 2)})))
        assert r.permutation == P("132") and r.reduced
        r = trace(PipeDream(4, frozenset({(2, 1), (2, 2)})))
        assert r.permutation == P("1423") and r.reduced

    def test_cross_outside_staircase(self):
        with pytest.raises(DomainError):
            PipeDream(3, frozenset({(2, 2)}))

    def test_reduced_trace_matches_walker(self):
        for n in range(1, 6):
            for fs in all_subsets(n):
                t = trace(PipeDream(n, fs))
                if t.reduced:
                    assert walk(n, fs) == t.permutation

    def test_nonreduced_trace_matches_demazure_product(self):
        for n in range(1, 6):
            for fs in all_subsets(n):
                t = trace(PipeDream(n, fs))
                assert t.permutation == demazure_reading(n, fs)
                assert len(fs) >= length(t.permutation)
                assert t.reduced == (len(fs) == length(t.permutation))
                assert t.permutation.in_S(n)


class TestEnumeration:
    def test_reduced_examples(self):
        for n in range(1, 7):
            dreams = enumerate_reduced(longest(n), n)
            assert len(dreams) == 1 and dreams[0].crosses == frozenset(staircase(n))
        assert {d.crosses for d in enumerate_reduced(P("1423"), 4)} == {
            frozenset({(2, 1), (2, 2)}), frozenset({(2, 1), (1, 3)}), frozenset({(1, 2), (1, 3)}),
        }
        assert enumerate_reduced(identity(), 3) == [PipeDream(3)]

    def test_nonreduced_examples(self):
        assert [d.crosses for d in enumerate_nonreduced(P("21"), 2)] == [frozenset({(1, 1)})]
        assert enumerate_nonreduced(identity(), 2) == [PipeDream(2)]
        brute = [fs for fs in all_subsets(3) if demazure_reading(3, fs) == P("132")]
        assert len(enumerate_nonreduced(P("132"), 3)) == len(brute) == 3

    def test_outside_sn(self):
        with pytest.raises(DomainError):
            enumerate_reduced(P("1423"), 3)
        with pytest.raises(DomainError):
            enumerate_reduced(P("12"), 3, method="magic")

    def test_reduced_enumeration_matches_brute_force(self):
        for n in range(1, 5):
            by_perm = {}
            for fs in all_subsets(n):
                if len(fs) == length(demazure_reading(n, fs)):
                    by_perm.setdefault(demazure_reading(n, fs), set()).add(fs)
            for p in permutations(n):
                assert {d.crosses for d in enumerate_reduced(p, n)} == by_perm.get(p, set())

    @pytest.mark.parametrize("reduced", [True, False])
    def test_search_matches_exhaustive_on_s5(self, reduced):
        enum = enumerate_reduced if reduced else enumerate_nonreduced
        for n in range(2, 6):
            for p in permutations(n):
                assert enum(p, n, method="search") == enum(p, n, method="exhaustive"), p

    def test_sorted_and_unique(self):
        for p in permutations(4):
            dreams = enumerate_nonreduced(p, 4)
            keys = [(len(d), tuple(d.sorted_crosses())) for d in dreams]
            assert keys == sorted(keys) and len(set(keys)) == len(keys)

    def test_reduced_sizes_and_confinement(self):
        for n in range(2, 6):
            for p in permutations(n):
                for d in enumerate_reduced(p, n):
                    assert len(d) == length(p)
                    assert all(a + b <= n for a, b in d.crosses)

    def test_stability_of_dream_sets(self):
        for p in permutations(4):
            assert {d.embed(5) for d in enumerate_reduced(p, 4)} == set(enumerate_reduced(p, 5))
            assert {d.embed(5) for d in enumerate_nonreduced(p, 4)} == set(enumerate_nonreduced(p, 5))

    def test_embed_cannot_shrink(self):
        with pytest.raises(DomainError):
            PipeDream(4).embed(3)

    def test_leftmost_elbow_law(self):
        for p in permutations(4):
            if p == longest(4):
                continue
            i = minimal_pivot(p, 4).row
            for d in enumerate_reduced(p, 4):
                for k in range(1, i + 1):
                    leftmost = min(c for c in range(1, 6) if (k, c) not in d.crosses)
                    assert leftmost == p(k), (p, d)

    def test_insertion_bijection(self):
        for p in permutations(4):
            if p == longest(4):
                continue
            piv = minimal_pivot(p, 4)
            cell = (piv.row, piv.col)
            dreams = enumerate_reduced(p, 4)
            assert all(cell not in d.crosses for d in dreams)
            image = [d.with_cross(cell) for d in dreams]
            assert len(set(image)) == len(image)
            target = set()
            for s in cover_terms(p, piv, 4):
                target |= set(enumerate_reduced(s, 4))
            assert set(image) == target
            assert {d.without_cross(cell) for d in target} == set(dreams)


class TestPolynomials:
    def test_examples(self):
        assert pipe_polynomial(longest(3), 3) == base_schubert(3)
        assert pipe_polynomial(P("1423"), 4) == parse_poly(
            "(x2-y1)*(x2-y2) + (x2-y1)*(x1-y3) + (x1-y2)*(x1-y3)"
        )
        assert pipe_polynomial(identity(), 4) == 1

    def test_k_examples(self):
        assert grothendieck_pipe_polynomial(P("21"), 2) == 1 - Y(1) * X(1, -1)
        assert grothendieck_pipe_polynomial(identity(), 3) == Polynomial.one(K)
        for p in permutations(3):
            assert grothendieck_pipe_polynomial(p, 3) == grothendieck_demazure(p, 3)

    def test_matches_divided_differences(self):
        for n in range(2, 6):
            for p in permutations(n):
                assert pipe_polynomial(p, n) == schubert_dd(p, n)

    def test_stability(self):
        for p in permutations(4):
            assert pipe_polynomial(p, 4) == pipe_polynomial(p, 5)

    def test_homogeneous_of_length_degree(self):
        for p in permutations(4):
            f = pipe_polynomial(p, 4)
            assert f.is_homogeneous() and f.degree() == length(p)


class TestRendering:
    def test_empty_dream(self):
        assert render_pipe_dream(PipeDream(2)) == "  1 2\n1 .\n2"

    def test_first_1423_figure(self):
        art = render_pipe_dream(PipeDream(4, frozenset({(2, 1), (2, 2)})))
        assert art.splitlines() == [
            "  1 2 3 4",
            "1 . . .",
            "4 + +",
            "2 .",
            "3",
        ]

    def test_unicode(self):
        art = render_pipe_dream(PipeDream(3, frozenset({(1, 2)})), "unicode")
        assert art.splitlines()[1] == "1 ╯ ┼"

    def test_unknown_style(self):
        with pytest.raises(DomainError):
            render_pipe_dream(PipeDream(2), "braille")

    def test_ascii_round_trip(self):
        for n in range(1, 6):
            for p in permutations(n):
                for d in enumerate_nonreduced(p, n):
                    assert parse_pipe_dream_ascii(render_pipe_dream(d)) == d

    def test_wide_labels(self):
        d = PipeDream(10, frozenset({(1, 9), (3, 2)}))
        assert parse_pipe_dream_ascii(render_pipe_dream(d)) == d

    def test_fixture_format(self):
        d = PipeDream(4, frozenset({(2, 1), (1, 3)}))
        text = format_pipe_dream(d)
        assert text == "n=4\n(1,3)\n(2,1)"
        assert parse_pipe_dream(text) == d

    @given(st.integers(1, 6).flatmap(
        lambda n: st.sets(st.sampled_from(staircase(n)) if n > 1 else st.nothing()).map(
            lambda s: PipeDream(n, frozenset(s)))))
    def test_fixture_round_trip(self, d):
        assert parse_pipe_dream(format_pipe_dream(d)) == d

    @pytest.mark.parametrize("text", ["", "4\n(1,1)", "n=x", "n=3\n(1;1)"])
    def test_bad_fixtures(self, text):
        with pytest.raises(FormatError):
            parse_pipe_dream(text)

    def test_bad_ascii_tile(self):
        with pytest.raises(FormatError):
            parse_pipe_dream_ascii("  1 2\n1 #\n2")
