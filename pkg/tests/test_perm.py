import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import brute_length, perms, tableau_leq
from schubcalc.errors import DomainError, FormatError
from schubcalc.perm import (
    Diagram, PartialPermutation, Permutation, bruhat_leq, compose, covers_above,
    dominant_part, essential_set, extend_partial, format_one_line, identity, inverse,
    length, longest, parse_permutation, partial_permutations, permutations,
    rothe_diagram, simple_reflection, transposition,
)

P = parse_permutation


class TestParsing:
    def test_digit_string(self):
        assert P("1423").images == (1, 4, 2, 3)

    def test_identity_trims_to_empty(self):
        assert P("1 2 3").images == ()
        assert P("1 2 3") == identity()

    def test_repeated_value_named(self):
        with pytest.raises(FormatError, match="value 4 repeated"):
            P("1424")

    def test_out_of_range_value(self):
        with pytest.raises(FormatError, match="5"):
            P("125")

    def test_garbage(self):
        with pytest.raises(FormatError):
            P("1x3")
        with pytest.raises(FormatError):
            P("")

    def test_large_values_comma_separated(self):
        p = Permutation((10, 1, 2, 3, 4, 5, 6, 7, 8, 9))
        assert str(p) == "10,1,2,3,4,5,6,7,8,9"
        assert P(str(p)) == p

    def test_trailing_fixed_points_trimmed(self):
        assert P("21345") == P("21")
        assert len(P("21345")) == 2

    @given(perms())
    def test_format_parse_round_trip(self, p):
        assert P(str(p)) == p

    def test_format_one_line_padded(self):
        assert format_one_line(P("21").one_line(4)) == "2134"


class TestGroup:
    def test_length_examples(self):
        assert length(identity()) == 0
        assert length(P("4321")) == 6
        assert length(P("1423")) == 2

    def test_compose_examples(self):
        assert compose(P("1423"), identity()) == P("1423")
        assert compose(P("21"), P("21")) == identity()
        assert compose(P("1423"), transposition(1, 2)) == P("4123")

    def test_inverse_examples(self):
        assert inverse(identity()) == identity()
        assert inverse(P("21")) == P("21")
        assert inverse(P("2413")) == P("3142")

    @given(perms())
    def test_length_matches_inversion_count(self, p):
        assert length(p) == brute_length(p.images)

    @given(perms(), perms(), perms())
    def test_compose_associative(self, a, b, c):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))

    @given(perms())
    def test_inverse_is_two_sided(self, p):
        assert compose(p, inverse(p)) == identity()
        assert compose(inverse(p), p) == identity()
        assert length(inverse(p)) == length(p)

    @given(perms(), st.integers(0, 4))
    def test_embedding_invariance(self, p, extra):
        n = len(p) + extra
        assert Permutation(p.one_line(n)) == p
        assert brute_length(p.one_line(n)) == length(p)

    def test_longest_lengths(self):
        for n in range(1, 8):
            assert length(longest(n)) == n * (n - 1) // 2

    def test_simple_reflection(self):
        assert simple_reflection(2) == P("132")

    def test_permutations_count_and_order(self):
        s4 = permutations(4)
        assert len(s4) == 24
        assert [p.one_line(4) for p in s4] == sorted(itertools.permutations(range(1, 5)))


class TestBruhat:
    def test_covers_examples(self):
        assert covers_above(identity(), 3) == {P("213"), P("132")}
        assert covers_above(P("1423"), 4) == {P("4123"), P("2413"), P("1432")}
        assert covers_above(longest(3), 3) == set()

    def test_covers_require_membership(self):
        with pytest.raises(DomainError):
            covers_above(P("1423"), 3)

    def test_bruhat_examples(self):
        for rho in permutations(4):
            assert bruhat_leq(identity(), rho)
        assert bruhat_leq(P("2413"), P("4213"))
        assert not bruhat_leq(P("2413"), P("4132"))

    def test_bruhat_matches_tableau_criterion_on_s4(self):
        s4 = permutations(4)
        for p in s4:
            for q in s4:
                assert bruhat_leq(p, q) == tableau_leq(p, q, 4), (p, q)

    def test_partial_order_axioms_on_s4(self):
        s4 = permutations(4)
        for p in s4:
            assert bruhat_leq(p, p)
            for q in s4:
                if p != q and bruhat_leq(p, q):
                    assert not bruhat_leq(q, p)
                    for r in s4:
                        if bruhat_leq(q, r):
                            assert bruhat_leq(p, r)

    def test_covers_match_order_on_s5(self):
        s5 = permutations(5)
        for p in s5:
            expected = {q for q in s5 if tableau_leq(p, q, 5) and length(q) == length(p) + 1}
            assert covers_above(p, 5) == expected, p

    def test_order_is_closure_of_covers_on_s4(self):
        s4 = permutations(4)
        above = {p: {p} for p in s4}
        for p in sorted(s4, key=length, reverse=True):
            for c in covers_above(p, 4):
                above[p] |= above[c]
        for p in s4:
            assert above[p] == {q for q in s4 if bruhat_leq(p, q)}


class TestDiagrams:
    def test_rothe_examples(self):
        for n in range(1, 6):
            assert rothe_diagram(longest(n)).cells == {(a, b) for a in range(1, n) for b in range(1, n - a + 1)}
        assert rothe_diagram(identity()).cells == frozenset()
        assert rothe_diagram(P("1423")).cells == {(2, 2), (2, 3)}

    def test_rothe_size_is_length_on_s6(self):
        for p in permutations(6):
            assert len(rothe_diagram(p)) == length(p)

    def test_essential_examples(self):
        assert essential_set(identity()).cells == frozenset()
        assert essential_set(P("1423")).cells == {(2, 3)}
        assert essential_set(longest(3)).cells == {(1, 2), (2, 1)}

    def test_dominant_examples(self):
        assert dominant_part(P("1423")).cells == frozenset()
        assert dominant_part(longest(3)).cells == {(1, 1), (1, 2), (2, 1)}
        assert dominant_part(P("2143")).cells == {(1, 1)}

    def test_dominant_part_is_connected_component(self):
        # oracle: flood fill from (1,1) by edge adjacency
        for p in permutations(5):
            d = rothe_diagram(p).cells
            comp = set()
            todo = [(1, 1)] if (1, 1) in d else []
            while todo:
                c = todo.pop()
                if c in comp:
                    continue
                comp.add(c)
                a, b = c
                todo += [q for q in ((a + 1, b), (a - 1, b), (a, b + 1), (a, b - 1)) if q in d]
            dom = dominant_part(p).cells
            assert dom == comp, p
            assert dom <= d
            for a, b in dom:
                assert all((r, s) in dom for r in range(1, a + 1) for s in range(1, b + 1))

    @given(perms(max_n=6))
    def test_diagrams_stable_under_embedding(self, p):
        n = len(p)
        q = Permutation(p.one_line(n + 1))
        assert rothe_diagram(q) == rothe_diagram(p)
        assert essential_set(q) == essential_set(p)

    def test_render(self):
        assert Diagram(frozenset({(1, 1), (2, 3)})).render(3) == "o..\n..o\n..."

    def test_diagram_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            Diagram(frozenset({(0, 1)}))


class TestPartial:
    def test_validation(self):
        with pytest.raises(DomainError):
            PartialPermutation(2, frozenset({(1, 1), (1, 2)}))
        with pytest.raises(DomainError):
            PartialPermutation(2, frozenset({(3, 1)}))

    def test_extend_examples(self):
        assert extend_partial(PartialPermutation.from_permutation(P("2143"), 4)) == P("2143")
        assert extend_partial(PartialPermutation(2, frozenset({(1, 2)}))) == P("231")
        assert extend_partial(PartialPermutation(2, frozenset())) == P("3412")

    def test_partial_count(self):
        # sum_k C(n,k)^2 k!
        assert sum(1 for _ in partial_permutations(3)) == 34

    def test_extension_unique_by_brute_force(self):
        for n in (1, 2, 3):
            for pp in partial_permutations(n):
                k = pp.corank
                target = rothe_diagram(pp).cells
                found = [
                    w for w in permutations(n + k)
                    if {(a, w(a)) for a in range(1, n + 1) if w(a) <= n} == pp.ones
                    and rothe_diagram(w).cells == target
                ]
                assert found == [extend_partial(pp)], pp

    def test_extension_length_law_n4(self):
        for pp in partial_permutations(4):
            assert length(extend_partial(pp)) == len(rothe_diagram(pp))
