import itertools
import sys

from hypothesis import settings, strategies as st

from schubcalc.perm import Permutation

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repo")


@st.composite
def perms(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


def brute_length(w):
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


def tableau_leq(p, q, n):
    """Bruhat order by the tableau criterion: sorted prefixes compare entrywise."""
    a, b = p.one_line(n), q.one_line(n)
    return all(
        all(u <= v for u, v in zip(sorted(a[:k]), sorted(b[:k])))
        for k in range(1, n + 1)
    )


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[num])
