from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_int_matrix
from hermite_pade.errors import BudgetExceeded, PreconditionError, RankDeficient
from hermite_pade.linalg import Matrix, all_maximal_minors, gram_det, rank_integer
from hermite_pade.siegel import (
    RealBound,
    bombieri_vaaler_bound,
    f_and_g,
    fg_bound,
    find_small_kernel,
    integer_root,
    lll_reduce,
    mahler_bound,
    shell_search_kernel,
    siegel_pade_solve,
)
from hermite_pade.wild import WildProblem, build_V, random_instances, random_point


def root_by_bisection(n: int, k: int) -> int:
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid
    return lo


@given(st.integers(0, 10 ** 40), st.integers(1, 7))
def test_integer_root_matches_bisection(n, k):
    assert integer_root(n, k) == root_by_bisection(n, k)


@given(st.integers(1, 10 ** 12), st.integers(1, 10 ** 6), st.integers(1, 6))
def test_real_bound_rounds_outward(num, den, k):
    b = RealBound(Fraction(num, den), k)
    up = b.upper()
    assert up ** k >= Fraction(num, den)
    assert Fraction(str(b)) >= up or Fraction(str(b)) ** k >= Fraction(num, den)


def test_real_bound_formatting():
    assert str(RealBound(Fraction(2916), 2)) == "54"
    assert RealBound(Fraction(2916), 2).exact
    assert str(RealBound(Fraction(14), 2)) == "3.74165738678"
    assert RealBound(Fraction(14), 2).bounds(3) and not RealBound(Fraction(14), 2).bounds(4)


def test_mahler_bound_examples():
    assert mahler_bound(Matrix([[1, 1]])) == 2
    assert mahler_bound(Matrix([[1, 2, 3]])) == 2
    rng = random.Random(51)
    for _ in range(20):
        V = Matrix(random_int_matrix(rng, 2, 4))
        if not all(any(r) for r in V.entries):
            continue
        prod = math.prod(sum(abs(x) for x in r) for r in V.entries)
        assert mahler_bound(V) == root_by_bisection(prod, 2)


def test_mahler_bound_guards():
    with pytest.raises(PreconditionError):
        mahler_bound(Matrix([[1, 0], [0, 1]]))
    with pytest.raises(PreconditionError):
        mahler_bound(Matrix([[0, 0, 0]]))


def test_f_and_g():
    assert f_and_g((1, -1)) == (2, 2)
    assert f_and_g((1, 2)) == (3, 2)


def test_fg_bound_worked_example():
    b = fg_bound(WildProblem((1, 2), (1, 1), point=(1, 2)))
    assert b.exact and b.upper() == 54
    with pytest.raises(PreconditionError):
        fg_bound(WildProblem((1, 1), point=(1, 2)))
    with pytest.raises(PreconditionError):
        fg_bound(WildProblem((1, 2), (1, 1)))


def test_bombieri_vaaler_examples():
    assert str(bombieri_vaaler_bound(Matrix([[1, 0, 0], [0, 1, 0]]))) == "1"
    b = bombieri_vaaler_bound(Matrix([[2, 4, 6]]))
    assert b.radicand == 14 and str(b) == "3.74165738678"
    with pytest.raises(RankDeficient):
        bombieri_vaaler_bound(Matrix([[1, 2, 3], [2, 4, 6]]))


def test_bombieri_vaaler_tightens_when_D_exceeds_one():
    p = WildProblem((1, 2), (1, 1), point=(1, 2))
    V = build_V(p)
    bv = bombieri_vaaler_bound(V)
    assert bv.upper() < fg_bound(p).upper()
    G = gram_det(V)
    D = math.gcd(*(v for _, v in all_maximal_minors(V)))
    assert D > 1 and bv.radicand == Fraction(G, D * D) < G


def test_small_kernel_examples():
    assert find_small_kernel(Matrix([[1, 1]])) == (1, -1)
    assert find_small_kernel(Matrix([[1, 2, 3]])) == (1, 1, -1)


def _brute_min_norm(V: Matrix, bound: int) -> tuple:
    """Exhaustive box search over ``[-bound, bound]^N``."""
    best = None
    for x in itertools.product(range(-bound, bound + 1), repeat=V.cols):
        if not any(x) or any(sum(a * b for a, b in zip(r, x)) for r in V.entries):
            continue
        first = next(v for v in x if v)
        if first < 0:
            continue
        key = (max(map(abs, x)), x)
        if best is None or key < best:
            best = key
    return best


def test_kernel_search_matches_brute_force():
    rng = random.Random(52)
    for _ in range(25):
        n = rng.randint(3, 4)
        V = Matrix(random_int_matrix(rng, 1 if n == 3 else rng.randint(1, 2), n, bound=4))
        if not all(any(r) for r in V.entries):
            continue
        got = find_small_kernel(V)
        bound = max(map(abs, got))
        norm, x = _brute_min_norm(V, bound)
        assert (max(map(abs, got)), got) == (norm, x)


def test_lll_and_shell_searches_agree():
    # the shell search is slow for large minimal norms, so compare where it is cheap
    rng = random.Random(53)
    checked = 0
    for l, nu in random_instances(rng, 30, max_L=5):
        V = build_V(WildProblem(l, nu, point=random_point(rng, len(l))))
        fast = find_small_kernel(V)
        if max(map(abs, fast)) > 200:
            continue
        assert fast == shell_search_kernel(V)
        checked += 1
    assert checked >= 20


def test_kernel_vector_properties():
    rng = random.Random(54)
    for _ in range(20):
        V = Matrix(random_int_matrix(rng, 2, 5))
        if not all(any(r) for r in V.entries):
            continue
        x = find_small_kernel(V)
        assert all(sum(a * b for a, b in zip(r, x)) == 0 for r in V.entries)
        assert 1 <= max(map(abs, x)) <= mahler_bound(V)


def test_norm_budget_is_enforced():
    V = build_V(WildProblem((1, 2), (1, 1), point=(1, 2)))
    assert max(map(abs, find_small_kernel(V, norm_budget=2))) == 2
    with pytest.raises(BudgetExceeded):
        find_small_kernel(V, norm_budget=1)


def test_lll_preserves_the_lattice_determinant():
    rng = random.Random(55)
    for _ in range(10):
        B = random_int_matrix(rng, 3, 4, bound=9)
        if rank_integer(Matrix(B)) < 3:
            continue
        R = lll_reduce(B)
        assert gram_det(Matrix(R)) == gram_det(Matrix(B))


def test_worked_instance_end_to_end():
    s = siegel_pade_solve(WildProblem((1, 2), (1, 1), point=(1, 2)))
    r = s.report
    assert (r.mahler_bound, str(r.fg_bound), r.D, r.solution, r.norm) == (24, "54", 4, (0, 1, -2, 2), 2)
    assert r.bv_bound.radicand == 470
    assert [o.order_lower_bound for o in s.orders] == [5, 6]
    assert all(o.order_lower_bound >= 3 + v + 1 for o, v in zip(s.orders, (1, 1)))
    d = r.to_dict()
    assert d["schema"] == 1 and d["fg_bound"] == "54"


def test_second_example_and_guards():
    s = siegel_pade_solve(WildProblem((2, 2), (1, 1), point=(1, -1)))
    assert all(o.order_lower_bound >= 4 + 1 + 1 for o in s.orders)
    assert s.report.norm <= s.report.mahler_bound
    with pytest.raises(PreconditionError):
        siegel_pade_solve(WildProblem((1, 1), point=(1, 2)))
    with pytest.raises(PreconditionError):
        siegel_pade_solve(WildProblem((1, 2), (1, 1)))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_bounds_hold_on_random_instances(seed):
    rng = random.Random(seed)
    (l, nu), = random_instances(rng, 1, max_L=6)
    pt = random_point(rng, len(l))
    s = siegel_pade_solve(WildProblem(l, nu, point=pt))
    r = s.report
    assert r.norm <= r.mahler_bound and r.fg_bound.bounds(r.norm)
    if r.rank_ok and r.D > 1:
        assert r.bv_bound.radicand < gram_det(build_V(WildProblem(l, nu, point=pt)))
    assert all(o.order_lower_bound >= sum(l) + v + 1 for o, v in zip(s.orders, nu))
