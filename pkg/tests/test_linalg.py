from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_int_matrix, random_poly
from hermite_pade.linalg import (
    ColumnSelection,
    Matrix,
    all_maximal_minors,
    block_minor_expansion,
    det,
    det_cofactor,
    det_fraction_free,
    gram_det,
    integer_kernel_basis,
    matmul,
    maximal_minor,
    permutation_sign,
    rank_integer,
    rank_over_fractions,
)
from hermite_pade.poly import Poly, RatPoly, parse_poly


def leibniz(rows):
    """Permutation-sum determinant, an oracle independent of both routes."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = permutation_sign(perm)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


square_int = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-7, 7), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square_int)
def test_integer_det_routes_agree_with_leibniz(rows):
    m = Matrix(rows)
    expected = leibniz(rows)
    assert det_cofactor(m) == expected
    assert det_fraction_free(m) == expected


@settings(max_examples=30, deadline=None)
@given(square_int, st.data())
def test_row_swap_and_scale(rows, data):
    m = Matrix(rows)
    n = m.rows
    i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    c = data.draw(st.integers(-4, 4))
    d = det(m)
    assert det(m.swap_rows(i, j)) == (d if i == j else -d)
    assert det(m.scale_row(i, c)) == c * d
    assert det(m.transpose()) == d


def test_polynomial_det_routes_agree():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 4)
        m = Matrix([[random_poly(rng, 2) for _ in range(n)] for _ in range(n)], 2)
        assert det_fraction_free(m) == det_cofactor(m)


def test_det_of_rational_poly_matrix():
    a = Poly.var(0, 1)
    m = Matrix([[RatPoly(a, 2), RatPoly(Poly.one(1))], [RatPoly(a * a, 3), RatPoly(a, 1)]], 1)
    assert det(m) == RatPoly(a * a, 6)


def test_identity_and_known_determinant():
    assert det(Matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 1
    assert det(Matrix([[2, 4, 6], [1, 3, 5], [0, 1, 7]])) == 10


def test_vandermonde_determinant():
    x = [Poly.var(i, 3) for i in range(3)]
    m = Matrix([[xi ** k for k in range(3)] for xi in x], 3)
    assert det(m) == parse_poly("(a2-a1)*(a3-a1)*(a3-a2)", 3)


def test_all_maximal_minors_order_and_values():
    m = Matrix([[1, 2, 3], [4, 5, 6]])
    got = [(s.indices, v) for s, v in all_maximal_minors(m)]
    assert got == [((0, 1), -3), ((0, 2), -6), ((1, 2), -3)]
    assert maximal_minor(m, ColumnSelection((0, 2))) == -6


def test_column_selection_validation():
    with pytest.raises(ValueError):
        ColumnSelection((2, 1))
    with pytest.raises(ValueError):
        ColumnSelection((1, 1))


def test_block_expansion_matches_determinant():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(2, 5)
        m = Matrix(random_int_matrix(rng, n, n))
        rows = list(range(n))
        rng.shuffle(rows)
        cut = rng.randint(1, n - 1)
        assert block_minor_expansion(m, [rows[:cut], rows[cut:]]) == det(m)


def test_block_expansion_symbolic():
    rng = random.Random(12)
    m = Matrix([[random_poly(rng, 2) for _ in range(4)] for _ in range(4)], 2)
    assert block_minor_expansion(m, [[0, 2], [1], [3]]) == det(m)


def test_cauchy_binet_small():
    rng = random.Random(13)
    for _ in range(20):
        k, n = 2, rng.randint(2, 5)
        A = Matrix(random_int_matrix(rng, k, n))
        B = Matrix(random_int_matrix(rng, n, k))
        mb = {s.indices: v for s, v in all_maximal_minors(B.transpose())}
        assert det(matmul(A, B)) == sum(v * mb[s.indices] for s, v in all_maximal_minors(A))


def test_gram_det_is_sum_of_squared_minors():
    rng = random.Random(14)
    for _ in range(20):
        A = Matrix(random_int_matrix(rng, 2, 4))
        assert gram_det(A) == sum(v * v for _, v in all_maximal_minors(A))


def test_ranks():
    assert rank_integer(Matrix([[1, 2, 3], [2, 4, 6]])) == 1
    assert rank_integer(Matrix([[1, 2, 3], [2, 4, 7]])) == 2
    x, y = Poly.var(0, 2), Poly.var(1, 2)
    dependent = Matrix([[x, y], [x * x, x * y]], 2)
    assert rank_over_fractions(dependent) == 1
    assert rank_over_fractions(Matrix([[x, y], [y, x]], 2)) == 2


def test_integer_kernel_basis_is_a_lattice_basis():
    rng = random.Random(15)
    for _ in range(30):
        r, n = rng.randint(1, 3), rng.randint(4, 6)
        m = Matrix(random_int_matrix(rng, r, n))
        basis = integer_kernel_basis(m)
        assert len(basis) == n - rank_integer(m)
        for v in basis:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m.entries)
        # a primitive kernel vector from Cramer cofactors must have integer coordinates
        if rank_integer(m) == r:
            cols = sorted(rng.sample(range(n), r + 1))
            sub = m.select_columns(cols)
            cramer = [(-1) ** k * det(sub.select_columns([c for c in range(r + 1) if c != k])) for k in range(r + 1)]
            if any(cramer):
                g = math.gcd(*cramer)
                probe = [0] * n
                for c, v in zip(cols, cramer):
                    probe[c] = v // g
                coords = _solve_coordinates(basis, probe)
                assert all(c.denominator == 1 for c in coords)


def _solve_coordinates(basis, target):
    """Coordinates of ``target`` in ``basis`` over Q (least squares is exact here)."""
    G = Matrix([[sum(a * b for a, b in zip(u, v)) for v in basis] for u in basis])
    rhs = [sum(a * b for a, b in zip(u, target)) for u in basis]
    n = len(basis)
    aug = [[Fraction(x) for x in G.entries[i]] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c] / aug[c][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def test_kernel_basis_is_saturated():
    # ker [2, 4] over Z is spanned by (2, -1); (1, -1/2) is not integral
    basis = integer_kernel_basis(Matrix([[2, 4]]))
    assert len(basis) == 1 and tuple(abs(x) for x in basis[0]) == (2, 1)


def test_text_round_trip():
    m = Matrix([[parse_poly("a1 - 2*a2", 2), Poly.const(3, 2)], [Poly.zero(2), parse_poly("a1^2", 2)]], 2)
    assert Matrix.from_text(m.to_text(), 2) == m
    z = Matrix([[1, -2], [3, 4]])
    assert Matrix.from_text(z.to_text()) == z
