import itertools
import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from fieldinv.errors import DimensionMismatch, NotFullRank
from fieldinv.intlinalg import (
    HnfBasis,
    det_index,
    hnf,
    hnf_insert,
    invariant_factors,
    kernel_of_congruences,
    solve_in_basis,
    xgcd,
)


def rational_solve(rows, v):
    """Solve x @ rows = v over Q for a square nonsingular ``rows``."""
    n = len(rows)
    A = [[Fraction(rows[i][j]) for i in range(n)] + [Fraction(v[j])] for j in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [A[i][n] / A[i][i] for i in range(n)]


def spans(gens, rows):
    """Every vector of ``gens`` is an integer combination of square ``rows``."""
    return all(all(x.denominator == 1 for x in rational_solve(rows, g)) for g in gens)


def coset_count(rows, box):
    """Brute-force index: count lattice classes among points of a box of multiples."""
    # the box is a fundamental domain of box-diag Z^m, which lies in the lattice
    seen = set()
    for pt in itertools.product(*(range(b) for b in box)):
        key = tuple(x % 1 for x in rational_solve(rows, pt))
        seen.add(key)
    return len(seen)


# --- hnf ---------------------------------------------------------------------


def test_hnf_identity():
    B = hnf([[1, 0], [0, 1]])
    assert B.rows == ((1, 0), (0, 1)) and B.pivots == (0, 1)


def test_hnf_diagonal_already_canonical():
    B = hnf([[2, 0], [0, 3]])
    assert B.rows == ((2, 0), (0, 3)) and B.pivots == (0, 1)


def test_hnf_4_6_2_2():
    M = [[4, 6], [2, 2]]
    B = hnf(M)
    assert B.tolist() == [[2, 0], [0, 2]]
    # oracle: mutual spanning and index 4
    assert spans(M, B.tolist()) and spans(B.tolist(), M)
    assert coset_count(M, (4, 4)) == 4 == det_index(B)


def test_hnf_drops_dependent_rows():
    B = hnf([[2, 4, 6], [1, 2, 3], [0, 0, 0]])
    assert B.rows == ((1, 2, 3),)
    assert B.rank == 1 and not B.is_full_rank


def test_hnf_empty_needs_ncols():
    assert hnf([], 3) == HnfBasis.empty(3)
    with pytest.raises(DimensionMismatch):
        hnf([])


def unimodular(m, rng, steps=12):
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    for _ in range(steps):
        i, j = rng.sample(range(m), 2) if m > 1 else (0, 0)
        if i == j:
            U[i] = [-x for x in U[i]]
            continue
        c = rng.randint(-3, 3)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        if rng.random() < 0.3:
            U[i], U[j] = U[j], U[i]
    return U


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


int_matrices = st.integers(1, 4).flatmap(
    lambda m: st.lists(st.lists(st.integers(-20, 20), min_size=m, max_size=m), min_size=1, max_size=6)
)


@given(int_matrices, st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_hnf_canonical_under_row_mixing(M, seed):
    rng = random.Random(seed)
    B = hnf(M)
    mixed = matmul(unimodular(len(M), rng), M)
    assert hnf(mixed) == B
    # idempotent
    assert hnf(B.rows, B.ncols) == B


@given(int_matrices)
@settings(max_examples=150, deadline=None)
def test_hnf_shape_invariants(M):
    B = hnf(M)
    assert list(B.pivots) == sorted(set(B.pivots))
    for row, c in zip(B.rows, B.pivots):
        assert row[c] > 0 and not any(row[:c])
    for i, (row, c) in enumerate(zip(B.rows, B.pivots)):
        for above in B.rows[:i]:
            assert 0 <= above[c] < row[c]
    # same lattice: every input row solvable in the basis
    assert all(solve_in_basis(B, r) is not None for r in M)


@given(int_matrices, st.lists(st.integers(-20, 20), min_size=4, max_size=4))
@settings(max_examples=150, deadline=None)
def test_insert_equals_batch(M, v):
    v = v[: len(M[0])]
    B = hnf(M)
    assert hnf_insert(B, v) == hnf(list(M) + [v])


def test_hnf_insert_examples():
    B = hnf([[1, 1], [0, 3]])
    assert hnf_insert(B, (0, 0)) is B
    one = hnf_insert(HnfBasis.empty(2), (1, 1))
    assert one.rows == ((1, 1),)
    both = hnf_insert(one, (3, 0))
    assert both.rows == ((1, 1), (0, 3))
    # oracle: (3,0) - 3(1,1) = (0,-3), index 3 by coset counting
    assert coset_count([[1, 1], [3, 0]], (3, 3)) == 3 == det_index(both)


def test_hnf_insert_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hnf_insert(HnfBasis.empty(2), (1, 2, 3))


def test_big_entries_exact():
    big = 10**40 + 7
    B = hnf([[big, 1], [0, big]])
    assert det_index(B) == big * big


# --- invariant factors ------------------------------------------------------


@pytest.mark.parametrize(
    "M, expected",
    [
        ([[1, 0], [0, 1]], [1, 1]),
        ([[2, 0], [0, 3]], [1, 6]),
        ([[7]], [7]),
        ([[0, 0], [0, 0]], []),
    ],
)
def test_invariant_factors_examples(M, expected):
    assert invariant_factors(M) == expected


def test_invariant_factors_cokernel_brute_force():
    # Z^2 / <(2,0),(0,3)> has order 6
    assert prod(invariant_factors([[2, 0], [0, 3]])) == coset_count([[2, 0], [0, 3]], (2, 3)) == 6


@given(int_matrices)
@settings(max_examples=120, deadline=None)
def test_invariant_factors_against_sympy(M):
    ours = invariant_factors(M)
    theirs = [abs(int(x)) for x in sympy_invariant_factors(Matrix(M), domain=ZZ) if x != 0]
    assert ours == theirs
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


@given(int_matrices)
@settings(max_examples=120, deadline=None)
def test_det_index_is_product_of_invariant_factors(M):
    B = hnf(M)
    if B.is_full_rank:
        assert det_index(B) == prod(invariant_factors(M))


# --- det_index ----------------------------------------------------------------


def test_det_index_examples():
    assert det_index(hnf([[1, 0], [0, 1]])) == 1
    assert det_index(hnf([[1, 1], [0, 3]])) == 3 == coset_count([[1, 1], [0, 3]], (3, 3))
    assert det_index(hnf([[5, 0], [0, 1]])) == 5


def test_det_index_requires_full_rank():
    with pytest.raises(NotFullRank):
        det_index(hnf([[1, 2]]))


# --- kernels of congruences ------------------------------------------------


def test_kernel_zero_row_is_everything():
    assert kernel_of_congruences([[0, 0, 0]], [7]).rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_kernel_forced_coordinate():
    assert kernel_of_congruences([[1, 0]], [5]).tolist() == [[5, 0], [0, 1]]


def test_kernel_1_2_mod_3():
    B = kernel_of_congruences([[1, 2]], [3])
    assert B.tolist() == [[1, 1], [0, 3]]
    # oracle: brute-force solutions in [0,3)^2 together with 3e_j span the same lattice
    sols = [p for p in itertools.product(range(3), repeat=2) if (p[0] + 2 * p[1]) % 3 == 0]
    gens = sols + [(3, 0), (0, 3)]
    assert hnf(gens) == B


def subgroup_order(cols, moduli):
    """Brute-force closure of the subgroup of prod Z/n_i generated by ``cols``."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for c in cols:
            y = tuple((a + b) % n for a, b, n in zip(x, c, moduli))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen)


@given(
    st.lists(st.integers(2, 8), min_size=1, max_size=2).flatmap(
        lambda mods: st.tuples(
            st.just(mods),
            st.integers(1, 4).flatmap(
                lambda m: st.lists(st.lists(st.integers(0, 30), min_size=m, max_size=m), min_size=len(mods), max_size=len(mods))
            ),
        )
    )
)
@settings(max_examples=150, deadline=None)
def test_kernel_satisfies_congruences_and_index(data):
    moduli, coeffs = data
    coeffs = [[c % n for c in row] for row, n in zip(coeffs, moduli)]
    B = kernel_of_congruences(coeffs, moduli)
    m = len(coeffs[0])
    assert B.is_full_rank
    for row in B.rows:
        assert all(sum(c * x for c, x in zip(cr, row)) % n == 0 for cr, n in zip(coeffs, moduli))
    cols = [tuple(coeffs[i][j] for i in range(len(moduli))) for j in range(m)]
    order = subgroup_order(cols, moduli)
    assert det_index(B) == order
    # same count through Smith form of [C | diag(n)]
    k = len(moduli)
    aug = [list(coeffs[i]) + [moduli[i] if j == i else 0 for j in range(k)] for i in range(k)]
    assert prod(moduli) // prod(invariant_factors(aug)) == order


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0), (13, -21)]:
        g, x, y = xgcd(a, b)
        assert g >= 0 and x * a + y * b == g
        assert g == __import__("math").gcd(a, b)
