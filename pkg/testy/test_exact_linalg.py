#!/usr/bin/env python3
"""
Testy dokładnej algebry liniowej: postać Smitha, układy, jądra, kokernele.
sympy służy jako niezależna wyrocznia czynników niezmienniczych.
"""

import itertools
import math

import pytest
from hypothesis import given, strategies as st
from sympy import GF
from sympy import ZZ as SZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import invariant_factors

from exact_linalg import (
    GF2, ZZ, ExactMatrix, PresentedGroup, Ring, RingMismatch, ShapeMismatch,
    cokernel_presentation, image_basis, inverse, kernel_basis, random_matrix,
    random_unimodular, rank, sample_rng, smith_form, solve_linear,
    split_injection_witness, split_surjection_witness, subquotient,
)

F3 = Ring.prime_field(3)
rings = st.sampled_from([ZZ, GF2, F3])
seeds = st.integers(min_value=0, max_value=10_000)
dims = st.integers(min_value=0, max_value=4)


def M(ring, rows, cols=None):
    return ExactMatrix.from_rows(ring, rows, cols=cols)


def _random(seed, ring, rows, cols):
    return random_matrix(sample_rng(seed), ring, rows, cols)


# ===== Ring =====

def test_ring_rejects_composite_modulus():
    with pytest.raises(ValueError):
        Ring.prime_field(4)
    with pytest.raises(ValueError):
        Ring.prime_field(1)


def test_ring_parse_names():
    assert Ring.parse("Z") == ZZ
    assert Ring.parse("F_2") == GF2
    assert Ring.parse("f3") == F3
    assert Ring.parse("GF(3)") == F3
    with pytest.raises(ValueError):
        Ring.parse("Q")


def test_prime_field_entries_are_reduced():
    m = M(F3, [[4, -1], [3, 7]])
    assert m.entries == (1, 2, 0, 1)


def test_mixing_rings_raises():
    with pytest.raises(RingMismatch):
        M(ZZ, [[1]]) @ M(GF2, [[1]])


def test_shape_mismatch_raises():
    with pytest.raises(ShapeMismatch):
        M(ZZ, [[1, 2]]) @ M(ZZ, [[1, 2]])
    with pytest.raises(ShapeMismatch):
        ExactMatrix(ZZ, 2, 2, (1, 2, 3))


# ===== reprezentacja sympy =====

def test_matrices_carry_sympy_domain_representation():
    assert M(ZZ, [[1, -2]]).rep.domain == SZZ
    assert M(F3, [[4, 2]]).rep.domain == GF(3)
    assert [int(x) % 3 for x in M(F3, [[4, 2]]).rep.to_list_flat()] == [1, 2]


@given(seeds, st.sampled_from([GF2, F3]), dims, dims)
def test_kernel_over_prime_field_has_full_nullity(seed, ring, rows, cols):
    a = _random(seed, ring, rows, cols)
    k = kernel_basis(a)
    assert k.shape == (cols, cols - rank(a))
    assert (a @ k).is_zero()
    assert rank(k) == k.cols


@given(seeds, st.integers(min_value=1, max_value=3))
def test_integer_inverse_exists_exactly_for_unit_determinant(seed, n):
    a = _random(seed, ZZ, n, n)
    inv = inverse(a)
    det = a.to_sympy().det()
    assert (inv is not None) == (det in (1, -1))
    if inv is not None:
        assert (a @ inv).is_identity()


# ===== smith_form =====

def test_smith_zero_matrix():
    assert smith_form(M(ZZ, [[0]])).d == (0,)


def test_smith_two_by_two():
    a = M(ZZ, [[2, 4], [6, 8]])
    sf = smith_form(a)
    assert sf.d == (2, 4)
    assert sf.u @ a @ sf.v == sf.diagonal()


def test_smith_identity():
    sf = smith_form(ExactMatrix.identity(ZZ, 2))
    assert sf.d == (1, 1)
    assert sf.rank == 2


@given(seeds, rings, dims, dims)
def test_smith_reconstructs_diagonal(seed, ring, rows, cols):
    a = _random(seed, ring, rows, cols)
    sf = smith_form(a)
    assert sf.u @ a @ sf.v == sf.diagonal()
    for x, y in zip(sf.d, sf.d[1:]):
        if ring.is_field:
            assert x in (0, 1) and y in (0, 1)
            assert x >= y
        else:
            assert (y == 0) or (x != 0 and y % x == 0)
    for t in (sf.u, sf.v):
        det = int(t.to_sympy().det())
        assert ring.is_unit(det)


@given(seeds, dims, dims)
def test_smith_matches_sympy_invariants(seed, rows, cols):
    a = _random(seed, ZZ, rows, cols)
    ours = [x for x in smith_form(a).d if x]
    theirs = invariant_factors(DM(a.to_rows(), SZZ)) if rows and cols else ()
    assert ours == sorted(abs(int(x)) for x in theirs if x)


# ===== solve_linear =====

def test_solve_examples():
    assert solve_linear(M(ZZ, [[2]]), M(ZZ, [[4]])) == M(ZZ, [[2]])
    assert solve_linear(M(ZZ, [[2]]), M(ZZ, [[1]])) is None
    assert solve_linear(M(F3, [[2]]), M(F3, [[1]])) == M(F3, [[2]])


def test_solve_dimension_mismatch():
    with pytest.raises(ShapeMismatch):
        solve_linear(M(ZZ, [[1, 2]]), M(ZZ, [[1], [2]]))


@given(seeds, rings, dims, dims, st.integers(min_value=1, max_value=3))
def test_solve_finds_planted_solution(seed, ring, rows, cols, k):
    rng = sample_rng(seed)
    a = random_matrix(rng, ring, rows, cols)
    b = a @ random_matrix(rng, ring, cols, k)
    x = solve_linear(a, b)
    assert x is not None
    assert a @ x == b


def test_solve_on_empty_columns():
    a = ExactMatrix.zeros(ZZ, 2, 0)
    assert solve_linear(a, ExactMatrix.zeros(ZZ, 2, 1)) == ExactMatrix.zeros(ZZ, 0, 1)
    assert solve_linear(a, M(ZZ, [[1], [0]])) is None


# ===== kernel_basis =====

def test_kernel_examples():
    assert kernel_basis(M(ZZ, [[2]])).shape == (1, 0)
    assert kernel_basis(M(ZZ, [[0]])) == M(ZZ, [[1]])
    assert kernel_basis(M(GF2, [[2]])) == M(GF2, [[1]])


@given(seeds, dims, dims)
def test_kernel_spans_rational_nullspace(seed, rows, cols):
    a = _random(seed, ZZ, rows, cols)
    k = kernel_basis(a)
    assert (a @ k).is_zero()
    for vec in a.to_sympy().nullspace():
        scale = math.lcm(*(int(term.q) for term in vec))
        integral = ExactMatrix.column_vector(ZZ, [int(term * scale) for term in vec])
        assert solve_linear(k, integral) is not None


# ===== obrazy, odwrotności =====

@given(seeds, rings, dims, dims)
def test_image_basis_spans_columns(seed, ring, rows, cols):
    a = _random(seed, ring, rows, cols)
    basis = image_basis(a)
    assert solve_linear(basis, a) is not None
    assert solve_linear(a, basis) is not None


@given(seeds, rings, st.integers(min_value=0, max_value=4))
def test_unimodular_is_invertible(seed, ring, n):
    u = random_unimodular(sample_rng(seed), ring, n)
    u_inv = inverse(u)
    assert u_inv is not None
    assert (u @ u_inv).is_identity()


def test_inverse_of_two_over_integers_is_none():
    assert inverse(M(ZZ, [[2]])) is None
    assert inverse(M(F3, [[2]])) == M(F3, [[2]])


# ===== kokernele =====

def test_cokernel_examples():
    assert cokernel_presentation(M(ZZ, [[2, 4], [6, 8]])) == PresentedGroup(ZZ, (2, 4), 0)
    assert cokernel_presentation(ExactMatrix.zeros(ZZ, 1, 0)) == PresentedGroup(ZZ, (), 1)
    assert cokernel_presentation(M(ZZ, [[1]])).is_zero


def test_group_text_form():
    assert str(PresentedGroup(ZZ)) == "0"
    assert str(PresentedGroup(ZZ, (), 1)) == "Z"
    assert str(PresentedGroup(ZZ, (2, 4), 2)) == "Z/2 + Z/4 + Z^2"
    assert str(PresentedGroup(GF2, (), 3)) == "F_2^3"


def test_group_rejects_broken_divisibility():
    with pytest.raises(ValueError):
        PresentedGroup(ZZ, (4, 2), 0)


# ===== świadkowie rozszczepienia =====

def test_split_injection_examples():
    assert split_injection_witness(M(ZZ, [[1], [0]])) == M(ZZ, [[1, 0]])
    assert split_injection_witness(M(ZZ, [[2]])) is None
    assert split_injection_witness(M(F3, [[2]])) == M(F3, [[2]])


def _exists_left_inverse(a: ExactMatrix) -> bool:
    p = a.ring.p
    for values in itertools.product(range(p), repeat=a.rows * a.cols):
        r = ExactMatrix(a.ring, a.cols, a.rows, values)
        if (r @ a).is_identity():
            return True
    return False


@given(seeds, st.sampled_from([GF2, F3]), st.integers(0, 3), st.integers(0, 2))
def test_split_injection_agrees_with_exhaustive_search(seed, ring, rows, cols):
    a = _random(seed, ring, rows, cols)
    r = split_injection_witness(a)
    if r is None:
        assert not _exists_left_inverse(a)
    else:
        assert (r @ a).is_identity()


@given(seeds, rings, dims, dims)
def test_split_surjection_is_right_inverse(seed, ring, rows, cols):
    a = _random(seed, ring, rows, cols)
    s = split_surjection_witness(a)
    if s is not None:
        assert (a @ s).is_identity()
    else:
        assert smith_form(a).rank < rows or any(x != 1 for x in smith_form(a).d[:rows])


# ===== podiloraz =====

def test_subquotient_of_two():
    sq = subquotient(M(ZZ, [[1]]), M(ZZ, [[2]]))
    assert sq.group == PresentedGroup(ZZ, (2,), 0)
    assert sq.reduce(M(ZZ, [[3]])) == (1,)
    assert sq.reduce(M(ZZ, [[4]])) == (0,)
    assert sq.reduce(sq.generators[0]) == (1,)


def test_subquotient_rejects_non_cycles():
    sq = subquotient(M(ZZ, [[1], [0]]), ExactMatrix.zeros(ZZ, 2, 0))
    with pytest.raises(ValueError):
        sq.reduce(M(ZZ, [[0], [1]]))
