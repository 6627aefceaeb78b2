#!/usr/bin/env python3
"""Testy kompleksów łańcuchowych: walidacja, przesunięcie, stożek, Hom, homologia"""

import pytest
from hypothesis import given, strategies as st

from chain_complex import (
    ChainComplex, ChainMap, Homotopy, cone, direct_sum, direct_sum_maps, disk, f2k0,
    hom, hom_complex, homology, k2, multiplication, random_chain_map, random_complex,
    shift, sphere, zero_complex, zero_map,
)
from exact_linalg import GF2, ZZ, ExactMatrix, PresentedGroup, Ring, ShapeMismatch, rank, sample_rng

seeds = st.integers(min_value=0, max_value=10_000)
rings = st.sampled_from([ZZ, GF2, Ring.prime_field(3)])


def M(ring, rows):
    return ExactMatrix.from_rows(ring, rows)


def _pair(seed, ring):
    rng = sample_rng(seed)
    return random_complex(rng, ring), random_complex(rng, ring), rng


# ===== validate =====

def test_fixtures_are_valid():
    for x in (zero_complex(), sphere(), sphere(ZZ, 1), disk(), k2(), f2k0()):
        assert x.validate().ok


def test_validate_reports_middle_degree():
    x = ChainComplex.from_matrices(ZZ, {2: M(ZZ, [[1]]), 1: M(ZZ, [[1]])})
    verdict = x.validate()
    assert not verdict.ok
    assert verdict.degree == 1


def test_validate_reports_bad_shape():
    x = ChainComplex(ZZ, 0, (1, 2), (ExactMatrix.zeros(ZZ, 0, 1), ExactMatrix.zeros(ZZ, 1, 1)))
    verdict = x.validate()
    assert not verdict.ok and verdict.degree == 1


def test_zero_ranks_are_trimmed():
    x = ChainComplex(ZZ, -2, (0, 1, 0), (ExactMatrix.zeros(ZZ, 0, 0), ExactMatrix.zeros(ZZ, 0, 1),
                                          ExactMatrix.zeros(ZZ, 1, 0)))
    assert x == sphere(ZZ, -1)


def test_chain_map_shape_is_checked():
    with pytest.raises(ShapeMismatch):
        ChainMap(sphere(), sphere(), (M(ZZ, [[1, 0]]),))


@given(seeds, rings)
def test_random_complexes_and_maps_are_valid(seed, ring):
    x, y, rng = _pair(seed, ring)
    assert x.validate().ok
    assert random_chain_map(rng, x, y).validate().ok


# ===== shift =====

def test_shift_examples():
    assert shift(sphere(), 1) == sphere(ZZ, 1)
    s = shift(k2(), -1)
    assert s.min_degree == -1
    assert s.d(0) == M(ZZ, [[-2]])


@given(seeds, rings, st.integers(min_value=-3, max_value=3))
def test_shift_round_trip(seed, ring, k):
    x, _, _ = _pair(seed, ring)
    assert shift(shift(x, k), -k) == x
    assert shift(x, k).validate().ok


# ===== cone =====

def test_cone_of_identity_is_disk():
    c, incl, proj = cone(sphere().identity())
    assert c == disk()
    assert c.d(1) == M(ZZ, [[-1]])
    assert incl.validate().ok and proj.validate().ok


def test_cone_of_zero_map_splits():
    c, _, _ = cone(zero_map(sphere(), sphere()))
    assert c == direct_sum(sphere(ZZ, 1), sphere())
    assert c.d(1).is_zero()


def test_cone_of_two_is_k2_up_to_sign():
    c, _, _ = cone(multiplication(sphere(), 2))
    assert c.d(1) == M(ZZ, [[-2]])
    iso = ChainMap.from_components(c, k2(), {1: M(ZZ, [[-1]]), 0: M(ZZ, [[1]])})
    assert iso.validate().ok


@given(seeds, rings)
def test_cone_of_random_map(seed, ring):
    x, y, rng = _pair(seed, ring)
    f = random_chain_map(rng, x, y)
    c, incl, proj = cone(f)
    assert c.validate().ok
    assert incl.validate().ok and proj.validate().ok
    assert (proj @ incl).is_zero()
    for n in c.degrees:
        assert c.rank(n) == x.rank(n - 1) + y.rank(n)


# ===== direct_sum =====

def test_direct_sum_examples():
    assert direct_sum(zero_complex(), k2()) == k2()
    assert direct_sum(sphere(), sphere()).rank(0) == 2


@given(seeds, rings)
def test_direct_sum_maps(seed, ring):
    x, y, _ = _pair(seed, ring)
    maps = direct_sum_maps(x, y)
    for n in range(-2, 5):
        assert maps.total.rank(n) == x.rank(n) + y.rank(n)
    for f in maps[1:]:
        assert f.validate().ok
    assert (maps.proj_first @ maps.inj_first) == x.identity()
    assert (maps.proj_second @ maps.inj_first).is_zero()
    total = maps.inj_first @ maps.proj_first + maps.inj_second @ maps.proj_second
    assert total == maps.total.identity()


# ===== hom_complex =====

def test_hom_examples():
    assert hom_complex(sphere(), sphere()) == sphere()
    h = hom_complex(k2(), k2())
    assert (h.rank(-1), h.rank(0), h.rank(1)) == (1, 2, 1)
    assert hom_complex(zero_complex(), k2()).is_zero


@given(seeds, rings)
def test_hom_complex_is_a_complex(seed, ring):
    x, y, _ = _pair(seed, ring)
    assert hom_complex(x, y).validate().ok


@given(seeds, rings)
def test_hom_degree_zero_cycles_are_chain_maps(seed, ring):
    x, y, rng = _pair(seed, ring)
    f = random_chain_map(rng, x, y)
    h = hom(x, y)
    vec = h.map_to_vector(f)
    assert (h.boundary_matrix(0) @ vec).is_zero()
    assert h.vector_to_map(vec) == f


# ===== homotopie =====

def test_disk_identity_is_null_homotopic():
    d = disk()
    h = Homotopy.from_components(d.identity(), zero_map(d, d), {0: M(ZZ, [[1]])})
    assert h.verify().ok


def test_wrong_homotopy_is_reported():
    x = k2()
    h = Homotopy.from_components(x.identity(), zero_map(x, x), {0: M(ZZ, [[1]])})
    assert not h.verify().ok


# ===== homologia =====

def test_homology_examples():
    assert homology(k2(), 0) == PresentedGroup(ZZ, (2,), 0)
    assert homology(k2(), 1).is_zero
    for n in range(-1, 3):
        assert homology(disk(), n).is_zero
    assert homology(f2k0(), 0) == PresentedGroup(GF2, (), 1)


@given(seeds, st.sampled_from([GF2, Ring.prime_field(3)]))
def test_field_homology_counts_dimensions(seed, ring):
    x, _, _ = _pair(seed, ring)
    for n in range(x.min_degree - 1, x.max_degree + 2):
        group = homology(x, n)
        assert group.torsion == ()
        assert group.free_rank == x.rank(n) - rank(x.d(n)) - rank(x.d(n + 1))
