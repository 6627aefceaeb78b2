#!/usr/bin/env python3
"""Testy struktury dokładnej: dopuszczalność, pushout/pullback, retrakty, zestaw aksjomatów"""

import itertools

import pytest
from hypothesis import given, strategies as st

from chain_complex import (
    ChainMap, column_map, cone, direct_sum, direct_sum_maps, direct_sum_of_maps, disk, inverse_map,
    k2, multiplication, random_chain_map, random_complex, random_isomorphism, row_map, shift,
    sphere, zero_complex, zero_map,
)
from dw_exact import (
    DwSes, admissible_epi, admissible_mono, axiom_suite, chain_retraction, chain_section,
    cone_ses, pullback_epi, pushout_mono, random_ses, retract_embedding, run_clause,
    split_mono_cokernel, twisted_extension,
)
from dw_exact import _retract_diagram_holds, _twisted_sum
from exact_linalg import GF2, ZZ, ExactMatrix, sample_rng

seeds = st.integers(min_value=0, max_value=10_000)
rings = st.sampled_from([ZZ, GF2])


def M(ring, rows):
    return ExactMatrix.from_rows(ring, rows)


def disk_inclusion():
    return cone(sphere().identity())[1]


# ===== admissible_mono / admissible_epi =====

def test_inclusion_into_disk_has_sphere_cokernel():
    w = admissible_mono(disk_inclusion())
    assert w is not None
    assert w.complement == sphere(ZZ, 1)
    assert w.ses().check().ok


def test_multiplication_by_two_is_not_admissible():
    assert admissible_mono(multiplication(sphere(), 2)) is None
    assert admissible_epi(multiplication(sphere(), 2)) is None


def test_identity_has_zero_cokernel():
    w = admissible_mono(k2().identity())
    assert w is not None and w.complement.is_zero


def test_projection_from_disk_is_admissible_epi():
    w = admissible_epi(cone(sphere().identity())[2])
    assert w is not None
    assert w.complement == sphere()
    assert w.sequence.check().ok


@given(seeds, rings)
def test_witnesses_assemble_valid_sequences(seed, ring):
    ses = random_ses(sample_rng(seed), ring)
    assert ses.check().ok
    mono, epi = admissible_mono(ses.i), admissible_epi(ses.p)
    assert mono is not None and epi is not None
    assert mono.sequence.check().ok and epi.sequence.check().ok
    for n in ses.c.degrees:
        assert mono.complement.rank(n) == ses.c.rank(n)
    for n in ses.a.degrees:
        assert epi.complement.rank(n) == ses.a.rank(n)


@given(seeds, rings)
def test_rejection_names_a_non_split_degree(seed, ring):
    rng = sample_rng(seed)
    x, y = random_complex(rng, ring), random_complex(rng, ring)
    f = random_chain_map(rng, x, y)
    if admissible_mono(f) is None:
        from exact_linalg import split_injection_witness
        degrees = set(x.degrees) | set(y.degrees)
        assert any(split_injection_witness(f.component(n)) is None for n in degrees)


def test_composition_of_canonical_inclusions():
    first = disk_inclusion()
    maps = direct_sum_maps(disk(), sphere(ZZ, 1))
    assert admissible_mono(maps.inj_first @ first) is not None


# ===== DwSes.from_maps =====

def test_from_maps_on_cone_sequence():
    c, incl, proj = cone(multiplication(sphere(), 2))
    ses = DwSes.from_maps(incl, proj)
    assert ses is not None and ses.check().ok


def test_from_maps_rejects_non_split_pair():
    two = multiplication(sphere(), 2)
    assert DwSes.from_maps(two, zero_map(sphere(), zero_complex())) is None


def test_cone_ses_is_valid():
    assert cone_ses(multiplication(sphere(), 2)).check().ok


def test_twisted_extension_checks_tau():
    with pytest.raises(ValueError):
        twisted_extension(sphere(), sphere(), sphere().identity())


# ===== pushout / pullback =====

def test_pushout_along_zero_map_gives_sphere():
    w = admissible_mono(disk_inclusion())
    sq = pushout_mono(w, zero_map(sphere(), zero_complex()))
    assert sq.corner == sphere(ZZ, 1)


def test_pushout_along_identity_keeps_middle_ranks():
    w = admissible_mono(disk_inclusion())
    sq = pushout_mono(w, sphere().identity())
    assert sq.corner.ranks == disk().ranks
    assert sq.across.validate().ok


@given(seeds, rings)
def test_pushout_of_canonical_inclusion(seed, ring):
    rng = sample_rng(seed)
    a, c, z = (random_complex(rng, ring, max_rank=2) for _ in range(3))
    f = random_chain_map(rng, a, z)
    maps = direct_sum_maps(a, c)
    sq = pushout_mono(admissible_mono(maps.inj_first), f)
    assert sq.corner.ranks == direct_sum(z, c).ranks
    assert sq.across @ maps.inj_first == sq.along @ f


@given(seeds, rings)
def test_pushout_and_pullback_squares_commute(seed, ring):
    rng = sample_rng(seed)
    ses = random_ses(rng, ring)
    z = random_complex(rng, ring, max_rank=2)
    push = pushout_mono(admissible_mono(ses.i), random_chain_map(rng, ses.a, z))
    assert push.ses.check().ok and push.across.validate().ok
    g = random_chain_map(rng, z, ses.c)
    pull = pullback_epi(admissible_epi(ses.p), g)
    assert pull.ses.check().ok and pull.across.validate().ok
    assert ses.p @ pull.across == g @ pull.along


def test_pushout_rejects_wrong_source():
    w = admissible_mono(disk_inclusion())
    with pytest.raises(ValueError):
        pushout_mono(w, k2().identity())


# ===== split_mono_cokernel =====

def test_split_cokernel_of_canonical_inclusion():
    maps = direct_sum_maps(sphere(), sphere())
    split = split_mono_cokernel(maps.inj_first, maps.proj_first)
    assert split.ses.c.ranks == (1,)
    assert split.iso @ split.inverse == split.canonical.total.identity()
    assert split.inverse @ split.iso == maps.total.identity()


@given(seeds, rings)
def test_split_cokernel_of_graph_embedding(seed, ring):
    rng = sample_rng(seed)
    a, c = random_complex(rng, ring, max_rank=2), random_complex(rng, ring, max_rank=2)
    g = random_chain_map(rng, a, c)
    maps = direct_sum_maps(a, c)
    f = column_map(a.identity(), -g)
    split = split_mono_cokernel(f, maps.proj_first)
    assert split.ses.check().ok
    assert split.iso @ f == split.canonical.inj_first
    assert split.ses.p == split.canonical.proj_second @ split.iso
    shear = ChainMap.from_components(maps.total, maps.total, {
        n: M(ring, [[1 if i == j else 0 for j in range(a.rank(n) + c.rank(n))]
                    for i in range(a.rank(n) + c.rank(n))]) + _lower_block(ring, g, a, c, n)
        for n in maps.total.degrees})
    assert shear.validate().ok
    assert shear @ f == maps.inj_first


def _lower_block(ring, g, a, c, n):
    from exact_linalg import block_matrix
    return block_matrix(ring, [a.rank(n), c.rank(n)], [a.rank(n), c.rank(n)], [[None, None], [g.component(n), None]])


@given(seeds)
def test_split_cokernel_after_random_isomorphism(seed):
    rng = sample_rng(seed)
    a, c = random_complex(rng, GF2, max_rank=2), random_complex(rng, GF2, max_rank=2)
    maps = direct_sum_maps(a, c)
    iso = random_isomorphism(rng, maps.total)
    f = iso @ maps.inj_first
    left = maps.proj_first @ inverse_map(iso)
    assert split_mono_cokernel(f, left).ses.check().ok


def test_split_cokernel_rejects_false_inverse():
    with pytest.raises(ValueError):
        split_mono_cokernel(sphere().identity(), multiplication(sphere(), 2))


# ===== retract_embedding =====

def test_retract_of_identity_degenerates():
    s = sphere()
    diagram = retract_embedding(s.identity(), s.identity())
    assert diagram.ok
    assert diagram.middle.component(0) == M(ZZ, [[1], [-1]])


def test_retract_of_canonical_inclusion():
    maps = direct_sum_maps(sphere(), sphere())
    assert retract_embedding(maps.inj_first, maps.proj_first).ok


@given(seeds)
def test_retract_of_random_split_pair(seed):
    rng = sample_rng(seed)
    a, c = random_complex(rng, GF2, max_rank=2), random_complex(rng, GF2, max_rank=2)
    maps = direct_sum_maps(a, c)
    f = column_map(a.identity(), random_chain_map(rng, a, c))
    diagram = retract_embedding(f, maps.proj_first)
    assert diagram.ok
    assert all(v.ok for v in diagram.identities)


def test_retract_embedding_requires_left_inverse():
    with pytest.raises(ValueError):
        retract_embedding(multiplication(sphere(), 2), sphere().identity())


def _retract_diagrams(f: ExactMatrix, m: ExactMatrix, values=range(-2, 3)):
    """Wszystkie diagramy retraktu f ← m o małych wpisach (kompleksy w stopniu 0)"""
    ring = f.ring
    k, l = m.cols, m.rows
    pairs_a = [(a, a2) for a in _matrices(ring, k, 1, values) for a2 in _matrices(ring, 1, k, values)
               if (a2 @ a).is_identity()]
    pairs_b = [(b, b2) for b in _matrices(ring, l, 1, values) for b2 in _matrices(ring, 1, l, values)
               if (b2 @ b).is_identity()]
    for (a, a2), (b, b2) in itertools.product(pairs_a, pairs_b):
        if m @ a == b @ f and f @ a2 == b2 @ m:
            yield a, a2, b, b2


def _matrices(ring, rows, cols, values):
    for entries in itertools.product(values, repeat=rows * cols):
        yield ExactMatrix(ring, rows, cols, entries)


def test_two_is_not_a_retract_of_admissible_monos():
    two, one = M(ZZ, [[2]]), M(ZZ, [[1]])
    for m in (one, M(ZZ, [[1], [0]])):
        assert next(_retract_diagrams(two, m), None) is None
        assert next(_retract_diagrams(one, m), None) is not None


# ===== łańcuchowe odwrotności =====

def test_chain_retraction_and_section():
    assert chain_retraction(disk_inclusion()) is None
    maps = direct_sum_maps(sphere(), k2())
    g = chain_retraction(maps.inj_first)
    assert g is not None and g @ maps.inj_first == sphere().identity()
    s = chain_section(maps.proj_second)
    assert s is not None and maps.proj_second @ s == k2().identity()


# ===== zestaw aksjomatów =====

@pytest.mark.parametrize("ring", [ZZ, GF2], ids=["Z", "F_2"])
def test_axiom_suite_runs_300_samples_per_clause(ring):
    report = axiom_suite(1, 300, ring)
    assert report.passed, report.summary()
    for name, result in report.clauses.items():
        assert result.samples == 300, name
    assert report.clauses["cancellation_mono"].hits > 0
    assert report.clauses["retract_mono"].hits > 0
    assert report.clauses["retract_epi"].hits > 0


def test_clause_replay_is_deterministic():
    assert run_clause("pushout", 5, 7, ZZ) == run_clause("pushout", 5, 7, ZZ)


@pytest.mark.parametrize("ring", [ZZ, GF2], ids=["Z", "F_2"])
def test_retract_samples_sit_in_twisted_sums(ring):
    twisted = 0
    for index in range(40):
        rng = sample_rng(5, index)
        f, h = random_ses(rng, ring).i, random_ses(rng, ring).i
        big, sections, retractions = _twisted_sum(rng, f, h)
        assert _retract_diagram_holds(f, big, sections, retractions), index
        assert admissible_mono(big) is not None, index
        twisted += big != direct_sum_of_maps(f, h)
    assert twisted > 0


def test_twisted_sum_with_multiplication_by_two_is_not_admissible():
    rng = sample_rng(9)
    two = multiplication(sphere(), 2)
    big, sections, retractions = _twisted_sum(rng, two, sphere().identity())
    assert _retract_diagram_holds(two, big, sections, retractions)
    assert admissible_mono(big) is None
