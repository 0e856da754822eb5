import random
from dataclasses import replace
from fractions import Fraction as Q

import pytest
from conftest import M01, M02, PLANAR_REF
from hypothesis import given, settings
from hypothesis import strategies as st

from localh.constructions import (
    TRIFORCE,
    TRIVIAL,
    Certificate,
    RefinementStep,
    cone,
    conical_facet_refine,
    random_facet_refinement,
    random_iterated,
    stellar_subdivision,
    triforce,
    trivial,
)
from localh.decomposition import (
    DecompositionError,
    coarsen,
    cone_regions,
    decompose,
    decompose_dim2,
    decompose_dim3,
    find_coarsenable_regions,
    induced_subdivision,
    verify_certificate,
)
from localh.graph import component_reports, internal_edge_graph
from localh.local_h import local_h

H = Q(1, 2)


def split_triangle():
    m = (H, H, Q(0))
    return conical_facet_refine(trivial(3), RefinementStep((0, 1, 2), 2, (m,), ((0, 3), (1, 3))))


def test_triforce_has_no_coarsenable_region():
    assert find_coarsenable_regions(triforce()) == []


def test_refined_corner_is_coarsenable(planar_triforce, planar_refined):
    t = planar_refined
    corner = tuple(sorted(t.index_of[p] for p in (PLANAR_REF[0], M01, M02)))
    regions = {r.support_vertices: r for r in find_coarsenable_regions(t)}
    r = regions[corner]
    assert len(r.member_cells) == 5 and r.apex is None
    # smaller cones around the interior point, e.g. over the split left edge
    assert all(x.apex is not None for k, x in regions.items() if k != corner)
    assert local_h(induced_subdivision(planar_refined, r)) == [0, 1, 1]
    coarse = coarsen(planar_refined, r)
    assert coarse.geometry_key() == planar_triforce.geometry_key()
    assert local_h(planar_refined) - local_h(coarse) == [0, 1, 1]


def test_refined_half_is_coarsenable():
    t = split_triangle()
    half = (0, 2, 3)
    center = (Q(1, 2), Q(1, 6), Q(1, 3))
    refined = stellar_subdivision(t, half, center)
    regions = find_coarsenable_regions(refined)
    assert [r.support_vertices for r in regions] == [half]
    assert coarsen(refined, regions[0]) == t


def test_whole_simplex_is_offered_only_on_request():
    t = cone(triforce())
    assert find_coarsenable_regions(t) == []
    whole = find_coarsenable_regions(t, include_whole=True)
    ref = tuple(sorted(t.index_of[v] for v in t.reference.vertices))
    apex = t.index_of[t.reference.vertices[-1]]
    assert [r.support_vertices for r in whole] == [ref]
    assert whole[0].apex == apex
    assert [r.apex for r in cone_regions(t)] == [apex]


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_coarsening_law(seed):
    rng = random.Random(seed)
    t, _ = random_iterated(TRIFORCE, rng.randint(0, 3), seed)
    if rng.random() < 0.5:
        t = random_facet_refinement(t, rng)[0]
    for r in find_coarsenable_regions(t):
        coarse = coarsen(t, r)  # raises if the identity or nonnegativity fails
        piece = local_h(induced_subdivision(t, r))
        assert local_h(t) == local_h(coarse) + piece
        assert min(piece.coeffs, default=0) >= 0


def test_dim2_bases():
    tf = decompose_dim2(triforce())
    assert tf.base == TRIFORCE and tf.steps == []
    assert decompose_dim2(trivial(3)).steps == []
    cert = decompose_dim2(split_triangle())
    assert cert.base == TRIVIAL and len(cert.steps) == 1


def test_nonzero_local_h_is_refused(planar_refined):
    with pytest.raises(DecompositionError, match="not zero"):
        decompose_dim2(planar_refined)
    with pytest.raises(DecompositionError):
        decompose(trivial(5))


def test_dim3_examples():
    assert decompose_dim3(trivial(4)).steps == []
    t = cone(triforce())
    cert = decompose_dim3(t)
    assert len(cert.steps) >= 1 and verify_certificate(cert, t)


@given(st.integers(0, 10**6), st.integers(0, 12), st.booleans())
def test_dim2_round_trip_and_base_dichotomy(seed, steps, tri):
    t, _ = random_iterated(TRIFORCE if tri else TRIVIAL, steps, seed, d=3)
    cert = decompose_dim2(t)
    assert verify_certificate(cert, t)
    g = internal_edge_graph(t)
    has_cycle = any(r.simple_3_cycles for r in component_reports(g, t))
    ref = {t.index_of[v] for v in t.reference.vertices}
    touches_corner = bool(ref & set(g.vertices))
    assert (cert.base == TRIFORCE) == has_cycle == (not touches_corner and not g.is_empty())


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_dim3_round_trip(seed, steps):
    t, _ = random_iterated(TRIVIAL, steps, seed, d=4)
    assert verify_certificate(decompose_dim3(t), t)


def test_verify_reports_broken_step_order():
    t, cert = random_iterated(TRIVIAL, 4, 5, d=3)
    assert verify_certificate(cert, t)
    broken = replace(cert, steps=cert.steps[::-1])
    res = verify_certificate(broken, t)
    assert not res and res.failed_step is not None


def test_verify_reports_point_differences():
    t, _ = random_iterated(TRIVIAL, 4, 5, d=3)
    _, other = random_iterated(TRIVIAL, 4, 6, d=3)
    res = verify_certificate(other, t)
    assert not res and res.failed_step is None
    assert any("point" in line for line in res.diff)


def test_verify_rejects_other_reference():
    cert = Certificate(TRIVIAL, 3)
    res = verify_certificate(cert, trivial(4))
    assert not res and "reference" in res.diff[0]
