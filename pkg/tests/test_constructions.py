import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localh.constructions import (
    TRIFORCE,
    TRIVIAL,
    Certificate,
    RefinementError,
    RefinementStep,
    cone,
    conical_facet_refine,
    eligible_pairs,
    facet_refine,
    join,
    random_facet_refinement,
    random_iterated,
    segment_family,
    stellar_subdivision,
    step_from_base,
    transfer,
    triforce,
    trivial,
)
from localh.exact import standard_basis
from localh.local_h import local_h

H = Q(1, 2)


def test_triforce_with_custom_edge_points():
    pts = [(Q(1, 3), Q(2, 3), Q(0)), (Q(0), H, H), (Q(1, 4), Q(0), Q(3, 4))]
    t = triforce(edge_points=pts)
    assert t.validate() and local_h(t).is_zero()


def test_join_dimensions_and_coordinates():
    a, b = segment_family(1), triforce()
    j = join(a, b)
    assert j.d == 5 and j.reference.ambient_dim == 5
    assert len(j.cells) == len(a.cells) * len(b.cells)
    assert j.validate()


def test_cone_puts_apex_last():
    c = cone(triforce())
    assert c.d == 4 and c.reference.vertices[-1] == (0, 0, 0, 1)
    assert c.validate() and len(c.cells) == 4


def test_transfer_to_a_planar_triangle():
    ref = [(Q(0), Q(0)), (Q(2), Q(0)), (Q(0), Q(2))]
    t = transfer(triforce(), ref)
    assert (Q(1), Q(1)) in t.points and t.validate()


def test_stellar_subdivision_of_an_edge():
    t = stellar_subdivision(trivial(3), (0, 1), (H, H, Q(0)))
    assert len(t.cells) == 2 and t.validate()


def test_conical_step_by_hand():
    t = trivial(3)
    m = (H, H, Q(0))
    step = RefinementStep((0, 1, 2), 2, (m,), ((0, 3), (1, 3)))
    out = conical_facet_refine(t, step)
    assert out.validate() and len(out.cells) == 2 and out.points[3] == m


def test_conical_step_errors():
    t = trivial(3)
    m = (H, H, Q(0))
    with pytest.raises(RefinementError, match="not a vertex"):
        conical_facet_refine(t, RefinementStep((0, 1, 2), 5, (m,), ((0, 3), (1, 3))))
    with pytest.raises(RefinementError, match="no new points"):
        conical_facet_refine(t, RefinementStep((0, 1, 2), 2, (), ((0, 1),)))
    with pytest.raises(RefinementError, match="does not live"):
        conical_facet_refine(t, RefinementStep((0, 1, 2), 2, (m,), ((0, 2), (1, 3))))
    with pytest.raises(RefinementError, match="not a cell"):
        conical_facet_refine(t, RefinementStep((0, 1, 3), 2, (m,), ((0, 3), (1, 3))))


def test_shared_face_may_not_be_subdivided():
    # the central triforce cell shares every edge with a corner
    t = triforce()
    m = (Q(1, 4), H, Q(1, 4))
    with pytest.raises(RefinementError, match="non-conical-eligible"):
        conical_facet_refine(t, RefinementStep((3, 4, 5), 5, (m,), ((3, 6), (4, 6))))


def test_segment_cannot_be_conically_refined():
    assert eligible_pairs(trivial(2)) == []
    with pytest.raises(RefinementError):
        random_iterated(TRIVIAL, 1, 0, d=2)


def test_random_iterated_is_deterministic():
    a, ca = random_iterated(TRIVIAL, 5, 11, d=4)
    b, cb = random_iterated(TRIVIAL, 5, 11, d=4)
    assert a == b and ca.steps == cb.steps and ca.seed == 11
    assert random_iterated(TRIFORCE, 3, 2)[1].base == TRIFORCE


@given(st.integers(0, 10**6), st.integers(0, 8), st.sampled_from([3, 4]))
def test_certificate_replays(seed, steps, d):
    if d == 4:
        steps = min(steps, 5)
    t, cert = random_iterated(TRIVIAL, steps, seed, d=d)
    assert cert.replay() == t
    assert t.validate()


@given(st.integers(0, 10**6))
def test_random_facet_refinement_is_valid(seed):
    rng = random.Random(seed)
    t, _ = random_iterated(TRIFORCE, 3, seed)
    out, cell, piece = random_facet_refinement(t, rng)
    assert out.validate() and piece.validate()
    assert local_h(out) == local_h(t) + local_h(piece)


def test_facet_refine_with_explicit_replacement():
    t = triforce()
    cell = (3, 4, 5)
    ref = t.cell_points(cell)
    center = tuple(sum(c) / 3 for c in zip(*ref))
    piece = stellar_subdivision(trivial(ref), (0, 1, 2), center)
    out = facet_refine(t, cell, piece)
    assert out.validate() and local_h(out) == [0, 1, 1]


def test_step_from_base_orders_new_points():
    t = trivial(3)
    a, b = (Q(1, 3), Q(2, 3), Q(0)), (Q(2, 3), Q(1, 3), Q(0))
    e0, e1 = standard_basis(3)[:2]
    step = step_from_base(t, (0, 1, 2), 2, [{e0, b}, {b, a}, {a, e1}])
    assert step.new_points == (a, b)


def test_certificate_base_checks():
    with pytest.raises(ValueError):
        Certificate("other", 3)
    with pytest.raises(ValueError):
        Certificate(TRIFORCE, 4)
