import importlib
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from localh.constructions import (
    TRIFORCE,
    TRIVIAL,
    cone,
    join,
    random_facet_refinement,
    random_iterated,
    segment_family,
    triforce,
    trivial,
)
from localh.local_h import (
    LocalHMismatch,
    ell1_formula,
    ell2_formula,
    f_vector,
    flag_counts,
    h_from_f,
    h_polynomial,
    local_h,
    local_h_decomposition,
    local_h_excess,
    local_h_mobius,
)

seeds = st.integers(0, 10**6)


def h_oracle(f):
    """Expand sum_i f_{i-1} (x - 1)^{d-i} with sympy and read off h_i at x^{d-i}."""
    x = sympy.Symbol("x")
    d = len(f) - 1
    expr = sympy.expand(sum(f[i] * (x - 1) ** (d - i) for i in range(d + 1)))
    poly = sympy.Poly(expr, x)
    return [int(poly.coeff_monomial(x ** (d - i))) for i in range(d + 1)]


@st.composite
def refined(draw, allow_interior=True):
    seed = draw(seeds)
    d = draw(st.sampled_from([3, 3, 4, 5]))
    base = TRIFORCE if d == 3 and draw(st.booleans()) else TRIVIAL
    steps = draw(st.integers(0, {3: 8, 4: 5, 5: 2}[d]))
    t, _ = random_iterated(base, steps, seed, d=d)
    if allow_interior and draw(st.booleans()):
        t = random_facet_refinement(t, random.Random(seed))[0]
    return t


def test_triforce_fixtures():
    t = triforce()
    assert f_vector(t) == (1, 6, 9, 4)
    assert h_polynomial(t) == [1, 3]
    assert local_h(t).is_zero()


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_trivial_subdivision_has_zero_local_h(d):
    assert local_h(trivial(d)).is_zero()
    assert h_polynomial(trivial(d)) == 1


@pytest.mark.parametrize("n", range(5))
def test_segment_family(n):
    # f = (1, n + 2, n + 1) gives h = 1 + n x, and both endpoints contribute 1
    assert local_h(segment_family(n)) == [0, n]


def test_planar_refinement(planar_triforce, planar_refined):
    # one interior vertex in a triangle: x + x^2
    assert local_h(planar_triforce).is_zero()
    assert local_h(planar_refined) == [0, 1, 1]


@given(st.lists(st.integers(0, 30), min_size=1, max_size=6))
def test_h_from_f_matches_sympy_expansion(f):
    f = [1] + f
    assert h_from_f(tuple(f)).padded(len(f)) == h_oracle(f)


@given(refined())
def test_both_formulas_agree(t):
    assert local_h_mobius(t) == local_h_excess(t)


@given(refined())
def test_symmetric_and_nonnegative(t):
    c = local_h(t).padded(t.d + 1)
    assert c == c[::-1]
    assert min(c) >= 0


@given(refined())
def test_local_h_reassembles_h(t):
    assert local_h_decomposition(t) == h_polynomial(t)


@given(refined())
def test_h_sums_to_the_number_of_cells(t):
    assert h_polynomial(t)(1) == len(t.cells)


@given(refined())
def test_low_coefficient_closed_forms(t):
    fc = flag_counts(t)
    ell = local_h(t)
    assert ell1_formula(fc, t.d) == ell[1]
    assert ell2_formula(fc, t.d) == ell[2]


@given(refined(allow_interior=False))
def test_iterated_conical_refinements_have_zero_local_h(t):
    assert local_h(t).is_zero()


def test_flag_counts_of_triforce():
    fc = flag_counts(triforce())
    assert fc[0, 0] == 3 and fc[0, 1] == 3 and fc[1, 1] == 6 and fc[1, 2] == 3
    assert fc[2, 2] == 4 and fc.f(1) == 9
    assert fc.as_rows()[0] == [1, 0, 0, 0]


def test_join_and_cone_examples():
    a, b = segment_family(2), segment_family(3)
    assert local_h(join(a, b)) == local_h(a) * local_h(b) == [0, 0, 6]
    assert local_h(cone(triforce())).is_zero()


def test_unknown_method():
    with pytest.raises(ValueError):
        local_h(triforce(), "other")


def test_mismatch_is_loud(monkeypatch):
    mod = importlib.import_module("localh.local_h")
    monkeypatch.setattr(mod, "local_h_excess", lambda t: mod.IntPolynomial([1]))
    with pytest.raises(LocalHMismatch):
        mod.local_h(triforce())
