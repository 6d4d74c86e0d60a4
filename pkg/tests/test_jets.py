"""Unit tests for jet matrices, osculating profiles, and implicit charts.

Oracles: closed-form row counts, invariance under coordinate and
parameter changes, and the binomial series for the circle chart
computed locally in the test.
"""

import random
from fractions import Fraction
from math import comb

import pytest

from oscform.errors import (
    ChainBroken,
    DomainError,
    NotHomogeneous,
    PointNotOnVariety,
    SingularPoint,
    TruncationOrderExceeded,
)
from oscform.exactla import ExactMatrix, RationalField, rank, span_contains
from oscform.jets import (
    ImplicitVariety,
    NonImmersivePoint,
    Parameterization,
    jet_matrix,
    jet_parameterize,
    kernel_chain,
    osculating_profile,
    osculating_space,
)
from oscform.polyring import Polynomial, parse_polynomial, parse_rational

XY = ("x", "y")


def togliatti() -> Parameterization:
    coords = [parse_polynomial(s, XY)
              for s in ("1", "x", "y", "x*y^2", "x^2*y", "x^2*y^2")]
    return Parameterization(XY, coords, label="togliatti")


def test_parameterization_validation():
    with pytest.raises(DomainError):
        Parameterization((), [1])
    with pytest.raises(DomainError):
        Parameterization(("x", "x"), [1, 2, 3])
    with pytest.raises(DomainError):
        Parameterization(XY, [parse_polynomial("x", XY)])
    with pytest.raises(DomainError):
        Parameterization(XY, [0, 0, 0])
    with pytest.raises(DomainError):
        Parameterization(XY, [parse_polynomial("x", ("x",)), 1, 2])


def test_jet_matrix_row_count_and_order():
    f = togliatti()
    for m in range(4):
        jm = jet_matrix(f, m, point=(1, 1))
        assert jm.matrix.nrows == comb(2 + m, 2)
    jm = jet_matrix(f, 2, point=(1, 1))
    assert jm.row_indices == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    assert jm.top_block_indices() == [3, 4, 5]


def test_jet_matrix_symbolic_entries_are_divided_derivatives():
    f = togliatti()
    jm = jet_matrix(f, 2, point=None)
    # D_(0,2) of x*y^2 is x; the ordinary second derivative would be 2x.
    row = jm.row_for((0, 2))
    assert row[3] == parse_rational("x", XY)
    assert row[5] == parse_rational("x^2", XY)


def test_jet_rank_invariant_under_ambient_linear_maps():
    rng = random.Random(131)
    f = togliatti()
    n = len(f.coords)
    while True:
        mixer = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if rank(ExactMatrix(mixer, field=RationalField())) == n:
            break
    mixed_coords = []
    for i in range(n):
        total = None
        for j, c in enumerate(f.coords):
            if mixer[i][j]:
                term = c * mixer[i][j]
                total = term if total is None else total + term
        mixed_coords.append(total if total is not None else 0)
    g = Parameterization(XY, mixed_coords)
    for m in range(4):
        at_f = jet_matrix(f, m, point=(1, 2))
        at_g = jet_matrix(g, m, point=(1, 2))
        assert rank(at_f.matrix) == rank(at_g.matrix)


def test_profile_invariant_under_parameter_translation():
    f = togliatti()
    shifted = Parameterization(XY, [
        c.numerator.evaluate_in([parse_polynomial("x + 2", XY),
                                 parse_polynomial("y - 1", XY)])
        for c in f.coords])
    p1 = osculating_profile(f, 3, point=(1, 1))
    p2 = osculating_profile(shifted, 3, point=(-1, 2))
    assert p1.dims == p2.dims


def test_togliatti_profile_dims():
    f = togliatti()
    assert osculating_profile(f, 3, point=(1, 1)).dims == (0, 2, 4, 5)
    symbolic = osculating_profile(f, 3, symbolic=True)
    assert symbolic.dims == (0, 2, 4, 5)
    assert symbolic.mode == "generic-symbolic"


def test_sampled_profile_agrees_with_symbolic():
    f = togliatti()
    sampled = osculating_profile(f, 3)
    assert sampled.mode == "generic-sampled"
    assert sampled.dims == (0, 2, 4, 5)
    assert len(sampled.sample_points) >= 2
    again = osculating_profile(f, 3)
    assert again.sample_points == sampled.sample_points


def test_profile_rejects_bad_order():
    with pytest.raises(DomainError):
        osculating_profile(togliatti(), 0, point=(1, 1))


def test_osculating_space_dimension_and_requirement():
    f = togliatti()
    space = osculating_space(f, 2, (1, 1))
    assert space.dim - 1 == 4
    with pytest.raises(DomainError):
        osculating_space(f, 2, None)


def test_jet_matrix_point_validation():
    f = togliatti()
    with pytest.raises(DomainError):
        jet_matrix(f, 2, point=(1,))
    with pytest.raises(DomainError):
        jet_matrix(f, -1, point=(1, 1))
    g = Parameterization(XY, [parse_polynomial(s, XY) for s in ("x", "y", "x*y")])
    with pytest.raises(DomainError):
        jet_matrix(g, 1, point=(0, 0))


def test_non_immersive_point_warns():
    cusp = Parameterization(("t",), [parse_polynomial(s, ("t",))
                                     for s in ("1", "t^2", "t^3")])
    with pytest.warns(NonImmersivePoint):
        jet_matrix(cusp, 1, point=(0,))
    with pytest.warns(NonImmersivePoint):
        osculating_profile(cusp, 2, point=(0,))


def test_kernel_chain_nesting():
    f = togliatti()
    chain = kernel_chain(f, 3, point=(1, 1))
    assert [k.dim for k in chain] == [5, 3, 1, 0]
    for small, large in zip(chain[1:], chain):
        assert span_contains(large, small)
    generic = kernel_chain(f, 2, point=None)
    assert [k.dim for k in generic] == [5, 3, 1]


def test_truncated_parameterization_rejects_deep_jets():
    series = Parameterization(XY, [parse_polynomial(s, XY)
                                   for s in ("1", "x", "y")],
                              truncated_order=3)
    jet_matrix(series, 2, point=(0, 0))
    with pytest.raises(TruncationOrderExceeded):
        jet_matrix(series, 3, point=(0, 0))


# -- implicit varieties -------------------------------------------------------

CIRCLE_VARS = ("X0", "X1", "X2")


def circle() -> ImplicitVariety:
    g = parse_polynomial("X1^2 + X2^2 - X0^2", CIRCLE_VARS)
    return ImplicitVariety([g], (1, 1, 0), label="circle")


def test_implicit_variety_validation():
    g = parse_polynomial("X1^2 + X2^2 - X0^2", CIRCLE_VARS)
    with pytest.raises(PointNotOnVariety):
        ImplicitVariety([g], (1, 1, 1))
    with pytest.raises(NotHomogeneous):
        ImplicitVariety([parse_polynomial("X1^2 - X0", CIRCLE_VARS)], (0, 0, 1))
    with pytest.raises(DomainError):
        ImplicitVariety([], (1, 1, 0))
    with pytest.raises(DomainError):
        ImplicitVariety([g], (0, 0, 0))
    with pytest.raises(DomainError):
        ImplicitVariety([g, g * 2, g * 3], (1, 1, 0))


def test_implicit_variety_rejects_singular_point():
    # Cuspidal cubic: the gradient vanishes at (1:0:0).
    g = parse_polynomial("X0*X2^2 - X1^3", CIRCLE_VARS)
    with pytest.raises(SingularPoint):
        ImplicitVariety([g], (1, 0, 0))


def test_jet_parameterize_circle_matches_binomial_series():
    f = jet_parameterize(circle(), 4)
    assert f.params == ("X2",)
    assert f.truncated_order == 4
    # sqrt(1 - y^2) expanded in the test: 1 - y^2/2 - y^4/8.
    expected = Polynomial(("X2",), {})
    half = Fraction(1, 2)
    for k in range(3):
        coeff = Fraction(1)
        for i in range(k):
            coeff *= (half - i) / (i + 1)
        expected = expected + Polynomial(("X2",), {(2 * k,): coeff * (-1) ** k})
    assert f.coords[0].as_polynomial() == Polynomial.constant(("X2",), 1)
    assert f.coords[1].as_polynomial() == expected
    assert f.coords[2].as_polynomial() == Polynomial.variable(("X2",), "X2")


def test_jet_parameterize_respects_requested_free_coords():
    f = jet_parameterize(circle(), 3, free_coords=["X2"])
    assert f.params == ("X2",)
    with pytest.raises(SingularPoint):
        jet_parameterize(circle(), 3, free_coords=["X1"])
    with pytest.raises(DomainError):
        jet_parameterize(circle(), 3, free_coords=["X0"])
    with pytest.raises(DomainError):
        jet_parameterize(circle(), 0)


def test_jet_parameterize_quadric_surface():
    names = ("X0", "X1", "X2", "X3")
    g = parse_polynomial("X0*X3 - X1*X2", names)
    iv = ImplicitVariety([g], (1, 0, 0, 0))
    f = jet_parameterize(iv, 3)
    assert f.params == ("X1", "X2")
    assert f.coords[3].as_polynomial() == parse_polynomial("X1*X2", ("X1", "X2"))


def test_circle_chart_osculating_dimensions():
    f = jet_parameterize(circle(), 5)
    profile = osculating_profile(f, 2, point=(0,))
    # A smooth conic: the tangent line is all of the osculating sequence
    # until order 2 fills the plane.
    assert profile.dims == (0, 1, 2)
