import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strohwf import (
    DomainError,
    PointForceLoading,
    ValidationError,
    bimaterial_system,
    load_transforms,
    ratio_sweep,
    sif_betti,
    sif_three_point_closed,
)
from strohwf.sif import three_point_brackets

from strategies import material_pairs


def test_three_point_geometry():
    load = PointForceLoading.three_point(2.0, 1.5, 0.5)
    assert load.upper == ((-1.5, (0.0, -2.0)),)
    assert load.lower == ((-2.0, (0.0, -1.0)), (-1.0, (0.0, -1.0)))
    assert load.as_three_point() == pytest.approx((2.0, 1.5, 0.5))


def test_coincident_three_point_recognized():
    assert PointForceLoading.three_point(1.0, 1.0, 0.0).as_three_point() == (1.0, 1.0, 0.0)


def test_general_loading_not_three_point():
    load = PointForceLoading(upper=((-1.0, (1.0, 0.0)),), lower=((-1.0, (1.0, 0.0)),))
    assert load.as_three_point() is None


def test_decompose_merges_positions():
    xs, fmean, fjump = PointForceLoading.three_point(1.0, 1.0, 0.0).decompose()
    assert xs.tolist() == [-1.0]
    assert fmean.tolist() == [[0.0, -1.0]]
    assert fjump.tolist() == [[0.0, 0.0]]


def test_load_transforms_frozen():
    load = PointForceLoading.three_point(1.0, 1.0, 0.5)
    mean, jump = load_transforms(load, 2.0)
    # <p> = -(1/2)e^{-2i} - (1/4)(e^{-3i} + e^{-i}), [p] = -e^{-2i} + (1/2)(e^{-3i} + e^{-i})
    e = np.exp
    assert mean == pytest.approx([0.0, -0.5 * e(-2j) - 0.25 * (e(-3j) + e(-1j))], abs=1e-15)
    assert jump == pytest.approx([0.0, -e(-2j) + 0.5 * (e(-3j) + e(-1j))], abs=1e-15)


@pytest.mark.parametrize(
    "upper, lower",
    [
        (((-1.0, (0.0, -1.0)),), ()),
        (((-1.0, (0.0, -1.0)),), ((-2.0, (0.0, -1.0)),)),
        (((0.5, (0.0, -1.0)),), ((0.5, (0.0, -1.0)),)),
        ((), ()),
    ],
)
def test_invalid_loadings(upper, lower):
    with pytest.raises(ValidationError):
        PointForceLoading(upper, lower)


@pytest.mark.parametrize("a, b", [(0.0, 0.0), (1.0, 1.0), (1.0, -0.1)])
def test_three_point_domain(a, b, ref_system):
    with pytest.raises(DomainError):
        sif_three_point_closed(ref_system, 1.0, a, b)


def test_b_zero_has_no_skew_part(ref_system):
    for beta in (-0.5, 0.0, 0.5):
        assert sif_three_point_closed(ref_system.with_beta(beta), 1.0, 1.0, 0.0).K.KA == 0.0


def test_closed_form_frozen(ref_system):
    k = sif_three_point_closed(ref_system, 1.0, 1.0, 0.5).K
    assert k.KS == pytest.approx(2.252302441640898 - 0.10197779076364769j, rel=1e-13)
    assert k.KA == pytest.approx(0.09610374798498612 - 0.09345720910036456j, rel=1e-13)


def test_beta_zero_gives_real_factors(ref_system):
    system = ref_system.with_beta(0.0)
    for t in np.linspace(0.0, 0.95, 11):
        k = sif_three_point_closed(system, 1.0, 1.0, float(t)).K
        assert k.KS.imag == 0.0 and k.KA.imag == 0.0


@pytest.mark.parametrize("beta", [-0.5, 0.0, 0.5])
@pytest.mark.parametrize("t", [0.0, 0.45, 0.9])
def test_betti_matches_closed_form(ref_system, beta, t):
    system = ref_system.with_beta(beta)
    quad = sif_betti(system, PointForceLoading.three_point(1.0, 1.0, t))
    closed = sif_three_point_closed(system, 1.0, 1.0, t)
    assert abs(quad.K.KS - closed.K.KS) <= 1e-10 * abs(closed.K.K)
    assert abs(quad.K.KA - closed.K.KA) <= 1e-10 * abs(closed.K.K)
    assert quad.conjugate_gap <= 1e-8 * abs(quad.K.K)


@settings(max_examples=15)
@given(material_pairs(), st.floats(0.2, 5.0), st.floats(0.0, 0.9))
def test_betti_matches_closed_form_random_pairs(pair, a, t):
    system = bimaterial_system(*pair)
    quad = sif_betti(system, PointForceLoading.three_point(1.0, a, t * a)).K.K
    closed = sif_three_point_closed(system, 1.0, a, t * a).K.K
    assert abs(quad - closed) <= 1e-8 * abs(closed)


def test_betti_is_linear_in_loading(ref_system):
    shear = PointForceLoading(upper=((-0.7, (1.0, 0.0)),), lower=((-0.7, (1.0, 0.0)),))
    three = PointForceLoading.three_point(1.0, 1.0, 0.3)
    both = sif_betti(ref_system, shear + three.scaled(2.0)).K.K
    parts = sif_betti(ref_system, shear).K.K + 2.0 * sif_betti(ref_system, three).K.K
    assert abs(both - parts) <= 1e-10 * abs(both)


@given(st.floats(0.1, 10.0), st.floats(0.0, 0.95), st.floats(-0.9, 0.9))
def test_closed_form_scaling(scale, t, beta):
    # K(F, s a, s b) = s^(-1/2 - i eps) K(F, a, b).
    from strohwf import reference_pair

    system = bimaterial_system(*reference_pair()).with_beta(beta)
    k1 = sif_three_point_closed(system, 1.0, 1.0, t).K.K
    k2 = sif_three_point_closed(system, 1.0, scale, t * scale).K.K
    assert k2 == pytest.approx(k1 * scale ** complex(-0.5, -system.epsilon), rel=1e-12)


@given(st.floats(-0.17, 0.17), st.floats(0.0, 0.999))
def test_brackets_sum_to_one(eps, t):
    s, a = three_point_brackets(t, eps)
    assert s + a == pytest.approx(1.0)


@pytest.mark.parametrize("beta", [-0.5, -0.25, 0.0, 0.25, 0.5])
def test_ks_local_slope_tends_to_inverse_root(ref_system, beta):
    # The (1 - t)^q term dominates only as t -> 1; the local log-log slope then approaches -1/2.
    system = ref_system.with_beta(beta)
    g1, g2 = 1e-9, 1e-10
    k1 = abs(sif_three_point_closed(system, 1.0, 1.0, 1.0 - g1).K.KS)
    k2 = abs(sif_three_point_closed(system, 1.0, 1.0, 1.0 - g2).K.KS)
    slope = math.log(k2 / k1) / math.log(g2 / g1)
    assert slope == pytest.approx(-0.5, abs=1e-3)


def test_sweep_order_and_workers(ref_system):
    grid = np.linspace(0.0, 0.9, 7)
    serial = ratio_sweep(ref_system, 1.0, 1.0, grid, (-0.5, 0.5))
    threaded = ratio_sweep(ref_system, 1.0, 1.0, grid, (-0.5, 0.5), workers=4)
    assert serial == threaded
    assert [(r.b_over_a, r.beta) for r in serial[:3]] == [(0.0, -0.5), (0.0, 0.5), (0.15, -0.5)]


def test_sweep_ratio_peak_in_band(ref_system):
    rows = ratio_sweep(ref_system, 1.0, 1.0, np.linspace(0.0, 0.95, 20), (0.0,))
    assert 0.30 <= max(r.ratio for r in rows) <= 0.50


def test_sweep_rejects_bad_grid(ref_system):
    with pytest.raises(DomainError):
        ratio_sweep(ref_system, 1.0, 1.0, [0.5, 1.0])
