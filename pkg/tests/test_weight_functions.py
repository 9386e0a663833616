import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from strohwf import (
    DomainError,
    HermiticityViolation,
    bimaterial_system,
    general_wf_transforms,
    singular_traction_space,
    singular_traction_transform,
    wf_space,
    wf_transform,
    wf_transform_matrix,
)
from strohwf.verification import numeric_wf_transform
from strohwf.weight_functions import sigma_hat_matrix

from strategies import material_pairs

XI = np.array([-7.0, -1.3, -0.2, 0.05, 0.9, 4.0])


def finite_part_transform(system, j, xi):
    """Regularized transform int_0^inf Sigma(-t) (exp(-i xi t) - 1) dt by quadrature."""
    out = np.zeros(2, dtype=np.complex128)
    for c in range(2):
        def comp(t):
            return singular_traction_space(system, j, -t)[c]

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            head, _ = integrate.quad(
                lambda u: 2.0 * u * comp(u * u) * (np.exp(-1j * xi * u * u) - 1.0),
                0.0, 1.0, limit=400, complex_func=True, epsabs=1e-14, epsrel=1e-13,
            )
            cos, _ = integrate.quad(comp, 1.0, np.inf, weight="cos", wvar=abs(xi), epsabs=1e-14)
            sin, _ = integrate.quad(comp, 1.0, np.inf, weight="sin", wvar=abs(xi), epsabs=1e-14)
            const, _ = integrate.quad(comp, 1.0, np.inf, epsabs=1e-14, epsrel=1e-13, limit=400)
        out[c] = head + cos - 1j * math.copysign(1.0, xi) * sin - const
    return out


@pytest.mark.parametrize("beta", [-0.5, 0.0, 0.3])
@pytest.mark.parametrize("j", [1, 2])
@pytest.mark.parametrize("xi", [-2.0, 0.7, 9.0])
def test_singular_traction_transform_matches_quadrature(ref_system, beta, j, xi):
    system = ref_system.with_beta(beta)
    ref = finite_part_transform(system, j, xi)
    got = singular_traction_transform(system, j, xi)
    assert np.max(np.abs(got - ref)) <= 1e-9 * np.max(np.abs(ref))


def test_singular_traction_vanishes_ahead(ref_system):
    assert np.all(singular_traction_space(ref_system, 1, 0.4) == 0.0)
    assert np.all(singular_traction_space(ref_system, 2, 0.0) == 0.0)


def test_symmetric_space_wf_beta_zero_frozen(ref_system):
    system = ref_system.with_beta(0.0)
    for x in (0.3, 2.0):
        root = math.sqrt(2.0 * math.pi * x)
        assert wf_space(system, "symmetric", 1, x) == pytest.approx([0.0, 2.0 * system.h / root], abs=1e-12)
        assert wf_space(system, "symmetric", 2, x) == pytest.approx([-2.0 * system.H11 / root, 0.0], abs=1e-12)


@pytest.mark.parametrize("j", [1, 2])
def test_symmetric_space_wf_zero_behind_tip(ref_system, j):
    assert np.all(wf_space(ref_system, "symmetric", j, -1.5) == 0.0)


@pytest.mark.parametrize("kind", ["symmetric", "skew"])
@pytest.mark.parametrize("j", [1, 2])
@pytest.mark.parametrize("xi", [-3.0, 1.0])
def test_transform_of_space_wf(ref_system, kind, j, xi):
    # Independent route: integrate the space-domain forms numerically.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        num = numeric_wf_transform(ref_system, kind, j, xi)
    ref = wf_transform(ref_system, kind, j, xi)
    assert np.max(np.abs(num - ref)) <= 1e-6 * np.max(np.abs(ref))


@given(material_pairs())
def test_general_transforms_match_kernels(pair):
    system = bimaterial_system(*pair)
    sig = sigma_hat_matrix(system, XI)
    sym = wf_transform_matrix(system, "symmetric", XI)
    skew = wf_transform_matrix(system, "skew", XI)
    for k, xi in enumerate(XI):
        gs, ga = general_wf_transforms(system.Y1, system.Y2, sig[k], xi)
        assert np.max(np.abs(gs - sym[k])) <= 1e-11 * np.max(np.abs(sym[k]))
        assert np.max(np.abs(ga - skew[k])) <= 1e-11 * np.max(np.abs(skew[k]))


@given(material_pairs())
def test_skew_decomposition_matches_direct(pair):
    system = bimaterial_system(*pair)
    direct = wf_transform_matrix(system, "skew", XI)
    dec = wf_transform_matrix(system, "skew", XI, method="decomposition")
    assert np.max(np.abs(direct - dec)) <= 1e-10 * np.max(np.abs(direct))


@given(material_pairs(), st.floats(0.01, 50.0))
def test_real_space_functions_give_hermitian_transforms(pair, xi):
    system = bimaterial_system(*pair)
    for kind in ("symmetric", "skew"):
        pos, neg = wf_transform_matrix(system, kind, [xi, -xi])
        assert np.max(np.abs(neg - pos.conj())) <= 1e-12 * np.max(np.abs(pos))


@given(st.floats(0.01, 100.0), st.sampled_from([1.0, -1.0]))
def test_singular_traction_homogeneity_beta_zero(xi, sign):
    # Without oscillation Sigma_hat is homogeneous of degree 1/2.
    from strohwf import reference_pair

    system = bimaterial_system(*reference_pair()).with_beta(0.0)
    a = sigma_hat_matrix(system, sign * xi)
    b = sigma_hat_matrix(system, 4.0 * sign * xi)
    assert np.max(np.abs(b - 2.0 * a)) <= 1e-12 * np.max(np.abs(b))


def test_hermiticity_violation(ref_system):
    bad = np.array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(HermiticityViolation):
        general_wf_transforms(bad, ref_system.Y2, np.ones(2), 1.0)


def test_zero_frequency_rejected(ref_system):
    with pytest.raises(DomainError):
        wf_transform(ref_system, "symmetric", 1, 0.0)
    with pytest.raises(DomainError):
        singular_traction_transform(ref_system, 2, 0.0)


def test_unknown_method_rejected(ref_system):
    with pytest.raises(DomainError):
        wf_transform(ref_system, "skew", 1, 1.0, method="magic")


def test_bad_mode_rejected(ref_system):
    with pytest.raises(DomainError):
        wf_space(ref_system, "symmetric", 3, 1.0)
