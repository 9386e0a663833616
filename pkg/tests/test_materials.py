import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strohwf import (
    DefinitenessViolation,
    DegenerateEigenproblem,
    OrthotropicMaterial,
    qrt_eigensystem,
    stroh_eigenvalues,
    validate_material,
)
from strohwf.materials import quartic_residual, stroh_matrices_qrt

from strategies import materials


def test_aluminium_roots_frozen(ref_pair):
    eig = stroh_eigenvalues(ref_pair[0])
    assert eig.mu1 == pytest.approx(0.36055512754639896 + 0.9327379053088815j, abs=1e-15)
    assert eig.mu2 == pytest.approx(-0.36055512754639896 + 0.9327379053088815j, abs=1e-15)
    assert not eig.degenerate


def test_boron_roots_frozen(ref_pair):
    eig = stroh_eigenvalues(ref_pair[1])
    assert eig.mu1 == pytest.approx(6.061806775515216j, abs=1e-14)
    assert eig.mu2 == pytest.approx(0.6238295314050817j, abs=1e-15)


def test_reference_anisotropy(ref_pair):
    al, bo = ref_pair
    assert (al.lam, al.rho, al.theta, al.scale) == pytest.approx((1.0, 0.74, 0.5, 1.0))
    assert (bo.lam, bo.rho, bo.theta, bo.scale) == pytest.approx((1 / 14.3, 4.91, 2.0, 6.4))
    assert bo.strict is False


def test_isotropic_is_degenerate():
    iso = OrthotropicMaterial.from_anisotropy(1.0, 1.0, -1.0 / 3.0)
    eig = stroh_eigenvalues(iso)
    assert eig.degenerate
    assert eig.mu1 == eig.mu2 == pytest.approx(1j)


def test_degenerate_scaled_root():
    mat = OrthotropicMaterial.from_anisotropy(16.0, 1.0, 0.0)
    assert stroh_eigenvalues(mat).mu1 == pytest.approx(0.5j)


@given(materials())
def test_roots_solve_quartic(mat):
    eig = stroh_eigenvalues(mat)
    for mu in (eig.mu1, eig.mu2):
        assert mu.imag > 0.0
        assert quartic_residual(mat, mu) < 1e-12


@given(materials())
def test_roots_ordered(mat):
    eig = stroh_eigenvalues(mat)
    if mat.rho > 1.0:
        assert eig.mu1.imag > eig.mu2.imag
    else:
        assert eig.mu1.imag == pytest.approx(eig.mu2.imag)
        assert eig.mu1.real > 0.0 > eig.mu2.real


@given(materials())
def test_qrt_eigensystem_matches_closed_form(mat):
    # Numerical linearization is an independent route to the same roots.
    eig = stroh_eigenvalues(mat)
    pairs = qrt_eigensystem(mat)
    q, r, t = stroh_matrices_qrt(mat)
    for (mu, a), ref in zip(pairs, (eig.mu1, eig.mu2)):
        assert abs(mu - ref) <= 1e-9 * abs(ref)
        res = (q + (r + r.T) * mu + t * mu * mu) @ a
        assert np.max(np.abs(res)) <= 1e-9 * np.max(np.abs(q))


@given(materials())
def test_anisotropy_roundtrip(mat):
    back = OrthotropicMaterial.from_anisotropy(mat.lam, mat.rho, mat.theta, mat.scale)
    for x, y in zip((mat.s11, mat.s12, mat.s22, mat.s66), (back.s11, back.s12, back.s22, back.s66)):
        assert x == pytest.approx(y, rel=1e-12, abs=1e-12 * mat.scale)


@given(materials())
def test_stiffness_inverts_compliance(mat):
    c11, c12, c22, c66 = mat.stiffness()
    s = np.array([[mat.s11, mat.s12], [mat.s12, mat.s22]])
    c = np.array([[c11, c12], [c12, c22]])
    assert np.allclose(s @ c, np.eye(2), atol=1e-10)
    assert c66 * mat.s66 == pytest.approx(1.0)


def test_qrt_degenerate_raises_with_root():
    iso = OrthotropicMaterial.from_anisotropy(1.0, 1.0, -1.0 / 3.0)
    with pytest.raises(DegenerateEigenproblem) as info:
        qrt_eigensystem(iso)
    assert info.value.eigenvalues[0] == pytest.approx(1j, abs=1e-6)


@pytest.mark.parametrize(
    "consts",
    [
        (-1.0, 0.0, 1.0, 1.0),
        (1.0, 0.0, 0.0, 1.0),
        (1.0, 0.0, 1.0, -0.5),
        (1.0, 2.0, 1.0, 1.0),
        (float("nan"), 0.0, 1.0, 1.0),
    ],
)
def test_strict_validation_rejects(consts):
    with pytest.raises(DefinitenessViolation):
        validate_material(*consts)


def test_relaxed_validation_accepts_non_pd_reference(ref_pair):
    bo = ref_pair[1]
    with pytest.raises(DefinitenessViolation):
        validate_material(bo.s11, bo.s12, bo.s22, bo.s66)
    assert validate_material(bo.s11, bo.s12, bo.s22, bo.s66, strict=False).rho == pytest.approx(4.91)


def test_relaxed_validation_still_requires_rho_above_minus_one():
    with pytest.raises(DefinitenessViolation):
        validate_material(1.0, 0.0, 1.0, -2.5, strict=False)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        validate_material(0.0, 0.0, 1.0, 1.0)


@given(st.floats(0.05, 20.0), st.floats(-0.9, 6.0))
def test_anisotropy_params(lam, rho):
    mat = OrthotropicMaterial.from_anisotropy(lam, rho, min(0.0, rho - 0.05), 1.0, strict=False)
    ap = mat.anisotropy
    assert ap.n == pytest.approx(math.sqrt((1 + rho) / 2))
    assert ap.m == pytest.approx(math.sqrt(abs(1 - rho) / 2))
