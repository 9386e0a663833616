import numpy as np
import pytest
from hypothesis import given, settings

from strohwf import (
    DegenerateMaterial,
    DomainError,
    OrthotropicMaterial,
    equivalence_report,
    halfplane_displacement_transform,
    ode_eigenvalues,
    stroh_eigenvalues,
)
from strohwf.appendix_oracle import LOWER, UPPER, default_xi_samples, solve_halfplane

from strategies import material_pairs, materials


def test_ode_roots_frozen(ref_pair):
    al, bo = ref_pair
    n1, n2 = ode_eigenvalues(al)
    assert n1 == pytest.approx(0.9327379053088815 + 0.36055512754639896j, abs=1e-15)
    assert n2 == pytest.approx(n1.conjugate())
    assert ode_eigenvalues(bo) == pytest.approx((6.061806775515216, 0.6238295314050817), abs=1e-14)


@given(materials())
def test_ode_roots_solve_characteristic(mat):
    lam, rho = mat.lam, mat.rho
    for nu in ode_eigenvalues(mat):
        assert nu.real > 0.0
        terms = (lam * nu**4, 2.0 * rho * np.sqrt(lam) * nu**2, 1.0)
        assert abs(terms[0] - terms[1] + terms[2]) <= 1e-12 * max(abs(t) for t in terms)


@given(materials())
def test_ode_roots_are_rotated_stroh_roots(mat):
    # The two root sets coincide as sets under nu = -i mu.
    eig = stroh_eigenvalues(mat)
    ode = sorted(ode_eigenvalues(mat), key=lambda z: (z.real, z.imag))
    rot = sorted((-1j * eig.mu1, -1j * eig.mu2), key=lambda z: (z.real, z.imag))
    assert np.allclose(ode, rot, rtol=1e-12, atol=1e-14)


def test_degenerate_rejected():
    iso = OrthotropicMaterial.from_anisotropy(1.0, 1.0, -1.0 / 3.0)
    with pytest.raises(DegenerateMaterial):
        ode_eigenvalues(iso)


@pytest.mark.parametrize("side", [UPPER, LOWER])
def test_boundary_tractions_recovered(ref_pair, side):
    mat = ref_pair[0]
    sig = np.array([0.3 - 0.2j, -1.1 + 0.5j])
    xi = 1.7
    sol = solve_halfplane(mat, side, sig, xi)
    assert sol.A1 + sol.A2 == pytest.approx(sig[1])
    s = np.sign(xi) * (1.0 if side == LOWER else -1.0)
    assert -1j * s * (sol.nu1 * sol.A1 + sol.nu2 * sol.A2) == pytest.approx(sig[0])


def test_displacement_decays_into_half_plane(ref_pair):
    mat = ref_pair[1]
    sig = np.array([1.0, 1.0])
    u0 = halfplane_displacement_transform(mat, LOWER, sig, 2.0, 0.0)
    u1 = halfplane_displacement_transform(mat, LOWER, sig, 2.0, -5.0)
    assert np.max(np.abs(u1)) < 1e-2 * np.max(np.abs(u0))


def test_wrong_half_plane_rejected(ref_pair):
    with pytest.raises(DomainError):
        halfplane_displacement_transform(ref_pair[0], UPPER, np.ones(2), 1.0, -0.1)
    with pytest.raises(DomainError):
        halfplane_displacement_transform(ref_pair[0], LOWER, np.ones(2), 0.0)


def test_reference_pair_equivalence(ref_pair):
    assert equivalence_report(*ref_pair) < 1e-12
    assert equivalence_report(*ref_pair[::-1]) < 1e-12


@settings(max_examples=40)
@given(material_pairs())
def test_equivalence_random_pairs(pair):
    assert equivalence_report(*pair, xi_samples=default_xi_samples(9)) < 1e-10
