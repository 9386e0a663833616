import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given

from strohwf import (
    OrthotropicMaterial,
    SingularM1,
    StrohInconsistency,
    bimaterial_system,
    m1_matrix,
    stroh_data,
)
from strohwf.errors import OscillationOutOfRange
from strohwf.stroh import oscillation_index, y_closed_form

from strategies import material_pairs, materials


def test_isotropic_admittance_frozen():
    iso = OrthotropicMaterial.from_anisotropy(1.0, 1.0, -1.0 / 3.0)
    data = stroh_data(iso)
    assert np.allclose(data.Y, [[2.0, 2j / 3.0], [-2j / 3.0, 2.0]], atol=1e-15)
    assert data.A is None and data.B is None


def test_boron_admittance_frozen(ref_pair):
    y = stroh_data(ref_pair[1]).Y
    assert y[0, 0].real / 6.4 == pytest.approx(1.76797, abs=5e-6)
    assert y[0, 1] == pytest.approx(19.2j)


def test_reference_interface_constants_frozen(ref_system):
    s = ref_system
    assert s.H11 == pytest.approx(13.180479577977469, rel=1e-14)
    assert s.H22 == pytest.approx(44.65354817490767, rel=1e-14)
    assert s.H22 / s.H11 == pytest.approx(3.3878545853154542, rel=1e-14)
    assert s.delta1 == pytest.approx(-0.7169335456147312, rel=1e-13)
    assert s.delta2 == pytest.approx(-0.9164466929565954, rel=1e-13)
    assert s.gamma == pytest.approx(0.8532508946996105, rel=1e-13)
    assert s.beta == pytest.approx(0.7295913447431452, rel=1e-13)


def test_oscillation_index_frozen():
    assert oscillation_index(-0.5) == pytest.approx(0.174850, abs=1e-6)
    assert oscillation_index(0.0) == 0.0


@pytest.mark.parametrize("beta", [1.0, -1.0, 1.5])
def test_oscillation_index_out_of_range(beta):
    with pytest.raises(OscillationOutOfRange):
        oscillation_index(beta)


@given(materials())
def test_admittance_from_stroh_matrices(mat):
    # Y = i A B^-1 from the eigenvectors agrees with the closed form.
    data = stroh_data(mat)
    gap = np.max(np.abs(data.y_from_ab() - y_closed_form(mat))) / np.max(np.abs(data.Y))
    assert gap < 1e-12


@given(materials())
def test_admittance_hermitian_positive(mat):
    y = stroh_data(mat).Y
    assert np.allclose(y, y.conj().T, atol=1e-14 * np.max(np.abs(y)))
    assert np.all(np.linalg.eigvalsh(y) > 0.0)


@given(material_pairs())
def test_gamma_identity(pair):
    # Im H12 = -beta h and the sum G1 + G2 gives gamma h.
    s = bimaterial_system(*pair)
    hmat = s.Y1 + np.conj(s.Y2)
    assert -hmat[0, 1].imag / s.h == pytest.approx(s.beta, rel=1e-12, abs=1e-14)
    g = (s.Y1[0, 1] - np.conj(s.Y2[0, 1])).imag
    assert g / s.h == pytest.approx(s.gamma, rel=1e-12, abs=1e-14)


@given(material_pairs())
def test_swap_antisymmetry(pair):
    s = bimaterial_system(*pair)
    t = s.swapped()
    assert t.beta == pytest.approx(-s.beta, abs=1e-13)
    assert t.epsilon == pytest.approx(-s.epsilon, abs=1e-13)
    assert t.delta1 == pytest.approx(-s.delta1, abs=1e-13)
    assert t.delta2 == pytest.approx(-s.delta2, abs=1e-13)
    assert t.gamma == pytest.approx(s.gamma, rel=1e-13)


@given(material_pairs())
def test_m1_invertible(pair):
    m1 = m1_matrix(bimaterial_system(*pair))
    assert abs(np.linalg.det(m1)) > 0.0


@given(material_pairs())
def test_m1_columns_balanced(pair):
    # e0^4 = (1 - beta)/(1 + beta) makes both columns equally large.
    m1 = m1_matrix(bimaterial_system(*pair))
    assert np.linalg.norm(m1[:, 0]) == pytest.approx(np.linalg.norm(m1[:, 1]), rel=1e-12)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_m1_singular_detected(ref_system):
    with pytest.raises(SingularM1):
        m1_matrix(replace(ref_system, H11=float("nan")))


def test_with_beta_keeps_material_constants(ref_system):
    s = ref_system.with_beta(-0.25)
    assert s.beta == -0.25
    assert s.beta_material == ref_system.beta_material
    assert (s.H11, s.delta2, s.gamma) == (ref_system.H11, ref_system.delta2, ref_system.gamma)
    assert s.epsilon == pytest.approx(oscillation_index(-0.25))
    assert s.e0 == pytest.approx(math.exp(s.epsilon * math.pi / 2))


def test_stroh_inconsistency_is_error_type():
    assert issubclass(StrohInconsistency, Exception)
