from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jmcs import harmonic as ho
from jmcs import specfun
from jmcs.quadrature import QuadratureSpec, integrate_line

Z = 0.7 + 0.3j
P1 = ho.HarmonicParams(1.0)
XI = np.linspace(-4.0, 4.0, 33)
LINE = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=4000, truncation_radius=14.0)


def test_params_validation():
    with pytest.raises(ValueError):
        ho.HarmonicParams(0.0)
    with pytest.raises(ValueError):
        ho.GCSLabel(Z, -1)


class TestEigenfunctions:
    def test_ground_state(self):
        for w in (0.5, 2.0):
            ref = (w / math.pi) ** 0.25 * np.exp(-w * XI**2 / 2)
            assert np.allclose(ho.eigenfunction_psi(0, ho.HarmonicParams(w), XI), ref, rtol=1e-14)

    def test_normalized(self):
        for n in range(11):
            val = integrate_line(lambda x: ho.eigenfunction_psi(n, P1, x) ** 2, LINE)
            assert abs(val - 1.0) < 1e-10

    def test_energy(self):
        for w in (0.5, 1.0, 2.0):
            params = ho.HarmonicParams(w)
            for n in range(8):
                val = integrate_line(
                    lambda x: ho.eigenfunction_psi(n, params, x) * ho.apply_hamiltonian_psi(n, params, x), LINE
                )
                assert abs(val - n * w) < 1e-8


class TestPhi:
    def test_m0_is_canonical_cs(self):
        for z in (Z, -1.1 + 0.2j):
            assert np.allclose(ho.gcs_phi(ho.GCSLabel(z, 0, P1), XI), ho.canonical_cs(z, XI), rtol=0, atol=1e-15)

    def test_origin_label(self):
        # with psi_n the standard Hermite functions, Phi_m^0 = (-1)^m psi_m
        for w in (0.5, 1.0):
            params = ho.HarmonicParams(w)
            for m in range(6):
                phi = ho.gcs_phi(ho.GCSLabel(0.0, m, params), XI)
                assert np.allclose(phi.real, (-1) ** m * ho.eigenfunction_psi(m, params, XI), rtol=1e-14, atol=1e-16)
                assert np.all(phi.imag == 0)

    def test_orthonormal(self):
        for w in (0.5, 1.0, 2.0):
            gram = ho.gram_matrix(Z, ho.HarmonicParams(w), 8)
            assert np.max(np.abs(gram - np.eye(9))) < 1e-10

    def test_closed_form_against_prefactor_form(self):
        # explicit exp(-|z|^2/(2w) - z*^2/(2w) + sqrt2 z* xi - w xi^2/2) form
        w, m = 1.7, 3
        lab = ho.GCSLabel(Z, m, ho.HarmonicParams(w))
        zc = np.conj(Z)
        expo = -abs(Z) ** 2 / (2 * w) - zc**2 / (2 * w) + math.sqrt(2) * zc * XI - w * XI**2 / 2
        u = math.sqrt(w) * XI - math.sqrt(2 / w) * Z.real
        ref = (w / math.pi) ** 0.25 * (-1) ** m / math.sqrt(math.factorial(m) * 2**m) * np.exp(expo) * specfun.hermite(m, u)
        assert np.allclose(ho.gcs_phi(lab, XI), ref, rtol=1e-12, atol=1e-15)

    def test_derivative_identity(self):
        for m in range(6):
            lab = ho.GCSLabel(Z, m, ho.HarmonicParams(1.3))
            assert np.max(np.abs(ho.gcs_phi_derivative(lab, XI) - ho.gcs_phi_derivative_identity(lab, XI))) < 1e-12

    def test_derivative_finite_difference(self):
        lab = ho.GCSLabel(Z, 3, P1)
        h = 1e-5
        fd = (ho.gcs_phi(lab, XI + h) - ho.gcs_phi(lab, XI - h)) / (2 * h)
        assert np.max(np.abs(fd - ho.gcs_phi_derivative(lab, XI))) < 1e-8

    def test_hamiltonian_finite_difference(self):
        lab = ho.GCSLabel(Z, 2, ho.HarmonicParams(0.8))
        h = 1e-4
        phi = lambda x: ho.gcs_phi(lab, x)  # noqa: E731
        d2 = (phi(XI + h) - 2 * phi(XI) + phi(XI - h)) / h**2
        ref = -0.5 * d2 + (0.5 * 0.64 * XI**2 - 0.4) * phi(XI)
        assert np.max(np.abs(ref - ho.apply_hamiltonian(lab, XI))) < 1e-6

    def test_perelomov_translate(self):
        for m in range(5):
            for w in (0.6, 1.0):
                params = ho.HarmonicParams(w)
                lab = ho.GCSLabel(Z, m, params)
                assert np.max(np.abs(ho.perelomov_cs(Z.real, Z.imag, m, params, XI) - ho.gcs_phi(lab, XI))) < 1e-14


class TestCoefficients:
    def test_edge_forms(self):
        w = 1.5
        params = ho.HarmonicParams(w)
        for s in range(6):
            c = ho.expansion_coefficient(ho.GCSLabel(Z, 0, params), s)
            assert abs(c - (Z / math.sqrt(w)) ** s / math.sqrt(math.factorial(s))) < 1e-14
        for m in range(6):
            c = ho.expansion_coefficient(ho.GCSLabel(Z, m, params), 0)
            assert abs(c - (np.conj(Z) / math.sqrt(w)) ** m / math.sqrt(math.factorial(m))) < 1e-14

    def test_origin(self):
        assert ho.expansion_coefficient(ho.GCSLabel(0.0, 2, P1), 2) == 1
        assert ho.expansion_coefficient(ho.GCSLabel(0.0, 2, P1), 3) == 0

    def test_continuous_at_origin(self):
        for m in range(5):
            for s in range(6):
                at0 = ho.expansion_coefficient(ho.GCSLabel(0.0, m, P1), s)
                near = ho.expansion_coefficient(ho.GCSLabel(1e-9 * (1 + 1j), m, P1), s)
                assert abs(at0 - near) < 1e-8

    def test_kernel_with_origin_argument(self):
        for m in range(5):
            assert ho.landau_relative_gap(0.0, 1.0 + 1.1j, m, 300) < 1e-8

    def test_fock_projection(self):
        # <psi_s|Phi_m> = e^{-|z|^2/(2 omega)} conj(C_s^{(m)})
        params = ho.HarmonicParams(1.2)
        for m in range(4):
            lab = ho.GCSLabel(Z, m, params)
            for s in range(8):
                val = integrate_line(lambda x: ho.eigenfunction_psi(s, params, x) * ho.gcs_phi(lab, x), LINE)
                ref = math.exp(-abs(Z) ** 2 / 2.4) * np.conj(ho.expansion_coefficient(lab, s))
                assert abs(val - ref) < 1e-10

    def test_rows_orthonormal(self):
        for r in (0.5, 1.0, 2.0):
            z = r * np.exp(0.7j)
            mat = ho.coefficient_matrix(z, P1, 7, 200)
            assert np.max(np.abs(mat @ mat.conj().T - np.eye(7))) < 1e-10

    @given(st.floats(0.05, 2.0), st.floats(0.0, 2 * math.pi), st.floats(0.5, 2.0))
    @settings(max_examples=25, deadline=None)
    def test_rows_orthonormal_property(self, r, th, w):
        mat = ho.coefficient_matrix(r * np.exp(1j * th), ho.HarmonicParams(w), 5, 200)
        assert np.max(np.abs(mat @ mat.conj().T - np.eye(5))) < 1e-10

    def test_polynomial_matches_charlier(self):
        # p_n(s omega) = (-1)^n sqrt(n!) omega^{n/2} z^{-n} L_n^{(s-n)}(t) with the Charlier link
        # C_n(s; t) = (-t)^{-n} n! L_n^{(s-n)}(t)
        z, w = 0.8 + 0.4j, 1.0
        t = abs(z) ** 2 / w
        s = np.arange(12, dtype=float)
        for n in range(7):
            p = ho.expansion_polynomial(ho.GCSLabel(z, n, ho.HarmonicParams(w)), s)
            via = (-1) ** n * math.sqrt(math.factorial(n)) * z ** (-n) * (-t) ** n / math.factorial(n) * specfun.charlier(n, s, t)
            assert np.max(np.abs(p - via)) < 1e-10

    def test_coefficient_is_polynomial_times_weight(self):
        # |C_s^{(m)}| = sqrt(t^s / s!) |p_m(s omega)|
        z = 0.8 + 0.4j
        t = abs(z) ** 2
        for m in range(5):
            lab = ho.GCSLabel(z, m, P1)
            for s in range(10):
                lhs = abs(ho.expansion_coefficient(lab, s))
                rhs = math.sqrt(t**s / math.factorial(s)) * abs(complex(ho.expansion_polynomial(lab, s)))
                assert abs(lhs - rhs) < 1e-12


class TestMatrixElements:
    def test_bands(self):
        h = ho.hamiltonian_matrix(Z, P1, 8)
        n = np.arange(9)
        ref = np.diag(abs(Z) ** 2 + n * 1.0).astype(complex)
        ref[n[:-1], n[:-1] + 1] = -np.conj(Z) * np.sqrt(n[:-1] + 1.0)
        ref[n[:-1] + 1, n[:-1]] = -Z * np.sqrt(n[:-1] + 1.0)
        assert np.max(np.abs(h - ref)) < 1e-8

    def test_single_entries(self):
        assert abs(ho.matrix_element_quadrature(0, 0, Z, P1) - abs(Z) ** 2) < 1e-10
        assert abs(ho.matrix_element_quadrature(0, 1, Z, P1) + np.conj(Z)) < 1e-10
        assert abs(ho.matrix_element_quadrature(0, 3, Z, P1)) < 1e-10

    def test_tridiagonal_rep(self):
        rep = ho.tridiagonal_rep(Z, ho.HarmonicParams(2.0), 4)
        assert np.allclose(rep.a, abs(Z) ** 2 + 2.0 * np.arange(4))
        assert np.allclose(rep.b, -np.conj(Z) * np.sqrt(2.0 * np.arange(1, 5)))


class TestLadder:
    def test_residuals(self):
        for m in range(5):
            low, high = ho.ladder_residuals(ho.GCSLabel(Z, m, ho.HarmonicParams(1.4)))
            assert low < 1e-9 and high < 1e-9

    @given(st.floats(-2, 2), st.floats(-2, 2), st.integers(0, 6), st.floats(0.3, 3.0))
    @settings(max_examples=20, deadline=None)
    def test_residuals_property(self, x, y, m, w):
        low, high = ho.ladder_residuals(ho.GCSLabel(complex(x, y), m, ho.HarmonicParams(w)))
        assert low < 1e-9 and high < 1e-9

    def test_lowering_on_ground_state(self):
        # A Phi_0 = -z* Phi_0
        lab = ho.GCSLabel(Z, 0, P1)
        assert np.max(np.abs(ho.apply_lowering(lab, XI) + np.conj(Z) * ho.gcs_phi(lab, XI))) < 1e-14

    def test_variance(self):
        z, w = 1 + 0.5j, 2.0
        mean, second = ho.variance_check(ho.GCSLabel(z, 0, ho.HarmonicParams(w)))
        t = abs(z) ** 2
        assert abs(mean - t) < 1e-10
        assert abs(second - t * (w + t)) < 1e-9
        assert abs((second - mean**2) / mean - w) < 1e-8

    def test_variance_requires_m0(self):
        with pytest.raises(ValueError):
            ho.variance_check(ho.GCSLabel(Z, 1, P1))


class TestCanonical:
    def test_origin(self):
        assert np.allclose(ho.canonical_cs(0.0, XI), math.pi**-0.25 * np.exp(-XI**2 / 2), rtol=1e-15)

    def test_norm_and_fock(self):
        z = -0.4 + 1.1j
        assert abs(integrate_line(lambda x: np.abs(ho.canonical_cs(z, x)) ** 2, LINE) - 1) < 1e-10
        for n in range(11):
            val = integrate_line(lambda x: ho.eigenfunction_psi(n, P1, x) * ho.canonical_cs(z, x), LINE)
            ref = math.exp(-abs(z) ** 2 / 2) * np.conj(z**n / math.sqrt(math.factorial(n)))
            assert abs(val - ref) < 1e-9

    def test_bargmann(self):
        for z in (0.0, 0.5 - 0.5j, -1.0 + 0.8j, 1.5j):
            assert abs(ho.bargmann_transform(lambda x: ho.eigenfunction_psi(0, P1, x), z) - 1) < 1e-8
            for n in range(7):
                val = ho.bargmann_transform(lambda x: ho.eigenfunction_psi(n, P1, x), z)
                assert abs(val - z**n / math.sqrt(math.factorial(n))) < 1e-8

    def test_bargmann_linear(self):
        z = 0.3 + 0.9j
        combo = lambda x: 2.0 * ho.eigenfunction_psi(0, P1, x) - 1j * ho.eigenfunction_psi(1, P1, x)  # noqa: E731
        assert abs(ho.bargmann_transform(combo, z) - (2.0 - 1j * z)) < 1e-8


class TestKernel:
    def test_m0_closed(self):
        z, w = 0.4 + 0.1j, -0.3 + 0.7j
        _, closed = ho.landau_kernel(z, w, 0, 10)
        assert abs(closed - np.exp(z * np.conj(w)) / math.pi) < 1e-15

    def test_diagonal(self):
        for m in range(4):
            _, closed = ho.landau_kernel(Z, Z, m, 10)
            assert abs(closed - math.exp(abs(Z) ** 2) / math.pi) < 1e-14

    def test_grid(self):
        pts = [complex(x, y) for x in (-1.0, 0.0, 1.0) for y in (-0.5, 0.5)]
        for m in range(5):
            for z in pts:
                for w in pts:
                    assert ho.landau_relative_gap(z, w, m, 300) < 1e-8

    def test_gap_decreases(self):
        z, w = 1.5, -1.5j
        gaps = [ho.landau_relative_gap(z, w, 2, n) for n in (5, 10, 20)]
        assert gaps[0] > gaps[1] > gaps[2]


class TestGeneratingSeries:
    def test_m0(self):
        xi = np.linspace(-4, 4, 41)
        for z in (1.5, -0.9 + 1.1j):
            assert ho.generating_sum_gap(ho.GCSLabel(z, 0, P1), xi, 150) < 1e-9

    def test_m_up_to_5(self):
        xi = np.linspace(-4, 4, 41)
        for m in range(6):
            assert ho.generating_sum_gap(ho.GCSLabel(1.2 - 0.6j, m, P1), xi, 150) < 1e-8

    def test_closed_form_is_scaled_phi(self):
        # the closed form is a constant multiple of Phi_m
        lab = ho.GCSLabel(Z, 3, P1)
        xi = np.linspace(-2, 2, 9)
        ratio = ho.generating_closed_form(lab, xi) / ho.gcs_phi(lab, xi)
        assert np.max(np.abs(ratio - ratio[0])) < 1e-12 * abs(ratio[0])


def test_identity_resolution_m_independence():
    qspec = QuadratureSpec(abs_tol=1e-5, rel_tol=1e-5, max_subdivisions=200, truncation_radius=6.0)
    gram = ho.identity_resolution(2, P1, 1, qspec)
    assert np.max(np.abs(gram - np.eye(2))) < 1e-4
