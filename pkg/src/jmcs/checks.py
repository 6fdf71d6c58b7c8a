"""Check registries for the harmonic and Morse verification suites.

Each check returns the worst (target, computed) pair it found; entry order is
fixed by the registry, never by completion order.
"""

from __future__ import annotations

import math
import time
from typing import Callable

import numpy as np

from . import harmonic as ho
from . import jmatrix, morse
from .config import RunConfig
from .quadrature import QuadratureSpec
from .report import CheckResult, VerificationReport

Pair = tuple[complex, complex]


def _worst(target: np.ndarray, computed: np.ndarray) -> Pair:
    target = np.asarray(target, dtype=complex)
    computed = np.asarray(computed, dtype=complex)
    idx = np.unravel_index(np.argmax(np.abs(computed - target)), target.shape)
    return complex(target[idx]), complex(computed[idx])


def _harmonic_band(z: complex, omega: float, n: int) -> np.ndarray:
    return jmatrix.finite_section(ho.tridiagonal_rep(z, ho.HarmonicParams(omega), n), n)


def harmonic_checks(cfg: RunConfig) -> list[tuple[str, str, float, Callable[[], Pair]]]:
    z = cfg.resolved_z()
    p = ho.HarmonicParams(cfg.omega)
    m_max = 8 if cfg.m_max is None else cfg.m_max
    tr = cfg.truncations
    xi_grid = np.linspace(-4.0, 4.0, 161)

    def orthonormality():
        g = ho.gram_matrix(z, p, m_max)
        return _worst(np.eye(m_max + 1), g)

    def tridiagonality():
        h = ho.hamiltonian_matrix(z, p, m_max)
        return _worst(_harmonic_band(z, cfg.omega, m_max + 1), h)

    def coefficient_rows():
        c = ho.coefficient_matrix(z, p, tr["coefficient_rows"], tr["coefficient_terms"])
        return _worst(np.eye(c.shape[0]), c @ c.conj().T)

    def coefficient_columns():
        c = ho.coefficient_matrix(z, p, tr["coefficient_rows"], tr["coefficient_terms"])
        cols = min(20, c.shape[0] // 2)
        sub = c[:, :cols]
        return _worst(np.eye(cols), sub.T @ sub.conj())

    def derivative_identity():
        worst = (0j, 0j)
        gap = -1.0
        for m in range(m_max + 1):
            lab = ho.GCSLabel(z, m, p)
            rhs = ho.gcs_phi_derivative_identity(lab, xi_grid)
            lhs = ho.gcs_phi_derivative(lab, xi_grid)
            scale = np.max(np.abs(rhs))
            rel = np.abs(lhs - rhs) / scale
            k = int(np.argmax(rel))
            if rel[k] > gap:
                gap = rel[k]
                worst = (complex(rhs[k] / scale), complex(lhs[k] / scale))
        return worst

    def charlier_connection():
        rep = ho.tridiagonal_rep(z, p, 8)
        s = np.arange(11)
        rec = jmatrix.recursion_polynomials(rep, s * cfg.omega, 7)
        closed = np.array([ho.expansion_polynomial(ho.GCSLabel(z, n, p), s) for n in range(7)])
        return _worst(closed, rec)

    def ladder(which):
        def run():
            res = [ho.ladder_residuals(ho.GCSLabel(z, m, p))[which] for m in range(m_max + 1)]
            return 0j, complex(max(res))

        return run

    def mean_energy():
        mean, _ = ho.variance_check(ho.GCSLabel(z, 0, p))
        return complex(abs(z) ** 2), complex(mean)

    def variance_ratio():
        mean, second = ho.variance_check(ho.GCSLabel(z, 0, p))
        return complex(cfg.omega), complex((second - mean**2) / mean)

    def fock_series():
        gap, worst = -1.0, (0j, 0j)
        for m in range(6):
            lab = ho.GCSLabel(z, m, p)
            ser = ho.generating_series(lab, xi_grid, tr["series_terms"])
            closed = ho.generating_closed_form(lab, xi_grid)
            t, c = _worst(closed, ser)
            if abs(t - c) > gap:
                gap, worst = abs(t - c), (t, c)
        return worst

    def landau():
        pts = [complex(a, b) for a in (-1.0, 0.0, 1.0) for b in (-0.5, 0.5)]
        gap, worst = -1.0, (0j, 0j)
        for m in range(5):
            for zz in pts:
                for ww in pts:
                    rel = ho.landau_relative_gap(zz, ww, m, tr["kernel_terms"])
                    if rel > gap:
                        gap, worst = rel, (0j, complex(rel))
        return worst

    def identity_resolution():
        gram = [ho.identity_resolution(m, p, 3) for m in (0, 2)]
        return _worst(np.stack([np.eye(4)] * 2), np.stack(gram))

    def bargmann():
        zs = [complex(0.3, -0.2), complex(-0.8, 0.5), z]
        target, got = [], []
        for n in range(5):
            for zz in zs:
                got.append(ho.bargmann_transform(lambda x, n=n: ho.eigenfunction_psi(n, ho.HarmonicParams(1.0), x), zz))
                target.append(zz**n / math.sqrt(math.factorial(n)))
        return _worst(np.array(target), np.array(got))

    return [
        ("harmonic.orthonormality", "<Phi_n|Phi_m> = delta_nm", 1e-9, orthonormality),
        ("harmonic.tridiagonality", "H in the Phi_m basis: bands -z sqrt(n w), |z|^2 + n w, -z* sqrt((n+1) w)", 1e-8, tridiagonality),
        ("harmonic.coefficient_rows", "sum_s e^{-|z|^2/w} C_s^(m) conj(C_s^(n)) = delta_mn", 1e-8, coefficient_rows),
        ("harmonic.coefficient_columns", "sum_m e^{-|z|^2/w} C_s^(m) conj(C_t^(m)) = delta_st", 1e-6, coefficient_columns),
        ("harmonic.derivative_identity", "dPhi_m/dxi = (sqrt2 z* - w xi) Phi_m - sqrt(2 m w) Phi_{m-1}", 1e-9, derivative_identity),
        ("harmonic.charlier_connection", "three-term recursion p_n(s w) vs Charlier/Laguerre closed form", 1e-9, charlier_connection),
        ("harmonic.ladder_lowering", "A Phi_m = -z* Phi_m + sqrt(m w) Phi_{m-1}", 1e-9, ladder(0)),
        ("harmonic.ladder_raising", "A^dagger Phi_m = -z Phi_m + sqrt((m+1) w) Phi_{m+1}", 1e-9, ladder(1)),
        ("harmonic.mean_energy", "<Phi_0|H|Phi_0> = |z|^2", 1e-8, mean_energy),
        ("harmonic.variance_ratio", "Var(H)/<H> = w in Phi_0", 1e-8, variance_ratio),
        ("harmonic.fock_series", "Fock series of Phi_m vs its closed Hermite-Gaussian form", 1e-8, fock_series),
        ("harmonic.landau_kernel", "level-m reproducing kernel pi^-1 e^{z w*} L_m(|z-w|^2), gap / sqrt(K(z,z) K(w,w))", 1e-8, landau),
        ("harmonic.identity_resolution", "(1/(pi w)) int |Phi_m^z><Phi_m^z| dxdy = 1 on psi_0..psi_3", 1e-4, identity_resolution),
        ("harmonic.bargmann", "Bargmann transform of psi_n is z^n/sqrt(n!)", 1e-8, bargmann),
    ]


def morse_checks(cfg: RunConfig) -> list[tuple[str, str, float, Callable[[], Pair]]]:
    params = morse.MorseParams(cfg.V0, cfg.beta)
    label = morse.MorseGCSLabel(cfg.resolved_z(), params)
    gamma = label.xi_z.real if cfg.gamma is None else cfg.gamma
    m_max = 6 if cfg.m_max is None else cfg.m_max
    n_max = 4 if cfg.n_max is None else cfg.n_max
    tr = cfg.truncations

    def band(n):
        out = np.zeros((n, n), dtype=complex)
        for k in range(n):
            _, _, a, b = morse.morse_tridiag(label, k)
            out[k, k] = a
            if k + 1 < n:
                out[k, k + 1] = b
                out[k + 1, k] = np.conj(b)
        return out

    def orthonormality():
        return _worst(np.eye(m_max + 1), morse.morse_gram_matrix(label, m_max))

    def tridiagonality():
        return _worst(band(m_max + 1), morse.morse_hamiltonian_matrix(label, m_max))

    def hermitian_symmetry():
        h = morse.morse_hamiltonian_matrix(label, m_max)
        return _worst(np.conj(h.T), h)

    def positivity():
        h = morse.morse_hamiltonian_matrix(label, m_max)
        diag = np.real(np.diag(h))
        return 0j, complex(max(0.0, -float(diag.min())))

    def closure():
        c = morse.spectral_closure(label, n_max)
        return _worst(np.eye(n_max + 1), c)

    def total_mass():
        data = morse.spectral_data(label).as_spectral_data(0)
        mass = jmatrix.closure_check(data, lambda n, e: np.ones_like(np.asarray(e, dtype=complex)), 0, 0,
                                     QuadratureSpec(1e-12, 1e-12, 4000, data.radius))
        return 1.0 + 0j, mass

    def glauber_eigen():
        return 0j, complex(morse.glauber_residual(label, gamma))

    def glauber_norm():
        closed = morse.glauber_norm_closed(label, gamma)
        series = morse.glauber_norm_series(label, gamma, tr["glauber_terms"])
        return 1.0 + 0j, complex(series / closed)

    def glauber_series():
        x = np.linspace(-6.0, 6.0, 241)
        return _worst(morse.glauber_cs(label, gamma, x), morse.glauber_cs_series(label, gamma, x, tr["glauber_terms"]))

    def d1():
        _, d_1, _, _ = morse.morse_tridiag(label, 1)
        return complex(d_1), complex(morse.d1_quadrature(label))

    def limit_monotone():
        rows = morse.harmonic_limit_study(label.z, cfg.omega, 0, [0.5, 0.25, 0.125, 0.0625])
        dist = [r[1] for r in rows]
        rise = max(b - a for a, b in zip(dist, dist[1:]))
        return 0j, complex(max(rise, 0.0))

    return [
        ("morse.orthonormality", "<phi_m|phi_n> = delta_mn", 1e-8, orthonormality),
        ("morse.tridiagonality", "H in the phi_m basis: a_n = |c_n|^2 + d_n^2, b_n = c_n d_{n+1}", 1e-6, tridiagonality),
        ("morse.hermitian_symmetry", "H[n,m] = conj(H[m,n])", 1e-6, hermitian_symmetry),
        ("morse.positivity", "<phi_n|H|phi_n> >= 0 for H = A^dagger A", 1e-10, positivity),
        ("morse.spectral_closure", "sum_s Omega_s p_n p_m* + int Omega(e) p_n p_m* de = delta_nm", 1e-6, closure),
        ("morse.total_mass", "sum_s Omega_s + int Omega(e) de = 1", 1e-6, total_mass),
        ("morse.glauber_eigenrelation", "||A|z) - z|z)|| / |||z)||", 1e-7, glauber_eigen),
        ("morse.glauber_norm", "closed-form 1/Lambda_0^2 vs truncated sum of |Q_n|^2 (ratio)", 1e-7, glauber_norm),
        ("morse.glauber_series", "Lambda_0 sum Q_n g_n vs closed form C y^{sqrt2 z/beta + D} e^{-y/2}", 1e-6, glauber_series),
        ("morse.d1", "d_1 = 2 (int (W - Re z)^2 |phi_0|^2)^{1/2} = beta sqrt(Re xi_z + 1/2)", 1e-8, d1),
        ("morse.limit_monotonicity", "phase-aligned distance to Phi_0^{-z*} decreases along beta = 1/2^k", 1e-12, limit_monotone),
    ]


def run_checks(cfg: RunConfig) -> VerificationReport:
    registry = harmonic_checks(cfg) if cfg.model == "harmonic" else morse_checks(cfg)
    start = time.perf_counter()
    entries = []
    for check_id, identity, tol, fn in registry:
        note = ""
        try:
            target, computed = fn()
        except (ArithmeticError, ValueError, RuntimeError) as exc:
            target, computed = 0j, complex(math.nan, math.nan)
            note = f"numerical failure: {exc}"
        entries.append(CheckResult(check_id, identity, target, computed, cfg.tolerance(check_id, tol), note))
    return VerificationReport(entries, time.perf_counter() - start)
