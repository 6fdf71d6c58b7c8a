"""Morse oscillator: bound states, Glauber-type coherent states, generalized
coherent states phi_m^{z,beta,D}, their spectral measure and the harmonic limit.

Conventions: hbar = mass = 1, y = K exp(-beta x) with K = 2D + 1 = sqrt(8 V0)/beta,
and the Hamiltonian shifted to zero ground energy,

    H = -1/2 d^2/dx^2 + V0 (e^{-2 beta x} - 2 e^{-beta x}) + beta^2 D^2 / 2 = A^dagger A,
    A = -(1/sqrt 2) d/dx + W,  W = beta (y - 2D) / (2 sqrt 2).

All wavefunctions here have the shape N y^p e^{-y/2} L_m^{(alpha)}(y); they are
evaluated with the normalization, power and exponential combined in log space
so that depths D of several hundred do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

from . import harmonic, specfun
from .jmatrix import SpectralData, TridiagonalRep, closure_check
from .quadrature import QuadratureSpec, integrate_interval

__all__ = [
    "MorseParams",
    "MorseGCSLabel",
    "MorseSpectralData",
    "make_params",
    "params_from_depth",
    "potential",
    "bound_energy",
    "bound_state",
    "apply_hamiltonian_bound",
    "basis_g",
    "basis_g_coefficients",
    "glauber_q",
    "glauber_norm_closed",
    "glauber_norm_series",
    "glauber_coefficients",
    "glauber_cs",
    "glauber_cs_series",
    "gcs_phi_morse",
    "apply_lowering",
    "apply_hamiltonian",
    "morse_tridiag",
    "tridiagonal_rep",
    "x_window",
    "morse_gram_matrix",
    "morse_hamiltonian_matrix",
    "morse_matrix_element_quadrature",
    "glauber_residual",
    "d1_quadrature",
    "p_at_zero",
    "dual_hahn_q",
    "dual_hahn_p",
    "dual_hahn_p_level",
    "spectral_data",
    "spectral_closure",
    "limit_params",
    "harmonic_limit_point",
    "harmonic_limit_study",
]


@dataclass(frozen=True)
class MorseParams:
    V0: float
    beta: float

    def __post_init__(self) -> None:
        if not self.V0 > 0 or not self.beta > 0:
            raise ValueError("V0 and beta must be positive")
        if not self.D > 0:
            raise ValueError(f"depth parameter D = {self.D:.6g} must be positive")

    @property
    def D(self) -> float:
        return math.sqrt(2.0 * self.V0) / self.beta - 0.5

    @property
    def K(self) -> float:
        return math.sqrt(8.0 * self.V0) / self.beta

    @property
    def n_bound(self) -> int:
        return int(math.floor(self.D)) + 1

    @property
    def e_min(self) -> float:
        return 0.5 * self.beta**2 * self.D**2

    def y(self, x):
        return self.K * np.exp(-self.beta * np.asarray(x, dtype=float))

    def log_y(self, x):
        return math.log(self.K) - self.beta * np.asarray(x, dtype=float)


def make_params(V0: float, beta: float) -> MorseParams:
    return MorseParams(float(V0), float(beta))


def params_from_depth(D: float, beta: float) -> MorseParams:
    """Parameters with the given D, i.e. V0 = beta^2 (2D + 1)^2 / 8."""
    return MorseParams(beta**2 * (2.0 * D + 1.0) ** 2 / 8.0, beta)


@dataclass(frozen=True)
class MorseGCSLabel:
    z: complex
    params: MorseParams

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", complex(self.z))
        if not self.xi_z.real > -0.5:
            raise ValueError("label not normalizable: need Re z + beta D / sqrt(2) > 0")

    @property
    def w0(self) -> complex:
        """sqrt(2) z / beta."""
        return math.sqrt(2.0) * self.z / self.params.beta

    @property
    def xi_z(self) -> complex:
        return self.params.D + self.w0 - 0.5

    @property
    def alpha(self) -> float:
        """Laguerre order 2 Re xi_z of the phi_m family."""
        return 2.0 * self.xi_z.real


# Functions of the form N y^p e^{-y/2} L_m^{(alpha)}(y); log_norm may be complex.


def _lag(m: int, alpha: float, y):
    if m < 0:
        return np.zeros_like(y)
    return specfun.laguerre(m, alpha, y)


def _lag_form(params: MorseParams, log_norm, p, m: int, alpha: float, x, order: int = 0):
    """Value (order 0), d/dx (order 1) or d^2/dx^2 (order 2) of N y^p e^{-y/2} L_m^{(alpha)}(y)."""
    x = np.asarray(x, dtype=float)
    ly = params.log_y(x)
    y = np.exp(ly)
    env = np.exp(log_norm + p * ly - 0.5 * y)
    lag = _lag(m, alpha, y)
    if order == 0:
        return env * lag
    dlag = -_lag(m - 1, alpha + 1.0, y)
    beta = params.beta
    if order == 1:
        return -beta * env * ((p - 0.5 * y) * lag + y * dlag)
    d2lag = _lag(m - 2, alpha + 2.0, y)
    inner_ = ((p - 0.5 * y) ** 2 - 0.5 * y) * lag + y * (1.0 + 2.0 * p - y) * dlag + y * y * d2lag
    return beta**2 * env * inner_


def potential(params: MorseParams, x):
    """V0 (e^{-2 beta x} - 2 e^{-beta x}) + beta^2 D^2 / 2."""
    e = np.exp(-params.beta * np.asarray(x, dtype=float))
    return params.V0 * (e * e - 2.0 * e) + params.e_min


def _potential_y(params: MorseParams, x):
    y = params.y(x)
    return params.beta**2 / 8.0 * (y * y - 2.0 * params.K * y + 4.0 * params.D**2)


def bound_energy(params: MorseParams, mu: int) -> float:
    return 0.5 * params.beta**2 * mu * (2.0 * params.D - mu)


def _bound_form(params: MorseParams, mu: int):
    if mu < 0 or mu >= params.n_bound or not 2.0 * params.D - 2.0 * mu > 0:
        raise IndexError(f"bound state index {mu} outside [0, {params.n_bound - 1}]")
    alpha = 2.0 * params.D - 2.0 * mu
    log_norm = 0.5 * (math.log(params.beta * alpha) + math.lgamma(mu + 1.0) - math.lgamma(2.0 * params.D - mu + 1.0))
    return log_norm, params.D - mu, alpha


def bound_state(params: MorseParams, mu: int, x):
    """Normalized bound state sqrt(beta alpha mu!/Gamma(2D-mu+1)) y^{D-mu} e^{-y/2} L_mu^{(alpha)}(y), alpha = 2D - 2mu."""
    log_norm, p, alpha = _bound_form(params, mu)
    return _lag_form(params, log_norm, p, mu, alpha, x)


def apply_hamiltonian_bound(params: MorseParams, mu: int, x):
    log_norm, p, alpha = _bound_form(params, mu)
    d2 = _lag_form(params, log_norm, p, mu, alpha, x, order=2)
    return -0.5 * d2 + _potential_y(params, x) * _lag_form(params, log_norm, p, mu, alpha, x)


def basis_g(params: MorseParams, gamma: float, n: int, x):
    """g_n = sqrt(n! beta / Gamma(n + 2 gamma + 1)) y^{gamma+1/2} e^{-y/2} L_n^{(2 gamma)}(y)."""
    if not 2.0 * gamma + 1.0 > 0:
        raise ValueError("basis_g needs 2 gamma + 1 > 0")
    log_norm = 0.5 * (math.log(params.beta) + math.lgamma(n + 1.0) - math.lgamma(n + 2.0 * gamma + 1.0))
    return _lag_form(params, log_norm, gamma + 0.5, n, 2.0 * gamma, x)


def basis_g_coefficients(params: MorseParams, gamma: float, n: int) -> tuple[float, float]:
    """(c_n, d_n) of A g_n = c_n g_n + d_n g_{n-1} in the g basis."""
    b = params.beta / math.sqrt(2.0)
    return b * (n + gamma + 0.5 - params.D), -b * math.sqrt(n * (n + 2.0 * gamma))


def glauber_q(label: MorseGCSLabel, gamma: float, n_terms: int) -> np.ndarray:
    """Q_0..Q_{n_terms-1} with Q_n = prod_{j<n} (z - c_j)/d_{j+1} in the g basis."""
    q = np.empty(n_terms, dtype=complex)
    q[0] = 1.0
    for j in range(n_terms - 1):
        c_j, _ = basis_g_coefficients(label.params, gamma, j)
        _, d_next = basis_g_coefficients(label.params, gamma, j + 1)
        if d_next == 0:
            raise ZeroDivisionError("vanishing d_{j+1}")
        q[j + 1] = q[j] * (label.z - c_j) / d_next
    return q


def _glauber_w(label: MorseGCSLabel, gamma: float) -> complex:
    return label.w0 + gamma + 0.5 + label.params.D


def glauber_norm_closed(label: MorseGCSLabel, gamma: float) -> float:
    """1/Lambda_0^2 = Gamma(2 gamma + 1) Gamma(2 Re xi_z + 1) / |Gamma(w)|^2, w = sqrt(2) z/beta + gamma + 1/2 + D."""
    w = _glauber_w(label, gamma)
    log_val = math.lgamma(2.0 * gamma + 1.0) + math.lgamma(label.alpha + 1.0) - 2.0 * float(np.real(specfun.log_gamma(w)))
    return math.exp(log_val)


def glauber_norm_series(label: MorseGCSLabel, gamma: float, n_terms: int = 400) -> float:
    return float(np.sum(np.abs(glauber_q(label, gamma, n_terms)) ** 2))


def glauber_coefficients(label: MorseGCSLabel, gamma: float, n: int) -> complex:
    """Lambda_n = Lambda_0 Q_n with Lambda_0 from the closed-form norm."""
    lam0 = 1.0 / math.sqrt(glauber_norm_closed(label, gamma))
    return complex(lam0 * glauber_q(label, gamma, n + 1)[n])


def glauber_cs(label: MorseGCSLabel, gamma: float, x):
    """Closed form C y^{sqrt(2) z/beta + D} e^{-y/2}, C = sqrt(beta / Gamma(2 Re xi_z + 1)) |Gamma(w)| / Gamma(w)."""
    w = _glauber_w(label, gamma)
    lg = complex(specfun.log_gamma(w))
    log_norm = 0.5 * (math.log(label.params.beta) - math.lgamma(label.alpha + 1.0)) - 1j * lg.imag
    return _lag_form(label.params, log_norm, label.xi_z + 0.5, 0, 0.0, x)


def glauber_cs_series(label: MorseGCSLabel, gamma: float, x, n_terms: int = 400):
    """Lambda_0 sum_{n < n_terms} Q_n g_n(x)."""
    q = glauber_q(label, gamma, n_terms) / math.sqrt(glauber_norm_closed(label, gamma))
    x = np.asarray(x, dtype=float)
    y = label.params.y(x)
    two_g = 2.0 * gamma
    # g_n through the normalized Laguerre recursion to keep terms O(1)
    log_pref = 0.5 * math.log(label.params.beta) + (gamma + 0.5) * label.params.log_y(x) - 0.5 * y
    lognorm = -0.5 * special.gammaln(two_g + 1.0)
    l_prev = np.zeros_like(y)
    l_cur = np.ones_like(y)
    total = q[0] * np.exp(lognorm) * l_cur
    for k in range(n_terms - 1):
        l_prev, l_cur = l_cur, ((2 * k + 1 + two_g - y) * l_cur - (k + two_g) * l_prev) / (k + 1)
        lognorm = 0.5 * (special.gammaln(k + 2.0) - special.gammaln(k + 2.0 + two_g))
        total = total + q[k + 1] * np.exp(lognorm) * l_cur
    return np.exp(log_pref) * total


def _phi_form(label: MorseGCSLabel, m: int):
    if m < 0:
        raise ValueError("m must be nonnegative")
    alpha = label.alpha
    log_norm = 0.5 * (math.log(label.params.beta) + math.lgamma(m + 1.0) - math.lgamma(m + alpha + 1.0))
    return log_norm + (1j * math.pi if m % 2 else 0.0), label.xi_z + 0.5, alpha


def gcs_phi_morse(label: MorseGCSLabel, m: int, x):
    """phi_m = (-1)^m sqrt(beta m!/Gamma(m + 2 Re xi_z + 1)) y^{xi_z + 1/2} e^{-y/2} L_m^{(2 Re xi_z)}(y)."""
    log_norm, p, alpha = _phi_form(label, m)
    return _lag_form(label.params, log_norm, p, m, alpha, x)


def _phi_derivative(label: MorseGCSLabel, m: int, x, order: int):
    log_norm, p, alpha = _phi_form(label, m)
    return _lag_form(label.params, log_norm, p, m, alpha, x, order=order)


def apply_lowering(label: MorseGCSLabel, m: int, x):
    """(A phi_m)(x) with A = -(1/sqrt 2) d/dx + W."""
    params = label.params
    w = params.beta * (params.y(x) - 2.0 * params.D) / (2.0 * math.sqrt(2.0))
    return -_phi_derivative(label, m, x, 1) / math.sqrt(2.0) + w * gcs_phi_morse(label, m, x)


def _apply_lowering_glauber(label: MorseGCSLabel, gamma: float, x):
    w = _glauber_w(label, gamma)
    lg = complex(specfun.log_gamma(w))
    log_norm = 0.5 * (math.log(label.params.beta) - math.lgamma(label.alpha + 1.0)) - 1j * lg.imag
    params = label.params
    wx = params.beta * (params.y(x) - 2.0 * params.D) / (2.0 * math.sqrt(2.0))
    p = label.xi_z + 0.5
    d1 = _lag_form(params, log_norm, p, 0, 0.0, x, order=1)
    return -d1 / math.sqrt(2.0) + wx * _lag_form(params, log_norm, p, 0, 0.0, x)


def apply_hamiltonian(label: MorseGCSLabel, m: int, x):
    """(H phi_m)(x) from the analytic second derivative."""
    return -0.5 * _phi_derivative(label, m, x, 2) + _potential_y(label.params, x) * gcs_phi_morse(label, m, x)


def morse_tridiag(label: MorseGCSLabel, n: int) -> tuple[complex, float, float, complex]:
    """(c_n, d_n, a_n, b_n): c_n = (beta/sqrt 2)(n + sqrt(2) z/beta), d_n = (beta/sqrt 2) sqrt(n(n + 2 Re xi_z)),
    a_n = |c_n|^2 + d_n^2, b_n = c_n d_{n+1}."""
    b = label.params.beta / math.sqrt(2.0)
    c_n = b * (n + label.w0)
    d_n = b * math.sqrt(n * (n + label.alpha))
    d_next = b * math.sqrt((n + 1) * (n + 1 + label.alpha))
    return c_n, d_n, abs(c_n) ** 2 + d_n**2, c_n * d_next


def tridiagonal_rep(label: MorseGCSLabel, n: int) -> TridiagonalRep:
    rows = [morse_tridiag(label, k) for k in range(n)]
    return TridiagonalRep(a=[r[2] for r in rows], b=[r[3] for r in rows])


def x_window(label: MorseGCSLabel, m_max: int = 0) -> tuple[float, float]:
    """Interval outside of which |phi_m|^2, m <= m_max, is below roughly 1e-30 of its peak.

    Left edge: y large, decay e^{-y}. Right edge: y -> 0, decay y^{2 Re xi_z + 1}.
    """
    params = label.params
    yc = label.alpha + 1.0 + 2.0 * m_max
    y_hi = yc + 14.0 * math.sqrt(yc) + 6.0 * m_max + 60.0
    x_lo = -math.log(y_hi / params.K) / params.beta
    x_c = -math.log(yc / params.K) / params.beta
    x_hi = x_c + (70.0 + 4.0 * m_max * math.log(yc + 2.0)) / (params.beta * (label.alpha + 1.0))
    return x_lo, x_hi


def _morse_spec(abs_tol: float = 1e-13) -> QuadratureSpec:
    return QuadratureSpec(abs_tol=abs_tol, rel_tol=1e-12, max_subdivisions=8000, truncation_radius=1.0)


def morse_gram_matrix(label: MorseGCSLabel, m_max: int, qspec: QuadratureSpec | None = None) -> np.ndarray:
    """G[n, m] = <phi_n|phi_m> for n, m <= m_max by quadrature."""
    lo, hi = x_window(label, m_max)
    qspec = qspec or _morse_spec()

    def integrand(x):
        phi = np.stack([gcs_phi_morse(label, k, x) for k in range(m_max + 1)], axis=-1)
        return np.conj(phi)[:, :, None] * phi[:, None, :]

    return integrate_interval(integrand, lo, hi, qspec)


def morse_hamiltonian_matrix(label: MorseGCSLabel, m_max: int, qspec: QuadratureSpec | None = None) -> np.ndarray:
    """M[n, m] = integral phi_n conj(H phi_m); M[n, n+1] = b_n and M[n+1, n] = conj(b_n)."""
    lo, hi = x_window(label, m_max)
    qspec = qspec or _morse_spec()

    def integrand(x):
        phi = np.stack([gcs_phi_morse(label, k, x) for k in range(m_max + 1)], axis=-1)
        hphi = np.stack([apply_hamiltonian(label, k, x) for k in range(m_max + 1)], axis=-1)
        return phi[:, :, None] * np.conj(hphi)[:, None, :]

    return integrate_interval(integrand, lo, hi, qspec)


def morse_matrix_element_quadrature(label: MorseGCSLabel, n: int, m: int, qspec: QuadratureSpec | None = None) -> complex:
    lo, hi = x_window(label, max(n, m))
    qspec = qspec or _morse_spec()
    val = integrate_interval(
        lambda x: gcs_phi_morse(label, n, x) * np.conj(apply_hamiltonian(label, m, x)), lo, hi, qspec
    )
    return complex(val)


def glauber_residual(label: MorseGCSLabel, gamma: float, qspec: QuadratureSpec | None = None) -> float:
    """||A|z) - z|z)|| / |||z)||."""
    lo, hi = x_window(label, 1)
    qspec = qspec or _morse_spec()

    def integrand(x):
        cs = glauber_cs(label, gamma, x)
        res = _apply_lowering_glauber(label, gamma, x) - label.z * cs
        return np.stack([np.abs(res) ** 2, np.abs(cs) ** 2], axis=-1)

    num, den = np.real(integrate_interval(integrand, lo, hi, qspec))
    return math.sqrt(max(num, 0.0) / den)


def d1_quadrature(label: MorseGCSLabel, qspec: QuadratureSpec | None = None) -> float:
    """2 (integral (W - Re z)^2 |phi_0|^2 dx)^{1/2}."""
    params = label.params
    lo, hi = x_window(label, 1)
    qspec = qspec or _morse_spec()

    def integrand(x):
        w = params.beta * (params.y(x) - 2.0 * params.D) / (2.0 * math.sqrt(2.0))
        return (w - label.z.real) ** 2 * np.abs(gcs_phi_morse(label, 0, x)) ** 2

    return 2.0 * math.sqrt(float(np.real(integrate_interval(integrand, lo, hi, qspec))))


# Continuous dual Hahn spectral data


def p_at_zero(label: MorseGCSLabel, m: int) -> complex:
    """p_m(0) = (-1)^m (sqrt(2) z/beta)_m / sqrt(m! (2 Re xi_z + 1)_m)."""
    num = complex(specfun.pochhammer(label.w0, m))
    den = math.sqrt(math.factorial(m) * float(specfun.pochhammer(label.alpha + 1.0, m)))
    return (-1) ** m * num / den


def _varsigma(label: MorseGCSLabel, energy):
    """sigma(E) = sqrt(2E/beta^2 - D^2); imaginary below the continuum threshold."""
    s2 = 2.0 * np.asarray(energy, dtype=float) / label.params.beta**2 - label.params.D ** 2
    return np.sqrt(s2.astype(complex))


def dual_hahn_q(label: MorseGCSLabel, m: int, sigma):
    """q_m(sigma) = 3F2(-m, -D + i sigma, -D - i sigma; w0, conj(w0); 1), w0 = sqrt(2) z/beta."""
    a = -label.params.D
    sigma = np.asarray(sigma, dtype=complex)
    return specfun.f32_terminating(m, a + 1j * sigma, a - 1j * sigma, label.w0, np.conj(label.w0))


def dual_hahn_p(label: MorseGCSLabel, m: int, energy):
    """p_m(E) = p_m(0) q_m(sigma(E)) for real energies (continuum or analytic continuation below it)."""
    return p_at_zero(label, m) * dual_hahn_q(label, m, _varsigma(label, energy))


def dual_hahn_p_level(label: MorseGCSLabel, m: int, s: int) -> complex:
    """p_m at the bound level e_s; the 3F2 parameters become -2D + s and -s."""
    if not 0 <= s < label.params.n_bound:
        raise IndexError(f"level {s} outside [0, {label.params.n_bound - 1}]")
    q = specfun.f32_terminating(m, -2.0 * label.params.D + s, -float(s), label.w0, np.conj(label.w0))
    return p_at_zero(label, m) * complex(q)


def _log_poch(x, k: int) -> complex:
    """Complex log of (x)_k; the imaginary part tracks sign and phase."""
    return complex(np.sum(np.log(np.asarray(x, dtype=complex) + np.arange(k))))


@dataclass
class MorseSpectralData:
    eps_s: list[float]
    omega_s: list[float]
    label: MorseGCSLabel

    def varsigma(self, energy):
        return _varsigma(self.label, energy)

    def omega_cont(self, energy):
        """Continuum density per unit energy on [E_min, infinity)."""
        return _continuum_density(self.label, energy)

    def as_spectral_data(self, n_max: int = 8) -> SpectralData:
        lab = self.label
        beta = lab.params.beta
        # density ~ sigma^k e^{-pi sigma}; pick sigma_max so the tail is below 1e-18
        power = 2.0 * (2.0 * lab.params.D + 2.0 * lab.w0.real + 2.0 * n_max) + 4.0
        sigma_max = (power * max(math.log(power), 1.0) + 45.0) / math.pi
        radius = beta * sigma_max / math.sqrt(2.0)
        return SpectralData(
            discrete=list(zip(self.eps_s, self.omega_s)),
            density=self.omega_cont,
            e_min=lab.params.e_min,
            radius=radius,
        )


def _log_base(label: MorseGCSLabel) -> float:
    """ln(|Gamma(w0)|^2 Gamma(2 Re xi_z + 1))."""
    return 2.0 * float(np.real(specfun.log_gamma(label.w0))) + math.lgamma(label.alpha + 1.0)


def _continuum_density(label: MorseGCSLabel, energy):
    """|Gamma(a+i s) Gamma(b+i s) Gamma(c+i s) / Gamma(2 i s)|^2 / (2 pi beta^2 s |Gamma(w0)|^2 Gamma(2 Re xi_z + 1)),
    with a = -D, b = D + w0, c = conj(b), s = sigma(E)."""
    energy = np.asarray(energy, dtype=float)
    beta, D = label.params.beta, label.params.D
    s2 = 2.0 * energy / beta**2 - D**2
    out = np.zeros(energy.shape)
    ok = s2 > 0
    s = np.sqrt(s2[ok])
    b = D + label.w0
    lg = special.loggamma
    log_mod = 2.0 * np.real(lg(-D + 1j * s) + lg(b + 1j * s) + lg(np.conj(b) + 1j * s) - lg(2j * s))
    out[ok] = np.exp(log_mod - _log_base(label) - np.log(2.0 * math.pi * beta**2 * s))
    return out if out.ndim else out[()]


def _discrete_weight(label: MorseGCSLabel, s: int) -> float:
    """|Gamma(2D + w0)|^2 / (Gamma(2D) Gamma(2 Re xi_z + 1))
    (-1)^s (-2D)_s (1-D)_s |(w0)_s|^2 / ((-D)_s |(1 - 2D - w0)_s|^2 s!)."""
    D, w0 = label.params.D, label.w0
    log_val = (
        2.0 * float(np.real(specfun.log_gamma(2.0 * D + w0)))
        - math.lgamma(2.0 * D)
        - math.lgamma(label.alpha + 1.0)
        + _log_poch(-2.0 * D, s)
        + _log_poch(1.0 - D, s)
        + 2.0 * _log_poch(w0, s).real
        - _log_poch(-D, s)
        - 2.0 * _log_poch(1.0 - 2.0 * D - w0, s).real
        - math.lgamma(s + 1.0)
        + (1j * math.pi * s)
    )
    val = np.exp(log_val)
    if abs(val.imag) > 1e-10 * abs(val):
        raise ValueError("discrete weight is not real for these parameters")
    return float(val.real)


def spectral_data(label: MorseGCSLabel) -> MorseSpectralData:
    n_b = label.params.n_bound
    eps = [bound_energy(label.params, s) for s in range(n_b)]
    return MorseSpectralData(eps_s=eps, omega_s=[_discrete_weight(label, s) for s in range(n_b)], label=label)


def spectral_closure(label: MorseGCSLabel, n_max: int, qspec: QuadratureSpec | None = None) -> np.ndarray:
    """Matrix of sum_s Omega_s p_n p_m^* + integral Omega(E) p_n p_m^* dE for n, m <= n_max."""
    data = spectral_data(label)
    sd = data.as_spectral_data(n_max)
    qspec = qspec or QuadratureSpec(abs_tol=1e-11, rel_tol=1e-11, max_subdivisions=4000, truncation_radius=sd.radius)
    levels = {}

    def polys(n, energy):
        energy = np.asarray(energy, dtype=float)
        if energy.shape == (len(data.eps_s),) and np.array_equal(energy, np.asarray(data.eps_s)):
            if n not in levels:
                levels[n] = np.array([dual_hahn_p_level(label, n, s) for s in range(len(data.eps_s))])
            return levels[n]
        return dual_hahn_p(label, n, energy)

    out = np.empty((n_max + 1, n_max + 1), dtype=complex)
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            out[n, m] = closure_check(sd, polys, n, m, qspec)
    return out


# Harmonic limit: beta -> 0 with V0 beta^2 = omega^2 / 2 fixed


def limit_params(omega: float, beta: float) -> MorseParams:
    return MorseParams(omega**2 / (2.0 * beta**2), beta)


def harmonic_limit_point(z: complex, omega: float, m: int, beta: float) -> tuple[float, float]:
    """(phase-aligned L2 distance, alignment phase) between phi_m^{z,beta,D} and Phi_m^{-z*,omega}.

    min over theta of ||e^{i theta} phi_m - Phi|| = sqrt(||phi||^2 + ||Phi||^2 - 2 |<phi|Phi>|),
    attained at theta = arg <phi|Phi>.
    """
    label = MorseGCSLabel(z, limit_params(omega, beta))
    target = harmonic.GCSLabel(-np.conj(complex(z)), m, harmonic.HarmonicParams(omega))
    lo, hi = x_window(label, m)
    h_rad = (14.0 + math.sqrt(2.0 * m + 1.0)) / math.sqrt(omega)
    lo = min(lo, target.center - h_rad)
    hi = max(hi, target.center + h_rad)
    qspec = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, max_subdivisions=8000, truncation_radius=1.0)

    def integrand(x):
        f = gcs_phi_morse(label, m, x)
        g = harmonic.gcs_phi(target, x)
        return np.stack([np.conj(f) * g, np.abs(f) ** 2, np.abs(g) ** 2], axis=-1)

    ov, nf, ng = integrate_interval(integrand, lo, hi, qspec)
    dist2 = float(np.real(nf) + np.real(ng) - 2.0 * abs(ov))
    return math.sqrt(max(dist2, 0.0)), float(np.angle(ov))


def harmonic_limit_study(z: complex, omega: float, m: int, beta_path: Sequence[float]) -> list[tuple[float, float, float]]:
    """Rows (beta, distance, phase) along a decreasing beta path."""
    path = [float(b) for b in beta_path]
    if any(b2 >= b1 for b1, b2 in zip(path, path[1:])):
        raise ValueError("beta path must be strictly decreasing")
    return [(b, *harmonic_limit_point(z, omega, m, b)) for b in path]
