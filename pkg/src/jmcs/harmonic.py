"""Generalized coherent states of the harmonic oscillator.

Units hbar = mass = 1. The Hamiltonian with zero ground energy is

    H = -1/2 d^2/dxi^2 + omega^2 xi^2 / 2 - omega / 2 = A^dagger A,
    A = -(d/dxi + omega xi) / sqrt(2),  A^dagger = (d/dxi - omega xi) / sqrt(2).

For a phase-space label z = x + iy the states

    Phi_m^z(xi) = (omega/pi)^{1/4} (-1)^m / sqrt(m! 2^m)
                  exp(-|z|^2/(2 omega) - z*^2/(2 omega) + sqrt(2) z* xi - omega xi^2/2)
                  H_m(sqrt(omega) xi - sqrt(2/omega) Re z)

form an orthonormal basis in which H is tridiagonal, with
A Phi_m = -z* Phi_m + sqrt(m omega) Phi_{m-1}.

Eigenfunctions psi_n are the standard Hermite functions (no (-1)^n factor),
so that the Fock expansion of Phi_m^z has coefficients
exp(-|z|^2/(2 omega)) conj(C_s^{(m)}(z)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import specfun
from .jmatrix import ShiftCoefficients, SpectralData, TridiagonalRep, recursion_polynomials
from .quadrature import QuadratureSpec, integrate_interval, integrate_plane

__all__ = [
    "HarmonicParams",
    "GCSLabel",
    "energy",
    "eigenfunction_psi",
    "apply_hamiltonian_psi",
    "gcs_phi",
    "gcs_phi_derivative",
    "gcs_phi_derivative_identity",
    "apply_lowering",
    "apply_raising",
    "apply_hamiltonian",
    "perelomov_cs",
    "tridiagonal_rep",
    "shift_coefficients",
    "expansion_coefficient",
    "expansion_coefficients",
    "expansion_polynomial",
    "spectral_data",
    "coefficient_matrix",
    "default_qspec",
    "inner",
    "gram_matrix",
    "matrix_element_quadrature",
    "hamiltonian_matrix",
    "ladder_residuals",
    "variance_check",
    "canonical_cs",
    "bargmann_transform",
    "landau_kernel",
    "landau_relative_gap",
    "identity_resolution",
    "identity_resolution_entry",
    "generating_series",
    "generating_closed_form",
    "generating_sum_gap",
]


@dataclass(frozen=True)
class HarmonicParams:
    omega: float = 1.0

    def __post_init__(self) -> None:
        if not self.omega > 0:
            raise ValueError("omega must be positive")


@dataclass(frozen=True)
class GCSLabel:
    z: complex
    m: int
    params: HarmonicParams = HarmonicParams()

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        object.__setattr__(self, "z", complex(self.z))

    @property
    def omega(self) -> float:
        return self.params.omega

    @property
    def center(self) -> float:
        """Position of the Gaussian envelope, sqrt(2) Re z / omega."""
        return math.sqrt(2.0) * self.z.real / self.omega

    def with_m(self, m: int) -> "GCSLabel":
        return GCSLabel(self.z, m, self.params)


def energy(n: int, params: HarmonicParams) -> float:
    return n * params.omega


def _psi_parts(n: int, omega: float, xi: np.ndarray) -> np.ndarray:
    u = math.sqrt(omega) * xi
    return (omega / math.pi) ** 0.25 * specfun.hermite_normalized(n, u) * np.exp(-0.5 * u * u)


def eigenfunction_psi(n: int, params: HarmonicParams, xi):
    """Normalized Hermite function psi_n(xi) of frequency omega."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _psi_parts(n, params.omega, np.asarray(xi, dtype=float))


def _envelope(label: GCSLabel, xi: np.ndarray):
    """Common factor (omega/pi)^{1/4} e^{E(xi)}, its log-derivative E'(xi), and the Hermite argument."""
    w = label.omega
    x, y = label.z.real, label.z.imag
    xi0 = label.center
    expo = -0.5 * w * (xi - xi0) ** 2 + 1j * (x * y / w - math.sqrt(2.0) * y * xi)
    env = (w / math.pi) ** 0.25 * np.exp(expo)
    dexpo = math.sqrt(2.0) * np.conj(label.z) - w * xi
    u = math.sqrt(w) * (xi - xi0)
    return env, dexpo, u


def gcs_phi(label: GCSLabel, xi):
    """Closed form of Phi_m^{z,omega}(xi)."""
    xi = np.asarray(xi, dtype=float)
    env, _, u = _envelope(label, xi)
    return (-1) ** label.m * env * specfun.hermite_normalized(label.m, u)


def gcs_phi_derivative(label: GCSLabel, xi):
    """d/dxi Phi_m by direct differentiation of the closed form.

    Uses d/du [H_m / sqrt(2^m m!)] = sqrt(2m) H_{m-1} / sqrt(2^{m-1} (m-1)!).
    """
    xi = np.asarray(xi, dtype=float)
    m, w = label.m, label.omega
    env, dexpo, u = _envelope(label, xi)
    poly = specfun.hermite_normalized(m, u)
    dpoly = math.sqrt(2.0 * m) * specfun.hermite_normalized(m - 1, u) if m > 0 else 0.0
    return (-1) ** m * env * (dexpo * poly + math.sqrt(w) * dpoly)


def gcs_phi_derivative_identity(label: GCSLabel, xi):
    """Right side of the derivative identity (sqrt(2) z* - omega xi) Phi_m - sqrt(2 m omega) Phi_{m-1}."""
    xi = np.asarray(xi, dtype=float)
    m, w = label.m, label.omega
    out = (math.sqrt(2.0) * np.conj(label.z) - w * xi) * gcs_phi(label, xi)
    if m > 0:
        out = out - math.sqrt(2.0 * m * w) * gcs_phi(label.with_m(m - 1), xi)
    return out


def _phi_second_derivative(label: GCSLabel, xi: np.ndarray):
    m, w = label.m, label.omega
    env, dexpo, u = _envelope(label, xi)
    p0 = specfun.hermite_normalized(m, u)
    p1 = math.sqrt(2.0 * m) * specfun.hermite_normalized(m - 1, u) if m > 0 else 0.0
    p2 = math.sqrt(4.0 * m * (m - 1)) * specfun.hermite_normalized(m - 2, u) if m > 1 else 0.0
    return (-1) ** m * env * ((dexpo**2 - w) * p0 + 2.0 * math.sqrt(w) * dexpo * p1 + w * p2)


def apply_lowering(label: GCSLabel, xi):
    """(A Phi_m)(xi) with A = -(d/dxi + omega xi)/sqrt(2), derivative taken analytically."""
    xi = np.asarray(xi, dtype=float)
    return -(gcs_phi_derivative(label, xi) + label.omega * xi * gcs_phi(label, xi)) / math.sqrt(2.0)


def apply_raising(label: GCSLabel, xi):
    """(A^dagger Phi_m)(xi) with A^dagger = (d/dxi - omega xi)/sqrt(2)."""
    xi = np.asarray(xi, dtype=float)
    return (gcs_phi_derivative(label, xi) - label.omega * xi * gcs_phi(label, xi)) / math.sqrt(2.0)


def apply_hamiltonian(label: GCSLabel, xi):
    """(H Phi_m)(xi) from the analytic second derivative."""
    xi = np.asarray(xi, dtype=float)
    w = label.omega
    phi = gcs_phi(label, xi)
    return -0.5 * _phi_second_derivative(label, xi) + (0.5 * w * w * xi * xi - 0.5 * w) * phi


def apply_hamiltonian_psi(n: int, params: HarmonicParams, xi):
    """(H psi_n)(xi); psi_n coincides with (-1)^n Phi_n at z = 0."""
    return (-1) ** n * apply_hamiltonian(GCSLabel(0.0, n, params), xi)


def perelomov_cs(x: float, y: float, m: int, params: HarmonicParams, xi):
    """Schrodinger-representation translate of the fiducial (-1)^m psi_m to the point (x, omega y).

    T(q, p)[f](xi) = exp(i(q p / omega^2 - sqrt(2) p xi / omega)) f(xi - sqrt(2) q / omega).
    With the signed fiducial this equals Phi_m^{x+iy} identically.
    """
    w = params.omega
    xi = np.asarray(xi, dtype=float)
    q, p = x, w * y
    phase = np.exp(1j * (q * p / w**2 - math.sqrt(2.0) * p * xi / w))
    return phase * (-1) ** m * _psi_parts(m, w, xi - math.sqrt(2.0) * q / w)


def tridiagonal_rep(z: complex, params: HarmonicParams, n: int) -> TridiagonalRep:
    """a_k = |z|^2 + k omega, b_k = -z* sqrt((k+1) omega)."""
    k = np.arange(n)
    a = abs(z) ** 2 + k * params.omega
    b = -np.conj(z) * np.sqrt((k + 1) * params.omega)
    return TridiagonalRep(a=a, b=b)


def shift_coefficients(z: complex, params: HarmonicParams, n: int) -> ShiftCoefficients:
    """c_k = -z*, d_k = sqrt(k omega)."""
    k = np.arange(n)
    return ShiftCoefficients(c=np.full(n, -np.conj(z)), d=np.sqrt(k * params.omega))


def expansion_coefficient(label: GCSLabel, s: int) -> complex:
    """Closed form of C_s^{(m,omega)}(z, z*).

    (-1)^{min(m,s)} sqrt(min(m,s)!/max(m,s)!) t^{|m-s|/2} e^{i(s-m) theta}
    L_{min(m,s)}^{(|m-s|)}(t), with t = |z|^2/omega and theta = arg z.
    At z = 0 the limit (-1)^m delta_{m,s} is returned.
    """
    m = label.m
    if s < 0:
        raise ValueError("s must be nonnegative")
    z = label.z
    if z == 0:
        return complex((-1) ** m * (m == s))
    t = abs(z) ** 2 / label.omega
    lo, hi = min(m, s), max(m, s)
    theta = math.atan2(z.imag, z.real)
    log_mag = 0.5 * float(specfun.log_factorial_ratio(lo, hi)) + 0.5 * (hi - lo) * math.log(t)
    lag = float(specfun.laguerre(lo, float(hi - lo), t))
    return (-1) ** lo * math.exp(log_mag) * lag * complex(math.cos((s - m) * theta), math.sin((s - m) * theta))


def expansion_coefficients(label: GCSLabel, s_max: int) -> np.ndarray:
    """C_s^{(m,omega)} for s = 0..s_max-1."""
    return np.array([expansion_coefficient(label, s) for s in range(s_max)])


def expansion_polynomial(label: GCSLabel, s) -> np.ndarray:
    """p_m(s omega) from the closed Charlier/Laguerre form.

    p_n(e_s) = (-1)^n sqrt(n!) omega^{n/2} z^{-n} L_n^{(s-n)}(|z|^2/omega).
    """
    n, w, z = label.m, label.omega, label.z
    s = np.asarray(s, dtype=float)
    lag = specfun.laguerre(n, s - n, abs(z) ** 2 / w)
    return (-1) ** n * math.sqrt(math.factorial(n)) * w ** (n / 2) * z ** (-n) * lag


def spectral_data(z: complex, params: HarmonicParams, s_max: int = 200) -> SpectralData:
    """Poisson weights Omega_s = e^{-t} t^s / s! on the levels e_s = s omega, t = |z|^2/omega."""
    t = abs(z) ** 2 / params.omega
    s = np.arange(s_max)
    logw = -t + s * math.log(t) - specfun.log_factorial_ratio(s, 0) if t > 0 else np.where(s == 0, 0.0, -np.inf)
    return SpectralData(discrete=[(float(si * params.omega), float(wi)) for si, wi in zip(s, np.exp(logw))])


def coefficient_matrix(z: complex, params: HarmonicParams, m_max: int, s_max: int) -> np.ndarray:
    """Rows m, columns s of exp(-|z|^2/(2 omega)) C_s^{(m,omega)}(z)."""
    scale = math.exp(-0.5 * abs(z) ** 2 / params.omega)
    return np.array([expansion_coefficients(GCSLabel(z, m, params), s_max) for m in range(m_max)]) * scale


def default_qspec(label: GCSLabel, m_max: int | None = None, abs_tol: float = 1e-12) -> QuadratureSpec:
    """Truncation wide enough for Hermite functions up to index m_max around the envelope center."""
    m_top = label.m if m_max is None else m_max
    radius = (12.0 + math.sqrt(2.0 * m_top + 1.0)) / math.sqrt(label.omega)
    return QuadratureSpec(abs_tol=abs_tol, rel_tol=1e-12, max_subdivisions=4000, truncation_radius=radius)


def inner(f: Callable, g: Callable, qspec: QuadratureSpec, center: float = 0.0) -> complex:
    """<f|g> = integral conj(f) g, with f, g vectorized callables of xi."""
    r = qspec.truncation_radius
    return complex(integrate_interval(lambda x: np.conj(f(x)) * g(x), center - r, center + r, qspec))


def _stack(fn, labels, xi):
    return np.stack([fn(lab, xi) for lab in labels], axis=-1)


def gram_matrix(z: complex, params: HarmonicParams, m_max: int, qspec: QuadratureSpec | None = None) -> np.ndarray:
    """G[n, m] = <Phi_n|Phi_m> for n, m <= m_max, by quadrature."""
    labels = [GCSLabel(z, m, params) for m in range(m_max + 1)]
    qspec = qspec or default_qspec(labels[-1])
    r, c = qspec.truncation_radius, labels[0].center

    def integrand(xi):
        phi = _stack(gcs_phi, labels, xi)
        return np.conj(phi)[:, :, None] * phi[:, None, :]

    return integrate_interval(integrand, c - r, c + r, qspec)


def hamiltonian_matrix(z: complex, params: HarmonicParams, m_max: int, qspec: QuadratureSpec | None = None) -> np.ndarray:
    """M[n, m] = integral Phi_n conj(H Phi_m) for n, m <= m_max.

    In this layout M[n, n+1] = -z* sqrt((n+1) omega) and M[n+1, n] = -z sqrt((n+1) omega).
    """
    labels = [GCSLabel(z, m, params) for m in range(m_max + 1)]
    qspec = qspec or default_qspec(labels[-1])
    r, c = qspec.truncation_radius, labels[0].center

    def integrand(xi):
        phi = _stack(gcs_phi, labels, xi)
        hphi = _stack(apply_hamiltonian, labels, xi)
        return phi[:, :, None] * np.conj(hphi)[:, None, :]

    return integrate_interval(integrand, c - r, c + r, qspec)


def matrix_element_quadrature(n: int, m: int, z: complex, params: HarmonicParams, qspec: QuadratureSpec | None = None) -> complex:
    """Single entry integral Phi_n conj(H Phi_m); see ``hamiltonian_matrix``."""
    ln, lm = GCSLabel(z, n, params), GCSLabel(z, m, params)
    qspec = qspec or default_qspec(ln, max(n, m))
    r = qspec.truncation_radius
    val = integrate_interval(
        lambda x: gcs_phi(ln, x) * np.conj(apply_hamiltonian(lm, x)), ln.center - r, ln.center + r, qspec
    )
    return complex(val)


def _l2_norm(fn: Callable, label: GCSLabel, qspec: QuadratureSpec) -> float:
    r = qspec.truncation_radius
    val = integrate_interval(lambda x: np.abs(fn(x)) ** 2, label.center - r, label.center + r, qspec)
    return math.sqrt(max(float(np.real(val)), 0.0))


def ladder_residuals(label: GCSLabel, qspec: QuadratureSpec | None = None) -> tuple[float, float]:
    """L2 norms of A Phi_m - (-z* Phi_m + sqrt(m omega) Phi_{m-1}) and
    A^dagger Phi_m - (-z Phi_m + sqrt((m+1) omega) Phi_{m+1})."""
    m, w, z = label.m, label.omega, label.z
    qspec = qspec or default_qspec(label, m + 1)

    def low(x):
        target = -np.conj(z) * gcs_phi(label, x)
        if m > 0:
            target = target + math.sqrt(m * w) * gcs_phi(label.with_m(m - 1), x)
        return apply_lowering(label, x) - target

    def high(x):
        target = -z * gcs_phi(label, x) + math.sqrt((m + 1) * w) * gcs_phi(label.with_m(m + 1), x)
        return apply_raising(label, x) - target

    return _l2_norm(low, label, qspec), _l2_norm(high, label, qspec)


def variance_check(label: GCSLabel, qspec: QuadratureSpec | None = None) -> tuple[float, float]:
    """(<H>, <H^2>) in the state Phi_0; <H^2> is computed as ||H Phi_0||^2."""
    if label.m != 0:
        raise ValueError("variance_check is defined for m = 0")
    qspec = qspec or default_qspec(label, 2)
    r, c = qspec.truncation_radius, label.center
    mean = integrate_interval(lambda x: np.conj(gcs_phi(label, x)) * apply_hamiltonian(label, x), c - r, c + r, qspec)
    second = integrate_interval(lambda x: np.abs(apply_hamiltonian(label, x)) ** 2, c - r, c + r, qspec)
    return float(np.real(mean)), float(np.real(second))


def canonical_cs(z: complex, xi):
    """Schrodinger coherent state pi^{-1/4} e^{-|z|^2/2} exp(-z*^2/2 + sqrt(2) z* xi - xi^2/2)."""
    return gcs_phi(GCSLabel(z, 0, HarmonicParams(1.0)), xi)


def bargmann_transform(phi: Callable, z: complex, qspec: QuadratureSpec | None = None) -> complex:
    """B[phi](z) = integral pi^{-1/4} exp(-z^2/2 + sqrt(2) z xi - xi^2/2) phi(xi) dxi.

    Analytic in z; maps psi_n to z^n / sqrt(n!).
    """
    qspec = qspec or QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, truncation_radius=14.0)
    z = complex(z)
    center = math.sqrt(2.0) * z.real

    def integrand(xi):
        return math.pi**-0.25 * np.exp(-0.5 * z * z + math.sqrt(2.0) * z * xi - 0.5 * xi * xi) * phi(xi)

    r = qspec.truncation_radius
    return complex(integrate_interval(integrand, center - r, center + r, qspec))


def landau_kernel(z: complex, w: complex, m: int, n_terms: int) -> tuple[complex, complex]:
    """(partial sum over s < n_terms, closed form) of the level-m reproducing kernel at omega = 1.

    The series uses the normalized coefficients C_s^{(m,1)}/sqrt(pi), so both sides
    carry the pi^{-1} of the Lebesgue measure.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    p = HarmonicParams(1.0)
    cz = expansion_coefficients(GCSLabel(z, m, p), n_terms)
    cw = expansion_coefficients(GCSLabel(w, m, p), n_terms)
    series = complex(np.sum(cz * np.conj(cw))) / math.pi
    closed = complex(np.exp(z * np.conj(w)) * specfun.laguerre(m, 0.0, abs(z - w) ** 2)) / math.pi
    return series, closed


def landau_relative_gap(z: complex, w: complex, m: int, n_terms: int) -> float:
    """|series - closed| / sqrt(K(z,z) K(w,w)).

    The Cauchy-Schwarz bound sqrt(K(z,z) K(w,w)) = pi^{-1} e^{(|z|^2+|w|^2)/2} is the
    natural size of K(z,w); the kernel itself vanishes on circles |z-w|^2 = root of L_m.
    """
    series, closed = landau_kernel(z, w, m, n_terms)
    scale = math.exp(0.5 * (abs(z) ** 2 + abs(w) ** 2)) / math.pi
    return abs(series - closed) / scale


def identity_resolution(
    m: int,
    params: HarmonicParams,
    i_max: int = 3,
    qspec: QuadratureSpec | None = None,
    batch: int = 2048,
) -> np.ndarray:
    """Gram matrix (1/(pi omega)) integral over C of <psi_i|Phi_m^z><Phi_m^z|psi_j> dx dy.

    Overlaps are computed by quadrature in xi for batches of z; the plane
    integral uses polar coordinates. The result should be the identity for
    every m.
    """
    w = params.omega
    qspec = qspec or QuadratureSpec(abs_tol=1e-5, rel_tol=1e-5, max_subdivisions=200, truncation_radius=6.0)
    xi_radius = (12.0 + math.sqrt(2.0 * i_max + 1.0)) / math.sqrt(w)
    xi_spec = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9, max_subdivisions=4000, truncation_radius=xi_radius)
    psi = [lambda x, k=k: _psi_parts(k, w, x) for k in range(i_max + 1)]

    def overlaps(zs: np.ndarray) -> np.ndarray:
        # <psi_i|Phi_m^z> for each z, shape (nz, i_max+1)
        x, y = zs.real, zs.imag

        def integrand(xi):
            xi = xi[:, None]
            expo = -0.5 * w * (xi - math.sqrt(2.0) * x / w) ** 2 + 1j * (x * y / w - math.sqrt(2.0) * y * xi)
            u = math.sqrt(w) * xi - math.sqrt(2.0 / w) * x
            phi = (w / math.pi) ** 0.25 * (-1) ** m * np.exp(expo) * specfun.hermite_normalized(m, u)
            return np.stack([p(xi) * phi for p in psi], axis=-1)

        return integrate_interval(integrand, -xi_radius, xi_radius, xi_spec)

    def plane_integrand(zs: np.ndarray) -> np.ndarray:
        parts = []
        for start in range(0, zs.size, batch):
            ov = overlaps(zs[start : start + batch])
            parts.append((ov[:, :, None] * np.conj(ov)[:, None, :]).reshape(ov.shape[0], -1))
        return np.concatenate(parts, axis=0)

    flat = integrate_plane(plane_integrand, qspec)
    return flat.reshape(i_max + 1, i_max + 1) / (math.pi * w)


def identity_resolution_entry(i: int, j: int, m: int, params: HarmonicParams, qspec: QuadratureSpec | None = None) -> complex:
    return complex(identity_resolution(m, params, max(i, j), qspec)[i, j])


def generating_series(label: GCSLabel, xi, n_terms: int):
    """sum_{s < S} (z*/sqrt(omega))^s / sqrt(s!) L_m^{(s-m)}(|z|^2/omega) psi_s(xi)."""
    xi = np.asarray(xi, dtype=float)
    m, w, z = label.m, label.omega, label.z
    t = abs(z) ** 2 / w
    zc = np.conj(z) / math.sqrt(w)
    total = np.zeros(xi.shape, dtype=complex)
    for s in range(n_terms):
        coef = zc**s * math.exp(-0.5 * math.lgamma(s + 1.0)) * specfun.laguerre(m, float(s - m), t)
        total = total + coef * _psi_parts(s, w, xi)
    return total


def generating_closed_form(label: GCSLabel, xi):
    """Closed form of ``generating_series``:

    (omega/pi)^{1/4} e^{omega xi^2/2} z*^m (2 omega)^{-m/2} / m!
    exp((i z*/sqrt(2 omega) - i sqrt(omega) xi)^2) H_m(sqrt(omega) xi - sqrt(2/omega) Re z).
    """
    xi = np.asarray(xi, dtype=float)
    m, w, z = label.m, label.omega, label.z
    zc = np.conj(z)
    expo = 0.5 * w * xi * xi + (1j * zc / math.sqrt(2.0 * w) - 1j * math.sqrt(w) * xi) ** 2
    u = math.sqrt(w) * xi - math.sqrt(2.0 / w) * z.real
    pref = (w / math.pi) ** 0.25 * zc**m * (2.0 * w) ** (-0.5 * m) / math.factorial(m)
    return pref * np.exp(expo) * specfun.hermite(m, u)


def generating_sum_gap(label: GCSLabel, xi, n_terms: int = 150) -> float:
    """Largest pointwise gap between the truncated series and its closed form."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    return float(np.max(np.abs(generating_series(label, xi, n_terms) - generating_closed_form(label, xi))))
