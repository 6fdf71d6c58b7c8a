"""Generic J-matrix machinery.

An operator H with a tridiagonal representation in an orthonormal basis
{phi_n} is stored as its diagonal a_n and couplings b_n. Matrix entries
follow the layout H[n, n+1] = b_n and H[n+1, n] = conj(b_n), with
H[n, m] = integral of phi_n * conj(H phi_m). The expansion polynomials
p_n(E) of an eigenvector then obey

    E p_n = b_{n-1} p_{n-1} + a_n p_n + conj(b_n) p_{n+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .quadrature import QuadratureSpec, integrate_interval

__all__ = [
    "TridiagonalRep",
    "ShiftCoefficients",
    "SpectralData",
    "GCSWeight",
    "finite_section",
    "recursion_polynomials",
    "shift_from_polys",
    "rep_from_shift",
    "shape_invariant_shift",
    "discrete_weight",
    "continuous_weight",
    "gcs_superpose_discrete",
    "closure_check",
]


@dataclass(frozen=True)
class TridiagonalRep:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=complex))

    def __len__(self) -> int:
        return self.a.size


@dataclass(frozen=True)
class ShiftCoefficients:
    """Factorization data of H = A^dagger A: A phi_n = c_n phi_n + d_n phi_{n-1}.

    ``phase_determined`` is False when only the moduli |c_n|, |d_n| are known.
    """

    c: np.ndarray
    d: np.ndarray
    phase_determined: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", np.asarray(self.c, dtype=complex))
        object.__setattr__(self, "d", np.asarray(self.d, dtype=complex))
        if self.d.size and self.d[0] != 0:
            raise ValueError("d_0 must vanish")


@dataclass
class SpectralData:
    """Orthogonality measure of the expansion polynomials.

    ``discrete`` holds (E, weight) pairs; ``density`` is the continuous weight
    per unit energy on [e_min, infinity), or None for a purely discrete
    spectrum. ``radius`` bounds the substituted variable u = sqrt(E - e_min)
    beyond which the density is negligible.
    """

    discrete: list[tuple[float, float]] = field(default_factory=list)
    density: Callable[[np.ndarray], np.ndarray] | None = None
    e_min: float | None = None
    radius: float = 10.0


@dataclass(frozen=True)
class GCSWeight:
    discrete: float = 0.0
    continuous: float = 0.0


def finite_section(rep: TridiagonalRep, n: int) -> np.ndarray:
    """N x N Hermitian tridiagonal matrix of the representation."""
    if n < 1:
        raise ValueError("section size must be positive")
    if len(rep) < n or rep.b.size < n - 1:
        raise ValueError(f"representation has fewer than {n} coefficients")
    mat = np.diag(rep.a[:n].astype(complex))
    idx = np.arange(n - 1)
    mat[idx, idx + 1] = rep.b[: n - 1]
    mat[idx + 1, idx] = np.conj(rep.b[: n - 1])
    return mat


def recursion_polynomials(rep: TridiagonalRep, energy, n: int) -> np.ndarray:
    """p_0..p_{n-1} at ``energy`` (scalar or array); result shape (n,) + energy.shape."""
    energy = np.asarray(energy, dtype=float)
    if n < 1:
        raise ValueError("need at least one polynomial")
    if np.any(rep.b[: n - 1] == 0):
        raise ZeroDivisionError("vanishing coupling b_n in recursion")
    out = np.empty((n,) + energy.shape, dtype=complex)
    out[0] = 1.0
    if n > 1:
        out[1] = (energy - rep.a[0]) / np.conj(rep.b[0])
    for k in range(1, n - 1):
        out[k + 1] = ((energy - rep.a[k]) * out[k] - rep.b[k - 1] * out[k - 1]) / np.conj(rep.b[k])
    return out


def shift_from_polys(rep: TridiagonalRep, p_at_zero: Sequence[complex], tol: float = 1e-10) -> ShiftCoefficients:
    """Moduli of the shift coefficients from the polynomial values at E = 0.

    |c_n|^2 = -conj(b_n) p_{n+1}(0)/p_n(0) and |d_{n+1}|^2 = -b_n p_n(0)/p_{n+1}(0).
    The phases are not fixed by these relations; the returned c_n, d_n are
    the nonnegative roots and ``phase_determined`` is False.
    """
    p = np.asarray(p_at_zero, dtype=complex)
    n = p.size - 1
    if n < 1:
        raise ValueError("need p_0(0) and p_1(0) at least")
    if np.any(p == 0):
        raise ZeroDivisionError("p_n(0) vanishes")
    ratio = p[1:] / p[:-1]
    c2 = -np.conj(rep.b[:n]) * ratio
    d2 = -rep.b[:n] / ratio
    for name, val in (("|c_n|^2", c2), ("|d_n|^2", d2)):
        scale = np.maximum(np.abs(val), 1.0)
        if np.any(np.abs(val.imag) > tol * scale) or np.any(val.real < -tol * scale):
            raise ValueError(f"{name} is not a nonnegative real number; invalid representation")
    c = np.sqrt(np.maximum(c2.real, 0.0))
    d = np.concatenate([[0.0], np.sqrt(np.maximum(d2.real, 0.0))])
    return ShiftCoefficients(c=c, d=d, phase_determined=False)


def rep_from_shift(shift: ShiftCoefficients) -> TridiagonalRep:
    """a_n = |c_n|^2 + |d_n|^2 and b_n = c_n conj(d_{n+1})."""
    n = min(shift.c.size, shift.d.size - 1)
    a = np.abs(shift.c[:n]) ** 2 + np.abs(shift.d[:n]) ** 2
    b = shift.c[:n] * np.conj(shift.d[1 : n + 1])
    return TridiagonalRep(a=a, b=b)


def _continuous_sqrt(values: np.ndarray, start: complex) -> np.ndarray:
    """Square roots of ``values`` with the sign chosen closest to the previous root."""
    roots = np.empty(values.size, dtype=complex)
    prev = start
    for k, v in enumerate(values):
        r = np.sqrt(complex(v))
        if abs(-r - prev) < abs(r - prev):
            r = -r
        roots[k] = r
        prev = r
    return roots


def shape_invariant_shift(c0: complex, d1: complex, spectrum: Callable[[int], float], n: int) -> ShiftCoefficients:
    """Shift coefficients from c_0, d_1 and the spectrum of a shape-invariant H.

    c_n^2 = c_0^2 + n d_1^2 - e_n and d_n^2 = n d_1^2 + n e_1 - e_n, requiring e_0 = 0.
    """
    if spectrum(0) != 0:
        raise ValueError("spectrum must start at zero energy")
    k = np.arange(n)
    eps = np.array([spectrum(int(j)) for j in k], dtype=float)
    e1 = spectrum(1)
    c2 = c0**2 + k * d1**2 - eps
    d2 = k * d1**2 + k * e1 - eps
    c = _continuous_sqrt(c2, complex(c0))
    d = np.empty(n, dtype=complex)
    d[0] = 0.0
    if n > 1:
        d[1:] = _continuous_sqrt(d2[1:], complex(d1))
    return ShiftCoefficients(c=c, d=d)


def discrete_weight(coeffs: Sequence[complex]) -> float:
    """omega_d = sum |D_n|^2."""
    return float(np.sum(np.abs(np.asarray(coeffs)) ** 2))


def continuous_weight(coeff: Callable[[np.ndarray], np.ndarray], lam0: float, qspec: QuadratureSpec) -> float:
    """omega_c = integral of |C_lambda|^2 over [lam0, lam0 + truncation_radius]."""
    val = integrate_interval(lambda lam: np.abs(coeff(lam)) ** 2, lam0, lam0 + qspec.truncation_radius, qspec)
    return float(np.real(val))


def gcs_superpose_discrete(coeffs: Sequence[complex], basis: np.ndarray) -> np.ndarray:
    """omega_d^{-1/2} sum_n D_n phi_n, with ``basis`` holding phi_n along axis 0."""
    coeffs = np.asarray(coeffs, dtype=complex)
    w = discrete_weight(coeffs)
    if w == 0:
        raise ValueError("all coefficients vanish; coherent state undefined")
    basis = np.asarray(basis)
    return np.tensordot(coeffs, basis[: coeffs.size], axes=(0, 0)) / np.sqrt(w)


def closure_check(
    spectral: SpectralData,
    polys: Callable[[int, np.ndarray], np.ndarray],
    n: int,
    m: int,
    qspec: QuadratureSpec,
) -> complex:
    """sum_mu Omega_mu p_n p_m^* + integral Omega(E) p_n p_m^* dE.

    The continuum integral uses E = e_min + u^2, which removes the square-root
    behaviour of typical densities at threshold.
    """
    total = 0.0 + 0.0j
    if spectral.discrete:
        e = np.array([pt[0] for pt in spectral.discrete], dtype=float)
        w = np.array([pt[1] for pt in spectral.discrete], dtype=float)
        total += complex(np.sum(w * polys(n, e) * np.conj(polys(m, e))))
    if spectral.density is not None:
        e_min = spectral.e_min

        def integrand(u):
            e = e_min + u * u
            return spectral.density(e) * polys(n, e) * np.conj(polys(m, e)) * 2.0 * u

        total += complex(integrate_interval(integrand, 0.0, spectral.radius, qspec))
    return total
