"""Adaptive quadrature over the real line, the half line and the complex plane.

Integrands are vectorized: they receive a 1-D array of nodes and return
values of shape ``(n,)`` or ``(n, k)`` (vector-valued integrands, all
components integrated on the same mesh). Panels are refined by bisection;
each panel carries a Gauss-Legendre pair of orders 10 and 20 whose
difference is the error estimate. Summation order depends only on the
panel layout, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "integrate_interval",
    "integrate_line",
    "integrate_halfline",
    "integrate_plane",
]

_LOW_X, _LOW_W = np.polynomial.legendre.leggauss(10)
_HIGH_X, _HIGH_W = np.polynomial.legendre.leggauss(20)
_NODES = np.concatenate([_LOW_X, _HIGH_X])


class QuadratureError(RuntimeError):
    """Subdivision budget exhausted before the error target was met."""


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    truncation_radius: float = 12.0

    def __post_init__(self) -> None:
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if not self.truncation_radius > 0:
            raise ValueError("truncation_radius must be positive")

    def replace(self, **kw) -> "QuadratureSpec":
        fields = dict(
            abs_tol=self.abs_tol,
            rel_tol=self.rel_tol,
            max_subdivisions=self.max_subdivisions,
            truncation_radius=self.truncation_radius,
        )
        fields.update(kw)
        return QuadratureSpec(**fields)


def _panel_rules(f, lo: np.ndarray, hi: np.ndarray):
    """Low and high order estimates on each panel; shapes (p,) + value shape."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
    vals = np.asarray(f(x))
    tail = vals.shape[1:]
    vals = vals.reshape((lo.size, _NODES.size) + tail)
    low_vals = vals[:, : _LOW_X.size]
    high_vals = vals[:, _LOW_X.size :]
    scale = half.reshape((-1,) + (1,) * len(tail))
    low = scale * np.tensordot(low_vals, _LOW_W, axes=([1], [0]))
    high = scale * np.tensordot(high_vals, _HIGH_W, axes=([1], [0]))
    return low, high


def _err_norm(err: np.ndarray) -> np.ndarray:
    err = np.abs(err)
    if err.ndim > 1:
        err = err.reshape(err.shape[0], -1).max(axis=1)
    return err


def integrate_interval(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec,
    initial_panels: int = 16,
):
    """Adaptive integral of ``f`` over [a, b].

    Converged panels are frozen; the remaining panels are bisected until the
    summed error estimate is below max(abs_tol, rel_tol * |result|).
    """
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    done_val = None
    done_err = 0.0
    subdivisions = 0
    while True:
        low, high = _panel_rules(f, lo, hi)
        err = _err_norm(high - low)
        active_total = high.sum(axis=0)
        total = active_total if done_val is None else done_val + active_total
        target = max(spec.abs_tol, spec.rel_tol * float(np.max(np.abs(total))))
        if done_err + err.sum() <= target:
            return total[()] if np.ndim(total) == 0 else total
        # Panels whose error fits their share of the budget are frozen.
        width = hi - lo
        share = target * width / (b - a)
        keep = err <= 0.5 * share
        if np.any(keep):
            frozen = high[keep].sum(axis=0)
            done_val = frozen if done_val is None else done_val + frozen
            done_err += err[keep].sum()
        lo, hi = lo[~keep], hi[~keep]
        if lo.size == 0:
            return total[()] if np.ndim(total) == 0 else total
        subdivisions += lo.size
        if subdivisions > spec.max_subdivisions:
            raise QuadratureError(
                f"subdivision budget {spec.max_subdivisions} exhausted; "
                f"error estimate {done_err + err.sum():.3e} > target {target:.3e}"
            )
        mid = 0.5 * (lo + hi)
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        order = np.argsort(lo, kind="stable")
        lo, hi = lo[order], hi[order]


def integrate_line(f, spec: QuadratureSpec, center: float = 0.0):
    """Integral of ``f`` over the real line, truncated to center +/- truncation_radius."""
    r = spec.truncation_radius
    return integrate_interval(f, center - r, center + r, spec)


def integrate_halfline(f, spec: QuadratureSpec):
    """Integral of ``f`` over (0, infinity), truncated at truncation_radius.

    Raises ValueError when the integrand is not finite next to the origin,
    which signals a non-integrable singularity for the Gauss nodes used here.
    """
    probe = np.asarray(f(np.array([1e-12, 1e-8])))
    if not np.all(np.isfinite(probe)):
        raise ValueError("integrand is singular at the origin")
    return integrate_interval(f, 0.0, spec.truncation_radius, spec)


def _angular_mean(f, r: np.ndarray, tol: float, max_points: int = 4096):
    """Mean of f(r e^{i theta}) over theta for each radius, by the periodic trapezoid rule.

    The point count doubles until the result stops changing by more than tol.
    """
    n = 16
    prev = None
    while True:
        theta = 2.0 * np.pi * np.arange(n) / n
        pts = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
        vals = np.asarray(f(pts))
        tail = vals.shape[1:]
        mean = vals.reshape((r.size, n) + tail).mean(axis=1)
        if prev is not None:
            delta = np.max(np.abs(mean - prev) * r.reshape((-1,) + (1,) * len(tail)))
            if delta <= tol:
                return mean
        if n >= max_points:
            raise QuadratureError("angular rule did not converge")
        prev = mean
        n *= 2


def integrate_plane(f, spec: QuadratureSpec):
    """Integral of ``f(z)`` over the disc |z| <= truncation_radius in the complex plane.

    Polar coordinates: adaptive Gauss-Legendre in r and a convergent
    trapezoid rule in theta (exponentially accurate for smooth periodic
    integrands).
    """
    r_max = spec.truncation_radius
    ang_tol = 0.1 * spec.abs_tol / r_max

    def radial(r):
        mean = _angular_mean(f, r, ang_tol)
        scale = (2.0 * np.pi * r).reshape((-1,) + (1,) * (mean.ndim - 1))
        return scale * mean

    return integrate_interval(radial, 0.0, r_max, spec, initial_panels=8)
