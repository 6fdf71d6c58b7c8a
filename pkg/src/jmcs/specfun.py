"""Special functions: Hermite, Laguerre, Charlier, complex Hermite, terminating 3F2.

Polynomials are evaluated by forward three-term recursion. The explicit
finite sums are kept as ``*_series`` helpers so tests can use them as
independent oracles.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

__all__ = [
    "PoleError",
    "log_gamma",
    "pochhammer",
    "log_factorial_ratio",
    "hermite",
    "hermite_series",
    "hermite_normalized",
    "laguerre",
    "laguerre_series",
    "laguerre_negative_order",
    "charlier",
    "complex_hermite",
    "f32_terminating",
]


class PoleError(ValueError):
    """Raised when a Gamma function or Pochhammer denominator hits a pole."""


def _is_nonpositive_integer(x) -> np.ndarray:
    x = np.asarray(x)
    re = np.real(x)
    return (np.imag(x) == 0) & (re <= 0) & (re == np.round(re))


def log_gamma(x):
    """Principal branch of ln Gamma(x) for real or complex x.

    The branch is the analytic continuation from the positive real axis,
    so ln Gamma(x+1) = ln Gamma(x) + ln x holds without 2*pi*i jumps.
    Real input with Gamma(x) < 0 returns a complex value with imaginary
    part pi.
    """
    arr = np.asarray(x)
    if np.any(_is_nonpositive_integer(arr)):
        raise PoleError(f"log_gamma pole at nonpositive integer: {x!r}")
    out = special.loggamma(arr.astype(complex))
    if np.isrealobj(arr) and np.all(special.gamma(arr) > 0):
        out = out.real
    return out if out.ndim else out[()]


def pochhammer(x, k: int):
    """Rising factorial (x)_k = x(x+1)...(x+k-1), with (x)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = np.ones_like(np.asarray(x) + 0.0)
    for j in range(k):
        out = out * (x + j)
    return out if np.ndim(out) else out[()]


def log_factorial_ratio(a, b):
    """ln(a!/b!) for nonnegative integers (arrays allowed), computed in log space."""
    return special.gammaln(np.asarray(a) + 1.0) - special.gammaln(np.asarray(b) + 1.0)


def hermite(n: int, u):
    """Physicists' Hermite polynomial H_n(u) by H_{k+1} = 2u H_k - 2k H_{k-1}."""
    if n < 0:
        raise ValueError("hermite needs n >= 0")
    u = np.asarray(u, dtype=float)
    h_prev = np.zeros_like(u)
    h = np.ones_like(u)
    for k in range(n):
        h_prev, h = h, 2.0 * u * h - 2.0 * k * h_prev
    return h if h.ndim else h[()]


def hermite_series(n: int, u):
    """H_n(u) = n! sum_j (-1)^j (2u)^{n-2j} / (j! (n-2j)!)."""
    u = np.asarray(u, dtype=float)
    total = np.zeros_like(u)
    for j in range(n // 2 + 1):
        coef = (-1) ** j * math.factorial(n) / (math.factorial(j) * math.factorial(n - 2 * j))
        total = total + coef * (2.0 * u) ** (n - 2 * j)
    return total if total.ndim else total[()]


def hermite_normalized(n: int, u):
    """H_n(u) / sqrt(2^n n!), stable for large n.

    Uses the recursion h_{k+1} = sqrt(2/(k+1)) u h_k - sqrt(k/(k+1)) h_{k-1}.
    """
    u = np.asarray(u)
    h_prev = np.zeros_like(u, dtype=float)
    h = np.ones_like(u, dtype=float)
    for k in range(n):
        h_prev, h = h, math.sqrt(2.0 / (k + 1)) * u * h - math.sqrt(k / (k + 1)) * h_prev
    return h if h.ndim else h[()]


def _laguerre_recursion(n: int, alpha, y):
    alpha = np.asarray(alpha)
    y = np.asarray(y)
    l_prev = np.zeros(np.broadcast(alpha, y).shape, dtype=np.result_type(alpha, y, float))
    l_cur = np.ones_like(l_prev)
    for k in range(n):
        l_prev, l_cur = l_cur, ((2 * k + 1 + alpha - y) * l_cur - (k + alpha) * l_prev) / (k + 1)
    return l_cur


def laguerre(n: int, alpha, y):
    """Generalized Laguerre polynomial L_n^{(alpha)}(y) for any real alpha.

    ``alpha`` and ``y`` broadcast. Entries where alpha = -r with 1 <= r <= n
    are routed through the negative-order reflection identity.
    """
    if n < 0:
        raise ValueError("laguerre needs n >= 0")
    alpha_arr = np.asarray(alpha, dtype=float)
    y_arr = np.asarray(y)
    out = np.array(_laguerre_recursion(n, alpha_arr, y_arr))
    neg = (alpha_arr == np.round(alpha_arr)) & (alpha_arr <= -1) & (alpha_arr >= -n)
    if np.any(neg):
        alpha_b, y_b = np.broadcast_arrays(alpha_arr, y_arr)
        mask = np.broadcast_to(neg, out.shape)
        for r in np.unique(-alpha_b[mask]).astype(int):
            sel = mask & (alpha_b == -r)
            out[sel] = laguerre_negative_order(n, int(r), y_b[sel])
    return out if out.ndim else out[()]


def laguerre_series(n: int, alpha, y):
    """Explicit sum L_n^{(alpha)}(y) = sum_k (-1)^k binom(n+alpha, n-k) y^k / k!.

    The binomial is formed as (alpha+k+1)_{n-k} / (n-k)!, valid for any real alpha.
    """
    y = np.asarray(y)
    total = np.zeros(np.broadcast(np.asarray(alpha), y).shape, dtype=np.result_type(y, float))
    for k in range(n + 1):
        binom = pochhammer(np.asarray(alpha, dtype=float) + k + 1, n - k) / math.factorial(n - k)
        total = total + (-1) ** k * binom * y**k / math.factorial(k)
    return total if total.ndim else total[()]


def laguerre_negative_order(n: int, r: int, t):
    """L_n^{(-r)}(t) = (-t)^r (n-r)!/n! L_{n-r}^{(r)}(t) for 1 <= r <= n."""
    if not 1 <= r <= n:
        raise ValueError(f"negative order r={r} outside [1, {n}]")
    t = np.asarray(t)
    ratio = math.exp(log_factorial_ratio(n - r, n))
    out = (-t) ** r * ratio * _laguerre_recursion(n - r, float(r), t)
    return out if out.ndim else out[()]


def charlier(n: int, u, a: float):
    """Charlier polynomial C_n(u; a) by its three-term recurrence in n.

    a C_{k+1} = (k + a - u) C_k - k C_{k-1}, C_0 = 1. Equal to
    n!/(-a)^n L_n^{(u-n)}(a).
    """
    if a <= 0:
        raise ValueError("charlier needs a > 0")
    u = np.asarray(u, dtype=float)
    c_prev = np.zeros_like(u)
    c = np.ones_like(u)
    for k in range(n):
        c_prev, c = c, ((k + a - u) * c - k * c_prev) / a
    return c if c.ndim else c[()]


def complex_hermite(m: int, s: int, z):
    """Complex Hermite polynomial H_{m,s}(z, z*) from its finite double-factorial sum.

    H_{m,s} = sum_j (-1)^j j! binom(m,j) binom(s,j) z^{m-j} (z*)^{s-j}.
    """
    if m < 0 or s < 0:
        raise ValueError("complex_hermite needs m, s >= 0")
    z = np.asarray(z, dtype=complex)
    zc = np.conj(z)
    total = np.zeros_like(z)
    for j in range(min(m, s) + 1):
        coef = (-1) ** j * math.factorial(j) * math.comb(m, j) * math.comb(s, j)
        total = total + coef * z ** (m - j) * zc ** (s - j)
    return total if total.ndim else total[()]


def f32_terminating(m: int, num1, num2, den1, den2):
    """3F2(-m, num1, num2; den1, den2; 1) as the exact finite sum over k = 0..m."""
    if m < 0:
        raise ValueError("f32_terminating needs m >= 0")
    term = np.ones(np.broadcast(num1, num2, den1, den2).shape, dtype=complex)
    total = term.copy()
    for k in range(m):
        den = (den1 + k) * (den2 + k) * (k + 1)
        if np.any(den == 0):
            raise PoleError("denominator Pochhammer vanishes before the series terminates")
        term = term * (-m + k) * (num1 + k) * (num2 + k) / den
        total = total + term
    return total if total.ndim else total[()]
