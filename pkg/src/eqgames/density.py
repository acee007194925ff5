"""Density of positive real zeros of the random gain polynomial.

For equicorrelated standard normal ``beta_k`` (correlation ``r``) the
expected number of roots of ``P`` in ``[a, b]`` is the integral of

    (pi f)^2 = (A M - B^2) / M^2,
    M = (1-r) M1 + r M2,  A = (1-r) A1 + r A2,  B = (1-r) B1 + r B2,

with ``M1 = sum C(n,i)^2 t^(2i)``, ``A1 = sum i^2 C(n,i)^2 t^(2i-2)``,
``B1 = sum i C(n,i)^2 t^(2i-1)``, ``M2 = (1+t)^(2n)``,
``A2 = n^2 (1+t)^(2n-2)``, ``B2 = n (1+t)^(2n-1)`` and ``n = d - 1``.

Evaluating ``A M - B^2`` from these sums loses every significant digit as
``r -> 1`` and overflows beyond ``d ~ 150``.  :func:`density` therefore uses
an equivalent form.  Writing ``p_i = C(n,i)^2 t^(2i) / M1`` for the weights of
``M1``, ``A2 M2 = B2^2`` exactly, and

    A M - B^2 = (1-r) M1^2 [ (1-r) V / t^2 + r rho Q ]
    V   = sum p_i (i - mean_p)^2
    Q   = sum p_i (i/t - n/(1+t))^2
    rho = M2 / M1

so the radicand is a sum of non-negative terms, and every quantity is a
ratio computed in the log domain.  :func:`density_components` evaluates the
nine building blocks directly (on a shared log scale) and serves as the
independent route in the tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TINY_T = 1e-100


def log_binomial_row(n):
    """``log C(n, i)`` for ``i = 0..n``, exactly symmetric in ``i``."""
    i = np.arange(1, n + 1)
    lb = np.concatenate(([0.0], np.cumsum(np.log((n - i + 1) / i))))
    return 0.5 * (lb + lb[::-1])


def _logsumexp(a, axis=-1):
    m = np.max(a, axis=axis, keepdims=True)
    return (m + np.log(np.sum(np.exp(a - m), axis=axis, keepdims=True))).squeeze(axis)


# ---------------------------------------------------------------------------
# Legendre polynomials for x > 1


@dataclass(frozen=True)
class LegendreEval:
    degree: int
    x: float
    value: float
    log_value: float


_RESCALE = 1e150


def legendre_scaled(degree, x):
    """``(P_{degree-1}, P_degree, log_scale)`` with both values divided by ``exp(log_scale)``.

    Upward three-term recurrence from ``P_0 = 1``, ``P_1 = x``; the pair is
    renormalized whenever it grows past 1e150 so large degrees never overflow.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree == 0:
        return 0.0, 1.0, 0.0
    prev, cur, log_scale = 1.0, float(x), 0.0
    for k in range(1, degree):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
        if abs(cur) > _RESCALE:
            prev /= _RESCALE
            cur /= _RESCALE
            log_scale += math.log(_RESCALE)
    return prev, cur, log_scale


def legendre(degree, x):
    """Legendre polynomial ``P_degree(x)`` for ``x > 1``.

    ``value`` may be ``inf`` for very large degrees; ``log_value`` is always
    finite.
    """
    if x <= 1:
        raise ValueError("legendre() is only used for x > 1")
    _, cur, log_scale = legendre_scaled(degree, x)
    log_value = math.log(cur) + log_scale
    value = math.exp(log_value) if log_value < 709 else math.inf
    return LegendreEval(degree, float(x), value, log_value)


def legendre_ratio(degree, x):
    """``P_degree(x) / P_{degree+1}(x)`` without overflow."""
    cur, nxt, _ = legendre_scaled(degree + 1, x)
    return cur / nxt


# ---------------------------------------------------------------------------
# building blocks


@dataclass(frozen=True)
class DensityComponents:
    """The nine building blocks at one ``t``, all divided by ``exp(log_scale)``."""

    t: float
    d: int
    r: float
    M1: float
    A1: float
    B1: float
    M2: float
    A2: float
    B2: float
    M: float
    A: float
    B: float
    log_scale: float

    def radicand(self):
        return self.A * self.M - self.B**2

    def density(self):
        """``f`` from the components directly (the unstabilized route)."""
        if self.r == 1:
            return 0.0
        return math.sqrt(max(self.radicand(), 0.0)) / self.M / math.pi


def _validate(r, d):
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r!r}")
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")


def density_components(t, r, d):
    """M1, A1, B1, M2, A2, B2 and their r-mixtures at ``t > 0``."""
    _validate(r, d)
    if not t > 0:
        raise ValueError("t must be positive")
    n = d - 1
    i = np.arange(n + 1)
    lb2 = 2.0 * log_binomial_row(n)
    lt = math.log(t)
    l1p = math.log1p(t)
    lM1 = lb2 + 2 * i * lt
    with np.errstate(divide="ignore"):
        li = np.log(i)
    lA1 = (lb2 + 2 * li + 2 * (i - 1) * lt)[1:]
    lB1 = (lb2 + li + (2 * i - 1) * lt)[1:]
    lM2 = 2 * n * l1p
    lA2 = 2 * math.log(n) + 2 * (n - 1) * l1p
    lB2 = math.log(n) + (2 * n - 1) * l1p
    s = max(float(np.max(lM1)), lM2)
    M1 = float(np.exp(lM1 - s).sum())
    A1 = float(np.exp(lA1 - s).sum())
    B1 = float(np.exp(lB1 - s).sum())
    M2, A2, B2 = math.exp(lM2 - s), math.exp(lA2 - s), math.exp(lB2 - s)
    q = 1.0 - r
    return DensityComponents(
        t=float(t), d=int(d), r=float(r),
        M1=M1, A1=A1, B1=B1, M2=M2, A2=A2, B2=B2,
        M=q * M1 + r * M2, A=q * A1 + r * A2, B=q * B1 + r * B2,
        log_scale=s,
    )


def density_at_zero(r, d):
    """Limit of ``f(t; r, d)`` as ``t -> 0+``: ``(d-1) sqrt(1-r^2) / pi``."""
    return (d - 1) * math.sqrt(max(1.0 - r * r, 0.0)) / math.pi


def density(t, r, d):
    """Density ``f(t; r, d)`` of positive roots; ``t`` may be an array.

    Zero for ``r = 1``; the analytic limit is used at ``t = 0`` (and below
    1e-100, where the two agree to that order).
    """
    _validate(r, d)
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    if np.any(t_arr < 0):
        raise ValueError("t must be non-negative")
    out = np.zeros(t_arr.shape)
    if r == 1:
        return float(out[0]) if scalar else out

    tiny = t_arr < TINY_T
    out[tiny] = density_at_zero(r, d)
    tt = t_arr[~tiny]
    if tt.size:
        out[~tiny] = _density_positive(tt, float(r), int(d))
    return float(out[0]) if scalar else out


def _density_positive(t, r, d):
    n = d - 1
    i = np.arange(n + 1)
    lt = np.log(t)[:, None]
    lw = 2.0 * log_binomial_row(n) + 2 * i * lt
    lM1 = _logsumexp(lw)
    lp = lw - lM1[:, None]
    p = np.exp(lp)
    mean = p @ i
    # p_i / t^2, formed in the log domain
    pt2 = np.exp(lp - 2 * lt)
    var_t2 = np.sum(pt2 * (i - mean[:, None]) ** 2, axis=1)
    c = n * t / (1.0 + t)
    q_term = np.sum(pt2 * (i - c[:, None]) ** 2, axis=1)
    rho = np.exp(2 * n * np.log1p(t) - lM1)
    q = 1.0 - r
    num = q * (q * var_t2 + r * rho * q_term)
    den = q + r * rho
    return np.sqrt(np.maximum(num, 0.0)) / den / math.pi


def density_at_one(r, d):
    """Closed form of ``f(1; r, d)`` via log-gamma central binomials."""
    _validate(r, d)
    if r == 1:
        return 0.0
    n = d - 1
    log_central = math.lgamma(2 * n + 1) - 2 * math.lgamma(n + 1)
    alpha = r / (1.0 - r) * math.exp(n * math.log(4.0) - log_central)
    return n / (2.0 * math.sqrt(2 * n - 1)) / math.pi / math.sqrt(1.0 + alpha)


def density_in_x(y, r, d):
    """Density of internal equilibria in the strategy frequency ``y`` in (0, 1).

    ``g(y) = f(y / (1 - y)) / (1 - y)^2``.  The endpoints use
    ``g(0) = g(1) = f(0)``.
    """
    _validate(r, d)
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    if np.any((y_arr < 0) | (y_arr > 1)):
        raise ValueError("y must lie in [0, 1]")
    out = np.empty(y_arr.shape)
    end = (y_arr == 0) | (y_arr == 1)
    out[end] = 0.0 if r == 1 else density_at_zero(r, d)
    yy = y_arr[~end]
    out[~end] = density(yy / (1.0 - yy), r, d) / (1.0 - yy) ** 2
    return float(out[0]) if scalar else out
