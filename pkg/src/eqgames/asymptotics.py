"""Large-d approximations of E(r, d) and the random Bernstein corollary.

Regimes as ``d -> inf``:

* ``r = 0``: ``E ~ sqrt(2d - 1) / 2``
* ``0 < r < 1``: ``E1 = 2 * integral_0^1 f_a(t) dt`` with the asymptotic density
  ``f_a``, or the closed form ``E2`` obtained by keeping only the leading
  powers of ``d`` inside ``f_a``
* ``r = 1``: ``E = 0``
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .expected import expected_internal
from .quadrature import QuadratureConfig, integrate


class Regime(str, Enum):
    R_ZERO = "r_zero"
    R_INTERIOR_E1 = "r_interior_E1"
    R_INTERIOR_E2 = "r_interior_E2"
    R_ONE = "r_one"


@dataclass(frozen=True)
class AsymptoticResult:
    value: float
    regime: Regime
    d: int
    r: float


def e2_constant():
    """``8 Gamma(5/4)^2 / sqrt(pi)``, the value of ``integral_0^1 t^(-3/4) (1+t)^(-1/2) dt``."""
    return 8.0 * math.exp(2.0 * math.lgamma(1.25)) / math.sqrt(math.pi)


def asymptotic_r0(d):
    return math.sqrt(2 * d - 1) / 2.0


def _interior(r):
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r!r}")


def asymptotic_density_sq(t, r, d):
    """``f_a(t)^2``.

    Both terms of the numerator are non-negative for ``d >= 2`` and
    ``0 < r < 1``; :func:`asymptotic_E1` still clamps at zero before the
    square root.
    """
    t = np.asarray(t, dtype=float)
    sq = np.sqrt((d - 1) * t)
    num = (1 - r) * (2 * (1 - 2 * d) * (r - 1) * t * (t + 1) + math.sqrt(math.pi) * r * (t * (8 * d + t - 6) + 1) * sq)
    den = 8 * math.pi**2 * t**2 * (t + 1) * ((r - 1) * (t + 1) - 2 * math.sqrt(math.pi) * r * sq) ** 2
    return num / den


def asymptotic_E1(r, d, cfg=None):
    """``2 * integral_0^1 f_a(t) dt``.

    ``f_a`` blows up like ``t^(-3/4)`` at 0, so the integral is taken in
    ``u`` with ``t = u^4``, where the integrand ``4 u^3 f_a(u^4)`` is bounded.
    """
    _interior(r)
    cfg = cfg or QuadratureConfig()

    def integrand(u):
        u = np.asarray(u, dtype=float)
        t = u**4
        out = np.zeros_like(u)
        pos = t > 0
        out[pos] = 4 * u[pos] ** 3 * np.sqrt(np.maximum(asymptotic_density_sq(t[pos], r, d), 0.0))
        return out

    val, _ = integrate(integrand, 0.0, 1.0, cfg)
    return 2.0 * float(val)


def asymptotic_E2(r, d):
    """Closed-form approximation ``2 * integral_0^1`` of the leading-order ``f_a``.

    Equals ``d^(1/4) (1-r)^(1/2) / (pi^(5/4) r^(1/2)) * 8 Gamma(5/4)^2 / sqrt(pi)``.
    """
    _interior(r)
    return 2.0 * d**0.25 * math.sqrt(1 - r) / (2 * math.pi**1.25 * math.sqrt(r)) * e2_constant()


def asymptotic(r, d, cfg=None, interior="E2"):
    """Asymptotic value of ``E(r, d)`` in the regime selected by ``r``."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r!r}")
    if r == 0:
        return AsymptoticResult(asymptotic_r0(d), Regime.R_ZERO, d, r)
    if r == 1:
        return AsymptoticResult(0.0, Regime.R_ONE, d, r)
    if interior == "E1":
        return AsymptoticResult(asymptotic_E1(r, d, cfg), Regime.R_INTERIOR_E1, d, r)
    return AsymptoticResult(asymptotic_E2(r, d), Regime.R_INTERIOR_E2, d, r)


def relative_error(approx, exact):
    """Signed ``approx / exact - 1``."""
    return approx / exact - 1.0


def table_cell(which, r, d, cfg=None):
    """Signed ``E_which / E - 1``; the ``r = 0`` column uses ``sqrt(2d-1)/2`` in both tables."""
    exact = expected_internal(r, d, cfg).E
    if r == 0:
        approx = asymptotic_r0(d)
    elif which == 1:
        approx = asymptotic_E1(r, d, cfg)
    elif which == 2:
        approx = asymptotic_E2(r, d)
    else:
        raise ValueError("which must be 1 or 2")
    return relative_error(approx, exact)


@dataclass(frozen=True)
class BernsteinResult:
    degree: int
    expected_real_zeros: float
    asymptote: float


def bernstein_expected_real_zeros(degree, cfg=None):
    """Expected number of real zeros of a random Bernstein polynomial.

    Coefficients are i.i.d. standard normal.  Under ``y = x / (1 - x)`` the
    zeros in (0, 1) are the positive roots of a gain polynomial with
    ``d = degree + 1``; the remaining real zeros map to negative ``y`` and,
    since ``y -> -y`` only flips coefficient signs, have the same mean count.
    Hence ``2 E(0, degree + 1)``.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    res = expected_internal(0.0, degree + 1, cfg)
    return BernsteinResult(degree, 2.0 * res.E, math.sqrt(2 * degree + 1))
