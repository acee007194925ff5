"""d-player two-strategy games, their gain polynomial and internal equilibria.

With ``a_k`` (``b_k``) the payoff of an A (B) strategist facing ``k`` A
co-players, internal equilibria are the zeros in (0, 1) of the gain function

    g(x) = sum_k beta_k C(d-1, k) x^k (1-x)^(d-1-k),    beta_k = a_k - b_k,

or equivalently the positive roots of ``P(y) = sum_k beta_k C(d-1, k) y^k``
with ``y = x / (1 - x)``.  An equilibrium is stable iff ``P'(y*) < 0``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import roots as _roots
from .errors import AllCoefficientsZero, RootAtToleranceBoundary

EPS_ZERO = 1e-12
EXACT_BINOMIAL_MAX_D = 64


def binomial_row(n):
    """``C(n, k)`` for ``k = 0..n`` as floats.

    Exact integer arithmetic up to ``n = 63``; beyond that exp of log-gamma,
    which keeps the relative error well under 1e-12 and never overflows an
    intermediate.
    """
    if n + 1 <= EXACT_BINOMIAL_MAX_D:
        return np.array([float(math.comb(n, k)) for k in range(n + 1)])
    lg = math.lgamma(n + 1)
    return np.array([math.exp(lg - math.lgamma(k + 1) - math.lgamma(n - k + 1)) for k in range(n + 1)])


@dataclass(frozen=True)
class GameSpec:
    """Payoffs of one symmetric d-player game with strategies A and B."""

    d: int
    a: tuple
    b: tuple

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"group size d must be >= 2, got {self.d}")
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if len(self.a) != self.d or len(self.b) != self.d:
            raise ValueError("a and b must both have length d")

    @classmethod
    def from_beta(cls, beta):
        """Game with ``a = beta`` and ``b = 0``; only the differences matter."""
        beta = tuple(float(v) for v in beta)
        return cls(len(beta), beta, (0.0,) * len(beta))

    @property
    def beta(self):
        return np.subtract(self.a, self.b)


@dataclass(frozen=True)
class GainPolynomial:
    d: int
    beta: np.ndarray
    coeffs: np.ndarray

    @classmethod
    def from_coeffs(cls, coeffs):
        """Build from monomial coefficients ``c_k`` of ``P(y)``."""
        coeffs = np.asarray(coeffs, dtype=float)
        d = len(coeffs)
        if d < 2:
            raise ValueError("need at least two coefficients")
        return cls(d, coeffs / binomial_row(d - 1), coeffs)

    def __call__(self, y):
        return np.polynomial.polynomial.polyval(y, self.coeffs)

    def derivative(self, y):
        return np.polynomial.polynomial.polyval(y, np.polynomial.polynomial.polyder(self.coeffs))


@dataclass
class EquilibriumReport:
    roots_y: np.ndarray
    roots_x: np.ndarray
    stable_mask: np.ndarray
    indeterminate_mask: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.indeterminate_mask is None:
            self.indeterminate_mask = np.zeros(len(self.roots_y), dtype=bool)

    @property
    def count(self):
        return len(self.roots_y)

    @property
    def stable_count(self):
        return int(np.count_nonzero(self.stable_mask))


def gain_polynomial(game):
    """Differences ``beta_k = a_k - b_k`` and monomial coefficients of P(y)."""
    beta = game.beta
    return GainPolynomial(game.d, beta, beta * binomial_row(game.d - 1))


def gain_function_value(game, x):
    """Bernstein-form gain function ``g(x)``; accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    n = game.d - 1
    k = np.arange(n + 1)
    terms = game.beta * binomial_row(n) * x[..., None] ** k * (1.0 - x[..., None]) ** (n - k)
    return terms.sum(axis=-1)


def _check_nonzero(beta, reference=None):
    scale = np.max(np.abs(beta)) if len(beta) else 0.0
    ref = scale if reference is None else reference
    if scale == 0 or scale <= EPS_ZERO * ref:
        raise AllCoefficientsZero("gain polynomial is identically zero")


def _report(beta):
    found = _roots.positive_roots(np.asarray(beta, dtype=float)[None, :])
    x = found.x
    y = x / (1.0 - x)
    stab = found.stability
    indet = stab == _roots.INDETERMINATE
    if indet.any():
        warnings.warn(
            f"{int(indet.sum())} root(s) with |P'(y*)| below tolerance; stability left undecided",
            RootAtToleranceBoundary,
            stacklevel=3,
        )
    return EquilibriumReport(y, x, stab == _roots.STABLE, indet)


def count_positive_roots(p):
    """Number of distinct real roots of P in (0, inf).

    Raises :class:`AllCoefficientsZero` for the zero polynomial.
    """
    _check_nonzero(p.beta)
    return int(_roots.count_roots(p.beta)[0])


def find_equilibria(game):
    """Internal equilibria of ``game`` with their stability.

    >>> rep = find_equilibria(GameSpec.from_beta([1.0, -1.0]))
    >>> rep.roots_x, rep.stable_mask
    (array([0.5]), array([ True]))
    """
    beta = game.beta
    _check_nonzero(beta, max(np.max(np.abs(game.a)), np.max(np.abs(game.b))))
    return _report(beta)


def find_equilibria_poly(p):
    """Same as :func:`find_equilibria` for a bare :class:`GainPolynomial`."""
    _check_nonzero(p.beta)
    return _report(p.beta)
