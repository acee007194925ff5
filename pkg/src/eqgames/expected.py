"""Expected numbers of internal and stable equilibria by quadrature.

``E(r, d) = 2 * integral_0^1 f(t; r, d) dt`` follows from ``f(1/t) = t^2 f(t)``,
and ``SE(r, d) = E(r, d) / 2`` because flipping the sign of every
``beta_k`` keeps the roots and reverses their stability.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .density import density
from .errors import ConvergenceFailure
from .quadrature import QuadratureConfig, integrate


@dataclass(frozen=True)
class ExpectedResult:
    E: float
    SE: float
    est_error: float
    d: int
    r: float
    converged: bool = True
    message: Optional[str] = None


def _check(r, d):
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r!r}")
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")


def expected_internal(r, d, cfg=None):
    """Expected number of internal equilibria ``E(r, d)`` and ``SE = E/2``."""
    _check(r, d)
    cfg = cfg or QuadratureConfig()
    if r == 1:
        return ExpectedResult(0.0, 0.0, 0.0, int(d), float(r))
    # the doubled integral must meet the tolerance
    half_cfg = QuadratureConfig(cfg.abs_tol / 2, cfg.rel_tol, cfg.max_subdivisions)
    try:
        val, err = integrate(lambda t: density(t, r, d), 0.0, 1.0, half_cfg)
    except ConvergenceFailure as exc:
        raise ConvergenceFailure(str(exc), 2 * exc.value, 2 * exc.error) from exc
    E = 2.0 * float(val)
    return ExpectedResult(E, E / 2.0, 2.0 * float(err), int(d), float(r))


def expected_internal_improper(r, d, cfg=None, cutoff=1e3):
    """``integral_0^cutoff f(t) dt``, a cross-check on the folded integral.

    The missing tail equals ``integral_0^(1/cutoff) f``, i.e. at most
    ``f(0) / cutoff`` for moderate ``d``.
    """
    _check(r, d)
    if cutoff < 10:
        raise ValueError("cutoff must be >= 10")
    if r == 1:
        return 0.0
    cfg = cfg or QuadratureConfig()

    def f(t):
        return density(t, r, d)

    head, _ = integrate(f, 0.0, 1.0, cfg)
    # f decays like t^-2 past 1; integrate in s = 1/t on [1/cutoff, 1]
    tail, _ = integrate(lambda s: f(1.0 / s) / s**2, 1.0 / cutoff, 1.0, cfg)
    return float(head + tail)


def expected_above_one(r, d, cfg=None):
    """``2 * integral_1^inf f(t) dt`` through the substitution ``t = 1/s``.

    Unlike :func:`expected_internal` this never uses the functional equation,
    only the change of variables, so the two must agree independently.
    """
    _check(r, d)
    if r == 1:
        return 0.0
    cfg = cfg or QuadratureConfig()
    s_min = 1e-12

    val, _ = integrate(lambda s: density(1.0 / s, r, d) / s**2, s_min, 1.0, cfg)
    return 2.0 * float(val)


def expected_curve(r_values, d_values, cfg=None):
    """``E(r, d)`` on a grid, rows ordered with ``d`` outer and ``r`` inner.

    Cells that fail to converge come back with ``converged=False`` and the
    partial value instead of aborting the whole grid.
    """
    rows = []
    for d in d_values:
        for r in r_values:
            try:
                rows.append(expected_internal(r, d, cfg))
            except ConvergenceFailure as exc:
                rows.append(ExpectedResult(exc.value, exc.value / 2, exc.error, int(d), float(r), False, str(exc)))
    return rows
