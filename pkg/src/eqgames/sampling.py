"""Equicorrelated Gaussian coefficients and the payoff-to-beta correlation map."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotPSD, OutOfModelRange


@dataclass(frozen=True)
class CorrelationSpec:
    """Payoff-level correlations, or a direct effective correlation ``r``.

    ``r_ab`` is the A/B cross-correlation for different group compositions
    and ``r_ab_same`` the one for the same composition.  ``eta2`` is the
    common payoff variance; it cancels out of the effective correlation.
    """

    r: Optional[float] = None
    r_a: Optional[float] = None
    r_b: Optional[float] = None
    r_ab: float = 0.0
    r_ab_same: float = 0.0
    eta2: float = 1.0

    def __post_init__(self):
        if self.r is None and (self.r_a is None or self.r_b is None):
            raise ValueError("give either r or both r_a and r_b")
        if self.eta2 <= 0:
            raise ValueError("eta2 must be positive")


def effective_correlation(spec):
    """corr(beta_i, beta_j) implied by ``spec``.

    Raises :class:`OutOfModelRange` when the result leaves [0, 1].
    """
    if spec.r is not None:
        r = float(spec.r)
    else:
        if spec.r_ab_same >= 1:
            raise ValueError("r_ab_same must be < 1")
        r = (spec.r_a + spec.r_b - 2.0 * spec.r_ab) / (2.0 * (1.0 - spec.r_ab_same))
    if not 0.0 <= r <= 1.0:
        raise OutOfModelRange(f"effective correlation {r!r} is outside [0, 1]")
    return r


@dataclass
class SampleBatch:
    d: int
    r: float
    n: int
    seed: int
    beta_rows: np.ndarray
    workers: int = 1


def worker_generator(seed, worker):
    """Independent PCG64 stream for one worker, keyed by ``(seed, worker)``."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(worker),))
    return np.random.Generator(np.random.PCG64(ss))


def chunk_sizes(n, workers):
    """Deterministic split of ``n`` draws over ``workers``."""
    base, extra = divmod(int(n), int(workers))
    return [base + (1 if w < extra else 0) for w in range(workers)]


def one_factor_rows(rng, d, r, count):
    """``count`` rows of ``sqrt(r) Z0 + sqrt(1 - r) Z_i``."""
    z = rng.standard_normal((count, d + 1))
    return np.sqrt(r) * z[:, :1] + np.sqrt(1.0 - r) * z[:, 1:]


def _check_r(r):
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r!r}")


def sample_beta(d, r, n, seed, workers=1):
    """Draw ``n`` equicorrelated standard normal vectors of length ``d``.

    Worker ``w`` fills its own contiguous block of rows from its own stream,
    so the batch depends on ``(d, r, n, seed, workers)`` only.
    """
    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    _check_r(r)
    blocks = [
        one_factor_rows(worker_generator(seed, w), d, r, size)
        for w, size in enumerate(chunk_sizes(n, workers))
    ]
    return SampleBatch(d, r, n, seed, np.concatenate(blocks), workers)


def clamped_cholesky(cov, tol=1e-8):
    """Lower-triangular ``L`` with ``L L^T = cov`` for PSD ``cov``.

    Pivots within ``-tol * max(diag)`` of zero are clamped to zero, which
    covers rank-deficient matrices such as full equicorrelation.
    """
    cov = np.asarray(cov, dtype=float)
    n = cov.shape[0]
    if cov.shape != (n, n) or not np.allclose(cov, cov.T, rtol=0, atol=1e-12 * max(1.0, np.abs(cov).max())):
        raise ValueError("covariance must be a symmetric square matrix")
    scale = max(np.max(np.diag(cov)), 0.0) or 1.0
    L = np.zeros_like(cov)
    for j in range(n):
        pivot = cov[j, j] - L[j, :j] @ L[j, :j]
        if pivot < -tol * scale:
            raise NotPSD(f"negative pivot {pivot:.3g} at column {j}")
        if pivot <= tol * scale:
            continue  # column stays zero
        L[j, j] = np.sqrt(pivot)
        L[j + 1 :, j] = (cov[j + 1 :, j] - L[j + 1 :, :j] @ L[j, :j]) / L[j, j]
    return L


def sample_beta_general(cov, n, seed, workers=1):
    """Gaussian rows with covariance ``cov`` via ``Y = C Z``."""
    cov = np.asarray(cov, dtype=float)
    L = clamped_cholesky(cov)
    d = cov.shape[0]
    blocks = [
        worker_generator(seed, w).standard_normal((size, d)) @ L.T
        for w, size in enumerate(chunk_sizes(n, workers))
    ]
    off = cov[~np.eye(d, dtype=bool)]
    r = float(off.mean()) if off.size else 0.0
    return SampleBatch(d, r, n, seed, np.concatenate(blocks), workers)


def equicorrelation_matrix(d, r):
    return (1.0 - r) * np.eye(d) + r * np.ones((d, d))
