"""Monte Carlo estimates of E(r, d), SE(r, d) and the distribution of equilibrium counts."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .roots import positive_roots
from .sampling import chunk_sizes, one_factor_rows, worker_generator

log = logging.getLogger(__name__)

BLOCK = 1 << 15


@dataclass(frozen=True)
class SimulationConfig:
    d: int
    r: float
    n_samples: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if not 0.0 <= self.r <= 1.0:
            raise ValueError("r must lie in [0, 1]")
        if self.n_samples < 1 or self.workers < 1:
            raise ValueError("n_samples and workers must be >= 1")


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    n: int

    def as_dict(self):
        return {"mean": self.mean, "stderr": self.stderr, "n": self.n}


@dataclass
class SimulationReport:
    """Aggregated counts over the non-degenerate draws.

    ``joint[m, s]`` is the number of draws with ``m`` internal and ``s``
    stable equilibria; everything else is derived from it.
    """

    d: int
    r: float
    joint: np.ndarray
    skipped: int
    indeterminate: int

    @property
    def n_effective(self):
        return int(self.joint.sum())

    @property
    def p_hat(self):
        n = self.n_effective
        return self.joint.sum(axis=1) / n if n else np.zeros(self.d)

    def _estimate(self, values):
        # values[m, s]: per-draw statistic for a draw in cell (m, s)
        n = self.n_effective
        if n == 0:
            return Estimate(float("nan"), float("nan"), 0)
        w = self.joint
        mean = float((w * values).sum() / n)
        if n < 2:
            return Estimate(mean, float("nan"), n)
        var = float((w * (values - mean) ** 2).sum() / (n - 1))
        return Estimate(mean, math.sqrt(var / n), n)

    @property
    def E_hat(self):
        m = np.arange(self.d)[:, None] * np.ones((1, self.d))
        return self._estimate(m)

    @property
    def SE_hat(self):
        s = np.ones((self.d, 1)) * np.arange(self.d)[None, :]
        return self._estimate(s)

    @property
    def stable_gap(self):
        """Per-draw ``stable - count / 2``; its mean is 0 when SE = E/2."""
        m = np.arange(self.d)[:, None]
        s = np.arange(self.d)[None, :]
        return self._estimate(s - m / 2.0)


def count_batch(beta_rows):
    """Per-row number of internal equilibria and of stable ones.

    Returns ``(counts, stable, indeterminate, degenerate)``; degenerate rows
    (all zero, or vanishing leading coefficient) have zero counts.
    """
    found = positive_roots(beta_rows, skip_degenerate=True)
    counts, stable, indet = found.counts(len(beta_rows))
    return counts, stable, indet, found.degenerate


def _run_worker(d, r, seed, worker, size):
    rng = worker_generator(seed, worker)
    joint = np.zeros((d, d), dtype=np.int64)
    skipped = 0
    indeterminate = 0
    done = 0
    while done < size:
        count = min(BLOCK, size - done)
        rows = one_factor_rows(rng, d, r, count)
        m, s, ind, deg = count_batch(rows)
        ok = ~deg
        np.add.at(joint, (m[ok], s[ok]), 1)
        skipped += int(deg.sum())
        indeterminate += int(ind.sum())
        done += count
    return joint, skipped, indeterminate


def simulate(cfg):
    """Sample ``cfg.n_samples`` games and tabulate their equilibria.

    Worker ``w`` draws its share from the stream keyed by ``(seed, w)`` in
    blocks; the per-worker tables are merged in worker order, so the report
    depends only on ``cfg``.
    """
    sizes = chunk_sizes(cfg.n_samples, cfg.workers)
    args = [(cfg.d, cfg.r, cfg.seed, w, size) for w, size in enumerate(sizes)]
    if cfg.workers == 1:
        parts = [_run_worker(*a) for a in args]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(lambda a: _run_worker(*a), args))
    joint = np.zeros((cfg.d, cfg.d), dtype=np.int64)
    skipped = indeterminate = 0
    for j, sk, ind in parts:
        joint += j
        skipped += sk
        indeterminate += ind
    if skipped:
        log.info("skipped %d degenerate draws", skipped)
    return SimulationReport(cfg.d, cfg.r, joint, skipped, indeterminate)


def simulate_stable_fraction(cfg):
    """Mean number of stable equilibria per game.

    Roots whose stability cannot be decided are left out of the count and
    logged.
    """
    rep = simulate(cfg)
    if rep.indeterminate:
        log.warning("%d roots with undecided stability excluded", rep.indeterminate)
    return rep.SE_hat


@dataclass(frozen=True)
class SkewnessDiagnostics:
    skewness: np.ndarray
    bound: float
    flagged_columns: np.ndarray
    excluded_rows: int

    @property
    def ok(self):
        finite = ~self.flagged_columns
        return bool(np.all(np.abs(self.skewness[finite]) < self.bound))


def skewness_diagnostics(beta_rows):
    """Sample skewness of each coefficient and the ``4 sqrt(6/n)`` bound.

    All-zero rows are dropped; zero-variance columns are flagged and their
    skewness reported as NaN.
    """
    beta_rows = np.atleast_2d(np.asarray(beta_rows, dtype=float))
    zero = ~np.any(beta_rows != 0, axis=1)
    x = beta_rows[~zero]
    n = len(x)
    centered = x - x.mean(axis=0)
    m2 = (centered**2).mean(axis=0)
    m3 = (centered**3).mean(axis=0)
    flat = m2 <= 1e-300
    with np.errstate(divide="ignore", invalid="ignore"):
        skew = np.where(flat, np.nan, m3 / np.where(flat, 1.0, m2) ** 1.5)
    return SkewnessDiagnostics(skew, 4.0 * math.sqrt(6.0 / n), flat, int(zero.sum()))


def beta_symmetry_check(cfg):
    """Skewness of each ``beta_k`` over a fresh batch drawn as in :func:`simulate`."""
    blocks = [
        one_factor_rows(worker_generator(cfg.seed, w), cfg.d, cfg.r, size)
        for w, size in enumerate(chunk_sizes(cfg.n_samples, cfg.workers))
    ]
    return skewness_diagnostics(np.concatenate(blocks))
