import numpy as np
import pytest

from eqgames import CorrelationSpec, NotPSD, OutOfModelRange, effective_correlation, sample_beta, sample_beta_general
from eqgames.sampling import chunk_sizes, clamped_cholesky, equicorrelation_matrix


def offdiag(corr):
    return corr[~np.eye(len(corr), dtype=bool)]


@pytest.mark.parametrize(
    "spec, expected",
    [
        (CorrelationSpec(r_a=0.5, r_b=0.5, r_ab=0.0, r_ab_same=0.0), 0.5),
        (CorrelationSpec(r_a=0.4, r_b=0.2, r_ab=0.3, r_ab_same=0.0), 0.0),
        (CorrelationSpec(r_a=1.0, r_b=1.0, r_ab=1.0, r_ab_same=0.0), 0.0),
        (CorrelationSpec(r=0.7), 0.7),
    ],
)
def test_effective_correlation(spec, expected):
    assert effective_correlation(spec) == pytest.approx(expected, abs=1e-15)


def test_effective_correlation_independent_of_variance():
    a = CorrelationSpec(r_a=0.6, r_b=0.3, r_ab=0.1, r_ab_same=0.2, eta2=1.0)
    b = CorrelationSpec(r_a=0.6, r_b=0.3, r_ab=0.1, r_ab_same=0.2, eta2=17.0)
    assert effective_correlation(a) == effective_correlation(b)


def test_effective_correlation_rejects_out_of_range():
    with pytest.raises(OutOfModelRange):
        effective_correlation(CorrelationSpec(r_a=0.0, r_b=0.0, r_ab=0.5, r_ab_same=0.0))
    with pytest.raises(OutOfModelRange):
        effective_correlation(CorrelationSpec(r_a=1.0, r_b=1.0, r_ab=-0.5, r_ab_same=0.0))
    with pytest.raises(ValueError):
        effective_correlation(CorrelationSpec(r_a=0.5, r_b=0.5, r_ab=0.0, r_ab_same=1.0))
    with pytest.raises(ValueError):
        CorrelationSpec(r_a=0.5)


def test_r_one_rows_are_constant():
    batch = sample_beta(6, 1.0, 100, seed=3)
    assert np.all(batch.beta_rows == batch.beta_rows[:, :1])


@pytest.mark.parametrize("r, tol", [(0.0, 3 / np.sqrt(1e5)), (0.5, 0.01)])
def test_empirical_correlation(r, tol):
    batch = sample_beta(5, r, 100_000, seed=11)
    corr = np.corrcoef(batch.beta_rows.T)
    assert np.max(np.abs(offdiag(corr) - r)) < tol


def test_marginals():
    n = 40_000
    for r in (0.0, 0.3, 0.9):
        y = sample_beta(4, r, n, seed=5).beta_rows
        assert np.all(np.abs(y.mean(axis=0)) < 4 / np.sqrt(n))
        assert np.all(np.abs(y.var(axis=0) - 1) < 6 / np.sqrt(n))


def test_one_factor_covariance():
    y = sample_beta(4, 0.35, 1_000_000, seed=2).beta_rows
    cov = np.cov(y.T)
    assert np.max(np.abs(cov - equicorrelation_matrix(4, 0.35))) < 0.005


def test_determinism_and_worker_split():
    a = sample_beta(5, 0.4, 1001, seed=9, workers=3)
    b = sample_beta(5, 0.4, 1001, seed=9, workers=3)
    assert np.array_equal(a.beta_rows, b.beta_rows)
    c = sample_beta(5, 0.4, 1001, seed=9, workers=2)
    assert not np.array_equal(a.beta_rows, c.beta_rows)
    assert chunk_sizes(1001, 3) == [334, 334, 333]
    # worker 0 of a larger pool draws the same leading rows as a single worker
    single = sample_beta(5, 0.4, 334, seed=9, workers=1)
    assert np.array_equal(single.beta_rows, a.beta_rows[:334])


def test_sample_beta_validation():
    with pytest.raises(ValueError):
        sample_beta(1, 0.5, 10, seed=0)
    with pytest.raises(ValueError):
        sample_beta(3, 1.5, 10, seed=0)


def test_cholesky_identity_and_reconstruction():
    assert np.array_equal(clamped_cholesky(np.eye(3)), np.eye(3))
    cov = equicorrelation_matrix(5, 0.3)
    L = clamped_cholesky(cov)
    assert np.allclose(L @ L.T, cov, atol=1e-14)


def test_cholesky_semidefinite_clamps():
    L = clamped_cholesky(equicorrelation_matrix(4, 1.0))
    assert np.allclose(L @ L.T, np.ones((4, 4)), atol=1e-12)
    batch = sample_beta_general(equicorrelation_matrix(4, 1.0), 50, seed=1)
    assert np.allclose(batch.beta_rows, batch.beta_rows[:, :1])


def test_cholesky_rejects_indefinite():
    with pytest.raises(NotPSD):
        clamped_cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_identity_covariance_gives_iid():
    y = sample_beta_general(np.eye(4), 100_000, seed=4).beta_rows
    assert np.max(np.abs(offdiag(np.corrcoef(y.T)))) < 4 / np.sqrt(1e5)


def test_general_path_agrees_with_one_factor():
    n = 100_000
    a = sample_beta(4, 0.3, n, seed=21).beta_rows
    b = sample_beta_general(equicorrelation_matrix(4, 0.3), n, seed=22).beta_rows
    # means: difference of two sample means has sd sqrt(2/n)
    assert np.all(np.abs(a.mean(axis=0) - b.mean(axis=0)) < 4 * np.sqrt(2 / n))
    # correlations: sd of a sample correlation is about (1 - r^2)/sqrt(n)
    sd = (1 - 0.3**2) * np.sqrt(2 / n)
    diff = offdiag(np.corrcoef(a.T)) - offdiag(np.corrcoef(b.T))
    assert np.all(np.abs(diff) < 4 * sd)
