"""From payoff correlations to coefficient correlation, and sampling.

If payoffs of the same strategy are correlated (r_a, r_b) and the two
strategies' payoffs are cross-correlated (r_ab, r_ab_same), the differences
beta_k are equicorrelated with a single r.  Sampling uses one shared factor.
"""
import numpy as np

from eqgames import CorrelationSpec, OutOfModelRange, effective_correlation, sample_beta

spec = CorrelationSpec(r_a=0.6, r_b=0.4, r_ab=0.1, r_ab_same=0.2, eta2=3.0)
r = effective_correlation(spec)
print(f"effective correlation r = {r:.4f}")

try:
    effective_correlation(CorrelationSpec(r_a=0.0, r_b=0.0, r_ab=0.4))
except OutOfModelRange as exc:
    print("rejected:", exc)

batch = sample_beta(d=5, r=r, n=200_000, seed=42, workers=4)
corr = np.corrcoef(batch.beta_rows.T)
print("empirical pairwise correlations:", np.round(corr[np.triu_indices(5, 1)], 3))
print("column variances               :", np.round(batch.beta_rows.var(axis=0), 3))
