"""Expected number of internal equilibria: quadrature against sampling.

Each cell draws 10^5 random games, counts their equilibria, and compares
the mean with the integral of the density.  About half of the equilibria
are stable.
"""
from eqgames import SimulationConfig, expected_internal, simulate

print(" d     r   E (quadrature)   E_hat +- stderr      SE_hat")
for d in (3, 4, 5):
    for r in (0.0, 0.25, 0.5, 0.75):
        exact = expected_internal(r, d)
        rep = simulate(SimulationConfig(d, r, 100_000, seed=7919 * d + round(1000 * r)))
        print(
            f"{d:2d}  {r:4.2f}   {exact.E:.6f}        {rep.E_hat.mean:.4f} +- {rep.E_hat.stderr:.4f}"
            f"   {rep.SE_hat.mean:.4f} (E/2 = {exact.SE:.4f})"
        )
