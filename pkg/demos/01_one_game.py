"""Equilibria of a single three-player game.

A strategist's payoff depends on how many of its two co-players use A.  Only
the differences beta_k = a_k - b_k matter, and the internal equilibria are
the positive roots of P(y) = sum_k beta_k C(2, k) y^k with x = y / (1 + y).
"""
import numpy as np

from eqgames import GameSpec, find_equilibria, gain_function_value, gain_polynomial

# payoff differences (1, -3, 1): A does worse than B only in mixed groups
game = GameSpec(d=3, a=(2.0, 0.0, 5.0), b=(1.0, 3.0, 4.0))
poly = gain_polynomial(game)
print("beta   :", poly.beta)
print("P(y) coefficients, constant first:", poly.coeffs)

rep = find_equilibria(game)
for y, x, stable in zip(rep.roots_y, rep.roots_x, rep.stable_mask):
    print(f"equilibrium x = {x:.6f} (y = {y:.6f}) {'stable' if stable else 'unstable'}")

# the replicator vector field x(1-x) g(x) changes sign at each equilibrium
xs = np.linspace(0.05, 0.95, 10)
print("sign of g on a grid:", np.sign(gain_function_value(game, xs)).astype(int))

# flipping every beta keeps the roots and swaps stability
flipped = find_equilibria(GameSpec.from_beta(-poly.beta))
print("after flipping beta :", flipped.stable_mask)
