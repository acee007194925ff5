"""Where the equilibria sit: the density of roots in y and in x.

The density in x = y / (1 + y) is symmetric about 1/2, and stronger
correlation pushes the whole curve down.
"""
import numpy as np

from eqgames import density, density_at_one, density_in_x

d = 10
grid = np.linspace(0, 1, 11)
for r in (0.0, 0.3, 0.7, 1.0):
    g = density_in_x(grid, r, d)
    print(f"r = {r:.1f}  g(x) on [0, 1]:", np.array2string(g, precision=3))

print()
print("f(1) from the closed form :", density_at_one(0.3, d))
print("f(1) from the sums        :", density(1.0, 0.3, d))
t = 0.37
print(f"f(1/t) = t^2 f(t) at t = {t}:", density(1 / t, 0.3, d), t * t * density(t, 0.3, d))
