"""Real zeros of random Bernstein polynomials.

With i.i.d. standard normal coefficients, a Bernstein polynomial of degree
n has on average 2 E(0, n + 1) real zeros, close to sqrt(2n + 1).
"""
from eqgames import bernstein_expected_real_zeros

for degree in (1, 2, 5, 10, 50, 200, 1000):
    res = bernstein_expected_real_zeros(degree)
    print(f"degree {degree:5d}: {res.expected_real_zeros:9.4f} real zeros, sqrt(2n+1) = {res.asymptote:9.4f}")
