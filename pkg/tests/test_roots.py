import math
from fractions import Fraction

import numpy as np
import pytest

from eqgames import roots
from eqgames.game import binomial_row


def bernstein_direct(b, x):
    n = len(b) - 1
    k = np.arange(n + 1)
    return np.sum(b * binomial_row(n) * x**k * (1 - x) ** (n - k))


def test_de_casteljau_matches_direct_sum():
    rng = np.random.default_rng(0)
    for n in (1, 3, 8, 20):
        b = rng.standard_normal(n + 1)
        for x in (0.0, 0.2, 0.5, 0.93, 1.0):
            assert roots.de_casteljau(b[None, :], np.array([x]))[0] == pytest.approx(bernstein_direct(b, x), abs=1e-12)


def test_split_halves_reproduce_polynomial():
    rng = np.random.default_rng(1)
    b = rng.standard_normal((3, 7))
    left, right = roots.bernstein_split(b)
    x = np.full(3, 0.3)
    assert np.allclose(roots.de_casteljau(left, x), roots.de_casteljau(b, 0.5 * x), atol=1e-13)
    assert np.allclose(roots.de_casteljau(right, x), roots.de_casteljau(b, 0.5 + 0.5 * x), atol=1e-13)


def test_sign_variations_skip_zeros():
    assert roots.sign_variations(np.array([[1.0, 0.0, -2.0, 3.0], [1.0, 2.0, 0.0, 4.0]])).tolist() == [2, 0]


def test_float_and_exact_routes_agree():
    rng = np.random.default_rng(2)
    beta = rng.standard_normal((300, 9))
    iso, amb = roots.isolate_float(beta)
    counts = np.bincount(iso.owner, minlength=300)
    for row in range(0, 300, 7):
        if amb[row]:
            continue
        ex = roots.isolate_exact(beta[row])
        assert counts[row] == len(ex.intervals) + len(ex.points)


def test_isolating_intervals_bracket_roots():
    rng = np.random.default_rng(3)
    beta = rng.standard_normal((200, 6))
    iso, _ = roots.isolate_float(beta)
    a = roots.de_casteljau(beta[iso.owner], iso.x_lo)
    b = roots.de_casteljau(beta[iso.owner], iso.x_hi)
    assert np.all(a * b < 0)
    assert np.all(np.sign(a) == iso.sign_lo)


def test_exact_route_handles_double_root():
    # (y - 1)^2 (y - 4) in Bernstein form
    ex = roots.isolate_exact([-4, 3, -2, 1])
    total = len(ex.intervals) + len(ex.points)
    assert total == 2


def test_exact_route_root_on_bisection_point():
    # (y - 1)(y - 4): two variations force a split at x = 1/2, which is the root y = 1
    ex = roots.isolate_exact([4.0, -2.5, 1.0])
    assert ex.points == [Fraction(1, 2)]
    assert len(ex.intervals) == 1
    lo, hi, _ = ex.intervals[0]
    assert lo < Fraction(4, 5) < hi


def test_square_free_part():
    sf = roots.square_free_bernstein([Fraction(v) for v in (-4, 3, -2, 1)])
    # (y - 1)(y - 4) = y^2 - 5y + 4 -> Bernstein (4, -5/2, 1)
    assert sf == [4, Fraction(-5, 2), 1]


def test_count_roots_matches_positive_roots():
    rng = np.random.default_rng(4)
    beta = rng.standard_normal((500, 7))
    found = roots.positive_roots(beta)
    assert np.array_equal(roots.count_roots(beta), found.counts(500)[0])


def test_refined_roots_are_accurate():
    rng = np.random.default_rng(5)
    beta = rng.standard_normal((200, 6))
    found = roots.positive_roots(beta)
    for row in np.unique(found.owner):
        coeffs = beta[row] * binomial_row(5)
        ref = np.roots(coeffs[::-1])
        ref = np.sort(ref[(np.abs(ref.imag) < 1e-9) & (ref.real > 0)].real)
        ys = np.sort(found.y[found.owner == row])
        assert len(ys) == len(ref)
        assert np.allclose(ys, ref, rtol=1e-8, atol=1e-10)


def test_stability_matches_derivative_sign():
    rng = np.random.default_rng(6)
    beta = rng.standard_normal((20_000, 5))
    found = roots.positive_roots(beta)
    coeffs = beta * binomial_row(4)
    deriv = np.array([np.polyval(np.polyder(coeffs[o][::-1]), y) for o, y in zip(found.owner, found.y)])
    det = found.stability != roots.INDETERMINATE
    assert np.array_equal(found.stability[det] == roots.STABLE, deriv[det] < 0)


def test_degenerate_rows_flagged():
    beta = np.array([[0.0, 0.0, 0.0], [1.0, -3.0, 0.0], [1.0, -3.0, 1.0]])
    found = roots.positive_roots(beta)
    assert found.degenerate.tolist() == [True, False, False]
    found = roots.positive_roots(beta, skip_degenerate=True)
    assert found.degenerate.tolist() == [True, True, False]
    assert set(found.owner.tolist()) == {2}


def test_leading_zero_still_counted_when_not_skipped():
    # beta = (1, -3, 0): P(y) = 1 - 6y, one root at y = 1/6
    found = roots.positive_roots(np.array([[1.0, -3.0, 0.0]]))
    assert found.y == pytest.approx([1 / 6])


def test_high_degree_uses_finite_depth():
    rng = np.random.default_rng(8)
    beta = rng.standard_normal((5, 601))
    counts = roots.count_roots(beta)
    assert np.all(counts <= 600)
    # expected count at d = 600, r = 0 is about 17; sanity window only
    assert 3 <= counts.mean() <= 40


def test_exact_integers_scaling():
    ints = roots._to_integers([0.5, -0.25, 1.0])
    assert ints == [2, -1, 4]
    assert math.gcd(*ints) == 1
