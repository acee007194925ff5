"""Positive-root isolation for gain polynomials in Bernstein form.

A gain polynomial ``P(y) = sum_k beta_k C(n, k) y^k`` has the same positive
roots as ``g(x) = (1 - x)^n P(x / (1 - x))`` on ``(0, 1)``, and the Bernstein
coefficients of ``g`` are exactly the ``beta_k``.  Roots are isolated by
de Casteljau bisection of ``[0, 1]`` together with Descartes' rule of signs
on the Bernstein coefficients of each piece: zero sign variations means no
root in the open piece, one variation means exactly one simple root.

There are two routes using the same rule.

``isolate_float`` processes many polynomials at once in float64.  Any row
whose subdivided coefficients come within the accumulated rounding bound of
zero, or that needs more than ``MAX_DEPTH`` bisection levels, is marked
ambiguous and handed to ``isolate_exact``, which repeats the subdivision in
integer arithmetic (and on the square-free part if the polynomial has a
multiple root in ``(0, 1)``).  Counts are therefore certified on both routes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_DEPTH = 60
EXACT_DEPTH = 400
DERIV_TOL = 1e-9

STABLE = 1
UNSTABLE = 0
INDETERMINATE = -1


def bernstein_split(b):
    """Split Bernstein coefficients on [0, 1] into those on [0, 1/2] and [1/2, 1].

    ``b`` has shape ``(m, n + 1)``; both outputs have the same shape.
    """
    b = np.asarray(b, dtype=float)
    n = b.shape[1] - 1
    left = np.empty_like(b)
    right = np.empty_like(b)
    left[:, 0] = b[:, 0]
    right[:, n] = b[:, n]
    work = b
    for k in range(1, n + 1):
        work = 0.5 * (work[:, :-1] + work[:, 1:])
        left[:, k] = work[:, 0]
        right[:, n - k] = work[:, -1]
    return left, right


def de_casteljau(b, x):
    """Evaluate rows of Bernstein coefficients ``b`` (m, n+1) at points ``x`` (m,)."""
    work = np.array(b, dtype=float)
    x = np.asarray(x, dtype=float)[:, None]
    while work.shape[1] > 1:
        work = (1.0 - x) * work[:, :-1] + x * work[:, 1:]
    return work[:, 0]


def sign_variations(b):
    """Sign changes along each row of ``b``, skipping zeros."""
    b = np.atleast_2d(b)
    out = np.zeros(b.shape[0], dtype=np.int64)
    for i, row in enumerate(np.sign(b)):
        s = row[row != 0]
        out[i] = np.count_nonzero(s[1:] != s[:-1])
    return out


def _strict_variations(s):
    # s: sign array without zeros
    return np.count_nonzero(s[:, 1:] != s[:, :-1], axis=1)


@dataclass
class Isolation:
    """Isolating intervals in x-coordinates for a batch of polynomials.

    ``sign_lo`` is the sign of g just to the right of ``x_lo``.  Roots that
    landed exactly on a bisection point have ``x_lo == x_hi``.
    """

    owner: np.ndarray
    x_lo: np.ndarray
    x_hi: np.ndarray
    sign_lo: np.ndarray

    @classmethod
    def empty(cls):
        return cls(np.zeros(0, np.int64), np.zeros(0), np.zeros(0), np.zeros(0, np.int8))


def isolate_float(beta_rows, max_depth=MAX_DEPTH):
    """Float64 isolation of the roots in (0, 1) of many Bernstein polynomials.

    Returns ``(isolation, ambiguous)`` where ``ambiguous`` is a boolean mask
    of rows the float route could not certify; such rows contribute nothing
    to ``isolation``.
    """
    beta_rows = np.atleast_2d(np.asarray(beta_rows, dtype=float))
    m, width = beta_rows.shape
    n = width - 1
    scale = np.max(np.abs(beta_rows), axis=1)
    # rounding bound of repeated de Casteljau subdivision
    tol = 4.0 * (n + 1) * (max_depth + 1) * np.finfo(float).eps * scale
    ambiguous = scale == 0

    coeffs = beta_rows[~ambiguous]
    owner = np.flatnonzero(~ambiguous)
    lo = np.zeros(len(owner))
    found_owner, found_lo, found_width, found_sign = [], [], [], []
    w = 1.0
    for _ in range(max_depth + 1):
        if len(owner) == 0:
            break
        small = np.abs(coeffs) <= tol[owner][:, None]
        bad = small.any(axis=1)
        if bad.any():
            ambiguous[owner[bad]] = True
        keep = ~ambiguous[owner]
        coeffs, owner, lo = coeffs[keep], owner[keep], lo[keep]
        if len(owner) == 0:
            break
        s = np.sign(coeffs)
        var = _strict_variations(s)
        one = var == 1
        found_owner.append(owner[one])
        found_lo.append(lo[one])
        found_width.append(np.full(np.count_nonzero(one), w))
        found_sign.append(s[one, 0].astype(np.int8))
        many = var >= 2
        if not many.any():
            owner = owner[:0]
            break
        left, right = bernstein_split(coeffs[many])
        w *= 0.5
        coeffs = np.concatenate([left, right])
        owner = np.concatenate([owner[many], owner[many]])
        lo = np.concatenate([lo[many], lo[many] + w])
    if len(owner):
        ambiguous[owner] = True

    if not found_owner:
        return Isolation.empty(), ambiguous
    f_owner = np.concatenate(found_owner)
    f_lo = np.concatenate(found_lo)
    f_w = np.concatenate(found_width)
    f_sign = np.concatenate(found_sign)
    ok = ~ambiguous[f_owner]
    iso = Isolation(f_owner[ok], f_lo[ok], f_lo[ok] + f_w[ok], f_sign[ok])
    return iso, ambiguous


# ---------------------------------------------------------------------------
# exact route


def _to_integers(values):
    fr = [Fraction(v) for v in values]
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return [int(f * den) for f in fr]


def _sign(v):
    return (v > 0) - (v < 0)


def _variations(ints):
    prev = 0
    count = 0
    for v in ints:
        s = _sign(v)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _first_sign(ints):
    for v in ints:
        if v:
            return _sign(v)
    return 0


def _split_int(b):
    # both halves scaled by 2**n so entries stay integers
    n = len(b) - 1
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    work = list(b)
    left[0] = work[0] << n
    right[n] = work[n] << n
    for k in range(1, n + 1):
        work = [work[i] + work[i + 1] for i in range(len(work) - 1)]
        left[k] = work[0] << (n - k)
        right[n - k] = work[-1] << (n - k)
    return left, right


def _isolate_int(b, max_depth):
    """Bisection on integer Bernstein coefficients.

    Returns a list of ``(num, level, kind, sign)``: ``kind`` is ``"interval"``
    for ``[num/2^level, (num+1)/2^level]`` or ``"point"`` for the single
    point ``num/2^level``.  Returns ``None`` if ``max_depth`` is exceeded.
    """
    out = []
    stack = [(b, 0, 0)]
    while stack:
        coeffs, num, level = stack.pop()
        var = _variations(coeffs)
        if var == 0:
            continue
        if var == 1:
            out.append((num, level, "interval", _first_sign(coeffs)))
            continue
        if level >= max_depth:
            return None
        left, right = _split_int(coeffs)
        g = 0
        for v in left + right:
            g = math.gcd(g, v)
        if g > 1:
            left = [v // g for v in left]
            right = [v // g for v in right]
        if right[0] == 0:
            out.append((2 * num + 1, level + 1, "point", 0))
        stack.append((right, 2 * num + 1, level + 1))
        stack.append((left, 2 * num, level + 1))
    return out


# monomial-basis helpers over Fractions, low degree first


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / b[-1]
        q[shift] = c
        for i, bv in enumerate(b):
            r[shift + i] -= c * bv
        r = _trim(r)
    return q, r


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def square_free_bernstein(beta):
    """Bernstein coefficients (Fractions) of the square-free part of P.

    The result has degree ``deg P - deg gcd(P, P')`` and the same distinct
    roots in (0, 1).
    """
    n = len(beta) - 1
    coeffs = [Fraction(b) * math.comb(n, k) for k, b in enumerate(beta)]
    # zero roots at y = 0 and the drop in degree are irrelevant on (0, inf)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    coeffs = _trim(coeffs)
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    if len(coeffs) > 1:
        g = _gcd(coeffs, deriv)
        if len(g) > 1:
            coeffs, _ = _divmod(coeffs, g)
            coeffs = _trim(coeffs)
    m = len(coeffs) - 1
    return [c / math.comb(m, k) for k, c in enumerate(coeffs)]


@dataclass
class ExactRoots:
    """Roots of one polynomial from the exact route."""

    intervals: list  # (x_lo, x_hi, sign_lo) as Fractions / int
    points: list  # exact x of roots that fell on a bisection point
    bern: list  # Fraction Bernstein coefficients that were isolated
    square_free: bool  # True if ``bern`` is the square-free part


def isolate_exact(beta):
    """Certified isolation of the distinct roots in (0, 1), exact arithmetic."""
    fr = [Fraction(b) for b in beta]
    square_free = False
    res = _isolate_int(_to_integers(fr), EXACT_DEPTH)
    if res is None:
        fr = square_free_bernstein(fr)
        square_free = True
        res = _isolate_int(_to_integers(fr), 10 * EXACT_DEPTH)
        if res is None:  # pragma: no cover - square-free input always terminates
            raise RuntimeError("exact root isolation did not terminate")
    intervals, points = [], []
    for num, level, kind, sign in res:
        den = 1 << level
        if kind == "point":
            points.append(Fraction(num, den))
        else:
            intervals.append((Fraction(num, den), Fraction(num + 1, den), sign))
    return ExactRoots(intervals, points, fr, square_free)


# ---------------------------------------------------------------------------
# refinement and stability


def refine(bern, x_lo, x_hi, sign_lo, iterations=64):
    """Vectorized bisection of each bracket down to float resolution."""
    lo = np.array(x_lo, dtype=float)
    hi = np.array(x_hi, dtype=float)
    sign_lo = np.asarray(sign_lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if np.all((mid <= lo) | (mid >= hi)):
            break
        val = de_casteljau(bern, mid)
        same = np.sign(val) == sign_lo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def derivative_test(beta_rows, x):
    """Sign of P'(y*) and whether it is too small to trust.

    Uses ``P'(y) (1-x)^(n-1) = n * sum_j beta_{j+1} B_{j,n-1}(x)``, which keeps
    every term bounded.  Returns ``(value, scale)`` of that Bernstein sum and
    of the same sum over ``|beta|``.
    """
    beta_rows = np.atleast_2d(beta_rows)
    tail = beta_rows[:, 1:]
    return de_casteljau(tail, x), de_casteljau(np.abs(tail), x)


@dataclass
class BatchRoots:
    """All internal roots of a batch of gain polynomials.

    ``stability`` holds ``STABLE``, ``UNSTABLE`` or ``INDETERMINATE``.
    """

    owner: np.ndarray
    x: np.ndarray
    stability: np.ndarray
    degenerate: np.ndarray

    @property
    def y(self):
        return self.x / (1.0 - self.x)

    def counts(self, m):
        n_roots = np.bincount(self.owner, minlength=m)
        n_stable = np.bincount(self.owner[self.stability == STABLE], minlength=m)
        n_indet = np.bincount(self.owner[self.stability == INDETERMINATE], minlength=m)
        return n_roots, n_stable, n_indet


def _classify(beta_rows, owner, x, direction):
    # direction: -1 stable, +1 unstable, 0 unknown sign (decide from P')
    val, scale = derivative_test(beta_rows[owner], x)
    stab = np.where(val < 0, STABLE, UNSTABLE).astype(np.int8)
    known = direction != 0
    stab[known] = np.where(direction[known] < 0, STABLE, UNSTABLE)
    stab[np.abs(val) < DERIV_TOL * scale] = INDETERMINATE
    return stab


def positive_roots(beta_rows, skip_degenerate=False):
    """Locate and classify every internal root of each row of ``beta_rows``.

    Rows that are identically zero are flagged in ``degenerate``; with
    ``skip_degenerate`` rows with a vanishing leading coefficient are flagged
    too.  Flagged rows contribute no roots.
    """
    beta_rows = np.atleast_2d(np.asarray(beta_rows, dtype=float))
    m = beta_rows.shape[0]
    degenerate = ~np.any(beta_rows != 0, axis=1)
    if skip_degenerate:
        degenerate |= beta_rows[:, -1] == 0
    work = np.where(degenerate[:, None], 1.0, beta_rows)

    iso, ambiguous = isolate_float(work)
    ambiguous &= ~degenerate
    keep = ~degenerate[iso.owner]
    owner = iso.owner[keep]
    x = refine(work[owner], iso.x_lo[keep], iso.x_hi[keep], iso.sign_lo[keep])
    # sign_lo > 0 means g runs + to -, i.e. P'(y*) < 0
    direction = -iso.sign_lo[keep].astype(np.int8)
    stab = _classify(work, owner, x, direction)

    owners, xs, stabs = [owner], [x], [stab]
    for row in np.flatnonzero(ambiguous):
        o, xx, ss = _exact_row(beta_rows[row], row)
        owners.append(o)
        xs.append(xx)
        stabs.append(ss)
    owner = np.concatenate(owners)
    x = np.concatenate(xs)
    stab = np.concatenate(stabs)
    order = np.lexsort((x, owner))
    return BatchRoots(owner[order], x[order], stab[order], degenerate)


def count_roots(beta_rows):
    """Number of distinct internal roots per row, without locating them.

    Rows must not be identically zero.
    """
    beta_rows = np.atleast_2d(np.asarray(beta_rows, dtype=float))
    iso, ambiguous = isolate_float(beta_rows)
    counts = np.bincount(iso.owner, minlength=beta_rows.shape[0])
    for row in np.flatnonzero(ambiguous):
        ex = isolate_exact(beta_rows[row])
        counts[row] = len(ex.intervals) + len(ex.points)
    return counts


def _exact_row(beta, row):
    ex = isolate_exact(beta)
    xs, dirs = [], []
    if ex.intervals:
        bern = np.array([[float(c) for c in ex.bern]])
        big = np.max(np.abs(bern))
        bern = bern / big if big > 0 else bern
        lo = np.array([float(a) for a, _, _ in ex.intervals])
        hi = np.array([float(b) for _, b, _ in ex.intervals])
        sg = np.array([s for _, _, s in ex.intervals], dtype=np.int8)
        xs.append(refine(np.repeat(bern, len(lo), axis=0), lo, hi, sg))
        # a simple root of the isolated polynomial is a simple root of P
        # only when no square-free reduction took place
        dirs.append(-sg if not ex.square_free else np.zeros_like(sg))
    if ex.points:
        pts = np.array([float(p) for p in ex.points])
        xs.append(pts)
        dirs.append(np.array([_exact_direction(beta, p) for p in ex.points], dtype=np.int8))
    if not xs:
        return np.zeros(0, np.int64), np.zeros(0), np.zeros(0, np.int8)
    x = np.concatenate(xs)
    direction = np.concatenate(dirs).astype(np.int8)
    owner = np.full(len(x), row, dtype=np.int64)
    stab = _classify(np.atleast_2d(np.asarray(beta, float)), np.zeros(len(x), np.int64), x, direction)
    return owner, x, stab


def _exact_direction(beta, x):
    # sign of the derivative Bernstein sum at an exact rational point
    tail = [Fraction(b) for b in beta[1:]]
    k = len(tail) - 1
    total = sum(c * math.comb(k, j) * x**j * (1 - x) ** (k - j) for j, c in enumerate(tail))
    return _sign(total)
