"""Independent reference computations used to check the engine.

Nothing here imports the engine's quantile, tce or integration code.
"""

from fractions import Fraction

from scipy import integrate


def quantile_bounds(outcomes, alpha):
    """(smallest, largest) alpha-quantile of a discrete P&L by testing the
    defining condition P[X < q] <= 1 - alpha <= P[X <= q] at every payoff."""
    tail = 1 - Fraction(alpha)
    candidates = []
    for q, _ in outcomes:
        below = sum(p for x, p in outcomes if x < q)
        upto = sum(p for x, p in outcomes if x <= q)
        if below <= tail <= upto:
            candidates.append(q)
    return min(candidates), max(candidates)


def var_tce_ml(outcomes, alpha, largest=False):
    """VaR, TCE and ML by sorting and enumerating outcomes."""
    lo, hi = quantile_bounds(outcomes, alpha)
    q = hi if largest else lo
    tail = [(x, p) for x, p in outcomes if x <= q]
    mass = sum(p for _, p in tail)
    tce = -sum(x * p for x, p in tail) / mass
    ml = -min(x for x, _ in outcomes)
    return -q, tce, ml


def convolve(o1, o2):
    out = {}
    for x1, p1 in o1:
        for x2, p2 in o2:
            out[x1 + x2] = out.get(x1 + x2, 0) + p1 * p2
    return sorted(out.items())


def quad_density(segments, lo, hi, weight=lambda x: 1.0):
    """Numerical integral of weight(x) * density over [lo, hi] for (a, b, fa, fb) segments."""
    total = 0.0
    for a, b, fa, fb in segments:
        u, v = max(float(a), lo), min(float(b), hi)
        if u >= v:
            continue
        a, b, fa, fb = map(float, (a, b, fa, fb))
        f = lambda x: weight(x) * (fa + (fb - fa) * (x - a) / (b - a))
        total += integrate.quad(f, u, v, epsabs=1e-14, epsrel=1e-13)[0]
    return total


def loss_survival_threshold(atoms, segments, tail, strict=False):
    """sup{l : P(L >= l) >= tail} by dense grid search plus bisection on the
    numerically integrated survival function."""
    import numpy as np

    lo = min([float(x) for x, _ in atoms] + [float(s[0]) for s in segments]) - 1
    hi = max([float(x) for x, _ in atoms] + [float(s[1]) for s in segments]) + 1

    def survival(l):
        m = sum(float(p) for x, p in atoms if float(x) >= l)
        return m + quad_density(segments, l, hi)

    def ok(l):
        s = survival(l)
        return s > float(tail) + 1e-12 if strict else s >= float(tail) - 1e-12

    xs = np.linspace(lo, hi, 2001)
    best = lo
    for x in xs:
        if ok(x):
            best = x
    left, right = best, best + (hi - lo) / 2000
    for _ in range(60):
        mid = (left + right) / 2
        if ok(mid):
            left = mid
        else:
            right = mid
    return left
