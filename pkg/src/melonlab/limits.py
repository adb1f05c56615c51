"""Limiting CDFs of height and range, and exact-vs-limit comparisons.

Height:  P{(H+1)/sqrt(n) <= t}  ->  C_p det((-1)^i H_{i+j}(0) - H_{i+j}(t) e^{-t^2}).
Range:   P{(R+1)/sqrt(n) <= t}  ->  C_p int_0^t dT_p/dz(t, w) dw, with T_p a
determinant of theta-type sums  S_a(z, w) = sum_l H_a(l z + w) e^{-(l z + w)^2}.
C_p = 1 / (2^C(p,2) prod_{j<p} j!).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .counting import MelonConfig, count_height_lt, count_total, range_cdf_count
from .errors import DomainError
from .gauss import MAX_P, normalizer
from .special import hermite, hermite_values, hermite_zero, working_dps

THETA_EPS = 1e-15


def _check_p(p):
    if not 1 <= p <= MAX_P:
        raise DomainError(f"p must be in 1..{MAX_P}, got {p}")


def height_limit_cdf(p: int, t: float) -> float:
    """Limit of P{(H_{n,p}+1)/sqrt(n) <= t}."""
    _check_p(p)
    if t <= 0:
        raise DomainError("t must be positive")
    with mpmath.workdps(working_dps()):
        t = mpmath.mpf(t)
        g = mpmath.exp(-t * t)
        polys = [hermite(k) for k in range(2 * p - 1)]
        mat = mpmath.matrix(p, p)
        for i in range(p):
            for j in range(p):
                mat[i, j] = (-1) ** i * hermite_zero(i + j) - polys[i + j](t) * g
        c = normalizer(p)
        return float(mpmath.det(mat) * c.numerator / c.denominator)


def _theta_window(z, w, amax, eps):
    # |l z + w| <= sqrt(ln(1/eps)) + amax + 1 bounds the dropped tail below eps.
    reach = math.sqrt(math.log(1.0 / eps)) + amax + 1
    lo = math.ceil((-reach - w) / z)
    hi = math.floor((reach - w) / z)
    return np.arange(lo, hi + 1, dtype=float)


def _theta_sums(z, w, amax, eps=THETA_EPS):
    """Arrays (S_a, L_a), a = 0..amax: S_a = sum H_a(x) e^{-x^2}, L_a = sum l H_a(x) e^{-x^2}, x = l z + w."""
    ell = _theta_window(z, w, amax, eps)
    x = ell * z + w
    vals = hermite_values(amax, x) * np.exp(-x * x)
    return vals.sum(axis=1), (vals * ell).sum(axis=1)


def theta_sum(a: int, z: float, w: float, eps: float = THETA_EPS) -> float:
    """sum over integer l of H_a(l z + w) exp(-(l z + w)^2), tail below ``eps``."""
    if z <= 0 or eps <= 0:
        raise DomainError("z and eps must be positive")
    return float(_theta_sums(z, w, a, eps)[0][a])


def _range_matrices(p, z, w, eps):
    amax = 2 * p - 1
    s0, l0 = _theta_sums(z, 0.0, amax, eps)
    sw, lw = _theta_sums(z, w, amax, eps)
    sign = np.array([(-1) ** i for i in range(p)], dtype=float)[:, None]
    idx = np.add.outer(np.arange(p), np.arange(p))
    A = sign * s0[idx] - sw[idx]
    # d/dz [H_a(lz+w) e^{-(lz+w)^2}] = -l H_{a+1}(lz+w) e^{-(lz+w)^2}
    dA = -sign * l0[idx + 1] + lw[idx + 1]
    return A, dA


def range_T(p: int, z: float, w: float, eps: float = THETA_EPS) -> float:
    _check_p(p)
    if z <= 0:
        raise DomainError("z must be positive")
    A, _ = _range_matrices(p, z, w, eps)
    return float(np.linalg.det(A))


def range_T_dz(p: int, z: float, w: float, eps: float = THETA_EPS) -> float:
    """Partial derivative of T_p in its first argument, by the row-replacement rule."""
    _check_p(p)
    if z <= 0:
        raise DomainError("z must be positive")
    A, dA = _range_matrices(p, z, w, eps)
    total = 0.0
    for r in range(p):
        B = A.copy()
        B[r] = dA[r]
        total += np.linalg.det(B)
    return float(total)


def adaptive_simpson(f, a: float, b: float, tol: float, max_depth: int = 50) -> float:
    """Adaptive Simpson quadrature with absolute tolerance ``tol``."""

    def simpson(fa, fm, fb, lo, hi):
        return (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(lo, hi, fa, fm, fb, whole, tol, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, lo, mid)
        right = simpson(fm, frm, fb, mid, hi)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return (recurse(lo, mid, fa, flm, fm, left, tol / 2, depth - 1)
                + recurse(mid, hi, fm, frm, fb, right, tol / 2, depth - 1))

    if b == a:
        return 0.0
    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, max_depth)


def range_limit_cdf(p: int, t: float, eps: float = 1e-10) -> float:
    """Limit of P{(R_{n,p}+1)/sqrt(n) <= t}, integrated to absolute error about ``eps``."""
    _check_p(p)
    if t <= 0:
        raise DomainError("t must be positive")
    c = float(normalizer(p))
    integral = adaptive_simpson(lambda w: range_T_dz(p, t, w), 0.0, t, eps / 2 / c)
    return c * integral


def p1_range_closed(t: float, eps: float = THETA_EPS) -> float:
    """sum over integer l of (1 - 2 (l t)^2) exp(-(l t)^2)."""
    if t <= 0:
        raise DomainError("t must be positive")
    ell = _theta_window(t, 0.0, 2, eps)
    x = ell * t
    return float(np.sum((1.0 - 2.0 * x * x) * np.exp(-x * x)))


def gaussian_ratio_check(n: int, m: int) -> tuple:
    """(C(2n, n+m) / C(2n, n), exp(-m^2/n)).

    The ratio is exact before the final rounding.  The Gaussian form is only
    a sharp approximation for |m| up to about n^(5/8).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    ratio = Fraction(math.comb(2 * n, n + m) if abs(m) <= n else 0, math.comb(2 * n, n))
    return float(ratio), math.exp(-m * m / n)


@dataclass(frozen=True)
class LimitCurve:
    """Sampled limiting CDF plus the numerical settings used to produce it."""

    stat: str
    p: int
    t: tuple
    values: tuple
    eps: float
    meta: dict = field(default_factory=dict)

    def rows(self):
        return list(zip(self.t, self.values))


def limit_cdf(stat: str, p: int, t: float, eps: float = 1e-10) -> float:
    if stat == "height":
        return height_limit_cdf(p, t)
    if stat == "range":
        return range_limit_cdf(p, t, eps)
    raise DomainError(f"stat must be 'height' or 'range', got {stat!r}")


def limit_curve(stat: str, p: int, ts, eps: float = 1e-10) -> LimitCurve:
    ts = tuple(float(t) for t in ts)
    values = tuple(limit_cdf(stat, p, t, eps) for t in ts)
    meta = {"theta_eps": THETA_EPS}
    if stat == "range":
        meta.update(quadrature="adaptive_simpson", abs_tol=eps / 2)
    else:
        meta.update(dps=working_dps())
    return LimitCurve(stat, p, ts, values, eps, meta)


def floor_scaled(t, n: int) -> int:
    """floor(t * sqrt(n)) computed exactly for a rational reading of t."""
    if t <= 0:
        return 0
    q = Fraction(t).limit_denominator(10 ** 9) if isinstance(t, float) else Fraction(t)
    x = q * q * n
    return math.isqrt(x.numerator // x.denominator)


def exact_scaled_cdf(stat: str, cfg: MelonConfig, t, _cache: dict | None = None) -> Fraction:
    """Exact P{(X+1)/sqrt(n) <= t} for X the height or range."""
    k = floor_scaled(t, cfg.n)
    total = count_total(cfg)
    if stat == "height":
        # P{H + 1 <= k} = m_{n,k} / m_n
        return Fraction(count_height_lt(cfg, k), total)
    if stat == "range":
        if k < 1:
            return Fraction(0)
        return Fraction(range_cdf_count(cfg, k - 1, _cache), total)
    raise DomainError(f"stat must be 'height' or 'range', got {stat!r}")


def convergence_report(stat: str, p: int, n: int, ts, eps: float = 1e-10) -> list:
    """Rows (t, exact, limit, abs_err) comparing the finite-n CDF with its limit."""
    cfg = MelonConfig(p, n)
    cache: dict = {}
    rows = []
    for t in ts:
        exact = float(exact_scaled_cdf(stat, cfg, t, cache))
        lim = limit_cdf(stat, p, float(t), eps)
        rows.append((float(t), exact, lim, abs(exact - lim)))
    return rows


def sup_gap(rows) -> float:
    return max(r[3] for r in rows)
