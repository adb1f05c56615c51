"""Exact algebra of sums  sum c * h^a * exp(-b h^2)  and the moment asymptotics built on it.

Coefficients are ``Fraction`` throughout.  Irrational constants (sqrt(pi),
sqrt(b)) only appear when :func:`xi1` maps an expression to a number, and
that happens in mpmath at :func:`melonlab.special.working_dps` digits.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple

import mpmath

from .errors import CapacityError, DimensionError, DomainError
from .special import bernoulli, gamma_half, hermite, hermite_zero, working_dps

MAX_SYMBOLIC_DET = 8
MAX_P = 6


class GaussTerm(NamedTuple):
    c: Fraction
    a: int
    b: int


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected, got {type(x).__name__}")


class GaussExpr:
    """Immutable normalized sum of terms c * h^a * exp(-b h^2).

    At most one term per (a, b); zero coefficients are dropped.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, c in items:
            a, b = key
            if a < 0 or b < 0:
                raise DomainError("powers and decay rates must be >= 0")
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + _as_fraction(c)
        self._terms = {k: v for k, v in sorted(acc.items()) if v != 0}
        self._hash = None

    @classmethod
    def term(cls, c, a=0, b=0) -> "GaussExpr":
        return cls([((a, b), c)])

    @classmethod
    def constant(cls, c) -> "GaussExpr":
        return cls.term(c, 0, 0)

    @classmethod
    def zero(cls) -> "GaussExpr":
        return cls()

    def terms(self) -> list:
        return [GaussTerm(c, a, b) for (a, b), c in self._terms.items()]

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient(0, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussExpr.constant(other)
        if not isinstance(other, GaussExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, GaussExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussExpr.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged.get(k, Fraction(0)) + c
        return GaussExpr(merged)

    __radd__ = __add__

    def __neg__(self):
        return GaussExpr({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussExpr({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, GaussExpr):
            return NotImplemented
        out: dict = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return GaussExpr(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = GaussExpr.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self) -> "GaussExpr":
        """d/dh, term by term."""
        out: dict = {}
        for (a, b), c in self._terms.items():
            if a:
                out[(a - 1, b)] = out.get((a - 1, b), Fraction(0)) + c * a
            if b:
                out[(a + 1, b)] = out.get((a + 1, b), Fraction(0)) - 2 * b * c
        return GaussExpr(out)

    def times_power(self, k: int) -> "GaussExpr":
        """Multiply by h^k."""
        return GaussExpr({(a + k, b): c for (a, b), c in self._terms.items()})

    def evaluate(self, h, dps: int | None = None):
        """Value at h as an mpmath number."""
        with mpmath.workdps(dps or working_dps()):
            h = mpmath.mpf(h)
            acc = mpmath.mpf(0)
            for (a, b), c in self._terms.items():
                acc += mpmath.mpf(c.numerator) / c.denominator * h ** a * mpmath.exp(-b * h * h)
            return +acc

    def __call__(self, h) -> float:
        return float(self.evaluate(h))

    def to_json_terms(self) -> list:
        return [{"c_num": c.numerator, "c_den": c.denominator, "a": a, "b": b}
                for (a, b), c in self._terms.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_terms())

    @classmethod
    def from_json_terms(cls, items) -> "GaussExpr":
        return cls([((t["a"], t["b"]), Fraction(t["c_num"], t["c_den"])) for t in items])

    def __repr__(self):
        if not self._terms:
            return "GaussExpr(0)"
        parts = []
        for (a, b), c in self._terms.items():
            s = str(c)
            if a:
                s += f"*h^{a}"
            if b:
                s += f"*e^(-{b}h^2)"
            parts.append(s)
        return "GaussExpr(" + " + ".join(parts) + ")"


def gexpr_add(e1: GaussExpr, e2: GaussExpr) -> GaussExpr:
    return e1 + e2


def gexpr_mul(e1: GaussExpr, e2: GaussExpr) -> GaussExpr:
    return e1 * e2


def gexpr_scale(e: GaussExpr, c) -> GaussExpr:
    return e * _as_fraction(c)


def gexpr_diff(e: GaussExpr) -> GaussExpr:
    return e.diff()


def det_gexpr(M) -> GaussExpr:
    """Symbolic determinant by Laplace expansion along rows, memoized on column sets.

    Elimination is unavailable because GaussExpr is not closed under division.
    """
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise DimensionError("det_gexpr needs a non-empty square matrix")
    if n > MAX_SYMBOLIC_DET:
        raise CapacityError(f"symbolic determinants limited to {MAX_SYMBOLIC_DET}x{MAX_SYMBOLIC_DET}")
    M = [[x if isinstance(x, GaussExpr) else GaussExpr.constant(x) for x in row] for row in M]
    memo: dict = {}

    def minor(row, cols):
        # determinant of rows row.. n-1 restricted to the sorted column tuple
        if row == n:
            return GaussExpr.constant(1)
        if cols in memo:
            return memo[cols]
        acc = GaussExpr.zero()
        for idx, c in enumerate(cols):
            entry = M[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
            term = entry * sub
            acc = acc - term if idx % 2 else acc + term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)))


def normalizer(p: int) -> Fraction:
    """1 / (2^C(p,2) * prod_{j<p} j!)."""
    d = 2 ** comb(p, 2)
    for j in range(p):
        d *= factorial(j)
    return Fraction(1, d)


def hermite_gauss(k: int) -> GaussExpr:
    """H_k(h) * exp(-h^2)."""
    return GaussExpr([((a, 1), c) for a, c in enumerate(hermite(k).coeffs) if c])


def _height_entry(i: int, j: int) -> GaussExpr:
    return GaussExpr.constant((-1) ** i * hermite_zero(i + j)) - hermite_gauss(i + j)


def _check_p(p: int):
    if not 1 <= p <= MAX_P:
        raise DomainError(f"p must be in 1..{MAX_P}, got {p}")


@lru_cache(maxsize=None)
def height_det(p: int) -> GaussExpr:
    """det((-1)^i H_{i+j}(0) - H_{i+j}(h) e^{-h^2}), i, j < p."""
    return det_gexpr([[_height_entry(i, j) for j in range(p)] for i in range(p)])


@lru_cache(maxsize=None)
def kappa(p: int) -> GaussExpr:
    """1 minus the normalized height determinant; the limiting tail P{H+1 > h sqrt n}."""
    _check_p(p)
    return 1 - height_det(p) * normalizer(p)


@lru_cache(maxsize=None)
def tau(p: int) -> GaussExpr:
    """The determinant with its last row raised to degree p+j, scaled by (p-1)."""
    _check_p(p)
    rows = [[_height_entry(i, j) for j in range(p)] for i in range(p - 1)]
    rows.append([GaussExpr.constant((-1) ** p * hermite_zero(p + j)) - hermite_gauss(p + j)
                 for j in range(p)])
    return det_gexpr(rows) * (normalizer(p) * (p - 1))


def chi(p: int) -> GaussExpr:
    """det((-1)^i H_{i+j}(0) - H_{i+j}(0) e^{-h^2})."""
    _check_p(p)
    e = GaussExpr.term(1, 0, 1)
    return det_gexpr([[GaussExpr.constant((-1) ** i * hermite_zero(i + j))
                       - e * hermite_zero(i + j) for j in range(p)] for i in range(p)])


def chi_product(p: int) -> GaussExpr:
    """(1 - e^{-2h^2})^floor(p/2) (1 - e^{-h^2})^(ceil(p/2) - floor(p/2))."""
    one = GaussExpr.constant(1)
    return (one - GaussExpr.term(1, 0, 2)) ** (p // 2) * (one - GaussExpr.term(1, 0, 1)) ** (p % 2)


def _require_decay(e: GaussExpr, name: str):
    for t in e.terms():
        if t.b < 1:
            raise DomainError(f"{name} is undefined on non-decaying term h^{t.a} (b = 0)")


def xi1(e: GaussExpr, dps: int | None = None):
    """Linear map h^a e^{-b h^2} -> Gamma((a+1)/2) / (2 b^((a+1)/2)).

    This is the coefficient of n^((a+1)/2) in sum_{h>=1} h^a e^{-b h^2/n}.
    """
    _require_decay(e, "xi1")
    with mpmath.workdps(dps or working_dps()):
        acc = mpmath.mpf(0)
        for c, a, b in e.terms():
            g = gamma_half(a + 1).value()
            acc += mpmath.mpf(c.numerator) / c.denominator * g / (2 * mpmath.mpf(b) ** (mpmath.mpf(a + 1) / 2))
        return +acc


def xi0(e: GaussExpr) -> Fraction:
    """Linear map h^a e^{-b h^2} -> (-1)^a B_{a+1} / (a+1)  (= zeta(-a)), independent of b.

    This is the constant term in the expansion of sum_{h>=1} h^a e^{-b h^2/n}.
    """
    _require_decay(e, "xi0")
    return sum((c * (-1) ** a * bernoulli(a + 1) / (a + 1) for c, a, b in e.terms()), Fraction(0))


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def f_sum_numeric(nu: int, mu, n, dps: int | None = None):
    """sum_{h>=1} h^nu exp(-mu h^2 / n), summed until terms drop below 1e-30 of the total."""
    if nu < 0:
        raise DomainError("nu must be >= 0")
    with mpmath.workdps(dps or working_dps()):
        mu, n = _mpf(mu), _mpf(n)
        if mu <= 0 or n <= 0:
            raise DomainError("mu and n must be positive")
        rate = mu / n
        peak = mpmath.sqrt(nu / (2 * rate)) if nu else 0
        tol = mpmath.mpf(10) ** -30
        acc = mpmath.mpf(0)
        h = 1
        while True:
            term = mpmath.mpf(h) ** nu * mpmath.exp(-rate * h * h)
            acc += term
            if h > peak and term < tol * acc:
                return +acc
            h += 1


def f_sum_asymptotic(nu: int, mu, n, M: int, *, factorial_denominator: bool = False,
                     dps: int | None = None):
    """Leading Gamma term plus the Bernoulli corrections m = 0..M.

    The m-th correction is (mu/n)^m (-1)^(nu+m) B_{2m+nu+1} / ((2m+nu+1) m!),
    which is the residue of Gamma(z) (n/mu)^z zeta(2z-nu) at z = -m.
    ``factorial_denominator=True`` uses (2m+nu+1)! in place of (2m+nu+1);
    that variant does not match direct summation for odd nu and is kept only
    so the discrepancy can be demonstrated.
    """
    if M < 0:
        raise DomainError("M must be >= 0")
    with mpmath.workdps(dps or working_dps()):
        mu, n = _mpf(mu), _mpf(n)
        g = gamma_half(nu + 1).value()
        value = g / 2 * (n / mu) ** (mpmath.mpf(nu + 1) / 2)
        for m in range(M + 1):
            k = 2 * m + nu + 1
            den = factorial(k) if factorial_denominator else k
            coef = Fraction((-1) ** (nu + m)) * bernoulli(k) / (den * factorial(m))
            value += (mu / n) ** m * _mpf(coef)
        return +value


def leading_coefficient(p: int, s: int, dps: int | None = None):
    """s * xi1(kappa_p h^(s-1)): coefficient of n^(s/2) in E(H^s)."""
    if s < 1:
        raise DomainError("s must be >= 1")
    return s * xi1(kappa(p).times_power(s - 1), dps)


def second_order_weight(p: int, s: int) -> Fraction:
    """Weight w with E(H^s) = s xi1(kappa h^(s-1)) n^(s/2) + w xi1(kappa h^(s-2)) n^((s-1)/2) + ..., s >= 2.

    Summing (s h^(s-1) - C(s,2) h^(s-2)) against the tail correction -tau/sqrt(n)
    gives -C(s,2) + s (s-1)(p-1) = s (s-1)(p - 3/2).  The factor s on the tau
    part matters: without it the remainder grows like sqrt(n) once p >= 2.
    """
    if s < 2:
        raise DomainError("second-order weight is defined for s >= 2")
    return Fraction(s * (s - 1) * (2 * p - 3), 2)


def moment_asymptotic(p: int, s: int, n, dps: int | None = None):
    """Two-term asymptotic value of E(H_{n,p}^s)."""
    if s < 1:
        raise DomainError("s must be >= 1")
    with mpmath.workdps(dps or working_dps()):
        n = _mpf(n)
        k = kappa(p)
        if s == 1:
            # -xi1(tau_p) + xi0(kappa_p) = (p - 1) - 1/2
            return xi1(k, dps) * mpmath.sqrt(n) + p - mpmath.mpf(3) / 2
        lead = s * xi1(k.times_power(s - 1), dps) * n ** (mpmath.mpf(s) / 2)
        second = _mpf(second_order_weight(p, s)) * xi1(k.times_power(s - 2), dps)
        return lead + second * n ** (mpmath.mpf(s - 1) / 2)


def table1(p_max: int = 4, s_max: int = 3, dps: int | None = None) -> dict:
    """{(p, s): s * xi1(kappa_p h^(s-1))} for the small table of leading coefficients."""
    return {(p, s): leading_coefficient(p, s, dps)
            for p in range(1, p_max + 1) for s in range(1, s_max + 1)}
