"""Exact Hermite polynomials, half-integer Gamma values and Bernoulli numbers.

Hermite polynomials use the physicists' normalization,
H_0 = 1, H_1 = 2x, H_{k+1} = 2x H_k - 2k H_{k-1}.  The probabilists'
He_k would silently give wrong determinants everywhere downstream.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath
import numpy as np

from .errors import DomainError

DEFAULT_DPS = 40


def working_dps() -> int:
    """Decimal digits for mpmath work; ``MELONLAB_PRECISION`` overrides the default."""
    raw = os.environ.get("MELONLAB_PRECISION")
    if raw is None:
        return DEFAULT_DPS
    try:
        dps = int(raw)
    except ValueError:
        raise DomainError(f"MELONLAB_PRECISION must be an integer, got {raw!r}") from None
    return max(dps, 30)


@dataclass(frozen=True)
class HermitePoly:
    degree: int
    coeffs: tuple  # ascending powers of x, integers

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        parts = [f"{c}x^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(reversed(parts)) or "0"


@lru_cache(maxsize=None)
def hermite(k: int) -> HermitePoly:
    """H_k with integer coefficients, built by the three-term recurrence."""
    if k < 0:
        raise DomainError("Hermite degree must be >= 0")
    if k == 0:
        return HermitePoly(0, (1,))
    if k == 1:
        return HermitePoly(1, (0, 2))
    prev, cur = hermite(k - 2).coeffs, hermite(k - 1).coeffs
    out = [0] * (k + 1)
    for i, c in enumerate(cur):
        out[i + 1] += 2 * c
    for i, c in enumerate(prev):
        out[i] -= 2 * (k - 1) * c
    return HermitePoly(k, tuple(out))


def hermite_explicit(k: int) -> HermitePoly:
    """H_k from the closed sum H_k(z)/k! = sum_m (-1)^(k-m) (2z)^(2m-k) / ((k-m)! (2m-k)!)."""
    coeffs = [0] * (k + 1)
    for m in range((k + 1) // 2, k + 1):
        e = 2 * m - k
        c = Fraction((-1) ** (k - m) * 2 ** e * factorial(k), factorial(k - m) * factorial(e))
        assert c.denominator == 1
        coeffs[e] += c.numerator
    return HermitePoly(k, tuple(coeffs))


def hermite_zero(k: int) -> int:
    """H_k(0): zero for odd k, (-1)^(k/2) k!/(k/2)! for even k."""
    if k < 0:
        raise DomainError("Hermite degree must be >= 0")
    if k % 2:
        return 0
    j = k // 2
    return (-1) ** j * factorial(k) // factorial(j)


def hermite_values(amax: int, x):
    """Float values H_0(x) .. H_amax(x) stacked along the first axis."""
    x = np.asarray(x, dtype=float)
    out = np.empty((amax + 1,) + x.shape)
    out[0] = 1.0
    if amax >= 1:
        out[1] = 2.0 * x
    for a in range(1, amax):
        out[a + 1] = 2.0 * x * out[a] - 2.0 * a * out[a - 1]
    return out


@dataclass(frozen=True)
class GammaHalf:
    """Gamma(num/2) written as ``rational * sqrt(pi)**sqrt_pi``."""

    num: int
    rational: Fraction
    sqrt_pi: bool

    def value(self, dps: int | None = None):
        with mpmath.workdps(dps or working_dps()):
            v = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            return +(v * mpmath.sqrt(mpmath.pi)) if self.sqrt_pi else +v


def gamma_half(num: int) -> GammaHalf:
    """Exact Gamma(num/2) for a positive integer ``num``."""
    if num <= 0:
        raise DomainError(f"Gamma(num/2) needs num >= 1, got {num}")
    if num % 2 == 0:
        return GammaHalf(num, Fraction(factorial(num // 2 - 1)), False)
    # Gamma(j + 1/2) = (2j)! / (4^j j!) sqrt(pi)
    j = (num - 1) // 2
    return GammaHalf(num, Fraction(factorial(2 * j), 4 ** j * factorial(j)), True)


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple:
    B = [Fraction(1)]
    for k in range(1, m + 1):
        B.append(-sum(comb(k + 1, j) * B[j] for j in range(k)) / (k + 1))
    return tuple(B)


def bernoulli(m: int) -> Fraction:
    """B_m with the convention t/(e^t - 1), so B_1 = -1/2."""
    if m < 0:
        raise DomainError("Bernoulli index must be >= 0")
    return _bernoulli_table(m)[m]
