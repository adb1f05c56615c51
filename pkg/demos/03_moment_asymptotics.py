"""
Moments of the height
=====================

Exact moments are rationals; their growth is governed by Gaussian sums
sum_h h^nu exp(-mu h^2 / n) and the two linear functionals Xi1, Xi0.
"""
import mpmath

from melonlab import MelonConfig, f_sum_asymptotic, f_sum_numeric, height_moment_exact
from melonlab import kappa, leading_coefficient, moment_asymptotic, table1, tau, xi0, xi1

# The sum itself and its expansion
for n in (100, 1000, 10000):
    direct = f_sum_numeric(2, 1, n)
    approx = f_sum_asymptotic(2, 1, n, 1)
    print(n, mpmath.nstr(direct, 15), "err*n^2 =", mpmath.nstr(abs(direct - approx) * n * n, 4))

# Two identities that make the second-order term simple
for p in range(1, 5):
    print(p, "Xi1(tau) =", mpmath.nstr(xi1(tau(p)), 12), " Xi0(kappa) =", xi0(kappa(p)))

# Leading coefficients of E(H^s) ~ c n^(s/2)
for (p, s), c in table1().items():
    print(f"p={p} s={s}  {mpmath.nstr(c, 12)}")

# Exact mean against the two-term expansion
for n in (50, 200, 800):
    exact = height_moment_exact(MelonConfig(2, n), 1)
    asym = moment_asymptotic(2, 1, n)
    err = abs(mpmath.mpf(exact.numerator) / exact.denominator - asym)
    print(n, float(exact), mpmath.nstr(asym, 12), "err*sqrt(n) =", mpmath.nstr(err * mpmath.sqrt(n), 4))

print(leading_coefficient(2, 2))  # 5/2
