"""
Height: finite n against the limit law
======================================

The rescaled height (H + 1)/sqrt(n) converges to a law whose CDF is a
Hermite-type determinant. Here we watch the gap close.
"""
import numpy as np

from melonlab import convergence_report, height_limit_cdf, kappa

t = np.linspace(0.5, 4, 8)

# p = 1 is a Rayleigh-type law, 1 - exp(-t^2)
print(np.allclose([height_limit_cdf(1, x) for x in t], 1 - np.exp(-t ** 2)))

# For general p the tail is kappa_p, a finite sum of h^a exp(-b h^2)
print("kappa_2 =", kappa(2))
print("kappa_3 =", kappa(3))

# Exact CDF (big-integer determinants) against the limit
ts = [round(1 + 0.1 * k, 1) for k in range(31)]
for n in (50, 200, 800):
    rows = convergence_report("height", 3, n, ts)
    gap = max(r[3] for r in rows)
    # gap * sqrt(n) settles near a constant: the error is of order n^-1/2
    print(f"n={n:4d}  sup gap={gap:.4f}  gap*sqrt(n)={gap * np.sqrt(n):.3f}")

# A few rows of the comparison at n = 250
for row in convergence_report("height", 3, 250, [1.5, 2.0, 2.5]):
    print("t=%.1f exact=%.5f limit=%.5f err=%.5f" % row)
