"""
Exact counts of watermelons
===========================

Counting p non-crossing paths of length 2n, checked against brute force.
"""
from fractions import Fraction

from melonlab import MelonConfig, count_height_lt, count_total, count_total_closed
from melonlab import height_distribution, range_distribution, stats

# A configuration is just (p, n): p walkers, 2n steps each.
cfg = MelonConfig(2, 2)
print("total:", count_total(cfg))  # 20

# The determinant and the product formula agree exactly, even for big n.
big = MelonConfig(4, 80)
print("digits in count:", len(str(count_total(big))))
print("det == product:", count_total(big) == count_total_closed(big))

# Height constraints: how many melons stay below a given level
for h in range(2, 6):
    print(f"height < {h}:", count_height_lt(cfg, h))

# Full laws as exact fractions
hd = height_distribution(cfg)
print("height pmf:", {v: str(q) for v, q in hd.pmf().items()})
rd = range_distribution(cfg)
print("range pmf:", {v: str(q) for v, q in zip(rd.support, rd.mass)})

# The exhaustive enumerator walks every family; it should agree.
brute = stats(MelonConfig(3, 4))
print("oracle agrees:", brute.height_distribution() == height_distribution(MelonConfig(3, 4)))

# Mean height for a few n, exactly
for n in (5, 10, 20):
    m = height_distribution(MelonConfig(2, n)).moment(1)
    print(n, m, float(m))
assert isinstance(m, Fraction)
