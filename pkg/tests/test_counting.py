from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from melonlab.counting import (
    MelonConfig,
    StripBound,
    _strip_det,
    binomial_safe,
    count_height_lt,
    count_strip,
    count_total,
    count_total_closed,
    det_big,
    height_distribution,
    height_moment_exact,
    range_cdf_count,
    range_distribution,
)
from melonlab.errors import DimensionError, DomainError
from melonlab.oracle import stats


@pytest.mark.parametrize("N,K,expected", [(4, 2, 6), (4, 5, 0), (6, 3, 20), (4, -1, 0), (0, 0, 1)])
def test_binomial_safe(N, K, expected):
    assert binomial_safe(N, K) == expected


def test_binomial_safe_rejects_negative_N():
    with pytest.raises(DomainError):
        binomial_safe(-1, 0)


@pytest.mark.parametrize("M,expected", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1),
    ([[2, 1], [1, 2]], 3),
    ([[6, 4], [4, 6]], 20),
    ([[0, 1], [1, 0]], -1),
    ([[0, 2, 1], [0, 1, 3], [4, 5, 6]], 4 * (2 * 3 - 1 * 1)),
    ([[1, 2], [2, 4]], 0),
])
def test_det_big_small(M, expected):
    assert det_big(M) == expected


def _leibniz(M):
    from itertools import permutations
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, j in enumerate(perm):
            prod *= M[i][j]
        total += (-1) ** inv * prod
    return total


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-10 ** 12, 10 ** 12), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_det_big_matches_leibniz(M):
    assert det_big(M) == _leibniz(M)


def test_det_big_rejects_non_square():
    with pytest.raises(DimensionError):
        det_big([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(DimensionError):
        det_big([])


@pytest.mark.parametrize("p,n,expected", [(1, 3, 20), (2, 1, 3), (2, 2, 20), (3, 1, 4), (1, 0, 1)])
def test_count_total(p, n, expected):
    cfg = MelonConfig(p, n)
    assert count_total(cfg) == expected
    assert count_total_closed(cfg) == expected


def test_closed_form_by_hand_p2_n2():
    # C(4,2)^2 * (1! * 5!/4! * (2!/3!)^2) = 36 * 5/9
    assert Fraction(36) * 5 / 9 == count_total_closed(MelonConfig(2, 2))


@pytest.mark.parametrize("p", range(1, 7))
def test_determinant_equals_product(p):
    for n in range(0, 101, 7):
        cfg = MelonConfig(p, n)
        assert count_total(cfg) == count_total_closed(cfg)


@pytest.mark.parametrize("p,n,h,expected", [(1, 2, 2, 5), (1, 2, 1, 2), (2, 2, 2, 0), (1, 2, 0, 0)])
def test_count_height_lt(p, n, h, expected):
    assert count_height_lt(MelonConfig(p, n), h) == expected


@pytest.mark.parametrize("p,n,h,k,expected", [(1, 2, 1, 2, 1), (1, 2, 2, 1, 1), (1, 2, 3, 3, 6)])
def test_count_strip(p, n, h, k, expected):
    assert count_strip(MelonConfig(p, n), StripBound(h, k)) == expected


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_strip_reduces_to_height_count(p):
    for n in (0, 1, 5, 12):
        cfg = MelonConfig(p, n)
        for h in range(0, n + 2 * p + 1):
            assert count_strip(cfg, StripBound(h, n + 1)) == count_height_lt(cfg, h)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_height_count_monotone_and_saturating(p):
    n = 15
    cfg = MelonConfig(p, n)
    vals = [count_height_lt(cfg, h) for h in range(-2, n + 2 * p + 3)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert all(count_height_lt(cfg, h) == 0 for h in range(-3, 2 * p - 1))
    assert count_height_lt(cfg, n + 2 * p - 1) == count_total(cfg)
    assert count_height_lt(cfg, n + 2 * p + 5) == count_total(cfg)


@pytest.mark.parametrize("p,n", [(p, n) for p in range(1, 5) for n in (1, 4, 9, 20)])
def test_strip_flip_symmetry(p, n):
    cfg = MelonConfig(p, n)
    off = 2 * p - 2
    for h in range(off + 1, n + off + 2):
        for k in range(1, n + 2):
            assert count_strip(cfg, StripBound(h, k)) == count_strip(cfg, StripBound(k + off, h - off))


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_bottom_strip_boundary_vanishes(p):
    # the raw reflection determinant at h = 2p-2 must already be zero
    for n in (1, 3, 8):
        for k in range(1, 2 * n + 3):
            assert _strip_det(p, n, 2 * p - 2, k) == 0


def test_height_distribution_examples():
    d = height_distribution(MelonConfig(1, 2))
    assert d.pmf() == {0: Fraction(2, 6), 1: Fraction(3, 6), 2: Fraction(1, 6)}
    d = height_distribution(MelonConfig(1, 1))
    assert d.pmf() == {0: Fraction(1, 2), 1: Fraction(1, 2)}


@pytest.mark.parametrize("p,n", [(1, 30), (2, 17), (3, 9), (5, 4)])
def test_distributions_normalized(p, n):
    for d in (height_distribution(MelonConfig(p, n)), range_distribution(MelonConfig(p, n))):
        assert sum(d.mass) == 1
        cdf = list(d.cdf().values())
        assert all(a <= b for a, b in zip(cdf, cdf[1:]))
        assert cdf[-1] == 1


def test_height_support():
    d = height_distribution(MelonConfig(3, 5))
    assert d.support == tuple(range(4, 5 + 4 + 1))


@pytest.mark.parametrize("p,n,s,expected", [
    (1, 2, 1, Fraction(5, 6)),
    (1, 1, 1, Fraction(1, 2)),
    (1, 2, 2, Fraction(7, 6)),
])
def test_height_moment_examples(p, n, s, expected):
    assert height_moment_exact(MelonConfig(p, n), s) == expected


@pytest.mark.parametrize("p,n", [(1, 7), (2, 6), (3, 4)])
def test_moment_tail_sum_matches_pmf(p, n):
    cfg = MelonConfig(p, n)
    d = height_distribution(cfg)
    for s in (1, 2, 3):
        assert height_moment_exact(cfg, s) == d.moment(s)


def test_range_distribution_examples():
    d = range_distribution(MelonConfig(1, 2))
    assert d.cdf() == {1: Fraction(2, 6), 2: Fraction(1)}
    d = range_distribution(MelonConfig(1, 1))
    assert d.cdf() == {1: Fraction(1)}
    # p=2, n=2 from the exhaustive oracle: range counts {3: 2, 4: 11, 5: 6, 6: 1}
    d = range_distribution(MelonConfig(2, 2))
    assert dict(zip(d.support, d.counts)) == {3: 2, 4: 11, 5: 6, 6: 1}


def test_range_cdf_count_endpoints():
    cfg = MelonConfig(2, 4)
    assert range_cdf_count(cfg, 2) == 0
    assert range_cdf_count(cfg, cfg.max_range) == count_total(cfg)


@pytest.mark.parametrize("p,n", [(p, n) for p in (1, 2) for n in range(1, 6)])
def test_strip_counts_match_oracle_joint_law(p, n):
    cfg = MelonConfig(p, n)
    joint = stats(cfg).joint
    for h in range(0, n + 2 * p + 1):
        for k in range(0, n + 2):
            if h + k < 1:
                continue
            brute = sum(c for (hh, d), c in joint.items() if hh < h and d > -k)
            assert count_strip(cfg, StripBound(h, k)) == brute


def _total_ratio(p, n):
    c2 = comb(p, 2)
    prod = 1
    for i in range(p):
        prod *= factorial(i)
    return Fraction(count_total_closed(MelonConfig(p, n)) * n ** c2, 2 ** c2 * comb(2 * n, n) ** p * prod)


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("n", [100, 1000, 10000])
def test_total_count_asymptotics(p, n):
    assert abs(float(_total_ratio(p, n)) - 1) <= 10 / n


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_total_count_first_correction(p):
    # log ratio = -(p^3 - p) / (4n) + O(n^-2); for p = 4 that is 15/n, above 10/n
    c = (p ** 3 - p) / 4
    for n in (100, 1000, 10000):
        err = 1 - float(_total_ratio(p, n))
        assert 0 <= err <= c / n
        if p > 1:
            assert err * n > c * (1 - 2 * c / n)


def test_config_validation():
    with pytest.raises(DomainError):
        MelonConfig(0, 3)
    with pytest.raises(DomainError):
        MelonConfig(1, -1)
    with pytest.raises(DomainError):
        height_distribution(MelonConfig(2, 0))
