import math

import mpmath
import numpy as np
import pytest

from melonlab.counting import MelonConfig, count_total
from melonlab.errors import DomainError
from melonlab.gauss import kappa
from melonlab.limits import (
    adaptive_simpson,
    convergence_report,
    exact_scaled_cdf,
    floor_scaled,
    gaussian_ratio_check,
    height_limit_cdf,
    limit_curve,
    p1_range_closed,
    range_limit_cdf,
    range_T,
    range_T_dz,
    sup_gap,
    theta_sum,
)


@pytest.mark.parametrize("t", [0.1, 0.5, 1.0, 2.0, 3.7])
def test_height_limit_p1(t):
    assert height_limit_cdf(1, t) == pytest.approx(1 - math.exp(-t * t), abs=1e-14)


def test_height_limit_p2_closed_form():
    for t in np.linspace(0.1, 5, 20):
        expected = 1 - (2 * t * t * math.exp(-t * t) + math.exp(-2 * t * t))
        assert height_limit_cdf(2, t) == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("p", range(1, 7))
def test_height_limit_is_one_minus_kappa(p):
    k = kappa(p)
    for t in np.linspace(0.05, 6, 25):
        assert abs(height_limit_cdf(p, t) - (1 - k(t))) < 1e-10
    assert abs(height_limit_cdf(p, 8.0) - 1) < 1e-10


@pytest.mark.parametrize("p", range(1, 7))
def test_height_limit_monotone_in_unit_interval(p):
    vals = [height_limit_cdf(p, t) for t in np.linspace(0.05, 6, 60)]
    assert all(-1e-12 <= v <= 1 + 1e-12 for v in vals)
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_height_limit_domain():
    with pytest.raises(DomainError):
        height_limit_cdf(2, 0.0)


def test_theta_sum_examples():
    assert theta_sum(0, 100.0, 0.0) == pytest.approx(1.0, abs=1e-15)
    direct = sum(math.exp(-l * l) for l in range(-9, 10))
    assert theta_sum(0, 1.0, 0.0) == pytest.approx(direct, abs=1e-14)
    assert theta_sum(0, 1.0, 0.0) == pytest.approx(1.7726372048, abs=1e-10)
    for z in (0.3, 1.0, 2.5):
        assert abs(theta_sum(1, z, 0.0)) < 1e-13


def test_theta_sum_against_mpmath():
    for a in range(6):
        for z, w in ((0.4, 0.1), (1.3, 0.9), (3.0, 2.0)):
            ref = mpmath.nsum(lambda l: mpmath.hermite(a, l * z + w) * mpmath.exp(-(l * z + w) ** 2),
                              [-mpmath.inf, mpmath.inf])
            assert theta_sum(a, z, w) == pytest.approx(float(ref), abs=1e-12)


def test_range_T_p1_at_w0_vanishes():
    for t in (0.5, 1.0, 2.0):
        assert abs(range_T(1, t, 0.0)) < 1e-15


@pytest.mark.parametrize("p", [1, 2, 3])
def test_range_T_dz_matches_finite_difference(p):
    step = 1e-5
    for z in np.linspace(0.5, 4.0, 8):
        for w in np.linspace(0.0, z, 6):
            fd = (range_T(p, z + step, w) - range_T(p, z - step, w)) / (2 * step)
            assert abs(range_T_dz(p, z, w) - fd) < 1e-6


def test_range_T_dz_p1_explicit():
    for t in (0.7, 1.4, 2.2):
        for w in (0.0, 0.3 * t, 0.9 * t):
            ells = np.arange(-20, 21)
            expected = (-np.sum(2 * ells ** 2 * t * np.exp(-(ells * t) ** 2))
                        + 2 * np.sum(ells * (ells * t + w) * np.exp(-(ells * t + w) ** 2)))
            assert range_T_dz(1, t, w) == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("t", [0.5, 1.0, 1.5, 2.0, 3.0])
def test_range_limit_p1_matches_closed_form(t):
    assert abs(range_limit_cdf(1, t) - p1_range_closed(t)) < 1e-8


def test_range_limit_endpoints():
    assert abs(range_limit_cdf(1, 10.0) - 1) < 1e-8
    assert abs(range_limit_cdf(1, 0.05)) < 1e-6
    assert abs(range_limit_cdf(2, 8.0) - 1) < 1e-8


@pytest.mark.parametrize("p", [1, 2, 3])
def test_range_limit_monotone(p):
    vals = [range_limit_cdf(p, t) for t in np.linspace(0.5, 6, 12)]
    assert all(-1e-9 <= v <= 1 + 1e-9 for v in vals)
    assert all(a <= b + 1e-9 for a, b in zip(vals, vals[1:]))


def test_p1_range_closed_examples():
    assert p1_range_closed(10.0) == pytest.approx(1.0, abs=1e-15)
    direct = sum((1 - 2 * l * l) * math.exp(-l * l) for l in range(-6, 7))
    assert p1_range_closed(1.0) == pytest.approx(direct, abs=1e-12)


def test_adaptive_simpson():
    assert adaptive_simpson(math.sin, 0, math.pi, 1e-12) == pytest.approx(2.0, abs=1e-11)
    assert adaptive_simpson(lambda x: math.exp(-x * x), 0, 3, 1e-12) == pytest.approx(
        math.sqrt(math.pi) / 2 * math.erf(3), abs=1e-11)


def test_gaussian_ratio_check():
    assert gaussian_ratio_check(50, 0) == (1.0, 1.0)
    ratio, gauss = gaussian_ratio_check(10 ** 4, 50)
    assert abs(ratio / math.exp(-0.25) - 1) < 0.02
    assert abs(gauss - math.exp(-0.25)) < 1e-15
    n, m = 100, 30
    ratio, gauss = gaussian_ratio_check(n, m)
    assert abs(ratio - gauss) / gauss <= m ** 4 / n ** 3 + 1 / n


def test_floor_scaled_is_exact():
    assert floor_scaled(0.3, 100) == 3
    assert floor_scaled(1.0, 250) == 15
    assert floor_scaled(2.0, 400) == 40
    assert floor_scaled(0.7, 200) == 9


def test_exact_scaled_cdf_saturates():
    cfg = MelonConfig(1, 30)
    t = (cfg.max_height + 1) / math.sqrt(cfg.n) + 1e-9
    assert exact_scaled_cdf("height", cfg, t) == 1
    assert height_limit_cdf(1, t) == pytest.approx(1, abs=1e-4)


def test_report_columns():
    rows = convergence_report("height", 2, 60, [1.0, 1.5, 2.0])
    assert [len(r) for r in rows] == [4, 4, 4]
    for t, ex, lim, err in rows:
        assert err == pytest.approx(abs(ex - lim))
        assert 0 <= ex <= 1 and 0 <= lim <= 1


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("base", [50, 100])
def test_height_gap_shrinks_with_n(p, base):
    # Quadrupling n keeps t*sqrt(n) on the same lattice alignment, so the
    # step-function sampling error is comparable across the sweep.
    ts = [round(1 + 0.1 * k, 1) for k in range(31)]
    ns = (base, 4 * base, 16 * base)
    gaps = [sup_gap(convergence_report("height", p, n, ts)) for n in ns]
    assert gaps[0] > gaps[1] > gaps[2]


@pytest.mark.parametrize("p", [2, 3])
def test_height_gap_is_order_inverse_sqrt_n(p):
    ts = [round(1 + 0.1 * k, 1) for k in range(31)]
    scaled = [sup_gap(convergence_report("height", p, n, ts)) * math.sqrt(n) for n in (50, 200, 800, 3200)]
    assert max(scaled) < 1.2 * min(scaled)


def test_height_gap_p1_small():
    ts = [round(1 + 0.1 * k, 1) for k in range(31)]
    assert sup_gap(convergence_report("height", 1, 400, ts)) < sup_gap(convergence_report("height", 1, 100, ts))


def test_limit_curve_metadata():
    c = limit_curve("range", 1, [1.0, 2.0])
    assert c.meta["quadrature"] == "adaptive_simpson"
    assert c.values[0] <= c.values[1]
    with pytest.raises(DomainError):
        limit_curve("depth", 1, [1.0])


def test_report_exact_column_uses_counts():
    cfg = MelonConfig(2, 50)
    rows = convergence_report("height", 2, 50, [100.0])
    assert rows[0][1] == 1.0
    assert count_total(cfg) > 0
