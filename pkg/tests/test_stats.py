import math

import numpy as np
import pytest

from conftest import make_shot
from shotfractal.court import ZoneLabel
from shotfractal.stats import (
    ZoneCounts,
    aggregate_zone_counts,
    discontinuity_scan,
    distance_density,
    fgp_equality_test,
    outer_fraction_test,
    two_proportion_z,
    wilson_interval,
)
from shotfractal.synth import distance_profile_shots


def binom_two_sided(k, n, p):
    # direct summation: total mass of outcomes no more likely than k
    pmf = [math.comb(n, i) * p**i * (1 - p) ** (n - i) for i in range(n + 1)]
    cut = pmf[k] * (1 + 1e-7)
    return min(1.0, sum(v for v in pmf if v <= cut))


@pytest.mark.parametrize("k, n, p", [(30, 50, 0.5), (12, 40, 0.5147), (70, 100, 0.5), (5, 60, 0.2)])
def test_binomial_p_value_oracle(k, n, p):
    res = outer_fraction_test(ZoneCounts("in", n - k), ZoneCounts("out", k), p, min_total=1)
    assert res.p_value == pytest.approx(binom_two_sided(k, n, p), rel=1e-6)
    assert res.p_hat == k / n and res.n == n


def test_label_symmetry_at_half():
    a = outer_fraction_test(ZoneCounts("in", 420), ZoneCounts("out", 580), 0.5)
    b = outer_fraction_test(ZoneCounts("in", 580), ZoneCounts("out", 420), 0.5)
    assert a.p_value == pytest.approx(b.p_value, rel=1e-12)
    assert a.ci_lo == pytest.approx(1 - b.ci_hi) and a.ci_hi == pytest.approx(1 - b.ci_lo)


@pytest.mark.parametrize("k, n, b", [(300, 520, 35 / 68), (51, 100, 0.5105), (7, 40, 0.3)])
def test_label_symmetry_general(k, n, b):
    a = outer_fraction_test(ZoneCounts("in", n - k), ZoneCounts("out", k), b, min_total=1)
    s = outer_fraction_test(ZoneCounts("in", k), ZoneCounts("out", n - k), 1 - b, min_total=1)
    assert s.p_hat == pytest.approx(1 - a.p_hat, abs=1e-15)
    assert s.p_value == pytest.approx(a.p_value, rel=1e-9)


def test_control_style_null_not_significant():
    res = outer_fraction_test(ZoneCounts("in", 485), ZoneCounts("out", 515), 35 / 68)
    assert res.ci_lo == pytest.approx(0.48403, abs=1e-5)
    assert res.ci_hi == pytest.approx(0.54586, abs=1e-5)
    assert res.ci_lo < 35 / 68 < res.ci_hi
    assert not res.significant


def test_outer_fraction_validation():
    with pytest.raises(ValueError):
        outer_fraction_test(ZoneCounts("in"), ZoneCounts("out"), 0.5)
    with pytest.raises(ValueError):
        outer_fraction_test(ZoneCounts("in", 10), ZoneCounts("out", 10), 0.5)
    with pytest.raises(ValueError):
        outer_fraction_test(ZoneCounts("in", 50), ZoneCounts("out", 50), 1.0)
    with pytest.raises(ValueError):
        ZoneCounts("x", 5, 6)


def test_wilson_coverage(rng):
    n, p = 1000, 0.5
    k = rng.binomial(n, p, 10_000)
    covered = 0
    for v in k:
        lo, hi = wilson_interval(int(v), n)
        covered += lo <= p <= hi
    # exact coverage at this n and p is 0.9463
    assert 0.94 <= covered / k.size <= 0.96


def test_wilson_edges():
    lo, hi = wilson_interval(0, 20)
    assert lo == 0.0 and 0 < hi < 0.2
    lo, hi = wilson_interval(20, 20)
    assert hi == 1.0 and 0.8 < lo < 1


def test_two_proportion_z_values():
    z, p = two_proportion_z(380, 1000, 350, 1000)
    assert z == pytest.approx(1.39339, abs=1e-5)
    assert p == pytest.approx(0.163502, abs=1e-6)
    z, p = two_proportion_z(450, 1000, 350, 1000)
    assert p == pytest.approx(5.0103e-6, rel=1e-4)
    assert two_proportion_z(10, 10, 20, 20) == (0.0, 1.0)


def test_fgp_equality_test():
    res = fgp_equality_test(ZoneCounts("a", 1000, 380), ZoneCounts("b", 1000, 350))
    assert res.diff == pytest.approx(0.03)
    assert not res.significant
    with pytest.raises(ValueError):
        fgp_equality_test(ZoneCounts("a", 0), ZoneCounts("b", 10, 3))


def test_scan_finds_planted_drop():
    shots = distance_profile_shots([(0, 30, 0.40), (30, 41, 0.31)], 2000, seed=4)
    scan = discontinuity_scan(shots, correction="bonferroni")
    assert [f[0] for f in scan.flagged_distances] == [30.0]
    edge, delta, p = scan.flagged_distances[0]
    assert delta == pytest.approx(-0.09, abs=0.03)
    assert len(scan.bin_edges_ft) == 41 and scan.n_per_bin.sum() == 80_000


def test_scan_floor_rule():
    # bin 10 holds only 20 shots, so neither of its boundaries is tested
    shots = [make_shot(0, d + 0.5, made=(i % 2 == 0), distance=float(d))
             for d in range(5, 15) for i in range(20 if d == 10 else 200)]
    scan = discontinuity_scan(shots, d_max=20, min_bin_count=50, alpha=1.0)
    flagged = {f[0] for f in scan.flagged_distances}
    assert 10.0 not in flagged and 11.0 not in flagged
    assert not np.isnan(scan.adjacent_p_values[9])
    assert np.isnan(scan.fgp_per_bin[0])


def test_scan_type_one_rate():
    # constant FGP: per-boundary rejection rate should sit near alpha
    rejections = tests = 0
    for seed in range(20):
        shots = distance_profile_shots([(0, 41, 0.38)], 400, seed=seed)
        scan = discontinuity_scan(shots, alpha=0.1)
        tests += len(scan.adjacent_p_values)
        rejections += len(scan.flagged_distances)
    se = math.sqrt(0.1 * 0.9 / tests)
    assert rejections / tests <= 0.1 + 2 * se


def test_scan_bonferroni_constant_fgp():
    dirty = 0
    for seed in range(20):
        shots = distance_profile_shots([(0, 41, 0.38)], 400, seed=100 + seed)
        dirty += bool(discontinuity_scan(shots, correction="bonferroni").flagged_distances)
    assert dirty <= 5


def test_scan_as_dict_has_no_nan():
    shots = [make_shot(0, 5.5, distance=5.0)] * 60
    d = discontinuity_scan(shots).as_dict()
    assert None in d["fgp_per_bin"]


def test_scan_validation():
    shots = [make_shot(0, 5.5)]
    with pytest.raises(ValueError):
        discontinuity_scan(shots, bin_width_ft=0)
    with pytest.raises(ValueError):
        discontinuity_scan(shots, correction="holm")
    with pytest.raises(ValueError):
        discontinuity_scan([make_shot(0, 45)], d_max=40)


def test_distance_density_mixture(rng):
    # half the shots at 2 ft, half spread over 20-30 ft
    d = np.concatenate([np.full(5000, 2.0), rng.uniform(20, 30, 5000)])
    shots = [make_shot(0.0, v, distance=float(np.floor(v))) for v in d]
    edges, dens = distance_density(shots, 1.0, use_location=True)
    assert edges[0] == 0.0
    assert np.sum(dens * np.diff(edges)) == pytest.approx(1.0)
    assert dens[2] == pytest.approx(0.5)
    assert np.allclose(dens[20:30], 0.05, atol=0.01)
    assert dens[10] == 0.0


def test_aggregate_zone_counts(zones):
    shots = [
        make_shot(22.5, 0.0, made=True),
        make_shot(22.5, 1.0),
        make_shot(-21.5, 0.0, made=True),
        make_shot(0.0, 24.0),
        make_shot(0.0, 5.0, made=True),
    ]
    c = aggregate_zone_counts(shots, zones)
    assert c[ZoneLabel.RIGHT_CORNER_OUT] == ZoneCounts(ZoneLabel.RIGHT_CORNER_OUT, 2, 1)
    assert c[ZoneLabel.LEFT_CORNER_IN].made == 1
    assert c[ZoneLabel.CREST_OUT].attempts == 1
    assert sum(v.attempts for v in c.values()) == 4
    empty = aggregate_zone_counts([], zones)
    assert all(v.attempts == 0 for v in empty.values())
