import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_shot
from shotfractal.court import (
    REGIONS,
    CourtConfigError,
    CourtModel,
    ZoneKind,
    ZoneLabel,
    ZonePairError,
    ZoneSpec,
    baseline_outer_fraction,
    classify_points,
    classify_shot,
    court_angle,
    make_paper_zones,
    sample_union,
    zone_area,
)

CORNER_Y_MAX = math.sqrt(23.9**2 - 22.0**2)


def test_default_model_derives_corner_break(model):
    assert model.corner_y_max_ft == pytest.approx(9.338629, abs=1e-6)
    assert model.corner_y_max_ft == pytest.approx(CORNER_Y_MAX)


def test_eight_zones_in_fixed_order(zones):
    assert [z.label for z in zones] == list(ZoneLabel)
    kinds = [z.kind for z in zones]
    assert kinds[:4] == [ZoneKind.STRAIGHT_BAND] * 4
    assert kinds[4:] == [ZoneKind.ANNULAR_SECTOR] * 4


def test_corner_band_extent(by_label):
    lc_in = by_label[ZoneLabel.LEFT_CORNER_IN]
    assert (lc_in.x_lo, lc_in.x_hi) == (-22.0, -21.0)
    rc_out = by_label[ZoneLabel.RIGHT_CORNER_OUT]
    assert (rc_out.x_lo, rc_out.x_hi) == (22.0, 23.0)
    # 1 ft wide, from the baseline to the corner break
    assert zone_area(rc_out) == pytest.approx(5.25 + CORNER_Y_MAX)
    assert zone_area(rc_out) == pytest.approx(14.588629, abs=1e-6)


def test_baseline_fractions(by_label):
    def frac(region):
        i, o = REGIONS[region]
        return baseline_outer_fraction(by_label[i], by_label[o])

    assert frac("left_corner") == 0.5
    assert frac("right_corner") == 0.5
    assert frac("control") == pytest.approx(35 / 68, abs=1e-12)
    assert frac("crest") == pytest.approx(48.8 / 95.6, abs=1e-12)


def test_sector_area_closed_form():
    z = ZoneSpec.sector(22.9, 23.9, 0.0, 1.0)
    assert z.area() == pytest.approx(0.5 * (23.9**2 - 22.9**2))
    assert z.area() == pytest.approx(23.4)


def test_baseline_fraction_rejects_bad_pairs(by_label):
    with pytest.raises(ZonePairError):
        baseline_outer_fraction(by_label[ZoneLabel.LEFT_CORNER_IN], by_label[ZoneLabel.RIGHT_CORNER_OUT])
    with pytest.raises(ZonePairError):
        baseline_outer_fraction(by_label[ZoneLabel.CREST_IN], by_label[ZoneLabel.CONTROL_OUT])
    with pytest.raises(ZonePairError):
        baseline_outer_fraction(by_label[ZoneLabel.CREST_IN], by_label[ZoneLabel.RIGHT_CORNER_OUT])


def test_line_shots_go_outside(zones, model):
    # exactly on the corner line and on the arc
    assert classify_shot(make_shot(22.0, 0.0), zones) is ZoneLabel.RIGHT_CORNER_OUT
    assert classify_shot(make_shot(-22.0, 0.0), zones) is ZoneLabel.LEFT_CORNER_OUT
    assert classify_shot(make_shot(0.0, 23.9), zones) is ZoneLabel.CREST_OUT
    assert classify_shot(make_shot(0.0, 17.0), zones) is ZoneLabel.CONTROL_OUT
    assert bool(model.is_three_point(22.0, 0.0))
    assert bool(model.is_three_point(0.0, 23.9))
    assert not bool(model.is_three_point(21.99, 0.0))


def test_outside_all_zones(zones):
    assert classify_shot(make_shot(0.0, 5.0), zones) is None
    assert classify_shot(make_shot(0.0, 30.0), zones) is None
    assert classify_shot(make_shot(21.5, CORNER_Y_MAX), zones) is None


def test_court_angle_range():
    th = court_angle(np.array([1.0, -1.0, -1.0, 0.0]), np.array([0.0, -0.001, 0.0, -1.0]))
    assert np.all(th >= -np.pi / 2) and np.all(th < 1.5 * np.pi)
    assert th[1] == pytest.approx(np.pi + 0.001, abs=1e-5)


def _monte_carlo_area(zone, rng, n=400_000):
    # bounding box rejection, independent of the zone's own sampler
    if zone.kind is ZoneKind.STRAIGHT_BAND:
        x0, x1, y0, y1 = zone.x_lo, zone.x_hi, zone.span_lo, zone.span_hi
    else:
        x0, x1, y0, y1 = -zone.hi, zone.hi, -zone.hi, zone.hi
    pad = 0.5
    x = rng.uniform(x0 - pad, x1 + pad, n)
    y = rng.uniform(y0 - pad, y1 + pad, n)
    box = (x1 - x0 + 2 * pad) * (y1 - y0 + 2 * pad)
    return box * zone.contains(x, y).mean()


def test_area_matches_monte_carlo(zones, rng):
    for z in zones:
        est = _monte_carlo_area(z, rng)
        assert est == pytest.approx(z.area(), rel=0.05), z.label


def test_samples_stay_in_zone_and_zones_disjoint(zones, rng):
    for i, z in enumerate(zones):
        pts = z.sample(5000, rng)
        which = classify_points(pts[:, 0], pts[:, 1], zones)
        assert np.all(which == i), z.label
        hits = sum(other.contains(pts[:, 0], pts[:, 1]).astype(int) for other in zones)
        assert np.all(hits == 1)


@pytest.mark.parametrize("region", list(REGIONS))
def test_outer_share_monte_carlo(by_label, region):
    # uniform points over a box around the pair, first 1e6 that land in it
    z_in, z_out = (by_label[lab] for lab in REGIONS[region])
    if z_in.kind is ZoneKind.STRAIGHT_BAND:
        x0, x1 = min(z_in.x_lo, z_out.x_lo), max(z_in.x_hi, z_out.x_hi)
        y0, y1 = z_in.span_lo, z_in.span_hi
    else:
        x0, x1, y0, y1 = -z_out.hi, z_out.hi, -5.25, z_out.hi
    rng = np.random.default_rng(len(region))
    hits = []
    while sum(h.size for h in hits) < 1_000_000:
        x = rng.uniform(x0, x1, 2_000_000)
        y = rng.uniform(y0, y1, 2_000_000)
        inn = z_in.contains(x, y)
        out = z_out.contains(x, y)
        hits.append(out[inn | out])
    landed = np.concatenate(hits)[:1_000_000]
    base = baseline_outer_fraction(z_in, z_out)
    assert abs(landed.mean() - base) <= 3 * math.sqrt(base * (1 - base) / landed.size)


def test_sample_union_is_area_weighted(by_label, rng):
    z_in, z_out = by_label[ZoneLabel.CONTROL_IN], by_label[ZoneLabel.CONTROL_OUT]
    pts = sample_union([z_in, z_out], 200_000, rng)
    share = z_out.contains(pts[:, 0], pts[:, 1]).mean()
    assert share == pytest.approx(35 / 68, abs=0.005)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-30, 30, allow_nan=False),
    st.floats(-5.25, 40, allow_nan=False),
)
def test_classification_consistent(x, y):
    zones = make_paper_zones()
    owners = [z.label for z in zones if bool(z.contains(x, y))]
    assert len(owners) <= 1
    label = owners[0] if owners else None
    assert classify_shot(make_shot(x, y), zones) is label
    if label in (ZoneLabel.LEFT_CORNER_OUT, ZoneLabel.RIGHT_CORNER_OUT, ZoneLabel.CREST_OUT):
        assert bool(CourtModel().is_three_point(x, y))
    if label in (ZoneLabel.LEFT_CORNER_IN, ZoneLabel.RIGHT_CORNER_IN, ZoneLabel.CREST_IN):
        assert not bool(CourtModel().is_three_point(x, y))


def test_config_file(tmp_path):
    p = tmp_path / "court.cfg"
    p.write_text("corner_dist_ft = 22\ncrest_dist_ft = 23.75\n")
    m = CourtModel.from_config(p)
    assert m.crest_dist_ft == 23.75
    assert m.corner_y_max_ft == pytest.approx(math.sqrt(23.75**2 - 22**2))


@pytest.mark.parametrize(
    "text",
    [
        "corner_dist_ft = 25\ncrest_dist_ft = 23.9\n",
        "band_width_ft = 0\n",
        "rim_height = 10\n",
        "crest_dist_ft = wide\n",
        "control_radius_ft = 20.5\n",
        "this is not a config",
    ],
)
def test_bad_config(tmp_path, text):
    p = tmp_path / "court.cfg"
    p.write_text(text)
    with pytest.raises(CourtConfigError):
        CourtModel.from_config(p)


def test_missing_config(tmp_path):
    with pytest.raises(CourtConfigError):
        CourtModel.from_config(tmp_path / "nope.cfg")
