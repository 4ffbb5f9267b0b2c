"""Synthetic shot charts with known spatial bias and FGP-by-distance."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .court import REGIONS, CourtModel, make_paper_zones, sample_union, zones_by_label
from .ingest import ShotRecord, ShotType

DEFAULT_REGION_WEIGHTS = {
    "left_corner": 0.15,
    "right_corner": 0.15,
    "crest": 0.5,
    "control": 0.2,
}
HALF_COURT_LENGTH_FT = 47.0


class SpecError(ValueError):
    pass


@dataclass
class SyntheticSpec:
    """Parameters of a synthetic chart.

    ``outer_bias`` is the probability that a shot drawn for one of the three
    three-point regions lands in the outer band; None spreads those shots
    by area (no bias). Control-region shots are always spread by area.
    ``background_fraction`` of all shots fall uniformly over the half court.
    """

    n_shots: int
    outer_bias: float | None = None
    fgp_by_distance: list[tuple[float, float, float]] = field(
        default_factory=lambda: [(0.0, 94.0, 0.45)]
    )
    seed: int = 0
    background_fraction: float = 0.2
    region_weights: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_REGION_WEIGHTS))

    def __post_init__(self):
        if self.n_shots < 0:
            raise ValueError("n_shots must be non-negative")
        if self.outer_bias is not None and not 0.0 <= self.outer_bias <= 1.0:
            raise ValueError("outer_bias must lie in [0, 1]")
        if not 0.0 <= self.background_fraction <= 1.0:
            raise ValueError("background_fraction must lie in [0, 1]")
        unknown = set(self.region_weights) - set(REGIONS)
        if unknown:
            raise ValueError(f"unknown regions {sorted(unknown)}")
        if any(w < 0 for w in self.region_weights.values()) or not sum(self.region_weights.values()) > 0:
            raise ValueError("region weights must be non-negative with a positive sum")
        pieces = sorted((float(a), float(b), float(p)) for a, b, p in self.fgp_by_distance)
        for lo, hi, p in pieces:
            if not lo < hi or not 0.0 <= p <= 1.0:
                raise ValueError(f"bad fgp piece {(lo, hi, p)}")
        for (_, hi, _), (lo, _, _) in zip(pieces, pieces[1:]):
            if lo < hi:
                raise ValueError("fgp pieces overlap")
        self.fgp_by_distance = pieces

    @classmethod
    def from_json(cls, path: str | Path) -> "SyntheticSpec":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
            if "fgp_by_distance" in data:
                data["fgp_by_distance"] = [tuple(p) for p in data["fgp_by_distance"]]
            return cls(**data)
        except (OSError, ValueError, TypeError) as exc:
            raise SpecError(f"bad synthetic spec {path}: {exc}") from exc


def fgp_at(pieces, d) -> np.ndarray:
    """Evaluate a piecewise-constant FGP at distances ``d``."""
    d = np.asarray(d, dtype=float)
    out = np.full(d.shape, np.nan)
    for lo, hi, p in pieces:
        out[(d >= lo) & (d < hi)] = p
    if np.isnan(out).any():
        missing = float(d[np.isnan(out)].min())
        raise ValueError(f"no FGP piece covers distance {missing:.2f} ft")
    return out


def _records(xy: np.ndarray, made: np.ndarray, model: CourtModel, rng, zone_tag: str) -> list[ShotRecord]:
    x, y = xy[:, 0], xy[:, 1]
    dist = np.floor(np.hypot(x, y))
    three = model.is_three_point(x, y)
    clock = rng.integers(0, 720, len(xy))
    return [
        ShotRecord(
            game_id=f"SYN{i // 200:06d}",
            event_id=str(i),
            player_id="0",
            team_id="0",
            period=1 + i % 4,
            clock_remaining_s=int(clock[i]),
            action_type="Jump Shot",
            shot_type=ShotType.THREE_POINT if three[i] else ShotType.TWO_POINT,
            shot_zone=zone_tag,
            shot_distance_ft=float(dist[i]),
            x_ft=float(x[i]),
            y_ft=float(y[i]),
            made=bool(made[i]),
        )
        for i in range(len(xy))
    ]


def generate_synthetic(spec: SyntheticSpec, model: CourtModel | None = None) -> list[ShotRecord]:
    """Draw a shot chart from ``spec``; deterministic in ``spec.seed``."""
    model = model or CourtModel()
    rng = np.random.default_rng(spec.seed)
    zones = zones_by_label(make_paper_zones(model))

    n_band = int(round(spec.n_shots * (1 - spec.background_fraction)))
    names = list(REGIONS)
    w = np.array([spec.region_weights.get(r, 0.0) for r in names])
    per_region = rng.multinomial(n_band, w / w.sum())

    chunks = []
    for name, k in zip(names, per_region):
        z_in, z_out = (zones[label] for label in REGIONS[name])
        if name == "control" or spec.outer_bias is None:
            chunks.append(sample_union([z_in, z_out], k, rng))
        else:
            k_out = rng.binomial(k, spec.outer_bias)
            chunks.append(z_out.sample(k_out, rng))
            chunks.append(z_in.sample(k - k_out, rng))

    n_bg = spec.n_shots - n_band
    hw = model.court_half_width_ft
    y0 = model.baseline_y_ft
    chunks.append(
        np.column_stack([rng.uniform(-hw, hw, n_bg), rng.uniform(y0, y0 + HALF_COURT_LENGTH_FT, n_bg)])
    )
    xy = np.concatenate(chunks)[rng.permutation(spec.n_shots)]
    made = rng.random(len(xy)) < fgp_at(spec.fgp_by_distance, np.hypot(xy[:, 0], xy[:, 1]))
    return _records(xy, made, model, rng, "Synthetic")


def distance_profile_shots(
    fgp_by_distance,
    n_per_bin: int,
    d_max: float = 40.0,
    d_min: float = 0.0,
    bin_width_ft: float = 1.0,
    seed: int = 0,
    model: CourtModel | None = None,
) -> list[ShotRecord]:
    """``n_per_bin`` shots in every distance bin, at random angles facing the court.

    Useful for exercising :func:`~shotfractal.stats.discontinuity_scan` with a
    planted FGP profile.
    """
    model = model or CourtModel()
    rng = np.random.default_rng(seed)
    n_bins = math.ceil((d_max - d_min) / bin_width_ft - 1e-9)
    lo = d_min + bin_width_ft * np.repeat(np.arange(n_bins), n_per_bin)
    d = lo + bin_width_ft * rng.random(lo.size)
    theta = rng.uniform(0.0, math.pi, lo.size)
    xy = np.column_stack([d * np.cos(theta), d * np.sin(theta)])
    made = rng.random(lo.size) < fgp_at(fgp_by_distance, d)
    return _records(xy, made, model, rng, "Profile")
