"""Three-point line geometry and the analysis zones built around it.

Coordinates are in feet with the basket centre at the origin, ``x`` along
the baseline and ``y`` pointing towards half court. The three-point line is
two straight corner segments at ``|x| = corner_dist_ft`` joined by an arc of
radius ``crest_dist_ft``.

Zones are half-open in the radial (outward) direction: the boundary nearer
the basket belongs to the zone, the far one does not. A shot exactly on the
three-point line therefore falls in the outer band.
"""
from __future__ import annotations

import configparser
import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class CourtConfigError(ValueError):
    pass


class ZonePairError(ValueError):
    pass


class ZoneKind(enum.Enum):
    STRAIGHT_BAND = "straight_band"
    ANNULAR_SECTOR = "annular_sector"


class ZoneLabel(enum.Enum):
    LEFT_CORNER_IN = "left_corner_in"
    LEFT_CORNER_OUT = "left_corner_out"
    RIGHT_CORNER_IN = "right_corner_in"
    RIGHT_CORNER_OUT = "right_corner_out"
    CREST_IN = "crest_in"
    CREST_OUT = "crest_out"
    CONTROL_IN = "control_in"
    CONTROL_OUT = "control_out"


# region name -> (inner label, outer label)
REGIONS: dict[str, tuple[ZoneLabel, ZoneLabel]] = {
    "left_corner": (ZoneLabel.LEFT_CORNER_IN, ZoneLabel.LEFT_CORNER_OUT),
    "right_corner": (ZoneLabel.RIGHT_CORNER_IN, ZoneLabel.RIGHT_CORNER_OUT),
    "crest": (ZoneLabel.CREST_IN, ZoneLabel.CREST_OUT),
    "control": (ZoneLabel.CONTROL_IN, ZoneLabel.CONTROL_OUT),
}
THREE_POINT_REGIONS = ("left_corner", "right_corner", "crest")


def court_angle(x, y):
    """Polar angle of ``(x, y)`` mapped into [-pi/2, 3*pi/2)."""
    theta = np.arctan2(y, x)
    return np.where(theta < -np.pi / 2, theta + 2 * np.pi, theta)


@dataclass(frozen=True)
class ZoneSpec:
    """A straight band or an annular sector of the court.

    For a straight band, ``lo``/``hi`` bound the outward coordinate
    ``side * x`` and ``span_lo``/``span_hi`` bound ``y``. For an annular
    sector, ``lo``/``hi`` bound the radius and ``span_lo``/``span_hi`` the
    polar angle (radians, see :func:`court_angle`).
    """

    kind: ZoneKind
    lo: float
    hi: float
    span_lo: float
    span_hi: float
    side: int = 1
    label: ZoneLabel | None = None

    def __post_init__(self):
        if not self.hi > self.lo or not self.span_hi > self.span_lo:
            raise ValueError(f"empty zone: {self}")
        if self.side not in (-1, 1):
            raise ValueError("side must be -1 or +1")

    @classmethod
    def band(cls, x_lo, x_hi, y_lo, y_hi, label=None) -> "ZoneSpec":
        """Band between two vertical lines; left-side bands have ``x_hi <= 0``."""
        if x_hi <= 0:
            return cls(ZoneKind.STRAIGHT_BAND, -x_hi, -x_lo, y_lo, y_hi, -1, label)
        return cls(ZoneKind.STRAIGHT_BAND, x_lo, x_hi, y_lo, y_hi, 1, label)

    @classmethod
    def sector(cls, r_lo, r_hi, theta_lo, theta_hi, label=None) -> "ZoneSpec":
        return cls(ZoneKind.ANNULAR_SECTOR, r_lo, r_hi, theta_lo, theta_hi, 1, label)

    @property
    def x_lo(self) -> float:
        return self.lo if self.side > 0 else -self.hi

    @property
    def x_hi(self) -> float:
        return self.hi if self.side > 0 else -self.lo

    def area(self) -> float:
        if self.kind is ZoneKind.STRAIGHT_BAND:
            return (self.hi - self.lo) * (self.span_hi - self.span_lo)
        return 0.5 * (self.span_hi - self.span_lo) * (self.hi**2 - self.lo**2)

    def contains(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.kind is ZoneKind.STRAIGHT_BAND:
            u = self.side * x
            return (u >= self.lo) & (u < self.hi) & (y >= self.span_lo) & (y < self.span_hi)
        r = np.hypot(x, y)
        theta = court_angle(x, y)
        return (
            (r >= self.lo) & (r < self.hi)
            & (theta >= self.span_lo) & (theta <= self.span_hi)
        )

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """``n`` points uniform over the zone, shape (n, 2)."""
        if self.kind is ZoneKind.STRAIGHT_BAND:
            u = rng.uniform(self.lo, self.hi, n)
            y = rng.uniform(self.span_lo, self.span_hi, n)
            return np.column_stack([self.side * u, y])
        r = np.sqrt(rng.uniform(self.lo**2, self.hi**2, n))
        theta = rng.uniform(self.span_lo, self.span_hi, n)
        return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def zone_area(zone: ZoneSpec) -> float:
    return zone.area()


@dataclass(frozen=True)
class CourtModel:
    corner_dist_ft: float = 22.0
    crest_dist_ft: float = 23.9
    corner_y_max_ft: float | None = None
    court_half_width_ft: float = 25.0
    baseline_y_ft: float = -5.25
    band_width_ft: float = 1.0
    control_radius_ft: float = 17.0

    def __post_init__(self):
        if not 0 < self.corner_dist_ft < self.crest_dist_ft < self.court_half_width_ft + 10:
            raise CourtConfigError(
                "need 0 < corner_dist_ft < crest_dist_ft < court_half_width_ft + 10"
            )
        if self.corner_y_max_ft is None:
            y_max = math.sqrt(self.crest_dist_ft**2 - self.corner_dist_ft**2)
            object.__setattr__(self, "corner_y_max_ft", y_max)
        if not self.corner_y_max_ft > self.baseline_y_ft:
            raise CourtConfigError("corner_y_max_ft must exceed baseline_y_ft")
        if self.band_width_ft <= 0:
            raise CourtConfigError("band_width_ft must be positive")
        if self.corner_dist_ft + self.band_width_ft > self.court_half_width_ft:
            raise CourtConfigError("outer corner band extends past the sideline")
        if self.corner_y_max_ft >= self.crest_dist_ft - self.band_width_ft:
            raise CourtConfigError("corner break lies above the inner crest band")
        if self.control_radius_ft + self.band_width_ft >= self.corner_dist_ft - self.band_width_ft:
            raise CourtConfigError("control annulus overlaps the corner bands")

    @classmethod
    def from_config(cls, path: str | Path) -> "CourtModel":
        """Read ``key = value`` lines; every key is optional."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise CourtConfigError(f"cannot read config {path}: {exc}") from exc
        parser = configparser.ConfigParser()
        try:
            parser.read_string("[court]\n" + text)
        except configparser.Error as exc:
            raise CourtConfigError(f"unparseable config {path}: {exc}") from exc
        known = {f for f in cls.__dataclass_fields__}
        kwargs = {}
        for key, value in parser["court"].items():
            if key not in known:
                raise CourtConfigError(f"unknown court key {key!r}")
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise CourtConfigError(f"{key} is not a number: {value!r}") from None
        return cls(**kwargs)

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.__dataclass_fields__}

    def is_three_point(self, x, y):
        """Geometric 3PT test; shots on the line count as beyond it."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        corner = np.abs(x) >= self.corner_dist_ft
        arc = np.hypot(x, y) >= self.crest_dist_ft
        return np.where(y < self.corner_y_max_ft, corner, arc)

    @property
    def crest_theta_lo(self) -> float:
        # lowest angle at which the inner crest band clears the corner break
        return math.asin(self.corner_y_max_ft / (self.crest_dist_ft - self.band_width_ft))

    @property
    def control_theta_lo(self) -> float:
        # widest common span keeping the outer control band above the baseline
        r_out = self.control_radius_ft + self.band_width_ft
        return math.asin(max(-1.0, self.baseline_y_ft / r_out))


def make_paper_zones(model: CourtModel | None = None) -> list[ZoneSpec]:
    """The six bands flanking the three-point line plus the two control bands."""
    m = model or CourtModel()
    w = m.band_width_ft
    c = m.corner_dist_ft
    y0, y1 = m.baseline_y_ft, m.corner_y_max_ft
    t_lo = m.crest_theta_lo
    t_hi = math.pi - t_lo
    k_lo = m.control_theta_lo
    k_hi = math.pi - k_lo
    r = m.crest_dist_ft
    q = m.control_radius_ft
    return [
        ZoneSpec.band(-c, -(c - w), y0, y1, ZoneLabel.LEFT_CORNER_IN),
        ZoneSpec.band(-(c + w), -c, y0, y1, ZoneLabel.LEFT_CORNER_OUT),
        ZoneSpec.band(c - w, c, y0, y1, ZoneLabel.RIGHT_CORNER_IN),
        ZoneSpec.band(c, c + w, y0, y1, ZoneLabel.RIGHT_CORNER_OUT),
        ZoneSpec.sector(r - w, r, t_lo, t_hi, ZoneLabel.CREST_IN),
        ZoneSpec.sector(r, r + w, t_lo, t_hi, ZoneLabel.CREST_OUT),
        ZoneSpec.sector(q - w, q, k_lo, k_hi, ZoneLabel.CONTROL_IN),
        ZoneSpec.sector(q, q + w, k_lo, k_hi, ZoneLabel.CONTROL_OUT),
    ]


def zones_by_label(zones: Iterable[ZoneSpec]) -> dict[ZoneLabel, ZoneSpec]:
    return {z.label: z for z in zones}


def baseline_outer_fraction(zone_in: ZoneSpec, zone_out: ZoneSpec) -> float:
    """Share of the pair's area lying in the outer zone.

    This is the fraction of shots expected beyond the boundary if shots were
    spread uniformly over the two zones.
    """
    close = math.isclose
    if zone_in.kind is not zone_out.kind or zone_in.side != zone_out.side:
        raise ZonePairError("zones differ in kind or side")
    if not (close(zone_in.span_lo, zone_out.span_lo) and close(zone_in.span_hi, zone_out.span_hi)):
        raise ZonePairError("zones do not share their lateral extent")
    if not close(zone_in.hi, zone_out.lo):
        raise ZonePairError("inner zone's outer edge is not the outer zone's inner edge")
    a_in, a_out = zone_in.area(), zone_out.area()
    return a_out / (a_in + a_out)


def classify_points(x, y, zones: Sequence[ZoneSpec]) -> np.ndarray:
    """Index into ``zones`` of the zone holding each point, -1 for none."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.full(np.broadcast(x, y).shape, -1, dtype=np.int64)
    for i, zone in enumerate(zones):
        out[zone.contains(x, y)] = i
    return out


def classify_shot(record, zones: Sequence[ZoneSpec]) -> ZoneLabel | None:
    """Label of the zone containing the shot, or None."""
    for zone in zones:
        if zone.contains(record.x_ft, record.y_ft):
            return zone.label
    return None


def sample_union(zones: Sequence[ZoneSpec], n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` points uniform over the union of disjoint zones."""
    areas = np.array([z.area() for z in zones])
    per_zone = rng.multinomial(n, areas / areas.sum())
    return np.concatenate([z.sample(k, rng) for z, k in zip(zones, per_zone)])
