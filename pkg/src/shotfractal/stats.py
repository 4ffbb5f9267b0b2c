"""Hypothesis tests and summaries over zone and distance counts.

* :func:`outer_fraction_test` asks whether the share of attempts in the
  outer band of a zone pair differs from its area-based baseline (exact
  binomial test, Wilson interval).
* :func:`fgp_equality_test` compares two field-goal percentages with the
  pooled two-proportion z-test.
* :func:`discontinuity_scan` runs that comparison between every pair of
  adjacent distance bins.
* :func:`distance_density` is the normalised shot-distance histogram.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats

from .court import ZoneLabel, ZoneSpec, classify_points


@dataclass(frozen=True)
class ZoneCounts:
    label: ZoneLabel | str
    attempts: int = 0
    made: int = 0

    def __post_init__(self):
        if self.attempts < 0 or not 0 <= self.made <= self.attempts:
            raise ValueError(f"inconsistent counts {self.made}/{self.attempts}")

    @property
    def fgp(self) -> float:
        if self.attempts == 0:
            raise ValueError(f"no attempts in {self.label}")
        return self.made / self.attempts

    def as_dict(self) -> dict:
        label = self.label.value if isinstance(self.label, ZoneLabel) else self.label
        return {"label": label, "attempts": self.attempts, "made": self.made}


@dataclass(frozen=True)
class ProportionTestResult:
    p_hat: float
    ci_lo: float
    ci_hi: float
    baseline: float
    p_value: float
    n: int
    alpha: float = 0.05

    @property
    def significant(self) -> bool:
        return self.p_value < self.alpha

    def as_dict(self) -> dict:
        return {
            "p_hat": self.p_hat,
            "ci_lo": self.ci_lo,
            "ci_hi": self.ci_hi,
            "baseline": self.baseline,
            "gap": self.p_hat - self.baseline,
            "p_value": self.p_value,
            "n": self.n,
            "alpha": self.alpha,
            "significant": self.significant,
        }


@dataclass(frozen=True)
class TwoProportionResult:
    p1: float
    p2: float
    diff: float
    z: float
    p_value: float
    significant_at: float

    @property
    def significant(self) -> bool:
        return self.p_value < self.significant_at

    def as_dict(self) -> dict:
        return {
            "p1": self.p1,
            "p2": self.p2,
            "diff": self.diff,
            "z": self.z,
            "p_value": self.p_value,
            "significant_at": self.significant_at,
            "significant": self.significant,
        }


@dataclass
class DiscontinuityScan:
    bin_edges_ft: np.ndarray
    fgp_per_bin: np.ndarray
    n_per_bin: np.ndarray
    adjacent_p_values: np.ndarray
    flagged_distances: list[tuple[float, float, float]] = field(default_factory=list)
    alpha: float = 0.1
    min_bin_count: int = 50
    correction: str | None = None

    def as_dict(self) -> dict:
        return {
            "bin_edges_ft": self.bin_edges_ft.tolist(),
            "fgp_per_bin": [None if math.isnan(v) else v for v in self.fgp_per_bin.tolist()],
            "n_per_bin": self.n_per_bin.tolist(),
            "adjacent_p_values": [
                None if math.isnan(v) else v for v in self.adjacent_p_values.tolist()
            ],
            "flagged_distances": [
                {"distance_ft": d, "delta_fgp": dd, "p_value": p}
                for d, dd, p in self.flagged_distances
            ],
            "alpha": self.alpha,
            "min_bin_count": self.min_bin_count,
            "correction": self.correction,
        }


def wilson_interval(successes: int, n: int, alpha: float = 0.05) -> tuple[float, float]:
    if n <= 0:
        raise ValueError("n must be positive")
    z = stats.norm.isf(alpha / 2)
    p = successes / n
    denom = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == n else min(1.0, centre + half)
    return lo, hi


def outer_fraction_test(
    counts_in: ZoneCounts,
    counts_out: ZoneCounts,
    baseline: float,
    alpha: float = 0.05,
    min_total: int = 30,
) -> ProportionTestResult:
    """Exact two-sided binomial test of the outer-band share of attempts."""
    if not 0 < baseline < 1:
        raise ValueError("baseline must lie in (0, 1)")
    n = counts_in.attempts + counts_out.attempts
    if n == 0:
        raise ValueError("no attempts in either zone")
    if n < min_total:
        raise ValueError(f"only {n} attempts; need at least {min_total}")
    k = counts_out.attempts
    p_value = stats.binomtest(k, n, baseline, alternative="two-sided").pvalue
    lo, hi = wilson_interval(k, n, alpha)
    return ProportionTestResult(k / n, lo, hi, baseline, float(p_value), n, alpha)


def two_proportion_z(made_a: int, n_a: int, made_b: int, n_b: int) -> tuple[float, float]:
    """Pooled two-proportion z statistic and its two-sided p-value."""
    pooled = (made_a + made_b) / (n_a + n_b)
    diff = made_a / n_a - made_b / n_b
    se = math.sqrt(pooled * (1 - pooled) * (1 / n_a + 1 / n_b))
    if se == 0:
        # both samples all-made or all-missed
        return 0.0, 1.0
    z = diff / se
    return z, float(2 * stats.norm.sf(abs(z)))


def fgp_equality_test(
    counts_a: ZoneCounts, counts_b: ZoneCounts, alpha: float = 0.05
) -> TwoProportionResult:
    if counts_a.attempts == 0 or counts_b.attempts == 0:
        raise ValueError("both zones need at least one attempt")
    z, p = two_proportion_z(counts_a.made, counts_a.attempts, counts_b.made, counts_b.attempts)
    p1, p2 = counts_a.fgp, counts_b.fgp
    return TwoProportionResult(p1, p2, p1 - p2, z, p, alpha)


def _distances(shots, use_location: bool) -> np.ndarray:
    if use_location:
        return np.array([math.hypot(s.x_ft, s.y_ft) for s in shots], dtype=float)
    return np.array([s.shot_distance_ft for s in shots], dtype=float)


def discontinuity_scan(
    shots: Sequence,
    bin_width_ft: float = 1.0,
    d_min: float = 0.0,
    d_max: float = 40.0,
    alpha: float = 0.1,
    min_bin_count: int = 50,
    correction: str | None = None,
    use_location: bool = False,
) -> DiscontinuityScan:
    """FGP per distance bin and a z-test across every adjacent bin boundary.

    Bins are ``[d_min + k*w, d_min + (k+1)*w)``. A boundary is flagged when
    both neighbouring bins hold at least ``min_bin_count`` attempts and the
    test's p-value is below ``alpha`` (divided by the number of tested
    boundaries when ``correction='bonferroni'``). Distances come from the
    recorded shot distance unless ``use_location`` is set.
    """
    if bin_width_ft <= 0:
        raise ValueError("bin_width_ft must be positive")
    if not d_min < d_max:
        raise ValueError("need d_min < d_max")
    if correction not in (None, "bonferroni"):
        raise ValueError(f"unknown correction {correction!r}")

    n_bins = math.ceil((d_max - d_min) / bin_width_ft - 1e-9)
    edges = d_min + bin_width_ft * np.arange(n_bins + 1)
    d = _distances(shots, use_location)
    made = np.array([s.made for s in shots], dtype=bool)
    in_range = (d >= d_min) & (d < edges[-1])
    if not in_range.any():
        raise ValueError("no shots in the scanned distance range")

    idx = np.floor((d[in_range] - d_min) / bin_width_ft).astype(np.int64)
    idx = np.minimum(idx, n_bins - 1)
    n = np.bincount(idx, minlength=n_bins)
    k = np.bincount(idx, weights=made[in_range], minlength=n_bins).astype(np.int64)
    with np.errstate(invalid="ignore", divide="ignore"):
        fgp = np.where(n > 0, k / np.maximum(n, 1), np.nan)

    p_values = np.full(n_bins - 1, np.nan)
    testable = []
    for b in range(n_bins - 1):
        if n[b] > 0 and n[b + 1] > 0:
            p_values[b] = two_proportion_z(int(k[b]), int(n[b]), int(k[b + 1]), int(n[b + 1]))[1]
            if n[b] >= min_bin_count and n[b + 1] >= min_bin_count:
                testable.append(b)

    threshold = alpha / max(len(testable), 1) if correction == "bonferroni" else alpha
    flagged = [
        (float(edges[b + 1]), float(fgp[b + 1] - fgp[b]), float(p_values[b]))
        for b in testable
        if p_values[b] < threshold
    ]
    return DiscontinuityScan(edges, fgp, n, p_values, flagged, alpha, min_bin_count, correction)


def distance_density(shots: Sequence, bin_width_ft: float = 1.0, use_location: bool = False):
    """Histogram of shot distances normalised to unit area.

    Bins start at 0 ft and are ``[k*w, (k+1)*w)``; the last bin is the first
    one holding the longest shot. Returns ``(edges, densities)``.
    """
    if bin_width_ft <= 0:
        raise ValueError("bin_width_ft must be positive")
    if len(shots) == 0:
        raise ValueError("no shots")
    d = _distances(shots, use_location)
    n_bins = int(np.floor(d.max() / bin_width_ft)) + 1
    edges = bin_width_ft * np.arange(n_bins + 1)
    idx = np.minimum(np.floor(d / bin_width_ft).astype(np.int64), n_bins - 1)
    counts = np.bincount(idx, minlength=n_bins)
    return edges, counts / (counts.sum() * bin_width_ft)


def aggregate_zone_counts(shots: Sequence, zones: Sequence[ZoneSpec]) -> dict[ZoneLabel, ZoneCounts]:
    """Attempts and makes per zone; shots outside every zone are ignored."""
    if len(shots) == 0:
        return {z.label: ZoneCounts(z.label) for z in zones}
    x = np.array([s.x_ft for s in shots], dtype=float)
    y = np.array([s.y_ft for s in shots], dtype=float)
    made = np.array([s.made for s in shots], dtype=bool)
    which = classify_points(x, y, zones)
    out = {}
    for i, zone in enumerate(zones):
        hit = which == i
        out[zone.label] = ZoneCounts(zone.label, int(hit.sum()), int((hit & made).sum()))
    return out
