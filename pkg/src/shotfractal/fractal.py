"""Correlation dimension of planar point sets.

The correlation integral C(r) is the fraction of unordered point pairs at
distance <= r. Over a scaling range [r1, r2] a fractal set satisfies
C(r) ~ r**D2, so D2 is estimated as the least-squares slope of log C
against log r on log-spaced radii.

Reshuffle baselines redraw the same number of points uniformly over a zone
and re-estimate D2, giving the dimension expected without spatial bias.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats

from .court import ZoneSpec, sample_union
from .pairs import (
    _as_points,
    count_pairs_grid,
    count_pairs_sampled,
    sample_pair_distances,
)

EXACT_CAP = 20_000
SAMPLED_PAIRS = 20_000_000
RANGE_SAMPLE_PAIRS = 250_000
MIN_PAIRS = 400_000
SPAN = 2.5
MAX_LOWER_QUANTILE = 0.25
UPPER_QUANTILE = 0.5


class InsufficientScalingRange(ValueError):
    """Fewer than three usable (r, C(r)) points in the fit."""

    reason = "insufficient_scaling_range"


class DegeneratePointSet(ValueError):
    """No usable spread of pairwise distances (e.g. all points identical)."""

    reason = "degenerate_point_set"


@dataclass
class CorrelationCurve:
    radii: np.ndarray
    c_of_r: np.ndarray
    n_points: int
    pairs_sampled: int | None = None  # None when every pair was counted

    def as_rows(self) -> list[tuple[float, float]]:
        return list(zip(self.radii.tolist(), self.c_of_r.tolist()))


@dataclass
class CorrelationFit:
    d2: float
    r1: float
    r2: float
    slope_stderr: float
    r_squared: float
    n_points_used: int
    n_excluded_radii: int = 0
    intercept: float = 0.0
    curve: CorrelationCurve | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        out = {
            "d2": self.d2,
            "r1": self.r1,
            "r2": self.r2,
            "slope_stderr": self.slope_stderr,
            "r_squared": self.r_squared,
            "n_points_used": self.n_points_used,
            "n_excluded_radii": self.n_excluded_radii,
        }
        if self.curve is not None:
            out["n_points"] = self.curve.n_points
            out["pairs_sampled"] = self.curve.pairs_sampled
        return out


@dataclass
class BaselineInterval:
    lo: float
    hi: float
    trials: int
    per_trial_d2: list[float]
    failed_trials: int = 0

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def as_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "trials": self.trials,
            "failed_trials": self.failed_trials,
            "per_trial_d2": list(self.per_trial_d2),
        }


def _point_set(points) -> np.ndarray:
    pts = _as_points(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    return pts


def correlation_integral(
    points,
    radii: Sequence[float],
    cap: int = EXACT_CAP,
    n_sampled_pairs: int = SAMPLED_PAIRS,
    seed: int = 0,
) -> CorrelationCurve:
    """C(r) at each radius.

    Counting is exact for up to ``cap`` points; larger sets use
    ``n_sampled_pairs`` uniformly drawn pairs and record that count on the
    returned curve.
    """
    pts = _point_set(points)
    r = np.asarray(radii, dtype=float)
    n = len(pts)
    if n <= cap:
        counts = count_pairs_grid(pts, r)
        c = counts / (n * (n - 1) / 2)
        return CorrelationCurve(r, c, n)
    rng = np.random.default_rng(seed)
    counts = count_pairs_sampled(pts, r, n_sampled_pairs, rng)
    return CorrelationCurve(r, counts / n_sampled_pairs, n, pairs_sampled=n_sampled_pairs)


def _pair_distances_for_range(pts: np.ndarray, seed: int) -> np.ndarray:
    n = len(pts)
    n_all = n * (n - 1) // 2
    if n_all <= RANGE_SAMPLE_PAIRS:
        i, j = np.triu_indices(n, k=1)
        return np.hypot(*(pts[i] - pts[j]).T)
    return sample_pair_distances(pts, RANGE_SAMPLE_PAIRS, np.random.default_rng(seed))


def auto_scale_range(
    points,
    method: str = "pairs",
    min_pairs: float = MIN_PAIRS,
    span: float = SPAN,
    p_lo: float = 5.0,
    p_hi: float = 50.0,
    seed: int = 0,
) -> tuple[float, float]:
    """Pick the scaling range [r1, r2] from the pairwise-distance distribution.

    ``method='pairs'`` (default) puts r1 at the distance below which
    ``min_pairs`` pairs fall, capped at the lower quartile, and sets
    ``r2 = min(span * r1, median distance)``. Denser sets thus resolve
    smaller scales. ``method='percentile'`` uses the ``p_lo``/``p_hi``
    percentiles directly.

    Distances come from all pairs when there are at most
    ``RANGE_SAMPLE_PAIRS`` of them, otherwise from a seeded uniform sample
    of that many pairs.
    If the rule yields ``r1 >= r2`` the range widens to
    [smallest positive distance, median].
    """
    pts = _point_set(points)
    d = _pair_distances_for_range(pts, seed)
    positive = d[d > 0]
    if positive.size == 0:
        raise DegeneratePointSet("all points coincide")

    if method == "pairs":
        n = len(pts)
        q = min(min_pairs / (n * (n - 1) / 2), MAX_LOWER_QUANTILE)
        r1, median = np.quantile(d, [q, UPPER_QUANTILE])
        r1, r2 = float(r1), float(min(span * r1, median))
    elif method == "percentile":
        r1, r2 = (float(v) for v in np.percentile(d, [p_lo, p_hi]))
    else:
        raise ValueError(f"unknown range method {method!r}")

    if not 0 < r1 < r2:
        r1, r2 = float(positive.min()), float(np.median(d))
        if not 0 < r1 < r2:
            raise DegeneratePointSet("no spread of pairwise distances to fit over")
    return r1, r2


def estimate_d2(
    points,
    r1: float | None = None,
    r2: float | None = None,
    n_radii: int = 10,
    seed: int = 0,
    cap: int = EXACT_CAP,
    **range_kw,
) -> CorrelationFit:
    """Correlation dimension from the log-log slope of C(r) over [r1, r2].

    When ``r1`` or ``r2`` is None both come from :func:`auto_scale_range`
    (extra keyword arguments are passed on to it). Radii with C(r) = 0 are
    left out of the fit and counted in ``n_excluded_radii``.
    """
    pts = _point_set(points)
    if r1 is None or r2 is None:
        r1, r2 = auto_scale_range(pts, seed=seed, **range_kw)
    if not 0 < r1 < r2:
        raise ValueError("need 0 < r1 < r2")
    if n_radii < 5:
        raise ValueError("n_radii must be at least 5")

    radii = np.geomspace(r1, r2, n_radii)
    curve = correlation_integral(pts, radii, cap=cap, seed=seed)
    usable = curve.c_of_r > 0
    if usable.sum() < 3:
        raise InsufficientScalingRange(
            f"only {int(usable.sum())} radii in [{r1:g}, {r2:g}] have C(r) > 0"
        )
    log_r = np.log(radii[usable])
    log_c = np.log(curve.c_of_r[usable])
    if np.ptp(log_c) == 0:
        slope, intercept, rvalue, stderr = 0.0, float(log_c[0]), 0.0, 0.0
    else:
        fit = stats.linregress(log_r, log_c)
        slope, intercept, rvalue, stderr = fit.slope, fit.intercept, fit.rvalue, fit.stderr
    return CorrelationFit(
        d2=float(slope),
        r1=float(r1),
        r2=float(r2),
        slope_stderr=float(stderr),
        r_squared=float(rvalue**2),
        n_points_used=int(usable.sum()),
        n_excluded_radii=int((~usable).sum()),
        intercept=float(intercept),
        curve=curve,
    )


def _trial_d2(zones, n, seed_seq, fit_kw):
    rng = np.random.default_rng(seed_seq)
    pts = sample_union(zones, n, rng)
    trial_seed = int(seed_seq.generate_state(1)[0])
    try:
        return estimate_d2(pts, seed=trial_seed, **fit_kw).d2
    except (InsufficientScalingRange, DegeneratePointSet):
        return None


def reshuffle_baseline(
    zone_in: ZoneSpec,
    zone_out: ZoneSpec | None,
    n: int,
    trials: int = 100,
    seed: int = 0,
    workers: int | None = None,
    max_fail_fraction: float = 0.1,
    **fit_kw,
) -> BaselineInterval:
    """95% percentile interval of D2 for ``n`` points uniform over the zones.

    Each trial gets its own child seed, so the result does not depend on
    ``workers``. ``zone_out`` may be None to sample a single zone.
    """
    if n < 100:
        raise ValueError("n must be at least 100")
    if trials < 20:
        raise ValueError("trials must be at least 20")
    zones = [zone_in] if zone_out is None else [zone_in, zone_out]
    children = np.random.SeedSequence(seed).spawn(trials)

    if workers == 1:
        results = [_trial_d2(zones, n, s, fit_kw) for s in children]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _trial_d2(zones, n, s, fit_kw), children))

    d2 = [v for v in results if v is not None]
    failed = trials - len(d2)
    if failed > max_fail_fraction * trials:
        raise InsufficientScalingRange(f"{failed} of {trials} reshuffle trials failed")
    lo, hi = np.percentile(d2, [2.5, 97.5])
    return BaselineInterval(float(lo), float(hi), trials, [float(v) for v in d2], failed)


def dimension_reduction(observed: CorrelationFit | float, baseline: BaselineInterval) -> float:
    """Relative drop of the observed D2 below the baseline midpoint."""
    mid = baseline.midpoint
    if not mid > 0:
        raise ValueError("baseline midpoint must be positive")
    d2 = observed.d2 if isinstance(observed, CorrelationFit) else float(observed)
    return 1.0 - d2 / mid


def sierpinski_points(n: int, seed: int = 0, burn_in: int = 100) -> np.ndarray:
    """Chaos-game sample of the Sierpinski triangle with unit side."""
    rng = np.random.default_rng(seed)
    vertices = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    picks = rng.integers(0, 3, n + burn_in)
    out = np.empty((n + burn_in, 2))
    p = rng.random(2) * 0.5
    for k, v in enumerate(picks):
        p = 0.5 * (p + vertices[v])
        out[k] = p
    return out[burn_in:]
