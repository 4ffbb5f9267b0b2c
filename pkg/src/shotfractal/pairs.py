"""Counting point pairs closer than a set of radii.

``count_pairs_grid`` buckets points into square cells whose side equals the
largest radius, so every pair that can matter lies in the same or an
adjacent cell. Candidate pairs are expanded in vectorised chunks, which
keeps memory bounded while avoiding a Python loop over cells.
``count_pairs_brute`` is the O(n^2) reference used to check it.
"""
from __future__ import annotations

import numpy as np

# half of the 3x3 neighbourhood; (0, 0) is handled with j > i
_HALF_OFFSETS = ((1, -1), (1, 0), (1, 1), (0, 1))
_CHUNK = 4_000_000


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must have shape (n, 2)")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


def _check_radii(radii) -> np.ndarray:
    r = np.asarray(radii, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("radii must be a non-empty 1-d sequence")
    if np.any(r <= 0) or not np.all(np.isfinite(r)):
        raise ValueError("radii must be positive and finite")
    if np.any(np.diff(r) < 0):
        raise ValueError("radii must be ascending")
    return r


def _binned(d: np.ndarray, radii: np.ndarray) -> np.ndarray:
    # slot k counts distances in (radii[k-1], radii[k]]; the last slot is > radii[-1]
    idx = np.searchsorted(radii, d, side="left")
    return np.bincount(idx, minlength=radii.size + 1)


def _pair_distance(xs: np.ndarray, ys: np.ndarray, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    dx = xs[i] - xs[j]
    dy = ys[i] - ys[j]
    dx *= dx
    dy *= dy
    dx += dy
    return np.sqrt(dx, out=dx)


def count_pairs_brute(points, radii) -> np.ndarray:
    """Unordered pairs with distance <= each radius, by full enumeration."""
    pts = _as_points(points)
    r = _check_radii(radii)
    xs, ys = pts[:, 0].copy(), pts[:, 1].copy()
    hist = np.zeros(r.size + 1, dtype=np.int64)
    for i in range(len(pts) - 1):
        j = np.arange(i + 1, len(pts))
        hist += _binned(_pair_distance(xs, ys, np.full(j.size, i), j), r)
    return np.cumsum(hist[:-1])


def _expand(lo: np.ndarray, hi: np.ndarray, rows: np.ndarray):
    """Yield (i, j) index chunks for j in [lo[k], hi[k]) paired with rows[k]."""
    cnt = hi - lo
    keep = cnt > 0
    lo, cnt, rows = lo[keep], cnt[keep], rows[keep]
    if rows.size == 0:
        return
    ends = np.cumsum(cnt)
    start = 0
    while start < rows.size:
        base = ends[start - 1] if start else 0
        stop = int(np.searchsorted(ends, base + _CHUNK, side="right"))
        stop = max(stop, start + 1)
        c = cnt[start:stop]
        first = np.cumsum(c) - c
        offs = np.arange(c.sum()) - np.repeat(first, c)
        yield np.repeat(rows[start:stop], c), np.repeat(lo[start:stop], c) + offs
        start = stop


def count_pairs_grid(points, radii) -> np.ndarray:
    """Unordered pairs with distance <= each radius, via cell bucketing.

    Returns an int64 array aligned with ``radii`` (which must be ascending).
    """
    pts = _as_points(points)
    r = _check_radii(radii)
    n = len(pts)
    if n < 2:
        return np.zeros(r.size, dtype=np.int64)

    cell = r[-1]
    cij = np.floor((pts - pts.min(axis=0)) / cell).astype(np.int64)
    ny = int(cij[:, 1].max()) + 3
    # one ring of padding so neighbour keys never wrap into another column
    key = (cij[:, 0] + 1) * ny + (cij[:, 1] + 1)
    order = np.argsort(key, kind="stable")
    xs, ys = pts[order, 0], pts[order, 1]
    key = key[order]
    rows = np.arange(n)

    hist = np.zeros(r.size + 1, dtype=np.int64)
    # same cell: partners after i within i's cell
    hi = np.searchsorted(key, key, side="right")
    for i, j in _expand(rows + 1, hi, rows):
        hist += _binned(_pair_distance(xs, ys, i, j), r)
    for dx, dy in _HALF_OFFSETS:
        nkey = key + dx * ny + dy
        lo = np.searchsorted(key, nkey, side="left")
        hi = np.searchsorted(key, nkey, side="right")
        for i, j in _expand(lo, hi, rows):
            hist += _binned(_pair_distance(xs, ys, i, j), r)
    return np.cumsum(hist[:-1])


def sample_pair_distances(points, n_pairs: int, rng: np.random.Generator) -> np.ndarray:
    """Distances of ``n_pairs`` unordered pairs drawn uniformly with replacement."""
    pts = _as_points(points)
    n = len(pts)
    if n < 2:
        raise ValueError("need at least two points")
    i = rng.integers(0, n, n_pairs)
    j = (i + rng.integers(1, n, n_pairs)) % n
    return _pair_distance(pts[:, 0].copy(), pts[:, 1].copy(), i, j)


def count_pairs_sampled(
    points, radii, n_pairs: int, rng: np.random.Generator, chunk: int = 1_000_000
) -> np.ndarray:
    """Pair counts among ``n_pairs`` random pairs (not scaled to the full set)."""
    r = _check_radii(radii)
    hist = np.zeros(r.size + 1, dtype=np.int64)
    done = 0
    while done < n_pairs:
        m = min(chunk, n_pairs - done)
        hist += _binned(sample_pair_distances(points, m, rng), r)
        done += m
    return np.cumsum(hist[:-1])
