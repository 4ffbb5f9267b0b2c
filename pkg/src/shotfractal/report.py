"""End-to-end analysis of a shot chart and the files it writes."""
from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .court import (
    REGIONS,
    THREE_POINT_REGIONS,
    CourtModel,
    baseline_outer_fraction,
    classify_points,
    make_paper_zones,
    zones_by_label,
)
from .equity import zone_equity_report
from .fractal import (
    DegeneratePointSet,
    InsufficientScalingRange,
    dimension_reduction,
    estimate_d2,
    reshuffle_baseline,
)
from .ingest import IngestError, IngestReport, ShotRecord, load_shots
from .stats import (
    aggregate_zone_counts,
    discontinuity_scan,
    distance_density,
    fgp_equality_test,
    outer_fraction_test,
)

log = logging.getLogger(__name__)

# outer-band shares quoted in the literature, reported next to the geometric ones
PUBLISHED_BASELINES = {
    "left_corner": 0.50,
    "right_corner": 0.50,
    "crest": 0.52,
    "control": 0.514,
}
MIN_FRACTAL_POINTS = 100
SAMPLE_POINTS = 5000


@dataclass
class AnalysisConfig:
    seed: int = 0
    alpha: float = 0.05
    scan_alpha: float = 0.1
    bin_width_ft: float = 1.0
    scan_max_ft: float = 40.0
    min_bin_count: int = 50
    trials: int = 100
    workers: int | None = None

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "alpha": self.alpha,
            "scan_alpha": self.scan_alpha,
            "bin_width_ft": self.bin_width_ft,
            "scan_max_ft": self.scan_max_ft,
            "min_bin_count": self.min_bin_count,
            "trials": self.trials,
        }


@dataclass
class AnalysisReport:
    config_echo: dict
    ingest: IngestReport
    zone_counts: dict
    bias_tests: dict = field(default_factory=dict)
    fgp_tests: dict = field(default_factory=dict)
    fractal: dict = field(default_factory=dict)
    equity: dict = field(default_factory=dict)
    scan: object = None
    density: tuple | None = None
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        edges, dens = self.density if self.density is not None else (np.array([]), np.array([]))
        return {
            "version": __version__,
            "config": self.config_echo,
            "ingest": self.ingest.as_dict(),
            "zone_counts": {k: v.as_dict() for k, v in self.zone_counts.items()},
            "bias_tests": self.bias_tests,
            "fgp_tests": {k: v.as_dict() for k, v in self.fgp_tests.items()},
            "fractal": {
                k: {
                    "observed": v["observed"].as_dict(),
                    "baseline": v["baseline"].as_dict(),
                    "reduction": v["reduction"],
                }
                for k, v in self.fractal.items()
            },
            "equity": {k: v.as_dict() for k, v in self.equity.items()},
            "scan": self.scan.as_dict() if self.scan is not None else None,
            "density": {"bin_edges_ft": edges.tolist(), "density": dens.tolist()},
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, allow_nan=False)


def _region_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def analyze_shots(
    shots: Sequence[ShotRecord],
    model: CourtModel | None = None,
    config: AnalysisConfig | None = None,
    ingest_report: IngestReport | None = None,
) -> AnalysisReport:
    """Run zone counts, bias and FGP tests, D2 with baselines, equity, scan and density.

    Failures confined to one region (too few shots, no scaling range) are
    recorded as warnings and the remaining analyses still run.
    """
    model = model or CourtModel()
    cfg = config or AnalysisConfig()
    if ingest_report is None:
        ingest_report = IngestReport(len(shots), len(shots), 0, {})
    zones = make_paper_zones(model)
    by_label = zones_by_label(zones)
    counts = aggregate_zone_counts(shots, zones)

    report = AnalysisReport(
        config_echo={"court": model.as_dict(), "analysis": cfg.as_dict()},
        ingest=ingest_report,
        zone_counts={label.value: c for label, c in counts.items()},
    )
    warn = report.warnings.append

    xy = np.array([(s.x_ft, s.y_ft) for s in shots], dtype=float).reshape(-1, 2)
    which = classify_points(xy[:, 0], xy[:, 1], zones) if len(xy) else np.array([], dtype=int)

    for index, (region, (lab_in, lab_out)) in enumerate(REGIONS.items()):
        z_in, z_out = by_label[lab_in], by_label[lab_out]
        c_in, c_out = counts[lab_in], counts[lab_out]

        baseline = baseline_outer_fraction(z_in, z_out)
        try:
            test = outer_fraction_test(c_in, c_out, baseline, alpha=cfg.alpha)
            entry = test.as_dict()
        except ValueError as exc:
            warn(f"{region}: bias test skipped ({exc})")
            entry = {"baseline": baseline, "skipped": str(exc)}
        entry["published_baseline"] = PUBLISHED_BASELINES[region]
        report.bias_tests[region] = entry

        if region not in THREE_POINT_REGIONS:
            continue

        try:
            report.fgp_tests[region] = fgp_equality_test(c_out, c_in, alpha=cfg.alpha)
        except ValueError as exc:
            warn(f"{region}: FGP test skipped ({exc})")
        try:
            report.equity[region] = zone_equity_report(c_in, c_out)
        except ValueError as exc:
            warn(f"{region}: equity skipped ({exc})")

        idx = [zones.index(z_in), zones.index(z_out)]
        pts = xy[np.isin(which, idx)]
        if len(pts) < MIN_FRACTAL_POINTS:
            warn(f"{region}: {len(pts)} shots, need {MIN_FRACTAL_POINTS} for D2")
            continue
        seed = _region_seed(cfg.seed, index)
        try:
            observed = estimate_d2(pts, seed=seed)
            base = reshuffle_baseline(
                z_in, z_out, len(pts), trials=cfg.trials, seed=seed, workers=cfg.workers
            )
        except (InsufficientScalingRange, DegeneratePointSet) as exc:
            warn(f"{region}: D2 skipped ({exc})")
            continue
        report.fractal[region] = {
            "observed": observed,
            "baseline": base,
            "reduction": dimension_reduction(observed, base),
        }

    if shots:
        try:
            report.scan = discontinuity_scan(
                shots,
                bin_width_ft=cfg.bin_width_ft,
                d_min=0.0,
                d_max=cfg.scan_max_ft,
                alpha=cfg.scan_alpha,
                min_bin_count=cfg.min_bin_count,
            )
        except ValueError as exc:
            warn(f"scan skipped ({exc})")
        report.density = distance_density(shots, cfg.bin_width_ft)
    return report


def _write_rows(path: Path, header: Sequence[str], rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_plot_data(report: AnalysisReport, shots: Sequence[ShotRecord], out_dir: Path, seed: int = 0) -> list[Path]:
    """One delimited-text file per plotted series."""
    written = []
    if report.scan is not None:
        s = report.scan
        path = out_dir / "fgp_by_distance.csv"
        _write_rows(
            path,
            ["bin_lo_ft", "bin_hi_ft", "attempts", "fgp"],
            [
                (repr(float(lo)), repr(float(hi)), int(n), "" if np.isnan(f) else repr(float(f)))
                for lo, hi, n, f in zip(s.bin_edges_ft[:-1], s.bin_edges_ft[1:], s.n_per_bin, s.fgp_per_bin)
            ],
        )
        written.append(path)
    if report.density is not None:
        edges, dens = report.density
        path = out_dir / "distance_density.csv"
        _write_rows(
            path,
            ["bin_lo_ft", "bin_hi_ft", "density"],
            [(repr(float(a)), repr(float(b)), repr(float(d))) for a, b, d in zip(edges[:-1], edges[1:], dens)],
        )
        written.append(path)
    for region, res in report.fractal.items():
        curve = res["observed"].curve
        path = out_dir / f"correlation_{region}.csv"
        _write_rows(path, ["r_ft", "c_of_r"], [(repr(r), repr(c)) for r, c in curve.as_rows()])
        written.append(path)

    # uniformly thinned zone shots for a shot-chart scatter
    zones = make_paper_zones(CourtModel(**report.config_echo["court"]))
    xy = np.array([(s.x_ft, s.y_ft) for s in shots], dtype=float).reshape(-1, 2)
    if len(xy):
        which = classify_points(xy[:, 0], xy[:, 1], zones)
        inside = np.flatnonzero(which >= 0)
        rng = np.random.default_rng(seed)
        if inside.size > SAMPLE_POINTS:
            inside = np.sort(rng.choice(inside, SAMPLE_POINTS, replace=False))
        path = out_dir / "zone_shot_sample.csv"
        _write_rows(
            path,
            ["x_ft", "y_ft", "zone"],
            [(repr(float(xy[i, 0])), repr(float(xy[i, 1])), zones[which[i]].label.value) for i in inside],
        )
        written.append(path)
    return written


def run_analysis(
    input_path: str | Path,
    config_path: str | Path | None,
    output_path: str | Path,
    format: str | None = None,
    unit_scale: float = 0.1,
    config: AnalysisConfig | None = None,
) -> AnalysisReport:
    """Ingest ``input_path``, analyse it and write ``report.json`` plus plot data.

    ``output_path`` is a directory, created if needed.
    """
    cfg = config or AnalysisConfig()
    model = CourtModel.from_config(config_path) if config_path else CourtModel()
    shots, ingest_report = load_shots(input_path, format=format, unit_scale=unit_scale)
    log.info("ingested %d of %d rows", ingest_report.accepted, ingest_report.total_rows)
    if not shots:
        raise IngestError(f"no valid shot records in {input_path}")

    report = analyze_shots(shots, model, cfg, ingest_report)
    report.config_echo["input"] = Path(input_path).name
    report.config_echo["unit_scale"] = unit_scale

    out_dir = Path(output_path)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(report.to_json() + "\n", encoding="utf-8")
    write_plot_data(report, shots, out_dir, seed=cfg.seed)
    for w in report.warnings:
        log.warning(w)
    return report
