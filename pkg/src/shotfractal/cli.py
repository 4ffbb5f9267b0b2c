"""Command-line entry point: ``shotfractal analyze | synth | d2``.

Exit codes: 0 success, 1 fatal input error, 2 configuration error.
"""
from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .court import CourtConfigError, CourtModel
from .fractal import DegeneratePointSet, InsufficientScalingRange, estimate_d2
from .ingest import IngestError, parse_shots, write_shots_csv
from .report import AnalysisConfig, run_analysis
from .synth import SpecError, SyntheticSpec, generate_synthetic

EXIT_OK, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2

log = logging.getLogger("shotfractal")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shotfractal", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the full zone/D2/equity/scan analysis")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--format", choices=("csv", "jsonl"), default=None)
    p.add_argument("--config", type=Path, default=None, help="court constants, key=value lines")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", required=True, type=Path, help="output directory")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--scan-alpha", type=float, default=0.1)
    p.add_argument("--bin-width", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--unit-scale", type=float, default=0.1, help="feet per location unit")

    p = sub.add_parser("synth", help="write a synthetic shot chart")
    p.add_argument("--spec", required=True, type=Path, help="JSON SyntheticSpec")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--seed", type=_u64, default=None, help="overrides the seed in the JSON file")
    p.add_argument("--config", type=Path, default=None)

    p = sub.add_parser("d2", help="correlation dimension of a point file")
    p.add_argument("--input", required=True, type=Path)
    rng = p.add_mutually_exclusive_group()
    rng.add_argument("--auto-range", action="store_true", help="default when --r1/--r2 are absent")
    rng.add_argument("--r1", type=float)
    p.add_argument("--r2", type=float)
    p.add_argument("--n-radii", type=int, default=10)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--unit-scale", type=float, default=0.1)
    return parser


def read_points(path: Path, unit_scale: float = 0.1) -> np.ndarray:
    """Load x, y points for the ``d2`` command.

    A shot-chart CSV (recognised by its ``loc_x`` header) contributes its shot
    locations. Anything else is read as numeric columns, comma or whitespace
    separated, with an optional header line; only the first two columns count.
    """
    text = path.read_text(encoding="utf-8")
    first = text.lstrip().splitlines()[0] if text.strip() else ""
    if "loc_x" in first:
        shots, _ = parse_shots(text.encode("utf-8"), "csv", unit_scale)
        return np.array([(s.x_ft, s.y_ft) for s in shots], dtype=float).reshape(-1, 2)
    delimiter = "," if "," in first else None
    try:
        float(first.replace(",", " ").split()[0])
        skip = 0
    except (ValueError, IndexError):
        skip = 1
    try:
        pts = np.loadtxt(io.StringIO(text), delimiter=delimiter, skiprows=skip, ndmin=2, usecols=(0, 1))
    except ValueError as exc:
        raise IngestError(f"cannot read points from {path}: {exc}") from exc
    return pts


def _cmd_analyze(args) -> int:
    cfg = AnalysisConfig(
        seed=args.seed,
        alpha=args.alpha,
        scan_alpha=args.scan_alpha,
        bin_width_ft=args.bin_width,
        trials=args.trials,
    )
    report = run_analysis(args.input, args.config, args.out, args.format, args.unit_scale, cfg)
    print(f"wrote {args.out / 'report.json'} ({report.ingest.accepted} shots, "
          f"{len(report.warnings)} warnings)")
    return EXIT_OK


def _cmd_synth(args) -> int:
    spec = SyntheticSpec.from_json(args.spec)
    if args.seed is not None:
        spec.seed = args.seed
    model = CourtModel.from_config(args.config) if args.config else CourtModel()
    shots = generate_synthetic(spec, model)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", newline="", encoding="utf-8") as fh:
        write_shots_csv(shots, fh)
    print(f"wrote {len(shots)} shots to {args.out}")
    return EXIT_OK


def _cmd_d2(args) -> int:
    pts = read_points(args.input, args.unit_scale)
    if (args.r1 is None) != (args.r2 is None):
        raise ValueError("give both --r1 and --r2, or neither")
    fit = estimate_d2(pts, args.r1, args.r2, n_radii=args.n_radii, seed=args.seed)
    out = fit.as_dict()
    out["curve"] = fit.curve.as_rows()
    print(json.dumps(out, indent=2))
    return EXIT_OK


COMMANDS = {"analyze": _cmd_analyze, "synth": _cmd_synth, "d2": _cmd_d2}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (CourtConfigError, SpecError) as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except (IngestError, OSError, InsufficientScalingRange, DegeneratePointSet, ValueError) as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
