"""Spatial bias and correlation dimension of shot charts around the three-point line."""

__version__ = "0.1.0"

from .court import (
    CourtModel,
    ZoneKind,
    ZoneLabel,
    ZoneSpec,
    baseline_outer_fraction,
    classify_shot,
    make_paper_zones,
    zone_area,
)
from .equity import EquityResult, equity, zone_equity_report
from .fractal import (
    BaselineInterval,
    CorrelationCurve,
    CorrelationFit,
    auto_scale_range,
    correlation_integral,
    dimension_reduction,
    estimate_d2,
    reshuffle_baseline,
    sierpinski_points,
)
from .ingest import IngestError, IngestReport, ShotRecord, ShotType, load_shots, parse_shots
from .stats import (
    ZoneCounts,
    aggregate_zone_counts,
    discontinuity_scan,
    distance_density,
    fgp_equality_test,
    outer_fraction_test,
)
from .synth import SyntheticSpec, generate_synthetic
