"""Court equity: expected points of a shot, FGP times its point value."""
from __future__ import annotations

from dataclasses import dataclass

from .stats import ZoneCounts

# FGP_out / FGP_in at which a 3PT band and the 2PT band inside it pay the same
EQUAL_EQUITY_RATIO = 2.0 / 3.0


@dataclass(frozen=True)
class EquityResult:
    equity_in: float
    equity_out: float
    ratio_required: float
    ratio_observed: float
    equity_gap: float

    def as_dict(self) -> dict:
        return {
            "equity_in": self.equity_in,
            "equity_out": self.equity_out,
            "ratio_required": self.ratio_required,
            "ratio_observed": self.ratio_observed,
            "equity_gap": self.equity_gap,
        }


def equity(fgp: float, is_three: bool) -> float:
    if not 0.0 <= fgp <= 1.0:
        raise ValueError(f"fgp must lie in [0, 1], got {fgp}")
    return fgp * (3 if is_three else 2)


def zone_equity_report(counts_in: ZoneCounts, counts_out: ZoneCounts) -> EquityResult:
    """Equity of a 2PT inner band against the 3PT band just outside it."""
    if counts_in.attempts == 0 or counts_out.attempts == 0:
        raise ValueError("zero attempts in one of the zones")
    fgp_in, fgp_out = counts_in.fgp, counts_out.fgp
    if fgp_in == 0:
        raise ValueError("inner zone FGP is zero; ratio undefined")
    e_in = equity(fgp_in, is_three=False)
    e_out = equity(fgp_out, is_three=True)
    return EquityResult(
        equity_in=e_in,
        equity_out=e_out,
        ratio_required=EQUAL_EQUITY_RATIO,
        ratio_observed=fgp_out / fgp_in,
        equity_gap=e_out - e_in,
    )
