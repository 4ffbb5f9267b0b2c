import numpy as np
import pytest

from shotfractal.court import CourtModel, make_paper_zones, zones_by_label
from shotfractal.ingest import ShotRecord, ShotType

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def model():
    return CourtModel()


@pytest.fixture
def zones(model):
    return make_paper_zones(model)


@pytest.fixture
def by_label(zones):
    return zones_by_label(zones)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def make_shot(x, y, made=False, three=None, distance=None, **kw):
    d = float(np.floor(np.hypot(x, y))) if distance is None else distance
    if three is None:
        three = bool(CourtModel().is_three_point(x, y))
    fields = dict(
        game_id="G1",
        event_id="1",
        player_id="P1",
        team_id="T1",
        period=1,
        clock_remaining_s=300,
        action_type="Jump Shot",
        shot_type=ShotType.THREE_POINT if three else ShotType.TWO_POINT,
        shot_zone="",
        shot_distance_ft=d,
        x_ft=float(x),
        y_ft=float(y),
        made=made,
    )
    fields.update(kw)
    return ShotRecord(**fields)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
