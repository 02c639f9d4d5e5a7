from pathlib import Path

import pytest

from dcclimate.report import parse_concentration_csv
from dcclimate.series import (
    AnnualSeries,
    EmissionPathway,
    PathwayLabel,
    SeriesUnit,
    build_best_practices_baseline,
    build_current_trend_baseline,
)

DATA = Path(__file__).resolve().parents[1] / "src" / "dcclimate" / "data"


@pytest.fixture(scope="session")
def rcp45():
    return parse_concentration_csv(DATA / "rcp45.csv")


@pytest.fixture(scope="session")
def rcp85():
    return parse_concentration_csv(DATA / "rcp85.csv")


@pytest.fixture(scope="session")
def current_trend():
    return build_current_trend_baseline(70_000.0, 73_000.0, 2050)


@pytest.fixture(scope="session")
def best_practices(current_trend):
    return build_best_practices_baseline(current_trend, 2016, 0.40, 2050)


@pytest.fixture
def ratio_175_pathway():
    """Two-anchor RCP 8.5 stand-in with C(2050)/C(2000) = 1.75."""
    return EmissionPathway(
        PathwayLabel.RCP85,
        AnnualSeries((2000, 2050), (400.0, 700.0), SeriesUnit.CONCENTRATION_PPM),
    )


def rel_close(a, b, rel):
    if a == b:
        return True
    return abs(a - b) <= rel * max(abs(a), abs(b))


# Criterion id -> (passed, detail), filled by test_acceptance.py.
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"{cid} {'PASS' if ok else 'FAIL'}: {detail}")
