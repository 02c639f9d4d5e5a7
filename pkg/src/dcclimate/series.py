"""Annual series, linear interpolation and baseline energy trajectories."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CoverageError, DomainError, RangeError, ValidationError
from .model import check_concentration, check_energy

# Baseline-energy anchor years.
TREND_START_YEAR = 2014
EFFICIENCY_END_YEAR = 2020

DEFAULT_ANCHOR_2014_GWH = 70_000.0
DEFAULT_ANCHOR_2020_GWH = 73_000.0
DEFAULT_EFFICIENCY_START = 2016
DEFAULT_REDUCTION = 0.40
DEFAULT_HORIZON = 2050


class SeriesUnit(enum.Enum):
    CONCENTRATION_PPM = "ppm"
    ENERGY_GWH = "GWh"
    TEMPERATURE_DELTA_F = "delta_F"


class PathwayLabel(enum.Enum):
    RCP45 = "RCP45"
    RCP85 = "RCP85"
    FLAT_CONTROL = "Control"


class BaselineLabel(enum.Enum):
    CURRENT_TREND = "CurrentTrend"
    BEST_PRACTICES = "BestPractices"


@dataclass(frozen=True)
class AnnualSeries:
    years: tuple[int, ...]
    values: tuple[float, ...]
    unit: SeriesUnit

    def __post_init__(self):
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.years:
            raise ValidationError("series must contain at least one point")
        if len(self.years) != len(self.values):
            raise ValidationError("years and values differ in length")
        for a, b in zip(self.years, self.years[1:]):
            if b <= a:
                raise ValidationError(f"years must be strictly increasing ({a} then {b})")
        if self.unit is SeriesUnit.CONCENTRATION_PPM:
            for v in self.values:
                check_concentration(v)
        elif self.unit is SeriesUnit.ENERGY_GWH:
            for v in self.values:
                check_energy(v)

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, float]], unit: SeriesUnit) -> "AnnualSeries":
        pts = list(points)
        return cls(tuple(p[0] for p in pts), tuple(p[1] for p in pts), unit)

    @property
    def first_year(self) -> int:
        return self.years[0]

    @property
    def last_year(self) -> int:
        return self.years[-1]

    def points(self) -> list[tuple[int, float]]:
        return list(zip(self.years, self.values))

    def covers(self, start: int, end: int) -> bool:
        return self.first_year <= start and end <= self.last_year

    def __call__(self, year: float) -> float:
        return interpolate_linear(self, year)

    def __len__(self) -> int:
        return len(self.years)


@dataclass(frozen=True)
class EmissionPathway:
    label: PathwayLabel
    series: AnnualSeries

    def __post_init__(self):
        if self.series.unit is not SeriesUnit.CONCENTRATION_PPM:
            raise ValidationError(f"pathway series must be in ppm, got {self.series.unit.value}")


@dataclass(frozen=True)
class EnergyBaseline:
    label: BaselineLabel
    series: AnnualSeries

    def __post_init__(self):
        if self.series.unit is not SeriesUnit.ENERGY_GWH:
            raise ValidationError(f"baseline series must be in GWh, got {self.series.unit.value}")


def interpolate_linear(series: AnnualSeries, year: float) -> float:
    """Piecewise-linear value at ``year``; anchors are returned exactly."""
    if not series.first_year <= year <= series.last_year:
        raise RangeError(
            f"year {year} outside series span [{series.first_year}, {series.last_year}]"
        )
    return float(np.interp(year, series.years, series.values))


def resample_annual(series: AnnualSeries, start: int, end: int) -> AnnualSeries:
    if start > end:
        raise RangeError(f"empty range [{start}, {end}]")
    for y in (start, end):
        if not series.first_year <= y <= series.last_year:
            raise RangeError(
                f"year {y} outside series span [{series.first_year}, {series.last_year}]"
            )
    years = np.arange(start, end + 1)
    values = np.interp(years, series.years, series.values)
    return AnnualSeries(tuple(years.tolist()), tuple(values.tolist()), series.unit)


def require_coverage(series: AnnualSeries, start: int, end: int, what: str = "series") -> None:
    if not series.covers(start, end):
        raise CoverageError(
            f"{what} spans [{series.first_year}, {series.last_year}] "
            f"but [{start}, {end}] is required"
        )


def flat_control(pathway: EmissionPathway, baseline_year: int, horizon: int) -> EmissionPathway:
    """Hold the baseline-year concentration of ``pathway`` constant."""
    c0 = interpolate_linear(pathway.series, baseline_year)
    years = range(baseline_year, horizon + 1)
    return EmissionPathway(
        PathwayLabel.FLAT_CONTROL,
        AnnualSeries(tuple(years), (c0,) * len(years), SeriesUnit.CONCENTRATION_PPM),
    )


def build_current_trend_baseline(
    anchor_2014: float = DEFAULT_ANCHOR_2014_GWH,
    anchor_2020: float = DEFAULT_ANCHOR_2020_GWH,
    horizon: int = DEFAULT_HORIZON,
) -> EnergyBaseline:
    """Compound growth through the 2014 and 2020 anchors, out to ``horizon``."""
    if not (anchor_2014 > 0 and anchor_2020 > 0):
        raise DomainError(f"anchors must be positive, got {anchor_2014}, {anchor_2020}")
    if horizon < EFFICIENCY_END_YEAR:
        raise RangeError(f"horizon must be >= {EFFICIENCY_END_YEAR}, got {horizon}")
    span = EFFICIENCY_END_YEAR - TREND_START_YEAR
    ratio = anchor_2020 / anchor_2014
    years = tuple(range(TREND_START_YEAR, horizon + 1))
    values = [anchor_2014 * ratio ** ((y - TREND_START_YEAR) / span) for y in years]
    values[span] = anchor_2020
    return EnergyBaseline(
        BaselineLabel.CURRENT_TREND, AnnualSeries(years, tuple(values), SeriesUnit.ENERGY_GWH)
    )


def trend_growth_rate(current_trend: EnergyBaseline) -> float:
    """Annual compound rate implied by the 2014 and 2020 values."""
    s = current_trend.series
    span = EFFICIENCY_END_YEAR - TREND_START_YEAR
    return (s(EFFICIENCY_END_YEAR) / s(TREND_START_YEAR)) ** (1 / span) - 1


def build_best_practices_baseline(
    current_trend: EnergyBaseline,
    efficiency_start: int = DEFAULT_EFFICIENCY_START,
    reduction_fraction: float = DEFAULT_REDUCTION,
    horizon: int = DEFAULT_HORIZON,
) -> EnergyBaseline:
    """Efficiency scenario: linear cut to ``1 - reduction`` of trend by 2020.

    Before ``efficiency_start`` the series equals the current trend.  From
    2020 on it keeps the reduced share of the trend, which is the same as
    growing at the trend's compound rate from the 2020 value.
    """
    if not 0.0 < reduction_fraction < 1.0:
        raise DomainError(f"reduction_fraction must lie in (0, 1), got {reduction_fraction}")
    if not efficiency_start < EFFICIENCY_END_YEAR <= horizon:
        raise DomainError(
            f"need efficiency_start < {EFFICIENCY_END_YEAR} <= horizon, "
            f"got {efficiency_start} and {horizon}"
        )
    ct = current_trend.series
    require_coverage(ct, efficiency_start, horizon, "current-trend baseline")

    keep = 1.0 - reduction_fraction
    start_value = ct(efficiency_start)
    end_value = keep * ct(EFFICIENCY_END_YEAR)
    ramp = EFFICIENCY_END_YEAR - efficiency_start

    years = tuple(range(ct.first_year, horizon + 1))
    values = []
    for y in years:
        if y <= efficiency_start:
            values.append(ct(y))
        elif y < EFFICIENCY_END_YEAR:
            values.append(start_value + (end_value - start_value) * (y - efficiency_start) / ramp)
        else:
            values.append(keep * ct(y))
    return EnergyBaseline(
        BaselineLabel.BEST_PRACTICES, AnnualSeries(years, tuple(values), SeriesUnit.ENERGY_GWH)
    )


def is_monotone(values: Sequence[float], strict: bool = False, increasing: bool = True) -> bool:
    pairs = zip(values, values[1:])
    if increasing:
        return all(b > a if strict else b >= a for a, b in pairs)
    return all(b < a if strict else b <= a for a, b in pairs)
