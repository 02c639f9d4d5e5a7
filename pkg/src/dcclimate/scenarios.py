"""Scenario grid: emission pathway x energy baseline x uplift slope."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import CoverageError, MismatchError, RangeError
from .model import (
    ModelParameters,
    apply_energy_uplift,
    check_slope,
    temperature_delta_celsius,
    to_fahrenheit_delta,
    uplift_fraction,
)
from .series import (
    BaselineLabel,
    EmissionPathway,
    EnergyBaseline,
    PathwayLabel,
    flat_control,
    interpolate_linear,
    require_coverage,
    resample_annual,
)

PATHWAY_ORDER = (PathwayLabel.FLAT_CONTROL, PathwayLabel.RCP45, PathwayLabel.RCP85)
BASELINE_ORDER = (BaselineLabel.CURRENT_TREND, BaselineLabel.BEST_PRACTICES)


@dataclass(frozen=True)
class ScenarioSpec:
    pathway: PathwayLabel
    baseline: BaselineLabel
    slope: float
    params: ModelParameters = field(default_factory=ModelParameters)
    year_range: tuple[int, int] = (2014, 2050)

    def __post_init__(self):
        check_slope(self.slope)
        start, end = self.year_range
        if start > end:
            raise RangeError(f"empty year range {self.year_range}")

    @property
    def key(self) -> tuple[str, str]:
        return (self.pathway.value, self.baseline.value)


@dataclass(frozen=True)
class ForecastPoint:
    year: int
    concentration_ppm: float
    delta_f: float
    uplift: float
    baseline_gwh: float
    energy_gwh: float


@dataclass(frozen=True)
class ForecastSeries:
    spec: ScenarioSpec
    points: tuple[ForecastPoint, ...]

    @property
    def years(self) -> list[int]:
        return [p.year for p in self.points]

    @property
    def energy(self) -> list[float]:
        return [p.energy_gwh for p in self.points]

    def at(self, year: int) -> ForecastPoint:
        start = self.points[0].year
        idx = year - start
        if not 0 <= idx < len(self.points):
            raise RangeError(f"year {year} outside forecast range {self.spec.year_range}")
        return self.points[idx]


@dataclass(frozen=True)
class ScenarioComparison:
    scenario: ForecastSeries
    control: ForecastSeries
    relative_excess: tuple[float, ...]
    headline_year: int

    @property
    def years(self) -> list[int]:
        return self.scenario.years

    @property
    def headline_excess(self) -> float:
        return self.relative_excess[self.headline_year - self.scenario.points[0].year]


def run_scenario(
    spec: ScenarioSpec, pathway_data: EmissionPathway, baseline_data: EnergyBaseline
) -> ForecastSeries:
    start, end = spec.year_range
    base_year = spec.params.baseline_year
    require_coverage(baseline_data.series, start, end, f"{baseline_data.label.value} baseline")
    require_coverage(
        pathway_data.series, min(start, base_year), max(end, base_year),
        f"{pathway_data.label.value} pathway",
    )

    annual = resample_annual(pathway_data.series, start, end)
    c_base = interpolate_linear(pathway_data.series, base_year)
    points = []
    for year, c in zip(annual.years, annual.values):
        dt_f = to_fahrenheit_delta(temperature_delta_celsius(c, c_base, spec.params), spec.params)
        base = interpolate_linear(baseline_data.series, year)
        points.append(
            ForecastPoint(
                year=year,
                concentration_ppm=c,
                delta_f=dt_f.value,
                uplift=uplift_fraction(dt_f, spec.slope),
                baseline_gwh=base,
                energy_gwh=apply_energy_uplift(base, dt_f, spec.slope),
            )
        )
    return ForecastSeries(spec, tuple(points))


def _as_mapping(items, attr: str) -> dict:
    if isinstance(items, Mapping):
        return dict(items)
    return {getattr(item, attr): item for item in items}


def run_grid(
    pathways: Mapping[PathwayLabel, EmissionPathway] | Iterable[EmissionPathway],
    baselines: Mapping[BaselineLabel, EnergyBaseline] | Iterable[EnergyBaseline],
    params: ModelParameters | None = None,
    year_range: tuple[int, int] = (2014, 2050),
) -> list[ForecastSeries]:
    """The six forecast lines, baseline-major and pathway-minor.

    Climate lines use ``params.energy_slope_per_deg_f``; the control line of
    each family is a flat pathway at slope 0.  A missing control pathway is
    synthesised from the RCP 8.5 baseline-year concentration.
    """
    params = params or ModelParameters()
    paths = _as_mapping(pathways, "label")
    bases = _as_mapping(baselines, "label")
    for label in (PathwayLabel.RCP45, PathwayLabel.RCP85):
        if label not in paths:
            raise CoverageError(f"missing {label.value} pathway")
    for label in BASELINE_ORDER:
        if label not in bases:
            raise CoverageError(f"missing {label.value} baseline")
    if PathwayLabel.FLAT_CONTROL not in paths:
        end = max(year_range[1], params.baseline_year)
        paths[PathwayLabel.FLAT_CONTROL] = flat_control(
            paths[PathwayLabel.RCP85], params.baseline_year, end
        )

    grid = []
    for b_label in BASELINE_ORDER:
        for p_label in PATHWAY_ORDER:
            slope = 0.0 if p_label is PathwayLabel.FLAT_CONTROL else params.energy_slope_per_deg_f
            spec = ScenarioSpec(p_label, b_label, slope, params, year_range)
            grid.append(run_scenario(spec, paths[p_label], bases[b_label]))
    return grid


def compare_to_control(
    scenario: ForecastSeries, control: ForecastSeries, headline_year: int | None = None
) -> ScenarioComparison:
    """Relative energy excess of ``scenario`` over ``control``, year by year.

    Both share one baseline, so the ratio of energies reduces to
    ``(1 + u_s) / (1 + u_c) - 1`` and the baseline cancels exactly.
    """
    if scenario.spec.baseline is not control.spec.baseline:
        raise MismatchError(
            f"baselines differ: {scenario.spec.baseline.value} vs {control.spec.baseline.value}"
        )
    if scenario.spec.year_range != control.spec.year_range:
        raise MismatchError(
            f"year ranges differ: {scenario.spec.year_range} vs {control.spec.year_range}"
        )
    for s, c in zip(scenario.points, control.points):
        if s.baseline_gwh != c.baseline_gwh:
            raise MismatchError(f"baseline energies differ at {s.year}")
    excess = tuple((s.uplift - c.uplift) / (1.0 + c.uplift) for s, c in zip(scenario.points, control.points))
    start, end = scenario.spec.year_range
    if headline_year is None:
        headline_year = end
    if not start <= headline_year <= end:
        raise RangeError(f"headline year {headline_year} outside range [{start}, {end}]")
    return ScenarioComparison(scenario, control, excess, headline_year)


def compare_grid(grid: Sequence[ForecastSeries], headline_year: int | None = None) -> list[ScenarioComparison]:
    """Compare every climate line of a grid with its family's control."""
    controls = {f.spec.baseline: f for f in grid if f.spec.pathway is PathwayLabel.FLAT_CONTROL}
    out = []
    for f in grid:
        if f.spec.pathway is PathwayLabel.FLAT_CONTROL:
            continue
        out.append(compare_to_control(f, controls[f.spec.baseline], headline_year))
    return out


def sensitivity_sweep(
    spec: ScenarioSpec,
    slopes: Sequence[float],
    pathway_data: EmissionPathway,
    baseline_data: EnergyBaseline,
    headline_year: int | None = None,
) -> list[ScenarioComparison]:
    for s in slopes:
        check_slope(s)
    base_year = spec.params.baseline_year
    control_path = flat_control(pathway_data, base_year, max(spec.year_range[1], base_year))
    control = run_scenario(
        replace(spec, pathway=PathwayLabel.FLAT_CONTROL, slope=0.0), control_path, baseline_data
    )
    return [
        compare_to_control(run_scenario(replace(spec, slope=s), pathway_data, baseline_data), control, headline_year)
        for s in slopes
    ]
