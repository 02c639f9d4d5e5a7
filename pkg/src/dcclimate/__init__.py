"""Climate-adjusted forecasts of data-center energy consumption."""

from .errors import (
    CoverageError,
    DomainError,
    ForecastError,
    MismatchError,
    ParseError,
    RangeError,
    UnitError,
    UnknownUnitError,
    ValidationError,
)
from .model import (
    ModelParameters,
    TemperatureDelta,
    TempUnit,
    apply_energy_uplift,
    temperature_delta_celsius,
    to_fahrenheit_delta,
    uplift_fraction,
)
from .scenarios import (
    ForecastSeries,
    ScenarioComparison,
    ScenarioSpec,
    compare_to_control,
    run_grid,
    run_scenario,
    sensitivity_sweep,
)
from .series import (
    AnnualSeries,
    BaselineLabel,
    EmissionPathway,
    EnergyBaseline,
    PathwayLabel,
    SeriesUnit,
    build_best_practices_baseline,
    build_current_trend_baseline,
    interpolate_linear,
    resample_annual,
)

__version__ = "0.1.0"
