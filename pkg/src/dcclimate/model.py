"""Scalar climate-to-energy equations.

The pipeline is three steps::

    dT_C   = k * ln(C(year) / C(baseline_year))
    dT_F   = 1.8 * dT_C
    E_new  = E_old * (1 + slope * dT_F)

Concentrations are ppm CO2-equivalent, energies are GWh.  Negative
temperature deltas (concentration below the baseline) are passed
through unclamped.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, UnitError

DEFAULT_CLIMATE_COEFFICIENT = 1.66
DEFAULT_C_TO_F_FACTOR = 1.8
DEFAULT_ENERGY_SLOPE = 0.05
DEFAULT_BASELINE_YEAR = 2000

# Literature range for the per-degree-F energy impact; the default is its mean.
SLOPE_SWEEP_RANGE = (0.02, 0.08)


@dataclass(frozen=True)
class ModelParameters:
    climate_coefficient: float = DEFAULT_CLIMATE_COEFFICIENT
    celsius_to_fahrenheit_factor: float = DEFAULT_C_TO_F_FACTOR
    energy_slope_per_deg_f: float = DEFAULT_ENERGY_SLOPE
    baseline_year: int = DEFAULT_BASELINE_YEAR

    def __post_init__(self):
        if not self.climate_coefficient > 0:
            raise DomainError(f"climate_coefficient must be > 0, got {self.climate_coefficient}")
        if not self.celsius_to_fahrenheit_factor > 0:
            raise DomainError(
                f"celsius_to_fahrenheit_factor must be > 0, got {self.celsius_to_fahrenheit_factor}"
            )
        check_slope(self.energy_slope_per_deg_f)

    def to_dict(self) -> dict:
        return {
            "climate_coefficient": self.climate_coefficient,
            "celsius_to_fahrenheit_factor": self.celsius_to_fahrenheit_factor,
            "energy_slope_per_deg_f": self.energy_slope_per_deg_f,
            "baseline_year": self.baseline_year,
        }


class TempUnit(enum.Enum):
    CELSIUS = "C"
    FAHRENHEIT = "F"


@dataclass(frozen=True)
class TemperatureDelta:
    """A temperature *difference* (no 32-degree offset on conversion)."""

    value: float
    unit: TempUnit

    def to_celsius(self, params: ModelParameters | None = None) -> "TemperatureDelta":
        if self.unit is TempUnit.CELSIUS:
            return self
        factor = (params or ModelParameters()).celsius_to_fahrenheit_factor
        return TemperatureDelta(self.value / factor, TempUnit.CELSIUS)


def check_slope(slope: float) -> float:
    if not (0.0 <= slope <= 1.0):
        raise DomainError(f"energy slope must lie in [0, 1] per degree F, got {slope}")
    return slope


def check_concentration(ppm: float, name: str = "concentration") -> float:
    if not ppm > 0 or math.isinf(ppm):
        raise DomainError(f"{name} must be a positive finite ppm value, got {ppm}")
    return ppm


def check_energy(gwh: float, name: str = "energy") -> float:
    if not gwh >= 0 or math.isinf(gwh):
        raise DomainError(f"{name} must be a non-negative finite GWh value, got {gwh}")
    return gwh


def temperature_delta_celsius(
    c_year: float, c_base: float, params: ModelParameters | None = None
) -> TemperatureDelta:
    """Warming relative to the baseline concentration, in degrees Celsius."""
    params = params or ModelParameters()
    check_concentration(c_year, "c_year")
    check_concentration(c_base, "c_base")
    return TemperatureDelta(params.climate_coefficient * math.log(c_year / c_base), TempUnit.CELSIUS)


def to_fahrenheit_delta(dt: TemperatureDelta, params: ModelParameters | None = None) -> TemperatureDelta:
    if dt.unit is not TempUnit.CELSIUS:
        raise UnitError(f"expected a Celsius delta, got {dt.unit.name}")
    params = params or ModelParameters()
    return TemperatureDelta(params.celsius_to_fahrenheit_factor * dt.value, TempUnit.FAHRENHEIT)


def uplift_fraction(dt_f: TemperatureDelta, slope: float) -> float:
    """Fractional energy increase for a Fahrenheit delta."""
    if dt_f.unit is not TempUnit.FAHRENHEIT:
        raise UnitError(f"expected a Fahrenheit delta, got {dt_f.unit.name}")
    return slope * dt_f.value


def apply_energy_uplift(e_old: float, dt_f: TemperatureDelta, slope: float) -> float:
    check_energy(e_old, "e_old")
    return e_old * (1.0 + uplift_fraction(dt_f, slope))


def uplifted_energy(
    e_old: float, c_year: float, c_base: float, slope: float, params: ModelParameters | None = None
) -> float:
    """Run all three steps for a single year."""
    dt_f = to_fahrenheit_delta(temperature_delta_celsius(c_year, c_base, params), params)
    return apply_energy_uplift(e_old, dt_f, slope)
