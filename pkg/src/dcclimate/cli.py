"""Command-line entry point: ``dcclimate {forecast,compare,sweep,chart}``.

Exit codes: 0 success, 1 usage error, 2 input/validation error, 3 internal error.
Settings are resolved as built-in defaults < ``--config`` file < flags.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, fields, replace
from datetime import datetime, timezone
from pathlib import Path

from . import errors
from .chart import DISPLAY_UNITS, render_chart_svg
from .model import DEFAULT_BASELINE_YEAR, DEFAULT_ENERGY_SLOPE, ModelParameters, check_slope
from .report import (
    OutputError,
    ReportBundle,
    emit_comparison_csv,
    emit_json_summary,
    emit_sweep_csv,
    emit_table_csv,
    fixture_id,
    parse_concentration_csv,
    parse_energy_csv,
)
from .scenarios import ScenarioSpec, compare_grid, run_grid, sensitivity_sweep
from .series import (
    DEFAULT_ANCHOR_2014_GWH,
    DEFAULT_ANCHOR_2020_GWH,
    DEFAULT_EFFICIENCY_START,
    DEFAULT_HORIZON,
    DEFAULT_REDUCTION,
    EFFICIENCY_END_YEAR,
    TREND_START_YEAR,
    BaselineLabel,
    EmissionPathway,
    EnergyBaseline,
    PathwayLabel,
    build_best_practices_baseline,
    build_current_trend_baseline,
)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

log = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_SLOPES = (0.02, 0.05, 0.08)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    rcp45: Path = DATA_DIR / "rcp45.csv"
    rcp85: Path = DATA_DIR / "rcp85.csv"
    energy: Path | None = None
    anchor_2014: float = DEFAULT_ANCHOR_2014_GWH
    anchor_2020: float = DEFAULT_ANCHOR_2020_GWH
    slope: float = DEFAULT_ENERGY_SLOPE
    slopes: tuple[float, ...] = DEFAULT_SLOPES
    baseline_year: int = DEFAULT_BASELINE_YEAR
    horizon: int = DEFAULT_HORIZON
    reduction: float = DEFAULT_REDUCTION
    efficiency_start: int = DEFAULT_EFFICIENCY_START
    headline_year: int | None = None
    out: Path = Path("out")
    display_unit: str = "billion_kWh"
    no_timestamp: bool = False

    @property
    def params(self) -> ModelParameters:
        return ModelParameters(energy_slope_per_deg_f=self.slope, baseline_year=self.baseline_year)

    @property
    def year_range(self) -> tuple[int, int]:
        return (TREND_START_YEAR, self.horizon)


_COERCE = {
    "rcp45": Path, "rcp85": Path, "energy": Path, "out": Path,
    "anchor_2014": float, "anchor_2020": float, "slope": float, "reduction": float,
    "baseline_year": int, "horizon": int, "efficiency_start": int, "headline_year": int,
    "display_unit": str, "no_timestamp": bool,
    "slopes": lambda v: tuple(float(s) for s in (v.split(",") if isinstance(v, str) else v)),
}


def load_config_file(path: Path) -> dict:
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise errors.ValidationError(f"cannot read config: {exc.strerror or exc}", path=path) from exc
    except tomllib.TOMLDecodeError as exc:
        raise errors.ParseError(f"bad config file: {exc}", path=path) from exc
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise UsageError(f"unknown config key(s) in {path}: {', '.join(unknown)}")
    try:
        return {k: _COERCE[k](v) for k, v in raw.items()}
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad value in {path}: {exc}") from exc


def _slope_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML file with RunConfig keys")
    common.add_argument("--rcp45", type=Path, help="RCP 4.5 concentration file")
    common.add_argument("--rcp85", type=Path, help="RCP 8.5 concentration file")
    common.add_argument("--energy", type=Path, help="energy file supplying the 2014/2020 anchors")
    common.add_argument("--slope", type=float, help="energy increase per degree F (default 0.05)")
    common.add_argument("--baseline-year", type=int)
    common.add_argument("--horizon", type=int)
    common.add_argument("--reduction", type=float, help="best-practices cut by 2020 (default 0.40)")
    common.add_argument("--efficiency-start", type=int)
    common.add_argument("--headline-year", type=int)
    common.add_argument("--out", type=Path, help="output directory (default ./out)")
    common.add_argument("--display-unit", choices=sorted(DISPLAY_UNITS))
    common.add_argument("--no-timestamp", action="store_true", default=None,
                        help="omit the generation timestamp from the summary")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="dcclimate", description="Climate-adjusted data-center energy forecasts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("forecast", parents=[common], help="six-line forecast table and summary")
    sub.add_parser("compare", parents=[common], help="scenario-vs-control excess")
    p = sub.add_parser("sweep", parents=[common], help="headline excess vs slope")
    p.add_argument("--slopes", type=_slope_list, help="comma-separated slopes (default 0.02,0.05,0.08)")
    sub.add_parser("chart", parents=[common], help="SVG chart of the six lines")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config is not None:
        values.update(load_config_file(args.config))
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return replace(RunConfig(), **values)


@dataclass(frozen=True)
class Inputs:
    rcp45: EmissionPathway
    rcp85: EmissionPathway
    current: EnergyBaseline
    best: EnergyBaseline
    fixtures: dict
    settings: dict


def load_inputs(config: RunConfig) -> Inputs:
    rcp45 = parse_concentration_csv(config.rcp45, PathwayLabel.RCP45)
    rcp85 = parse_concentration_csv(config.rcp85, PathwayLabel.RCP85)
    fixtures = {"rcp45": fixture_id(config.rcp45), "rcp85": fixture_id(config.rcp85)}

    a14, a20 = config.anchor_2014, config.anchor_2020
    if config.energy is not None:
        energy = parse_energy_csv(config.energy)
        try:
            a14 = energy.series(TREND_START_YEAR)
            a20 = energy.series(EFFICIENCY_END_YEAR)
        except errors.RangeError as exc:
            raise errors.CoverageError(f"{config.energy}: {exc}") from exc
        fixtures["energy"] = fixture_id(config.energy)
    else:
        fixtures["energy"] = f"builtin:anchors:{a14!r},{a20!r}"

    current = build_current_trend_baseline(a14, a20, config.horizon)
    best = build_best_practices_baseline(current, config.efficiency_start, config.reduction, config.horizon)
    settings = {
        "anchor_2014_gwh": a14,
        "anchor_2020_gwh": a20,
        "efficiency_start": config.efficiency_start,
        "reduction": config.reduction,
        "year_range": list(config.year_range),
    }
    return Inputs(rcp45, rcp85, current, best, fixtures, settings)


def build_bundle(config: RunConfig, inputs: Inputs | None = None) -> ReportBundle:
    inputs = inputs or load_inputs(config)
    params = config.params
    grid = run_grid([inputs.rcp45, inputs.rcp85], [inputs.current, inputs.best], params, config.year_range)
    comparisons = compare_grid(grid, config.headline_year)
    stamp = None if config.no_timestamp else datetime.now(timezone.utc).isoformat(timespec="seconds")
    return ReportBundle(grid, comparisons, params, inputs.fixtures, inputs.settings, stamp)


def _print_headlines(comparisons) -> None:
    for c in comparisons:
        scen, base = c.scenario.spec.key
        print(f"{scen:>5} {base:<13} {c.headline_year}: excess {100 * c.headline_excess:.2f}%")


def cmd_forecast(config: RunConfig) -> int:
    bundle = build_bundle(config)
    emit_table_csv(bundle, config.out / "forecast.csv")
    emit_json_summary(bundle, config.out / "summary.json")
    _print_headlines(bundle.comparisons)
    return EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    bundle = build_bundle(config)
    emit_comparison_csv(bundle.comparisons, config.out / "comparisons.csv")
    _print_headlines(bundle.comparisons)
    return EXIT_OK


def cmd_sweep(config: RunConfig, slopes=None) -> int:
    slopes = tuple(config.slopes if slopes is None else slopes)
    if not slopes:
        raise UsageError("no slopes given")
    for s in slopes:
        check_slope(s)
    inputs = load_inputs(config)
    spec = ScenarioSpec(
        PathwayLabel.RCP85, BaselineLabel.CURRENT_TREND, config.slope, config.params, config.year_range
    )
    comparisons = sensitivity_sweep(spec, slopes, inputs.rcp85, inputs.current, config.headline_year)
    emit_sweep_csv(slopes, comparisons, config.out / "sweep.csv")
    for s, c in zip(slopes, comparisons):
        print(f"slope {s:g}: excess {100 * c.headline_excess:.2f}% at {c.headline_year}")
    return EXIT_OK


def cmd_chart(config: RunConfig) -> int:
    bundle = build_bundle(config)
    render_chart_svg(bundle, config.out / "chart.svg", config.display_unit)
    print(config.out / "chart.svg")
    return EXIT_OK


COMMANDS = {"forecast": cmd_forecast, "compare": cmd_compare, "sweep": cmd_sweep, "chart": cmd_chart}


def _error_class(exc: Exception) -> str:
    if isinstance(exc, errors.ParseError):
        return "parse error"
    if isinstance(exc, errors.CoverageError):
        return "coverage error"
    if isinstance(exc, OutputError):
        return "I/O error"
    return "validation error"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = resolve_config(args)
        log.debug("resolved config: %s", config)
        return COMMANDS[args.command](config)
    except UsageError as exc:
        print(f"dcclimate: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.ForecastError as exc:
        print(f"dcclimate: {_error_class(exc)}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"dcclimate: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
