"""Fixture ingestion and report emission (CSV tables, JSON summary)."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import ForecastError, ParseError, UnknownUnitError, ValidationError
from .model import ModelParameters
from .scenarios import ForecastSeries, ScenarioComparison
from .series import (
    AnnualSeries,
    BaselineLabel,
    EmissionPathway,
    EnergyBaseline,
    PathwayLabel,
    SeriesUnit,
)

# Multiplier from each declared unit to GWh (1 GWh = 1 million kWh).
ENERGY_UNITS = {"GWh": 1, "million_kWh": 1, "billion_kWh": 1000}

TABLE_HEADER = (
    "scenario",
    "baseline",
    "year",
    "concentration_ppm",
    "delta_f",
    "uplift_fraction",
    "energy_gwh",
)

_SCENARIO_TAG = "scenario:"


class OutputError(ForecastError, OSError):
    """Writing an output file failed."""


@dataclass(frozen=True)
class ReportBundle:
    grid: list[ForecastSeries]
    comparisons: list[ScenarioComparison]
    params: ModelParameters
    fixtures: dict[str, str] = field(default_factory=dict)
    settings: dict = field(default_factory=dict)
    generated_at: str | None = None

    def __post_init__(self):
        keys = {f.spec.key for f in self.grid}
        for c in self.comparisons:
            if c.scenario.spec.key not in keys:
                raise ValidationError(f"comparison scenario {c.scenario.spec.key} not in grid")


def fixture_id(path: str | Path) -> str:
    p = Path(path)
    digest = hashlib.sha256(p.read_bytes()).hexdigest()
    return f"{p.name}:sha256:{digest}"


def _read_lines(path: str | Path) -> list[str]:
    try:
        return Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ValidationError(f"cannot read file: {exc.strerror or exc}", path=path) from exc


def _parse_rows(path, lines):
    """Yield the header and data rows with their 1-based line numbers.

    Comment lines start with ``#``; ``# scenario: X`` is returned separately.
    """
    header = None
    label = None
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith(_SCENARIO_TAG):
                label = body[len(_SCENARIO_TAG):].strip()
            continue
        cells = [c.strip() for c in next(csv.reader([line]))]
        if header is None:
            header = (lineno, cells)
        else:
            rows.append((lineno, cells))
    if header is None:
        raise ParseError("missing header row", path=path)
    return header, rows, label


def _parse_anchor(path, lineno, cells) -> tuple[int, float]:
    if len(cells) != 2:
        raise ParseError(f"expected 2 fields, got {len(cells)}", line=lineno, path=path)
    try:
        year = int(cells[0])
    except ValueError:
        raise ParseError(f"bad year {cells[0]!r}", line=lineno, path=path) from None
    try:
        value = float(cells[1])
    except ValueError:
        raise ParseError(f"bad number {cells[1]!r}", line=lineno, path=path) from None
    if not math.isfinite(value):
        raise ValidationError(f"non-finite value {cells[1]!r}", line=lineno, path=path)
    return year, value


def _check_years(path, anchors):
    for (la, (ya, _)), (lb, (yb, _)) in zip(anchors, anchors[1:]):
        if yb <= ya:
            raise ValidationError(f"year {yb} does not follow {ya}", line=lb, path=path)
    if not anchors:
        raise ValidationError("no data rows", path=path)


def parse_concentration_csv(path: str | Path, label: PathwayLabel | str | None = None) -> EmissionPathway:
    """Read a ``year,ppm`` trajectory file.

    ``label`` overrides the ``# scenario:`` comment; one of the two is required.
    """
    (hline, header), rows, file_label = _parse_rows(path, _read_lines(path))
    if [h.lower() for h in header] != ["year", "ppm"]:
        raise ParseError(f"expected header 'year,ppm', got {','.join(header)!r}", line=hline, path=path)
    chosen = label if label is not None else file_label
    if chosen is None:
        raise ValidationError("no scenario label in file and none given", path=path)
    try:
        chosen = PathwayLabel(chosen) if not isinstance(chosen, PathwayLabel) else chosen
    except ValueError:
        raise ValidationError(f"unknown scenario label {chosen!r}", path=path) from None

    anchors = []
    for lineno, cells in rows:
        year, ppm = _parse_anchor(path, lineno, cells)
        if not ppm > 0:
            raise ValidationError(f"concentration must be positive, got {cells[1]}", line=lineno, path=path)
        anchors.append((lineno, (year, ppm)))
    _check_years(path, anchors)
    return EmissionPathway(
        chosen, AnnualSeries.from_points((a for _, a in anchors), SeriesUnit.CONCENTRATION_PPM)
    )


def parse_energy_csv(path: str | Path, label: BaselineLabel = BaselineLabel.CURRENT_TREND) -> EnergyBaseline:
    """Read a ``year,<unit>`` energy file and convert values to GWh."""
    (hline, header), rows, _ = _parse_rows(path, _read_lines(path))
    if len(header) != 2 or header[0].lower() != "year":
        raise ParseError(f"expected header 'year,<unit>', got {','.join(header)!r}", line=hline, path=path)
    unit = header[1]
    if unit not in ENERGY_UNITS:
        raise UnknownUnitError(
            f"unknown energy unit {unit!r} (expected one of {', '.join(ENERGY_UNITS)})",
            line=hline, path=path,
        )
    factor = ENERGY_UNITS[unit]
    anchors = []
    for lineno, cells in rows:
        year, value = _parse_anchor(path, lineno, cells)
        if value < 0:
            raise ValidationError(f"energy must be non-negative, got {cells[1]}", line=lineno, path=path)
        anchors.append((lineno, (year, value * factor)))
    _check_years(path, anchors)
    return EnergyBaseline(label, AnnualSeries.from_points((a for _, a in anchors), SeriesUnit.ENERGY_GWH))


def _write(path: str | Path, text: str) -> None:
    p = Path(path)
    try:
        p.parent.mkdir(parents=True, exist_ok=True)
        with open(p, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"{p}: {exc.strerror or exc}") from exc


def write_concentration_csv(pathway: EmissionPathway, path: str | Path) -> None:
    lines = [f"# scenario: {pathway.label.value}", "year,ppm"]
    lines += [f"{y},{v!r}" for y, v in pathway.series.points()]
    _write(path, "\n".join(lines) + "\n")


def write_energy_csv(baseline: EnergyBaseline, path: str | Path) -> None:
    lines = ["year,GWh"] + [f"{y},{v!r}" for y, v in baseline.series.points()]
    _write(path, "\n".join(lines) + "\n")


def fmt6(value: float) -> str:
    text = f"{value:.6g}"
    return "0" if text == "-0" else text


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def table_rows(grid: Sequence[ForecastSeries]):
    for f in grid:
        label, base = f.spec.key
        for p in f.points:
            yield (
                label,
                base,
                p.year,
                fmt6(p.concentration_ppm),
                fmt6(p.delta_f),
                fmt6(p.uplift),
                fmt6(p.energy_gwh),
            )


def emit_table_csv(bundle: ReportBundle, path: str | Path) -> None:
    if not bundle.grid:
        raise ValidationError("empty report bundle")
    _write(path, _csv_text(TABLE_HEADER, table_rows(bundle.grid)))


def read_table_csv(path: str | Path) -> list[dict]:
    """Parse a forecast table back into typed row dicts."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != TABLE_HEADER:
            raise ParseError(f"unexpected table header {reader.fieldnames}", line=1, path=path)
        out = []
        for row in reader:
            row["year"] = int(row["year"])
            for key in TABLE_HEADER[3:]:
                row[key] = float(row[key])
            out.append(row)
    return out


def emit_comparison_csv(comparisons: Sequence[ScenarioComparison], path: str | Path) -> None:
    rows = []
    for c in comparisons:
        label, base = c.scenario.spec.key
        rows += [(label, base, y, fmt6(x)) for y, x in zip(c.years, c.relative_excess)]
    _write(path, _csv_text(("scenario", "baseline", "year", "relative_excess"), rows))


def emit_sweep_csv(slopes: Sequence[float], comparisons: Sequence[ScenarioComparison], path: str | Path) -> None:
    rows = []
    for s, c in zip(slopes, comparisons):
        label, base = c.scenario.spec.key
        rows.append((repr(float(s)), label, base, c.headline_year, repr(c.headline_excess)))
    _write(path, _csv_text(("slope", "scenario", "baseline", "headline_year", "headline_excess"), rows))


def summary_dict(bundle: ReportBundle) -> dict:
    scenarios = []
    for f in bundle.grid:
        last = f.points[-1]
        scenarios.append(
            {
                "scenario": f.spec.pathway.value,
                "baseline": f.spec.baseline.value,
                "slope": f.spec.slope,
                "final_year": last.year,
                "final_energy_gwh": last.energy_gwh,
            }
        )
    comparisons = [
        {
            "scenario": c.scenario.spec.pathway.value,
            "baseline": c.scenario.spec.baseline.value,
            "headline_year": c.headline_year,
            "headline_excess": c.headline_excess,
        }
        for c in bundle.comparisons
    ]
    doc = {
        "scenarios": scenarios,
        "comparisons": comparisons,
        "parameters": {**bundle.params.to_dict(), **bundle.settings},
        "fixtures": dict(bundle.fixtures),
        "metadata": {},
    }
    if bundle.generated_at is not None:
        doc["metadata"]["generated_at"] = bundle.generated_at
    return doc


def emit_json_summary(bundle: ReportBundle, path: str | Path) -> None:
    if not bundle.grid:
        raise ValidationError("empty report bundle")
    _write(path, json.dumps(summary_dict(bundle), sort_keys=True, indent=2) + "\n")
