import json
import xml.etree.ElementTree as ET

import pytest

from dcclimate.chart import render_chart_svg
from dcclimate.errors import ParseError, UnknownUnitError, ValidationError
from dcclimate.model import ModelParameters
from dcclimate.report import (
    TABLE_HEADER,
    ReportBundle,
    emit_json_summary,
    emit_table_csv,
    fmt6,
    parse_concentration_csv,
    parse_energy_csv,
    read_table_csv,
    summary_dict,
    write_concentration_csv,
    write_energy_csv,
)
from dcclimate.scenarios import compare_grid, run_grid
from dcclimate.series import (
    BaselineLabel,
    EmissionPathway,
    PathwayLabel,
    resample_annual,
)

SVG = "{http://www.w3.org/2000/svg}"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def make_bundle(rcp45, rcp85, ct, bp, slope=0.05, rng=(2014, 2050)):
    params = ModelParameters(energy_slope_per_deg_f=slope)
    grid = run_grid([rcp45, rcp85], [ct, bp], params, rng)
    return ReportBundle(grid, compare_grid(grid), params, {"rcp85": "test"})


@pytest.fixture
def bundle(rcp45, rcp85, current_trend, best_practices):
    return make_bundle(rcp45, rcp85, current_trend, best_practices)


class TestConcentrationFile:
    def test_minimal(self, tmp_path):
        p = write(tmp_path, "c.csv", "year,ppm\n2000,400\n2050,700\n")
        pw = parse_concentration_csv(p, PathwayLabel.RCP45)
        assert pw.series.points() == [(2000, 400.0), (2050, 700.0)]
        assert pw.label is PathwayLabel.RCP45

    def test_label_from_comment(self, tmp_path):
        p = write(tmp_path, "c.csv", "# scenario: RCP85\nyear,ppm\n2000,400\n")
        assert parse_concentration_csv(p).label is PathwayLabel.RCP85
        assert parse_concentration_csv(p, "RCP45").label is PathwayLabel.RCP45

    def test_label_required(self, tmp_path):
        p = write(tmp_path, "c.csv", "year,ppm\n2000,400\n")
        with pytest.raises(ValidationError, match="label"):
            parse_concentration_csv(p)

    @pytest.mark.parametrize("bad", ["-5", "−5", "0"])
    def test_nonpositive_names_line(self, tmp_path, bad):
        p = write(tmp_path, "c.csv", f"year,ppm\n2000,{bad}\n")
        with pytest.raises(ValidationError, match="line 2"):
            parse_concentration_csv(p, "RCP45")

    def test_parse_error_line(self, tmp_path):
        p = write(tmp_path, "c.csv", "# scenario: RCP45\nyear,ppm\n2000,400\n20x0,410\n")
        with pytest.raises(ParseError, match="line 4"):
            parse_concentration_csv(p)

    def test_non_increasing(self, tmp_path):
        p = write(tmp_path, "c.csv", "year,ppm\n2000,400\n2000,410\n")
        with pytest.raises(ValidationError, match="line 3"):
            parse_concentration_csv(p, "RCP45")

    def test_header(self, tmp_path):
        p = write(tmp_path, "c.csv", "yr,value\n2000,400\n")
        with pytest.raises(ParseError):
            parse_concentration_csv(p, "RCP45")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="nope.csv"):
            parse_concentration_csv(tmp_path / "nope.csv", "RCP45")

    def test_round_trip(self, tmp_path, rcp85):
        write_concentration_csv(rcp85, tmp_path / "a.csv")
        again = parse_concentration_csv(tmp_path / "a.csv")
        assert again == rcp85

    def test_resampled_round_trip_via_table(self, tmp_path, rcp85, rcp45, current_trend, best_practices, bundle):
        emit_table_csv(bundle, tmp_path / "t.csv")
        rows = [r for r in read_table_csv(tmp_path / "t.csv") if r["scenario"] == "RCP85"]
        annual = resample_annual(rcp85.series, 2014, 2050)
        for r in rows:
            assert r["concentration_ppm"] == float(fmt6(annual(r["year"])))
            assert r["concentration_ppm"] == pytest.approx(annual(r["year"]), rel=5e-6)


class TestEnergyFile:
    def test_billion(self, tmp_path):
        p = write(tmp_path, "e.csv", "year,billion_kWh\n2014,70\n2020,73\n")
        e = parse_energy_csv(p)
        assert e.series.points() == [(2014, 70_000.0), (2020, 73_000.0)]

    def test_gwh_single(self, tmp_path):
        e = parse_energy_csv(write(tmp_path, "e.csv", "year,GWh\n2014,70000\n"))
        assert e.series.points() == [(2014, 70_000.0)]

    def test_million(self, tmp_path):
        e = parse_energy_csv(write(tmp_path, "e.csv", "year,million_kWh\n2014,70000\n"))
        assert e.series.values == (70_000.0,)

    def test_unknown_unit(self, tmp_path):
        with pytest.raises(UnknownUnitError):
            parse_energy_csv(write(tmp_path, "e.csv", "year,joules\n2014,1\n"))

    def test_negative(self, tmp_path):
        with pytest.raises(ValidationError, match="line 3"):
            parse_energy_csv(write(tmp_path, "e.csv", "year,GWh\n2014,1\n2015,-1\n"))

    def test_round_trip(self, tmp_path, best_practices):
        write_energy_csv(best_practices, tmp_path / "e.csv")
        again = parse_energy_csv(tmp_path / "e.csv", BaselineLabel.BEST_PRACTICES)
        assert again == best_practices

    def test_round_trip_from_billion(self, tmp_path):
        first = parse_energy_csv(write(tmp_path, "e.csv", "year,billion_kWh\n2014,70.1\n2020,73.3\n"))
        write_energy_csv(first, tmp_path / "e2.csv")
        assert parse_energy_csv(tmp_path / "e2.csv").series.values == first.series.values


class TestTable:
    def test_rows(self, tmp_path, bundle):
        emit_table_csv(bundle, tmp_path / "t.csv")
        lines = (tmp_path / "t.csv").read_text().splitlines()
        assert lines[0] == ",".join(TABLE_HEADER)
        assert len(lines) - 1 == 6 * 37
        rows = read_table_csv(tmp_path / "t.csv")
        assert [r["scenario"] for r in rows[::37]] == ["Control", "RCP45", "RCP85"] * 2
        for r in rows:
            if r["scenario"] == "Control":
                assert r["uplift_fraction"] == 0.0

    def test_control_text_is_zero(self, tmp_path, bundle):
        emit_table_csv(bundle, tmp_path / "t.csv")
        for line in (tmp_path / "t.csv").read_text().splitlines()[1:]:
            if line.startswith("Control"):
                assert line.split(",")[5] == "0"

    def test_six_significant_digits(self):
        assert fmt6(90042.37894270245) == "90042.4"
        assert fmt6(0.08360659871755216) == "0.0836066"
        assert fmt6(-0.0) == "0"

    def test_deterministic(self, tmp_path, bundle):
        emit_table_csv(bundle, tmp_path / "a.csv")
        emit_table_csv(bundle, tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_empty_bundle(self, tmp_path):
        with pytest.raises(ValidationError):
            emit_table_csv(ReportBundle([], [], ModelParameters()), tmp_path / "t.csv")

    def test_comparison_must_be_in_grid(self, bundle):
        with pytest.raises(ValidationError):
            ReportBundle(bundle.grid[:3], bundle.comparisons, bundle.params)


class TestSummary:
    def test_ratio_175(self, tmp_path, ratio_175_pathway, rcp45, current_trend, best_practices):
        low = EmissionPathway(PathwayLabel.RCP45, rcp45.series)
        b = make_bundle(low, ratio_175_pathway, current_trend, best_practices)
        emit_json_summary(b, tmp_path / "s.json")
        doc = json.loads((tmp_path / "s.json").read_text())
        hit = [c for c in doc["comparisons"] if (c["scenario"], c["baseline"]) == ("RCP85", "CurrentTrend")]
        assert hit[0]["headline_excess"] == pytest.approx(0.0836066, rel=1e-6)
        assert doc["parameters"]["energy_slope_per_deg_f"] == 0.05
        assert doc["fixtures"] == {"rcp85": "test"}
        assert len(doc["scenarios"]) == 6

    def test_slope_zero(self, rcp45, rcp85, current_trend, best_practices):
        doc = summary_dict(make_bundle(rcp45, rcp85, current_trend, best_practices, slope=0.0))
        assert {c["headline_excess"] for c in doc["comparisons"]} == {0.0}

    def test_sorted_keys_and_timestamp(self, tmp_path, bundle):
        emit_json_summary(bundle, tmp_path / "s.json")
        text = (tmp_path / "s.json").read_text()
        assert "generated_at" not in text
        assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"
        stamped = ReportBundle(bundle.grid, bundle.comparisons, bundle.params, generated_at="2026-01-01T00:00:00+00:00")
        assert summary_dict(stamped)["metadata"] == {"generated_at": "2026-01-01T00:00:00+00:00"}


def polylines(path):
    root = ET.parse(path).getroot()
    return root, root.findall(f".//{SVG}polyline")


def vertices(poly):
    return [tuple(map(float, p.split(","))) for p in poly.get("points").split()]


class TestChart:
    def test_structure(self, tmp_path, bundle):
        render_chart_svg(bundle, tmp_path / "c.svg")
        root, polys = polylines(tmp_path / "c.svg")
        assert root.tag == f"{SVG}svg"
        assert len(polys) == 6
        entries = root.findall(f".//{SVG}g[@class='legend-entry']")
        assert len(entries) == 6
        labels = [e.find(f"{SVG}text").text for e in entries]
        assert any("Best case" in t and "best practices" in t and "Control" in t for t in labels)
        assert any("Worst case" in t and "RCP 8.5" in t and "current trend" in t for t in labels)
        styles = {(p.get("stroke"), p.get("stroke-dasharray")) for p in polys}
        assert len(styles) == 6
        assert "href" not in (tmp_path / "c.svg").read_text()

    def test_best_practices_dip(self, tmp_path, bundle):
        render_chart_svg(bundle, tmp_path / "c.svg")
        _, polys = polylines(tmp_path / "c.svg")
        for p in polys:
            if p.get("data-baseline") != "BestPractices":
                continue
            vs = vertices(p)
            # Pixel y grows downward: the energy minimum is the largest y.
            ys = [y for _, y in vs]
            assert ys.index(max(ys)) == 2020 - 2014
            assert ys != sorted(ys)

    def test_display_unit_scales_labels(self, tmp_path, bundle):
        render_chart_svg(bundle, tmp_path / "b.svg")
        render_chart_svg(bundle, tmp_path / "m.svg", display_unit="million_kWh")

        def ticks(path):
            root = ET.parse(path).getroot()
            return [float(t.text) for t in root.findall(f".//{SVG}text[@class='y-tick']")]

        b, m = ticks(tmp_path / "b.svg"), ticks(tmp_path / "m.svg")
        assert b and len(b) == len(m)
        assert all(y == pytest.approx(1000 * x, rel=1e-12) for x, y in zip(b, m))

    def test_requires_grid(self, tmp_path, bundle):
        with pytest.raises(ValidationError):
            render_chart_svg(ReportBundle(bundle.grid[:3], [], bundle.params), tmp_path / "c.svg")

    def test_deterministic(self, tmp_path, bundle):
        render_chart_svg(bundle, tmp_path / "a.svg")
        render_chart_svg(bundle, tmp_path / "b.svg")
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
