import json

import pytest

from koszulkit.reports import SCHEMA_VERSION, Report, algebra_summary, biweight_key, parse_key, render, render_table


def test_biweight_keys():
    assert biweight_key(2, 3) == "(2,3)"
    assert parse_key("(2,3)") == (2, 3)
    with pytest.raises(ValueError):
        parse_key("2,3")


def test_payload_has_a_stable_schema():
    report = Report("homology")
    report.add_cell("HK_p(A)_m", 0, 0, 4)

    payload = report.payload()

    assert payload["schema"] == SCHEMA_VERSION == "1"
    assert set(payload) == {"schema", "command", "algebra", "tables", "generators", "facts", "checks"}
    assert json.loads(report.to_json())["tables"] == {"HK_p(A)_m": {"(0,0)": 4}}


def test_unknown_cells_render_as_lower_bounds():
    report = Report("homology")
    report.add_cell("HK_p(A)_m", 1, 0, 2)
    report.add_cell("HK_p(A)_m", 1, 1, None)

    text = render_table(report.payload())

    assert "| 1 | 2 | ? |" in text
    assert "(1,*) total ≥2" in text


def test_empty_generator_lists_are_dropped():
    report = Report("homology")
    report.add_generators("HK_p(A)_m", "(0,0)", [])

    assert report.generators == {}


def test_check_rows_escape_pipes():
    report = Report("selftest")
    report.checks.append({"name": "duality", "algebra": "ex9", "status": "failed", "detail": "a|b"})

    assert report.failed
    assert "a\\|b" in render(report.payload(), "table")


def test_algebra_summary(ex9):
    summary = algebra_summary(ex9, 4, max_p=3)

    assert summary["dims"] == [1, 2, 2, 1, 0]
    assert summary["w_dims"] == [1, 2, 2, 1]
    assert set(summary["relations"]) == {"x*x", "y*y - x*y"}
    assert summary["top_weight"] == 3
