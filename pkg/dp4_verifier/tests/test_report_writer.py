"""
Tests for the JSON report writer.
"""
import json
import sys
from pathlib import Path

import pytest
from pydantic import ValidationError

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.config import REPORT_SCHEMA
from app.models.data_models import Report, ReportItem, RunConfig
from app.services import claims
from app.utils.report_writer import load_report, strip_timings, to_json, write_json


@pytest.fixture
def report():
    items = [
        ReportItem(check_id="pluecker.relations", paper_anchor=claims.anchor_text("pluecker-embedding"),
                   suite="pluecker", status="pass", elapsed_ms=1.5),
        ReportItem(check_id="poincare.stable-maps", paper_anchor=claims.anchor_text("stable-maps-ip"),
                   suite="poincare", status="flagged", evidence={"k": 0}, elapsed_ms=2.0),
    ]
    return Report(config=RunConfig(primes=[3]), items=items).summarize()


def test_summary_and_exit_code(report):
    """Flagged items do not fail a run"""
    assert report.summary.total == 2
    assert report.summary.flagged == 1
    assert report.exit_code == 0


def test_failures_set_the_exit_code(report):
    """Any failed item makes the exit code 1"""
    report.items.append(ReportItem(check_id="x", paper_anchor=claims.anchor_text("y-definition"), status="fail", evidence={"e": 1}))
    assert report.summarize().exit_code == 1


def test_flagged_items_need_evidence():
    """A flag without evidence is rejected"""
    with pytest.raises(ValidationError):
        ReportItem(check_id="x", paper_anchor=claims.anchor_text("y-definition"), status="flagged")


def test_json_uses_the_schema_alias(report):
    """The schema field is written under its alias with sorted keys"""
    text = to_json(report)
    data = json.loads(text)
    assert data["schema"] == REPORT_SCHEMA
    assert list(data) == sorted(data)
    assert text.endswith("\n")


def test_load_report_roundtrip(report):
    """A written report reads back equal"""
    assert load_report(to_json(report)) == report


def test_strip_timings(report):
    """Timings are removed at every depth"""
    data = strip_timings(json.loads(to_json(report)))
    assert all("elapsed_ms" not in item for item in data["items"])


def test_write_json(tmp_path, capsys, report):
    """Files when a path is given, stdout otherwise"""
    out = tmp_path / "report.json"
    write_json(report, str(out))
    assert json.loads(out.read_text())["summary"]["total"] == 2

    write_json({"count": 4})
    assert json.loads(capsys.readouterr().out) == {"count": 4}


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
