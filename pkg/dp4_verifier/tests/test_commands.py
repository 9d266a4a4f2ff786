"""
Tests for the dp4 command line: argument parsing, outputs and exit codes.
"""
import json
import sys
from pathlib import Path

import pytest

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.config import DEFAULT_SEED
from app.main import EXIT_CONFIG, EXIT_OK, main
from app.routes.commands import parse_args
from app.utils.report_writer import load_report


def test_parse_verify_defaults():
    """verify takes suites plus the run options"""
    args = parse_args(["verify", "pluecker", "planes"])
    assert args.command == "verify"
    assert args.suites == ["pluecker", "planes"]
    assert args.seed == DEFAULT_SEED
    assert args.out is None


def test_parse_rejects_unknown_chain():
    """Chains are a closed choice"""
    with pytest.raises(SystemExit):
        parse_args(["poincare", "--chain", "euler"])


def test_classify_line_prints_json(capsys):
    """A type d line classified on stdout"""
    code = main(["classify-line", "--vertex", "e0", "--plane", "e0,e1,e4", "--no-family"])
    assert code == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert result["type"] == "d"
    assert result["normal_bundle"] == "nonfree"
    assert result["family_dim"] is None


def test_classify_line_rejects_bad_geometry(capsys):
    """A vertex outside the plane is a configuration error"""
    assert main(["classify-line", "--vertex", "e3", "--plane", "e0,e1,e2"]) == EXIT_CONFIG
    assert capsys.readouterr().out == ""


def test_count_command(capsys):
    """Counting the vertex conic over F_3"""
    assert main(["count", "--variety", "Cv", "--q", "3"]) == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert result["variety"] == "Cv"
    assert result["count"] == 4


def test_count_in_characteristic_two():
    """Quadrics cannot be counted over F_2"""
    assert main(["count", "--variety", "Q3", "--q", "2"]) == EXIT_CONFIG


def test_poincare_command(capsys):
    """The line-space chain hits its target"""
    assert main(["poincare", "--chain", "line-space"]) == EXIT_OK
    records = json.loads(capsys.readouterr().out)
    assert records[0]["result"] == [1, 2, 3, 2, 1]
    assert records[0]["status"] == "pass"


def test_verify_unknown_suite():
    """Unknown suites exit with the configuration code"""
    assert main(["verify", "bogus"]) == EXIT_CONFIG


def test_verify_rank_suite_over_F2():
    """Rank suites refuse characteristic 2"""
    assert main(["verify", "dbar", "--primes", "2,3"]) == EXIT_CONFIG


def test_verify_writes_report(tmp_path):
    """verify writes a passing report to --out"""
    out = tmp_path / "report.json"
    code = main(["verify", "pluecker", "--primes", "3", "--samples", "2", "--out", str(out)])
    assert code == EXIT_OK
    report = load_report(out.read_text())
    assert report.config.primes == [3]
    assert report.summary.failed == 0


if __name__ == "__main__":
    pytest.main(["-xvs", __file__])
