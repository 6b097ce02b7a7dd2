import csv
import io
import json

import jsonschema
import pytest

from intcomb.cli import REGISTRY, bundle, main, suite_plan
from intcomb.reports import report_schema


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_asm_count_csv():
    code, out, _ = run(["asm-count", "--size", "4", "--csv", "-"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "count"]
    assert rows[-1] == ["4", "42"]


def test_geodesic_conserve_json():
    code, out, _ = run(["geodesic-conserve", "--order", "10", "--nmax", "6", "--json", "-"])
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, report_schema())
    assert data["summary"] == {"total": 1, "passed": 1, "failed": 0, "inconclusive": 0}
    assert "wall_time" not in data["reports"][0]


def test_timing_flag_adds_wall_time():
    code, out, _ = run(["asm-count", "--size", "3", "--json", "-", "--timing"])
    assert code == 0
    assert "wall_time" in json.loads(out)["reports"][0]


def test_json_is_deterministic():
    argv = ["lorentzian-genfun", "--random", "3", "--order", "5", "--json", "-"]
    assert run(argv)[1] == run(argv)[1]
    other = run(["lorentzian-genfun", "--random", "3", "--order", "5", "--json", "-", "--seed", "7"])[1]
    assert other != run(argv)[1]


def test_usage_errors():
    assert run(["no-such-experiment"])[0] == 2
    assert run([])[0] == 2
    code, _, err = run(["asm-count", "--size", "9"])
    assert code == 2 and "size too large" in err


def test_failure_exit_code():
    code, out, _ = run(["lorentzian-genfun", "--order", "3", "--perturb"])
    assert code == 1
    assert out.startswith("FAIL")


def test_controls_report_expected_failures():
    code, out, _ = run(["lorentzian-commute", "--control", "--size", "30", "--window", "8", "--json", "-"])
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["experiment"].endswith("-control") and rep["status"] == "pass"


def test_whittaker_cli():
    code, out, _ = run(["whittaker-verify", "--rank", "2", "--depth", "3", "--lambda", "5/7,3/2", "--mu", "1,1", "--json", "-"])
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["details"]["nonzero_pairings"] == 0
    code, out, _ = run(["whittaker-verify", "--depth", "3", "--perturb", "1,2", "--json", "-"])
    rep = json.loads(out)["reports"][0]
    assert code == 0 and rep["experiment"] == "whittaker-verify-control"
    assert rep["details"]["nonzero_pairings"] > 0


def test_graded_char_cli():
    code, out, _ = run(["qsystem-graded-char", "--nvars", "2", "--spec", "[[2]]", "--json", "-"])
    assert code == 0
    table = json.loads(out)["reports"][0]["details"]["schur_expansion"]
    assert {tuple(r["partition"]) for r in table} == {(2,), (1, 1)}


def test_every_subcommand_has_help():
    for name in REGISTRY:
        assert run([name, "--help"])[0] == 0


def test_quick_plan_covers_all_modules():
    names = {name for name, _ in suite_plan("quick", 20240101)}
    for prefix in ("lorentzian", "geodesic", "asm", "whittaker", "qsystem", "dim", "macdonald"):
        assert any(n.startswith(prefix) for n in names)


def test_bundle_rejects_nothing_valid():
    data = bundle([])
    assert data["summary"]["total"] == 0
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"reports": []}, report_schema())
