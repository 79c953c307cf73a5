import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from pvifam.cli import _readable, main

SCHEMA = json.loads(resources.files("pvifam.data").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, "--format", "json", "--no-timing", *argv)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report, out


@pytest.mark.parametrize("argv", [
    ("verify-table1",),
    ("verify-table3", "--seeds", "2"),
    ("verify-span",),
    ("derive-pf", "--row", "4", "--system", "pf2"),
    ("derive-pf", "--row", "5", "--system", "pf1"),
    ("s4", "--orbit", "3B"),
    ("belyi", "--beta", "1,2,3,4"),
    ("okamoto-check",),
])
def test_reports_validate(capsys, argv):
    code, report, _ = run_json(capsys, *argv)
    assert report["command"] == argv[0]
    assert code == (1 if report["summary"]["fail"] else 0)


def test_table1_report(capsys):
    code, report, _ = run_json(capsys, "verify-table1")
    assert code == 0
    assert report["summary"]["match"] == 26 and report["summary"]["corrected"] == 3
    items = [v["item"] for v in report["verdicts"]]
    assert items == sorted(items)
    v5l = next(v for v in report["verdicts"] if v["item"] == "5L")
    assert v5l["detail"]["corrected_curve"] == "2 * lam^3 + -3 * lam^2 + 1 * t"


def test_corrected_is_a_warning(capsys):
    code, out = run(capsys, "verify-table1")
    assert code == 0
    assert "warning: 3 corrected verdict(s)" in out


def test_derive_pf_row4(capsys):
    _, report, _ = run_json(capsys, "derive-pf", "--row", "4", "--system", "pf2")
    param, pf = report["verdicts"]
    assert pf["item"] == "row4/pf2"
    assert pf["detail"]["alpha"] == ["1/8"] * 4
    assert pf["detail"]["named"] == ["4A", "4B", "4C", "4D"]
    assert param["item"] == "4A-parametrization" and param["status"] == "PASS"


def test_historical_note_on_pf1_row4(capsys):
    _, report, _ = run_json(capsys, "derive-pf", "--row", "4", "--system", "pf1")
    assert any("1/18" in n for n in report["verdicts"][0]["detail"]["notes"])


def test_reports_are_deterministic(capsys):
    argv = ("verify-span",)
    outs = {run_json(capsys, *argv)[2] for _ in range(2)}
    assert len(outs) == 1


def test_jobs_do_not_change_content(capsys):
    _, _, one = run_json(capsys, "verify-table3", "--seeds", "1")
    _, _, two = run_json(capsys, "--jobs", "3", "verify-table3", "--seeds", "1")
    assert one == two


def test_timing_present_by_default(capsys):
    _, out = run(capsys, "--format", "json", "okamoto-check")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert set(report["timing"]) == {"okamoto/okamoto"}


def test_options_after_subcommand(capsys):
    code, out = run(capsys, "okamoto-check", "--format", "json", "--no-timing")
    assert code == 0 and "timing" not in json.loads(out)


def test_usage_errors(capsys):
    for argv in (["derive-pf", "--row", "9", "--system", "pf2"], ["belyi", "--beta", "1,2"],
                 ["nonsense"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    assert main(["--jobs", "0", "okamoto-check"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["s4", "--orbit", "9Z"])
    assert exc.value.code == 2


def test_all_reports_stabilizer_mismatch(capsys):
    code, report, _ = run_json(capsys, "--jobs", "4", "all")
    assert code == 1
    fails = [v for v in report["verdicts"] if v["status"] == "FAIL"]
    assert [v["item"] for v in fails] == ["stabilizers"]
    assert len(fails[0]["detail"]["mismatches"]) == 12


def test_no_color_and_pipe(tmp_path):
    env = {"NO_COLOR": "1", "PATH": ""}
    proc = subprocess.run([sys.executable, "-m", "pvifam.cli", "okamoto-check"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and "\033[" not in proc.stdout
    assert "okamoto" in proc.stdout


def test_readable():
    assert _readable("1 * lam^2 + -1 * t") == "lam^2 - t"
    assert _readable("11 * z + 1/2 * a") == "11*z + 1/2*a"
