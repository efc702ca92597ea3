"""Command line behavior: exit codes, report files, determinism, plotting."""

import json
import shutil
import subprocess

import pytest

from holderlab.cli import emit_plot_data, list_cases, main
from holderlab.fields import (
    BoundaryPower,
    Cutoff1D,
    Mono,
    TimeMono,
    expression_to_dict,
    mk_product,
)

BUMP = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(1.5)])
SET_A = {"m": 2, "n": 0.5, "gamma": 0.5}
SMALL_WIN = {"tangent_points": 5, "levels": 10, "time_points": 3}


def small_entry(**extra):
    entry = {
        "id": "minmax-weight",
        "params": [SET_A],
        "family": [{"name": "bump", "expr": expression_to_dict(BUMP)}],
        "window": SMALL_WIN,
        "ladder": {"mode": "refine", "rungs": [0, 1, 2]},
    }
    entry.update(extra)
    return entry


def write_cfg(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return str(p)


def test_list_prints_every_check(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for row in list_cases():
        assert row["id"] in out
        assert row["description"].split()[0] in out
    assert len(list_cases()) == 11


def test_run_writes_reports_and_summary(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"checks": [small_entry()]})
    out = tmp_path / "reports"
    assert main(["run", cfg, "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "minmax-weight" in stdout and "suite" in stdout
    summary = json.loads((out / "summary.json").read_text())
    assert summary["verdict"] == "pass"
    assert summary["checks"][0]["id"] == "minmax-weight"
    assert summary["checks"][0]["failed"] == 0
    report = json.loads((out / "minmax-weight.json").read_text())
    assert report["verdict"] == "pass"
    csv_text = (out / "minmax-weight.csv").read_text()
    assert csv_text.splitlines()[0] == "scale,term,value,slope"


def test_failing_check_exits_one(tmp_path, capsys):
    # an affine profile has zero second differences but nonzero first
    # differences, so the two-sided comparability ratio blows up
    affine = Mono(1, 1)
    entry = {
        "id": "kdiff-equivalence",
        "params": [SET_A],
        "family": [{"name": "affine", "expr": expression_to_dict(affine)}],
        "window": SMALL_WIN,
    }
    cfg = write_cfg(tmp_path, {"checks": [entry]})
    out = tmp_path / "reports"
    assert main(["run", cfg, "--out", str(out)]) == 1
    summary = json.loads((out / "summary.json").read_text())
    assert summary["verdict"] == "fail"
    assert summary["checks"][0]["failed"] >= 1
    assert "fail" in capsys.readouterr().out


def test_empty_suite_passes_vacuously(tmp_path):
    cfg = write_cfg(tmp_path, {"checks": []})
    out = tmp_path / "reports"
    assert main(["run", cfg, "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary == {"schema": summary["schema"], "checks": [],
                       "verdict": "pass"}


@pytest.mark.parametrize("cfg", [
    {"checks": [{"id": "no-such-check"}]},
    {"checks": "embedding"},
    {"checks": [{"no_id": True}]},
    {"checks": [], "atol": -1.0},
    {"checks": [], "threads": 0},
    ["not", "an", "object"],
])
def test_bad_configs_exit_two(tmp_path, capsys, cfg):
    path = write_cfg(tmp_path, cfg)
    assert main(["run", path, "--out", str(tmp_path / "r")]) == 2
    assert "config error" in capsys.readouterr().err


def test_structural_entry_errors_exit_two(tmp_path, capsys):
    for entry in (small_entry(ladder={"mode": "refine", "rungs": [0, 1]}),
                  small_entry(family=[]),
                  small_entry(window={"dim": 0})):
        cfg = write_cfg(tmp_path, {"checks": [entry]})
        assert main(["run", cfg, "--out", str(tmp_path / "r")]) == 2
    (tmp_path / "broken.json").write_text("{not json")
    assert main(["run", str(tmp_path / "broken.json"),
                 "--out", str(tmp_path / "r")]) == 2
    assert main(["run", str(tmp_path / "missing.json"),
                 "--out", str(tmp_path / "r")]) == 2
    capsys.readouterr()


def test_bad_flag_values_exit_two(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"checks": []})
    assert main(["run", cfg, "--threads", "0"]) == 2
    assert main(["run", cfg, "--atol", "-0.5"]) == 2
    capsys.readouterr()


def test_runtime_blowup_exits_three(tmp_path, capsys):
    moving = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(2.0),
                         TimeMono(1)])
    entry = {
        "id": "small-time",
        "params": [SET_A],
        "family": [{"name": "bad", "expr": expression_to_dict(moving)}],
        "window": SMALL_WIN,
    }
    cfg = write_cfg(tmp_path, {"checks": [entry]})
    assert main(["run", cfg, "--out", str(tmp_path / "r")]) == 3
    assert "zero initial state" in capsys.readouterr().err


def test_thread_count_does_not_change_report_bytes(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"checks": [
        small_entry(),
        small_entry(window=dict(SMALL_WIN, tangent_points=7)),
        {"id": "counterexample"},
    ]})
    out1, out8 = tmp_path / "t1", tmp_path / "t8"
    assert main(["run", cfg, "--out", str(out1), "--threads", "1"]) == 0
    assert main(["run", cfg, "--out", str(out8), "--threads", "8"]) == 0
    capsys.readouterr()
    names1 = sorted(p.name for p in out1.iterdir())
    names8 = sorted(p.name for p in out8.iterdir())
    assert names1 == names8
    assert "minmax-weight-2.json" in names1  # duplicate ids stay distinct
    for name in names1:
        assert (out1 / name).read_bytes() == (out8 / name).read_bytes()


def test_plot_emits_trail_csv(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"checks": [small_entry()]})
    out = tmp_path / "reports"
    main(["run", cfg, "--out", str(out)])
    capsys.readouterr()
    assert main(["plot", str(out / "minmax-weight.json")]) == 0
    text = capsys.readouterr().out
    lines = text.splitlines()
    assert lines[0] == "scale,term,value,slope"
    data = [ln for ln in lines[1:] if ln and not ln.startswith("#")]
    assert all(len(ln.split(",")) == 4 for ln in data)
    dest = tmp_path / "trails.csv"
    assert main(["plot", str(out / "minmax-weight.json"),
                 "-o", str(dest)]) == 0
    assert dest.read_text() == text


def test_plot_rejects_bad_reports(tmp_path, capsys):
    assert main(["plot", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"id": "x"}))
    assert main(["plot", str(bad)]) == 2
    assert "bad report" in capsys.readouterr().err


def test_emit_plot_data_notes_unusable_slopes():
    report = {"members": [{"set": "s", "member": "m", "terms": [
        {"label": "short", "value": 1.0, "slope": None,
         "trail": [{"scale": 1.0, "value": 1.0},
                   {"scale": 2.0, "value": 2.0}]},
        {"label": "nofit", "value": 0.0, "slope": float("nan"),
         "trail": [{"scale": 1.0, "value": 0.0},
                   {"scale": 2.0, "value": 0.0},
                   {"scale": 4.0, "value": 0.0}]},
        {"label": "plain", "value": 3.0, "slope": None, "trail": []},
    ]}]}
    text = emit_plot_data(report)
    assert "# s/m/short: no slope, fewer than 3 rungs" in text
    assert "# s/m/nofit: no slope, fit did not converge" in text
    assert "\n,s/m/plain,3,\n" in text
    with pytest.raises(ValueError, match="no members"):
        emit_plot_data({"id": "x"})


def test_console_script_is_wired_up():
    exe = shutil.which("holderlab")
    if exe is None:
        pytest.skip("console script not on PATH")
    out = subprocess.run([exe, "list"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "counterexample" in out.stdout
