"""Check registry, dispatch rules, and report mechanics."""

import json

import pytest

from holderlab.checks import (
    CheckCase,
    VerificationReport,
    check_description,
    default_params,
    registry_ids,
    run_check,
)
from holderlab.fields import (
    BoundaryPower,
    Cutoff1D,
    SpaceParams,
    TimeMono,
    mk_product,
)
from holderlab.seminorms import Ladder, TooFewRungs
from holderlab.windows import Window

SET_A = SpaceParams(m=2, n=0.5, gamma=0.5)
WIN = Window(dim=2, tangent_points=5, levels=10, time_points=3)
BUMP = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(1.5)])

ALL_IDS = [
    "embedding", "kdiff-equivalence", "minmax-weight", "main-estimate",
    "counterexample", "eps-restriction", "lower-order", "trace-extension",
    "interpolation", "small-time", "general-domain",
]


def small_case():
    return CheckCase("minmax-weight", params=SET_A,
                     family=[("bump", BUMP)], window=WIN,
                     ladder=Ladder("refine", (0, 1, 2)))


def test_registry_lists_every_check():
    assert registry_ids() == ALL_IDS
    for cid in ALL_IDS:
        assert check_description(cid)
        assert all(isinstance(p, SpaceParams) for p in default_params(cid))


def test_run_check_rejects_bad_cases():
    with pytest.raises(ValueError):
        run_check(CheckCase("no-such-check"))
    with pytest.raises(ValueError):
        run_check(CheckCase("embedding", family=[]))
    with pytest.raises(TooFewRungs):
        run_check(CheckCase("embedding", ladder=Ladder("refine", (0, 1))))


def test_small_case_passes_and_reports_cleanly():
    report = run_check(small_case())
    assert report.verdict == "pass"
    assert report.check_id == "minmax-weight"
    assert report.runtime > 0.0
    assert report.members and report.criteria
    for c in report.criteria:
        assert set(c) == {"name", "observed", "op", "threshold", "ok"}
        assert c["op"] in ("le", "ge", "lt", "gt", "finite", "vacuous")
        assert isinstance(c["ok"], bool)
    assert report.recompute_verdict() == "pass"


def test_report_serialization_is_runtime_free_and_stable():
    a = run_check(small_case()).to_dict()
    b = run_check(small_case()).to_dict()
    assert "runtime" not in a
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    # loading a written report and re-serializing reproduces the same bytes
    loaded = json.loads(json.dumps(a))
    back = VerificationReport.from_dict(loaded)
    assert json.dumps(back.to_dict(), sort_keys=True) \
        == json.dumps(loaded, sort_keys=True)


def test_recompute_verdict_rederives_from_rows():
    report = run_check(small_case())
    report.criteria[0]["observed"] = float("inf")
    assert report.verdict == "pass"          # stored verdict is stale now
    assert report.recompute_verdict() == "fail"


def _row(name, observed, op, threshold=0.0, ok=True):
    return {"name": name, "observed": observed, "op": op,
            "threshold": threshold, "ok": ok}


def test_criterion_operator_semantics():
    rows = [
        _row("a", 1.0, "le", 2.0), _row("b", 3.0, "ge", 2.0),
        _row("c", 1.0, "lt", 2.0), _row("d", 3.0, "gt", 2.0),
        _row("e", 5.0, "finite"), _row("f", 0.0, "vacuous"),
    ]
    rep = VerificationReport("embedding", "d", [], {}, [], {}, rows)
    assert rep.recompute_verdict() == "pass"
    for bad in (_row("g", 3.0, "le", 2.0),
                _row("h", float("inf"), "finite"),
                _row("i", float("nan"), "ge", 0.0)):
        rep = VerificationReport("embedding", "d", [], {}, [], {},
                                 rows + [bad])
        assert rep.recompute_verdict() == "fail"


def test_finalize_sets_verdict_from_ok_flags():
    rep = VerificationReport("embedding", "d", [], {}, [], {},
                             [_row("a", 1.0, "le", 2.0, ok=False)])
    assert rep.finalize().verdict == "fail"


def test_case_round_trips_through_json():
    case = small_case()
    d = case.to_dict()
    back = CheckCase.from_dict(json.loads(json.dumps(d)))
    assert back.to_dict() == d
    assert back.check_id == case.check_id
    assert back.params == case.params
    assert back.window == case.window
    assert back.ladder == case.ladder
    assert back.family[0][0] == "bump"
    assert back.family[0][1] == BUMP


def test_small_time_rejects_members_moving_at_time_zero():
    bad = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(2.0),
                      TimeMono(1)])
    case = CheckCase("small-time", params=SET_A, family=[("bad", bad)],
                     window=WIN)
    with pytest.raises(ValueError, match="zero initial state"):
        run_check(case)


def test_counterexample_runs_with_registry_defaults():
    report = run_check(CheckCase("counterexample"))
    assert report.verdict == "pass"
    rows = {c["name"].split("/", 1)[1]: c for c in report.criteria}
    assert set(rows) == {"rhs-zero", "mixed-diverges", "mixed-slope"}
    assert rows["rhs-zero"]["observed"] <= 1e-10
    assert rows["mixed-diverges"]["op"] == "gt"
