"""Command line front end: run the check suite, list cases, emit plot data.

Exit codes: 0 all verdicts pass, 1 at least one fails, 2 the config is
unusable, 3 a check blew up while running.  Reports are plain JSON with
sorted keys so reruns diff cleanly; ladder trails additionally land in one
CSV per check with the fixed column order (scale, term, value, slope).
"""

import argparse
import json
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import checks
from .checks import CheckCase
from .windows import DomainGeometry

# runners that expose a slope threshold (the rest fix their own criteria)
_SLOPE_AWARE = frozenset([
    "embedding", "kdiff-equivalence", "minmax-weight", "main-estimate",
    "lower-order", "trace-extension", "general-domain",
])


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# config handling
# --------------------------------------------------------------------------

def _positive(cfg, key):
    v = cfg.get(key)
    if v is not None and (not isinstance(v, (int, float)) or v <= 0):
        raise ConfigError(f"{key!r} must be a positive number")
    return v


def load_config(path) -> dict:
    """Read and structurally validate a suite config; None gives the
    default suite (every registered check with its stock parameters)."""
    if path is None:
        return {"checks": [{"id": cid} for cid in checks.registry_ids()]}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    entries = cfg.get("checks")
    if not isinstance(entries, list):
        raise ConfigError("config needs a 'checks' list")
    known = set(checks.registry_ids())
    for entry in entries:
        if not isinstance(entry, dict) or "id" not in entry:
            raise ConfigError("each checks[] entry needs an 'id'")
        if entry["id"] not in known:
            raise ConfigError(f"unknown check id {entry['id']!r}")
    _positive(cfg, "atol")
    _positive(cfg, "slope_threshold")
    threads = cfg.get("threads")
    if threads is not None and (not isinstance(threads, int) or threads < 1):
        raise ConfigError("'threads' must be a positive integer")
    return cfg


def _build_cases(cfg, atol, slope_threshold):
    cases = []
    for entry in cfg["checks"]:
        d = {
            "id": entry["id"],
            "params": entry.get("params"),
            "family": entry.get("family"),
            "window": entry.get("window", cfg.get("window")),
            "ladder": entry.get("ladder"),
            "options": dict(entry.get("options", {})),
        }
        if d["ladder"] is not None and len(d["ladder"].get("rungs", ())) < 3:
            raise ConfigError(
                f"{entry['id']}: a ladder needs at least 3 rungs")
        if d["family"] is not None and len(d["family"]) == 0:
            raise ConfigError(f"{entry['id']}: family must be nonempty")
        geo = d["options"].get("geometry")
        if isinstance(geo, dict):
            try:
                d["options"]["geometry"] = DomainGeometry(
                    kind=geo.get("kind", "disk"),
                    center=tuple(geo.get("center", (0.0, 0.0))),
                    radius=geo.get("radius", 1.0))
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{entry['id']}: bad geometry: {exc}")
        if atol is not None:
            d["options"].setdefault("atol", atol)
        if slope_threshold is not None and entry["id"] in _SLOPE_AWARE:
            d["options"].setdefault("slope_threshold", slope_threshold)
        try:
            cases.append(CheckCase.from_dict(d))
        except (TypeError, ValueError, KeyError) as exc:
            raise ConfigError(f"{entry['id']}: bad case spec: {exc}")
    return cases


# --------------------------------------------------------------------------
# outputs
# --------------------------------------------------------------------------

def _fmt(x) -> str:
    return "%.17g" % float(x)


def emit_plot_data(report) -> str:
    """Flatten a report's ladder trails into CSV text.

    One row per (rung, term); terms with no usable slope leave the column
    empty and get a trailing comment line saying why.
    """
    if hasattr(report, "to_dict"):
        report = report.to_dict()
    if "members" not in report:
        raise ValueError("malformed report: no members")
    lines = ["scale,term,value,slope"]
    notes = []
    for member in report["members"]:
        prefix = "/".join(
            str(member[k]) for k in ("set", "member") if member.get(k))
        for term in member.get("terms", []):
            name = f"{prefix}/{term['label']}" if prefix else term["label"]
            trail = term.get("trail") or []
            slope = term.get("slope")
            slope_txt = ""
            if len(trail) < 3:
                notes.append(f"# {name}: no slope, fewer than 3 rungs")
            elif slope is None or slope != slope:
                notes.append(f"# {name}: no slope, fit did not converge")
            else:
                slope_txt = _fmt(slope)
            if trail:
                for rung in trail:
                    lines.append(",".join([_fmt(rung["scale"]), name,
                                           _fmt(rung["value"]), slope_txt]))
            else:
                lines.append(",".join(["", name, _fmt(term["value"]),
                                       slope_txt]))
    return "\n".join(lines + notes) + "\n"


def list_cases() -> list:
    """Registry listing: id, what the check verifies, stock parameters."""
    out = []
    for cid in checks.registry_ids():
        out.append({
            "id": cid,
            "description": checks.check_description(cid),
            "params": [{"m": p.m, "n": p.n, "gamma": p.gamma}
                       for p in checks.default_params(cid)],
        })
    return out


def _report_paths(out_dir: Path, ids):
    """Stable file stems; duplicate ids get a numeric suffix."""
    seen = {}
    stems = []
    for cid in ids:
        seen[cid] = seen.get(cid, 0) + 1
        stems.append(cid if seen[cid] == 1 else f"{cid}-{seen[cid]}")
    return [(out_dir / f"{s}.json", out_dir / f"{s}.csv") for s in stems]


def run_suite(config_path, out_dir="reports", threads=1, atol=None,
              slope_threshold=None) -> int:
    """Execute the configured checks and write reports; returns exit code."""
    try:
        cfg = load_config(config_path)
        threads = threads or cfg.get("threads") or 1
        out_dir = Path(out_dir or cfg.get("out") or "reports")
        cases = _build_cases(cfg, atol if atol is not None else cfg.get("atol"),
                             slope_threshold if slope_threshold is not None
                             else cfg.get("slope_threshold"))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(checks.run_check, c) for c in cases]
            reports = [f.result() for f in futures]
    except Exception:
        traceback.print_exc()
        return 3

    out_dir.mkdir(parents=True, exist_ok=True)
    summary = {"schema": checks.SCHEMA_VERSION, "checks": []}
    for case, rep, (jpath, cpath) in zip(
            cases, reports, _report_paths(out_dir, [c.check_id for c in cases])):
        d = rep.to_dict()
        jpath.write_text(json.dumps(d, indent=2, sort_keys=True) + "\n")
        cpath.write_text(emit_plot_data(d))
        failed = sum(1 for c in rep.criteria if not c["ok"])
        summary["checks"].append({
            "id": case.check_id, "verdict": rep.verdict,
            "criteria": len(rep.criteria), "failed": failed,
        })
    summary["verdict"] = ("pass" if all(c["verdict"] == "pass"
                                        for c in summary["checks"]) else "fail")
    (out_dir / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n")

    for c in summary["checks"]:
        print(f"{c['id']:20s} {c['verdict']:5s} "
              f"({c['criteria']} criteria, {c['failed']} failed)")
    print(f"{'suite':20s} {summary['verdict']}")
    return 0 if summary["verdict"] == "pass" else 1


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _parser():
    ap = argparse.ArgumentParser(
        prog="holderlab",
        description="Verification suite for weighted anisotropic Holder "
                    "estimates on the half-space.")
    sub = ap.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run checks from a config (or all)")
    runp.add_argument("config", nargs="?", default=None,
                      help="suite config JSON; omit for the default suite")
    runp.add_argument("--out", default=None, help="report directory")
    runp.add_argument("--threads", type=int, default=None,
                      help="concurrent checks")
    runp.add_argument("--atol", type=float, default=None)
    runp.add_argument("--slope-threshold", type=float, default=None)

    sub.add_parser("list", help="list registered checks")

    plotp = sub.add_parser("plot", help="flatten a report JSON to trail CSV")
    plotp.add_argument("report", help="path to a report JSON")
    plotp.add_argument("-o", "--output", default=None,
                       help="CSV destination (stdout when omitted)")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "run":
        if args.threads is not None and args.threads < 1:
            print("config error: --threads must be >= 1", file=sys.stderr)
            return 2
        if args.atol is not None and args.atol <= 0:
            print("config error: --atol must be positive", file=sys.stderr)
            return 2
        return run_suite(args.config, out_dir=args.out, threads=args.threads,
                         atol=args.atol, slope_threshold=args.slope_threshold)
    if args.command == "list":
        for row in list_cases():
            psets = " ".join(
                "m%g n%g g%g" % (p["m"], p["n"], p["gamma"])
                for p in row["params"]) or "-"
            print(f"{row['id']:20s} [{psets}]")
            print(f"{'':20s} {row['description']}")
        return 0
    if args.command == "plot":
        try:
            with open(args.report) as fh:
                report = json.load(fh)
            csv_text = emit_plot_data(report)
        except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
            print(f"bad report: {exc}", file=sys.stderr)
            return 2
        if args.output:
            Path(args.output).write_text(csv_text)
        else:
            sys.stdout.write(csv_text)
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
