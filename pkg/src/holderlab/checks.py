"""Named verification checks over the weighted-space machinery.

Each check measures one quantitative statement on a curated family of test
functions and returns a VerificationReport whose verdict is a pure function
of the recorded numbers: every criterion row stores (observed, op, threshold)
so a reader can recompute pass/fail from the report alone.

Cases and reports round-trip through JSON; runtime is tracked on the report
object but deliberately left out of the serialized form so repeated runs of
the same configuration produce identical bytes.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import families
from .fields import (
    Const,
    MultiIndex,
    SpaceParams,
    differentiate,
    dilate,
    expression_from_dict,
    expression_to_dict,
    multiindices,
    preweight_boundary,
)
from .norms import composite_norm, derived_group_terms, generating_terms
from .operators import poisson_extend
from .seminorms import (
    Ladder,
    SeminormSpec,
    TooFewRungs,
    classify_growth,
    estimate_seminorm,
    estimate_with_ladder,
    kth_difference_seminorm,
    sup_norm,
    time_seminorm,
    weighted_seminorm,
    zygmund_seminorm,
)
from .windows import HALF_SPACE, DomainGeometry, Window

__all__ = [
    "SCHEMA_VERSION",
    "CheckCase",
    "VerificationReport",
    "REGISTRY",
    "registry_ids",
    "check_description",
    "default_params",
    "run_check",
    "check_embedding",
    "check_kdiff_equivalence",
    "check_minmax_weight",
    "check_main_estimate",
    "check_counterexample",
    "check_eps_restriction",
    "check_lower_order",
    "check_trace_extension",
    "check_interpolation",
    "check_small_time",
    "check_general_domain",
]

SCHEMA_VERSION = 1

SET_A = SpaceParams(m=2, n=0.5, gamma=0.5)
SET_B = SpaceParams(m=2, n=1.0, gamma=0.25)
SET_C = SpaceParams(m=4, n=1.0, gamma=0.25)


# --------------------------------------------------------------------------
# report plumbing
# --------------------------------------------------------------------------

def _holds(observed: float, op: str, threshold: float) -> bool:
    if op == "vacuous":
        return True
    if op == "finite":
        return bool(np.isfinite(observed))
    if not np.isfinite(observed):
        return False
    if op == "le":
        return observed <= threshold
    if op == "ge":
        return observed >= threshold
    if op == "lt":
        return observed < threshold
    if op == "gt":
        return observed > threshold
    raise ValueError(f"unknown criterion op {op!r}")


def _crit(name: str, observed: float, op: str, threshold: float = 0.0) -> dict:
    observed = float(observed)
    threshold = float(threshold)
    return {"name": name, "observed": observed, "op": op,
            "threshold": threshold, "ok": _holds(observed, op, threshold)}


def _term(label: str, est) -> dict:
    return {
        "label": label,
        "value": float(est.value),
        "classification": est.classification,
        "slope": None if est.slope is None else float(est.slope),
        "trail": [dict(r) for r in est.trail],
        "flags": {"nonfinite_skipped": int(est.nonfinite_skipped),
                  "subsampled": bool(est.subsampled)},
    }


def _value_term(label: str, value: float, trail=None, **flags) -> dict:
    return {"label": label, "value": float(value), "classification": None,
            "slope": None, "trail": trail or [],
            "flags": {"nonfinite_skipped": int(flags.get("nonfinite", 0)),
                      "subsampled": bool(flags.get("subsampled", False))}}


@dataclass
class VerificationReport:
    check_id: str
    description: str
    params: list
    config: dict
    members: list
    constants: dict
    criteria: list
    verdict: str = "pending"
    runtime: float = 0.0

    def finalize(self) -> "VerificationReport":
        self.verdict = "pass" if all(c["ok"] for c in self.criteria) else "fail"
        return self

    def recompute_verdict(self) -> str:
        """Re-derive the verdict from the recorded criterion rows alone."""
        oks = [_holds(c["observed"], c["op"], c["threshold"])
               for c in self.criteria]
        return "pass" if all(oks) else "fail"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "id": self.check_id,
            "description": self.description,
            "params": self.params,
            "config": self.config,
            "members": self.members,
            "constants": self.constants,
            "criteria": self.criteria,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(check_id=d["id"], description=d["description"],
                   params=d["params"], config=d["config"],
                   members=d["members"], constants=d["constants"],
                   criteria=d["criteria"], verdict=d["verdict"])


@dataclass
class CheckCase:
    """One runnable configuration: a check id plus everything it needs."""

    check_id: str
    params: object = None          # SpaceParams, list of them, or None
    family: list | None = None     # [(name, Expression), ...]
    window: Window | None = None
    ladder: Ladder | None = None
    expectation: str = ""
    options: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        sets = _param_list(self.params) if self.params is not None else None
        return {
            "schema": SCHEMA_VERSION,
            "id": self.check_id,
            "params": None if sets is None else [_params_dict(p) for p in sets],
            "family": None if self.family is None else [
                {"name": nm, "expr": expression_to_dict(e)}
                for nm, e in self.family],
            "window": None if self.window is None else asdict(self.window),
            "ladder": None if self.ladder is None else asdict(self.ladder),
            "expectation": self.expectation,
            "options": self.options,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckCase":
        params = d.get("params")
        if params is not None:
            params = [SpaceParams(m=p["m"], n=p["n"], gamma=p["gamma"])
                      for p in params]
            if len(params) == 1:
                params = params[0]
        fam = d.get("family")
        if fam is not None:
            fam = [(e["name"], expression_from_dict(e["expr"])) for e in fam]
        win = d.get("window")
        if win is not None:
            win = Window(**win)
        lad = d.get("ladder")
        if lad is not None:
            lad = Ladder(mode=lad["mode"], rungs=tuple(lad["rungs"]))
        return cls(check_id=d["id"], params=params, family=fam, window=win,
                   ladder=lad, expectation=d.get("expectation", ""),
                   options=d.get("options", {}))


def _params_dict(p: SpaceParams) -> dict:
    return {"m": p.m, "n": p.n, "gamma": p.gamma}


def _param_list(params) -> list:
    if params is None:
        return []
    if isinstance(params, SpaceParams):
        return [params]
    return list(params)


def _tag(p: SpaceParams) -> str:
    return f"m{p.m}n{p.n:g}g{p.gamma:g}"


def _resolve_sets(params, defaults) -> list:
    sets = _param_list(params)
    return sets if sets else list(defaults)


def _fit_slope(scales, values, atol=1e-10) -> float:
    """Least-squares slope of log(value) against log(scale); NaN when fewer
    than two rungs rise above the floor."""
    s = np.asarray(scales, dtype=float)
    v = np.asarray(values, dtype=float)
    keep = v > atol
    if keep.sum() < 2:
        return float("nan")
    a = np.stack([np.log(s[keep]), np.ones(int(keep.sum()))], axis=1)
    return float(np.linalg.lstsq(a, np.log(v[keep]), rcond=None)[0][0])


def _ratio_track(a_trail, b_trail, atol):
    """Per-rung ratios of two estimate trails sharing scales.

    Rungs where both sides sit below the floor carry no information and are
    dropped; a nonzero numerator over a zero denominator records inf."""
    out = []
    for ra, rb in zip(a_trail, b_trail):
        a, b = ra["value"], rb["value"]
        if b > atol:
            out.append((ra["scale"], a / b))
        elif a > atol:
            out.append((ra["scale"], float("inf")))
    return out


def _ratio_criteria(prefix, track, atol, slope_threshold):
    """Criteria saying a ratio trail is finite and not growing."""
    if not track:
        return [_crit(f"{prefix}/vacuous", 0.0, "vacuous")]
    vals = [r for _, r in track]
    crits = [_crit(f"{prefix}/finite", max(vals), "finite")]
    if all(np.isfinite(v) for v in vals):
        if len(track) >= 3:
            _, slope = classify_growth(track, atol=atol,
                                       slope_threshold=slope_threshold)
        else:
            slope = 0.0
        crits.append(_crit(f"{prefix}/slope", slope, "le", slope_threshold))
    return crits


def _level_sups(f, window, geometry, pre_weight):
    """Supremum of |d^pre_weight * f| on each graded height row."""
    cloud = geometry.cloud(window)
    times = window.times()
    nt = len(times)
    x = np.repeat(cloud.coords, nt, axis=0)
    t = np.tile(times, cloud.size)
    vals = np.abs(np.asarray(f.evaluate(x, t), dtype=float).reshape(-1))
    if pre_weight:
        vals = vals * np.repeat(cloud.weight_base, nt) ** pre_weight
    nlev = int(cloud.level_idx.max()) + 1
    sups = np.zeros(nlev)
    ok = np.isfinite(vals)
    np.maximum.at(sups, np.repeat(cloud.level_idx, nt)[ok], vals[ok])
    return sups  # index 0 = boundary row, 1 = closest interior row


def _decay_metric(sups, atol):
    """How far the closest-to-boundary row sits below the interior peak."""
    interior = sups[1:]
    if interior.size == 0 or interior.max() <= atol:
        return 0.0
    return float(interior[0] / interior.max())


_BASE_WINDOW = Window(dim=2)


def _window_or(window, **overrides) -> Window:
    if window is not None:
        return window
    return Window(dim=2, **overrides) if overrides else _BASE_WINDOW


# --------------------------------------------------------------------------
# embedding: unweighted seminorm controlled by the weighted one
# --------------------------------------------------------------------------

def check_embedding(family=None, params=None, ladder=None, *, window=None,
                    atol=1e-10, slope_threshold=0.1) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A, SET_B))
    ladder = ladder or Ladder("refine", (0, 2, 4))
    window = _window_or(window)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        fam = family if family is not None else families.holder_graded_members(p)
        wg = p.omega * p.gamma
        for name, u in fam:
            spec_a = SeminormSpec(exponent=p.gamma - wg)
            spec_b = SeminormSpec(exponent=p.gamma, weight_power=wg)
            ea = estimate_with_ladder(u, spec_a, window, ladder, atol=atol,
                                      slope_threshold=slope_threshold)
            eb = estimate_with_ladder(u, spec_b, window, ladder, atol=atol,
                                      slope_threshold=slope_threshold)
            members.append({"set": tag, "member": name,
                            "terms": [_term("unweighted", ea),
                                      _term("weighted", eb)]})
            track = _ratio_track(ea.trail, eb.trail, atol)
            criteria += _ratio_criteria(f"{tag}/{name}/ratio", track, atol,
                                        slope_threshold)
            finite = [r for _, r in track if np.isfinite(r)]
            if finite:
                key = f"{tag}/max-ratio"
                constants[key] = max(constants.get(key, 0.0), max(finite))
    return VerificationReport(
        "embedding", REGISTRY["embedding"].description,
        [_params_dict(p) for p in sets],
        {"ladder": asdict(ladder), "window": asdict(window), "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# k-th difference equivalence
# --------------------------------------------------------------------------

def check_kdiff_equivalence(family=None, params=None, ladder=None, k=2, *,
                            window=None, atol=1e-10,
                            slope_threshold=0.1) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A, SET_B))
    ladder = ladder or Ladder("refine", (0, 1, 2))
    window = _window_or(window, time_points=1)
    members, criteria, constants = [], [], {}

    def two_sided(tag, name, ea, eb):
        members.append({"set": tag, "member": name,
                        "terms": [_term("first-diff", ea),
                                  _term("kdiff", eb)]})
        track = _ratio_track(ea.trail, eb.trail, atol)
        if not track:
            criteria.append(_crit(f"{tag}/{name}/vacuous", 0.0, "vacuous"))
            return
        vals = [r for _, r in track]
        criteria.append(_crit(f"{tag}/{name}/ratio-low", min(vals), "ge", 1e-2))
        criteria.append(_crit(f"{tag}/{name}/ratio-high", max(vals), "le", 1e2))
        if len(vals) >= 2 and np.isfinite(vals[-1]) and vals[-2] > 0:
            drift = abs(vals[-1] / vals[-2] - 1.0)
        else:
            drift = float("inf")
        criteria.append(_crit(f"{tag}/{name}/refine-drift", drift, "le", 0.1))
        constants[f"{tag}/{name}/ratio"] = vals[-1]

    for p in sets:
        tag = _tag(p)
        wg = p.omega * p.gamma
        fam = family if family is not None else families.kdiff_members(p)
        for name, u in fam:
            ea = estimate_with_ladder(
                u, SeminormSpec(exponent=p.gamma, weight_power=wg),
                window, ladder, atol=atol, slope_threshold=slope_threshold)
            eb = estimate_with_ladder(
                u, SeminormSpec(exponent=p.gamma, weight_power=wg,
                                convention="min", diff_order=k),
                window, ladder, atol=atol, slope_threshold=slope_threshold)
            two_sided(tag, name, ea, eb)
        # one-dimensional variant: m-th derivative against (m+1)-differences
        # at the full exponent m + gamma
        if family is None:
            w1 = Window(dim=1, boundary_extent=window.boundary_extent,
                        grading_ratio=window.grading_ratio,
                        levels=window.levels, time_points=1)
            u1 = families.line_member(p)
            du = differentiate(u1, MultiIndex((p.m,)), 0)
            ea = estimate_with_ladder(
                du, SeminormSpec(exponent=p.gamma, weight_power=wg),
                w1, ladder, atol=atol, slope_threshold=slope_threshold)
            eb = estimate_with_ladder(
                u1, SeminormSpec(exponent=p.m + p.gamma, weight_power=wg,
                                 convention="min", diff_order=p.m + 1),
                w1, ladder, atol=atol, slope_threshold=slope_threshold)
            two_sided(tag, "line-power", ea, eb)
    return VerificationReport(
        "kdiff-equivalence", REGISTRY["kdiff-equivalence"].description,
        [_params_dict(p) for p in sets],
        {"ladder": asdict(ladder), "window": asdict(window), "k": k,
         "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# weight-endpoint conventions
# --------------------------------------------------------------------------

def check_minmax_weight(family=None, params=None, ladder=None, *, window=None,
                        atol=1e-10, slope_threshold=0.1) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A,))
    ladder = ladder or Ladder("refine", (0, 2, 4))
    window = _window_or(window)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        wg = p.omega * p.gamma
        fam = family if family is not None else families.holder_graded_members(p)
        for name, u in fam:
            ea = estimate_with_ladder(
                u, SeminormSpec(exponent=p.gamma, weight_power=wg),
                window, ladder, atol=atol, slope_threshold=slope_threshold)
            eb = estimate_with_ladder(
                u, SeminormSpec(exponent=p.gamma, weight_power=wg,
                                convention="min"),
                window, ladder, atol=atol, slope_threshold=slope_threshold)
            members.append({"set": tag, "member": name,
                            "terms": [_term("max-endpoint", ea),
                                      _term("min-endpoint", eb)]})
            track = _ratio_track(ea.trail, eb.trail, atol)
            if not track:
                criteria.append(_crit(f"{tag}/{name}/vacuous", 0.0, "vacuous"))
                continue
            vals = [r for _, r in track]
            criteria.append(_crit(f"{tag}/{name}/ratio-low",
                                  min(vals), "ge", 1e-2))
            criteria.append(_crit(f"{tag}/{name}/ratio-high",
                                  max(vals), "le", 1e2))
            criteria += _ratio_criteria(f"{tag}/{name}/ratio", track, atol,
                                        slope_threshold)[1:]
            constants[f"{tag}/{name}/ratio"] = vals[-1]
    return VerificationReport(
        "minmax-weight", REGISTRY["minmax-weight"].description,
        [_params_dict(p) for p in sets],
        {"ladder": asdict(ladder), "window": asdict(window), "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# the main two-sided estimate
# --------------------------------------------------------------------------

def check_main_estimate(family=None, params=None, ladder=None, *, window=None,
                        atol=1e-10, slope_threshold=0.1) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A, SET_B, SET_C))
    ladder = ladder or Ladder("refine", (0, 2, 4))
    window = _window_or(window)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        fam = family if family is not None else families.admissible_family(p)
        for name, u in fam:
            trails: dict[str, list] = {}
            rhs_total = []
            flags = {"nonfinite_skipped": 0, "subsampled": False}
            for scale, win in ladder.windows(window):
                gen = generating_terms(u, p, win)
                der = derived_group_terms(u, p, win)
                rhs_total.append((scale, sum(t.value for t in gen)))
                for t in gen + der:
                    trails.setdefault(t.label, []).append((scale, t.value))
                    if t.estimate is not None:
                        flags["nonfinite_skipped"] += t.estimate.nonfinite_skipped
                        flags["subsampled"] |= t.estimate.subsampled
            terms, lhs_slopes, caveat = [], [], False
            lhs_last = 0.0
            lhs_prev = 0.0
            for label, tr in sorted(trails.items()):
                cls, slope = classify_growth(tr, atol=atol,
                                             slope_threshold=slope_threshold)
                terms.append({"label": label, "value": tr[-1][1],
                              "classification": cls, "slope": slope,
                              "trail": [{"scale": s, "value": v}
                                        for s, v in tr],
                              "flags": {"nonfinite_skipped": 0,
                                        "subsampled": False}})
                if label.startswith("rhs:"):
                    continue
                if cls == "diverging":
                    caveat = True
                    continue
                lhs_slopes.append(slope)
                lhs_last = max(lhs_last, tr[-1][1])
                lhs_prev = max(lhs_prev, tr[-2][1])
            notes = []
            base = f"{tag}/{name}"
            if lhs_slopes:
                criteria.append(_crit(f"{base}/finite-group-slopes",
                                      max(lhs_slopes), "le", slope_threshold))
            rhs_last, rhs_prev = rhs_total[-1][1], rhs_total[-2][1]
            if rhs_last > atol and rhs_prev > atol:
                r_last, r_prev = lhs_last / rhs_last, lhs_prev / rhs_prev
                drift = abs(r_last / r_prev - 1.0) if r_prev > 0 else 0.0
                criteria.append(_crit(f"{base}/ratio-drift", drift, "le", 0.2))
                constants[f"{base}/ratio"] = r_last
            elif caveat:
                notes.append("divergent groups excluded by the finiteness rule")
                criteria.append(_crit(f"{base}/finiteness-caveat",
                                      0.0, "vacuous"))
            else:
                criteria.append(_crit(f"{base}/vacuous", 0.0, "vacuous"))
            # boundary vanishing of the graded lower-order derivatives
            worst = 0.0
            for j in range(math.floor(p.n) + 1):
                if not j < p.n:
                    continue
                for alpha in multiindices(p.m - j, window.dim):
                    if alpha.last >= p.m - j:
                        continue
                    f = differentiate(u, alpha, 0)
                    sups = _level_sups(f, window, HALF_SPACE, p.n - j)
                    worst = max(worst, _decay_metric(sups, atol))
            criteria.append(_crit(f"{base}/boundary-vanishing",
                                  worst, "le", 0.05))
            members.append({"set": tag, "member": name, "terms": terms,
                            "notes": notes, "flags": flags})
    return VerificationReport(
        "main-estimate", REGISTRY["main-estimate"].description,
        [_params_dict(p) for p in sets],
        {"ladder": asdict(ladder), "window": asdict(window), "atol": atol,
         "slope_threshold": slope_threshold},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# the degenerate right side
# --------------------------------------------------------------------------

def check_counterexample(params=None, *, scales=(1.0, 2.0, 4.0, 8.0),
                         window=None, atol=1e-10) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A,))
    if len(scales) < 3:
        raise TooFewRungs(f"need at least 3 rungs, got {len(scales)}")
    ladder = Ladder("grow", tuple(float(s) for s in scales))
    window = _window_or(window, time_points=1)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        u = families.counterexample_member(p)
        rhs_max = 0.0
        trails: dict[str, list] = {}
        for scale, win in ladder.windows(window):
            for t in generating_terms(u, p, win, parabolic=False):
                trails.setdefault(t.label, []).append(
                    {"scale": scale, "value": t.value})
                rhs_max = max(rhs_max, t.value)
        terms = [_value_term(lbl, tr[-1]["value"], trail=tr)
                 for lbl, tr in sorted(trails.items())]
        mixed = MultiIndex((1,) * (window.dim - 1) + (p.m - window.dim + 1,))
        est = estimate_with_ladder(
            preweight_boundary(differentiate(u, mixed, 0), p.n),
            SeminormSpec(exponent=p.gamma, weight_power=p.omega * p.gamma),
            window, ladder, atol=atol)
        terms.append(_term("mixed", est))
        target = p.m - p.gamma + p.omega * p.gamma
        criteria.append(_crit(f"{tag}/rhs-zero", rhs_max, "le", atol))
        criteria.append(_crit(f"{tag}/mixed-diverges", est.slope, "gt", 0.1))
        criteria.append(_crit(f"{tag}/mixed-slope",
                              abs(est.slope - target), "le", 0.15))
        constants[f"{tag}/mixed-slope"] = est.slope
        constants[f"{tag}/target-slope"] = target
        members.append({"set": tag, "member": "counterexample",
                        "terms": terms})
    return VerificationReport(
        "counterexample", REGISTRY["counterexample"].description,
        [_params_dict(p) for p in sets],
        {"scales": list(float(s) for s in scales),
         "window": asdict(window), "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# epsilon-restricted pair sets
# --------------------------------------------------------------------------

def _eps_window(eps: float, base: Window) -> Window:
    """Grading fine enough that same-column pairs exist under the step cap
    h <= eps * height."""
    rho = 1.0 - eps / 2.0
    levels = int(math.ceil(math.log(2e-4) / math.log(rho)))
    return Window(dim=2, tangent_extent=base.tangent_extent,
                  boundary_extent=base.boundary_extent,
                  tangent_points=base.tangent_points, time_points=1,
                  grading_ratio=rho, levels=levels)


def check_eps_restriction(family=None, params=None,
                          eps=(0.5, 0.25, 0.125), *, window=None,
                          atol=1e-10) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A,))
    if np.isscalar(eps):
        eps = (float(eps),)
    eps = tuple(float(e) for e in eps)
    base = _window_or(window, time_points=1)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        wg = p.omega * p.gamma
        fam = family if family is not None else [
            ("constant", Const(1.0)), ("graded", families.eps_member(p))]
        for name, u in fam:
            terms, cvals = [], {}
            for e in eps:
                win = _eps_window(e, base)
                full = weighted_seminorm(u, win, p.gamma, wg)
                restr = weighted_seminorm(u, win, p.gamma, wg,
                                          convention="min", eps_restrict=e)
                terms.append(_value_term(f"eps{e:g}/full", full.value))
                terms.append(_value_term(f"eps{e:g}/restricted", restr.value))
                if restr.value > atol:
                    cvals[e] = full.value / restr.value
                elif full.value > atol:
                    cvals[e] = float("inf")
            members.append({"set": tag, "member": name, "terms": terms})
            base_name = f"{tag}/{name}"
            if not cvals:
                criteria.append(_crit(f"{base_name}/vacuous", 0.0, "vacuous"))
                continue
            scaled = {e: c * e ** (1.0 + p.gamma) for e, c in cvals.items()}
            anchor = scaled[max(scaled)]
            criteria.append(_crit(f"{base_name}/finite",
                                  max(cvals.values()), "finite"))
            criteria.append(_crit(f"{base_name}/scaled-bounded",
                                  max(scaled.values()) / anchor, "le", 2.0))
            mid = sorted(eps)[len(eps) // 2]
            win = _eps_window(mid, base).refined(8)
            full = weighted_seminorm(u, win, p.gamma, wg)
            restr = weighted_seminorm(u, win, p.gamma, wg, convention="min",
                                      eps_restrict=mid)
            if restr.value > atol and mid in cvals:
                drift = abs((full.value / restr.value) / cvals[mid] - 1.0)
                criteria.append(_crit(f"{base_name}/refine-drift",
                                      drift, "le", 0.25))
            for e, c in cvals.items():
                constants[f"{base_name}/C(eps={e:g})"] = c
    return VerificationReport(
        "eps-restriction", REGISTRY["eps-restriction"].description,
        [_params_dict(p) for p in sets],
        {"eps": list(eps), "window": asdict(base), "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# lower-order terms: induction bound, boundary dichotomy, envelope chain
# --------------------------------------------------------------------------

def check_lower_order(family=None, params=None, ladder=None, *, window=None,
                      atol=1e-10, slope_threshold=0.1) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A, SET_B, SET_C))
    ladder = ladder or Ladder("refine", (0, 3, 6))
    window = _window_or(window, time_points=1)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        wg = p.omega * p.gamma
        fam = family if family is not None else [
            ("graded", families.envelope_member(p))]
        uname, u = fam[0]

        # lower-order weighted seminorms against the generating side
        for mname, mu in fam:
            top = estimate_with_ladder(
                preweight_boundary(differentiate(mu, MultiIndex((0, p.m)), 0),
                                   p.n),
                SeminormSpec(exponent=p.gamma, weight_power=wg),
                window, ladder, atol=atol, slope_threshold=slope_threshold)
            terms = [_term("top", top)]
            for j in range(1, math.floor(p.n) + 1):
                ej = estimate_with_ladder(
                    preweight_boundary(
                        differentiate(mu, MultiIndex((0, p.m - j)), 0),
                        p.n - j),
                    SeminormSpec(exponent=p.gamma, weight_power=wg),
                    window, ladder, atol=atol,
                    slope_threshold=slope_threshold)
                terms.append(_term(f"lower-j{j}", ej))
                track = _ratio_track(ej.trail, top.trail, atol)
                criteria += _ratio_criteria(f"{tag}/{mname}/j{j}-over-top",
                                            track, atol, slope_threshold)
                finite = [r for _, r in track if np.isfinite(r)]
                if finite:
                    constants[f"{tag}/{mname}/j{j}-constant"] = max(finite)
            members.append({"set": tag, "member": mname, "terms": terms})

        # integer case: boundary value of x^n D^m u decides divergence.
        # The probe seminorm takes the lower pair endpoint as its weight and
        # runs on a deeply graded window: far pairs then fade like
        # y^{omega*gamma} log(1/y) and the short near-boundary pairs expose
        # the y^{-(1-omega)*gamma} power law directly.
        if p.integer_n and p.n >= 1 and family is None:
            k = int(round(p.m - p.n))
            iwin = _window_or(window, levels=40)
            ildr = Ladder("refine", (0, 6, 12))
            for name, v in families.iff_members(p):
                sups = _level_sups(differentiate(v, MultiIndex((0, p.m)), 0),
                                   iwin, HALF_SPACE, p.n)
                est = estimate_with_ladder(
                    differentiate(v, MultiIndex((0, k)), 0),
                    SeminormSpec(exponent=p.gamma, weight_power=wg,
                                 convention="min", pairs="axis", axis="xn"),
                    iwin, ildr, atol=atol,
                    slope_threshold=slope_threshold)
                vterms = [_term("normal-deriv-seminorm", est),
                          _value_term("boundary-trace",
                                      _decay_metric(sups, atol))]
                members.append({"set": tag, "member": name, "terms": vterms})
                if name == "vanishing":
                    criteria.append(_crit(f"{tag}/{name}/stays-bounded",
                                          est.slope, "le", slope_threshold))
                else:
                    criteria.append(_crit(f"{tag}/{name}/diverges",
                                          est.slope, "gt", slope_threshold))
                    vd = differentiate(v, MultiIndex((0, k - 1)), 0)
                    ztrail = []
                    for scale, win in ildr.windows(window):
                        zz = zygmund_seminorm(vd, win, "xprime",
                                              (1 - p.omega) * p.gamma)
                        ztrail.append({"scale": scale, "value": zz.value})
                    _, zslope = classify_growth(
                        [(r["scale"], r["value"]) for r in ztrail],
                        atol=atol, slope_threshold=slope_threshold)
                    members[-1]["terms"].append(_value_term(
                        "zygmund", ztrail[-1]["value"], trail=ztrail))
                    criteria.append(_crit(f"{tag}/{name}/zygmund-bounded",
                                          zslope, "le", slope_threshold))
                constants[f"{tag}/{name}/slope"] = est.slope
                constants[f"{tag}/{name}/target"] = (1 - p.omega) * p.gamma

        # noninteger case: derivative envelope chain
        if not p.integer_n and family is None:
            kk = math.floor(p.m - p.n)
            frac = p.n - math.floor(p.n)
            q1 = estimate_with_ladder(
                differentiate(u, MultiIndex((0, kk)), 0),
                SeminormSpec(exponent=1.0 - frac, pairs="axis", axis="xn"),
                window, ladder, atol=atol, slope_threshold=slope_threshold)
            d1 = differentiate(u, MultiIndex((0, kk + 1)), 0)
            q2_vals = []
            for scale, win in ladder.windows(window):
                q2_vals.append({"scale": scale,
                                "value": sup_norm(d1, win,
                                                  pre_weight=frac).value})
            q3 = estimate_with_ladder(
                preweight_boundary(d1, frac),
                SeminormSpec(exponent=p.gamma, weight_power=wg),
                window, ladder, atol=atol, slope_threshold=slope_threshold)
            q4 = estimate_with_ladder(
                preweight_boundary(differentiate(u, MultiIndex((0, p.m)), 0),
                                   p.n),
                SeminormSpec(exponent=p.gamma, weight_power=wg,
                             pairs="axis", axis="xn"),
                window, ladder, atol=atol, slope_threshold=slope_threshold)
            chain = [("chain-q1", q1.trail), ("chain-q2", q2_vals),
                     ("chain-q3", q3.trail), ("chain-q4", q4.trail)]
            members.append({"set": tag, "member": uname, "terms": [
                _term("chain-q1", q1),
                _value_term("chain-q2", q2_vals[-1]["value"], trail=q2_vals),
                _term("chain-q3", q3), _term("chain-q4", q4)]})
            for (na, ta), (nb, tb) in zip(chain, chain[1:]):
                track = _ratio_track(ta, tb, atol)
                criteria += _ratio_criteria(f"{tag}/{na}-over-{nb[6:]}",
                                            track, atol, slope_threshold)
                finite = [r for _, r in track if np.isfinite(r)]
                if finite:
                    constants[f"{tag}/{na}-over-{nb[6:]}"] = max(finite)
    return VerificationReport(
        "lower-order", REGISTRY["lower-order"].description,
        [_params_dict(p) for p in sets],
        {"ladder": asdict(ladder), "window": asdict(window), "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# trace and extension
# --------------------------------------------------------------------------

class _TangentialLift:
    """Boundary profile viewed as a field constant in the last coordinate."""

    def __init__(self, profile):
        self.profile = profile

    def evaluate(self, x, t):
        return self.profile.value(np.asarray(x, dtype=float)[..., 0])


def _boundary_norm(profile, p: SpaceParams, window: Window, atol):
    l = p.m - p.n + (1.0 - p.omega) * p.gamma
    k = math.floor(l) + 1
    lift = _TangentialLift(profile)
    s = sup_norm(lift, window)
    d = kth_difference_seminorm(lift, window, k=k, exponent=l, pairs="xprime")
    return s.value + d.value


def check_trace_extension(boundary_family=None, params=None, ladder=None, *,
                          window=None, atol=1e-10,
                          slope_threshold=0.1) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A,))
    ladder = ladder or Ladder("refine", (0, 2, 4))
    window = _window_or(window, time_points=1)
    members, criteria, constants = [], [], {}
    probes = np.array([0.0, -0.5, 0.5, -1.0, 1.0])
    for p in sets:
        tag = _tag(p)
        l = p.m - p.n + (1.0 - p.omega) * p.gamma
        fam = boundary_family if boundary_family is not None else (
            families.boundary_family()
            + [("rough", families.BoundaryFunction(
                "abs_power", power=l, plateau=40.0, taper=10.0))])
        for name, v in fam:
            ext = poisson_extend(v)
            base = f"{tag}/{name}"
            terms = []

            # boundary reproduction just above the wall
            xs = np.stack([probes, np.full_like(probes, 1e-6)], axis=1)
            got = np.array([ext.evaluate(x, 0.0) for x in xs])
            want = v.value(probes)
            denom = max(float(np.max(np.abs(want))), 1e-12)
            rep = float(np.max(np.abs(got - want))) / denom
            terms.append(_value_term("reproduction", rep))
            criteria.append(_crit(f"{base}/reproduction", rep, "le", 1e-4))

            # interior harmonicity via the stencil derivatives
            uxx = ext.derivative(MultiIndex((2, 0)), 0)
            uyy = ext.derivative(MultiIndex((0, 2)), 0)
            worst = 0.0
            for xp, xn in ((0.0, 0.5), (0.3, 0.7), (-0.4, 1.0)):
                a = float(uxx.evaluate(np.array([xp, xn]), 0.0))
                b = float(uyy.evaluate(np.array([xp, xn]), 0.0))
                worst = max(worst, abs(a + b) / (abs(a) + abs(b) + 1e-30))
            terms.append(_value_term("harmonicity", worst))
            criteria.append(_crit(f"{base}/harmonic", worst, "le", 0.02))

            if name == "cosine":
                xi = v.frequency
                rel = 0.0
                for xn in (0.1, 0.2, 0.4):
                    for xp in (0.0, 0.3):
                        got = ext.evaluate(np.array([xp, xn]), 0.0)
                        want = math.exp(-xi * xn) * math.cos(xi * xp)
                        rel = max(rel, abs(got - want) / abs(want))
                terms.append(_value_term("mode-decay", rel))
                criteria.append(_crit(f"{base}/mode-decay", rel, "le", 1e-3))

            if name == "rough":
                heights = np.array([0.05, 0.1, 0.2, 0.4])
                dm = ext.derivative(MultiIndex((0, p.m)), 0)
                vals = np.array([abs(dm.evaluate(np.array([0.0, h]), 0.0))
                                 for h in heights])
                slope = _fit_slope(heights, vals, atol)
                terms.append(_value_term("deriv-decay-slope", slope))
                criteria.append(_crit(f"{base}/decay-exponent",
                                      abs(slope - (l - p.m)), "le", 0.1))
                constants[f"{base}/decay-slope"] = slope

            # norm of the extension against the boundary norm
            nb = _boundary_norm(v, p, window, atol)
            track = []
            for scale, win in ladder.windows(window):
                nw = composite_norm(ext, p, win, "generating",
                                    parabolic=False)
                track.append((scale, nw["total"] / nb if nb > atol
                              else 0.0))
            terms.append(_value_term("norm-ratio", track[-1][1],
                                     trail=[{"scale": s, "value": r}
                                            for s, r in track]))
            criteria += _ratio_criteria(f"{base}/norm-ratio", track, atol,
                                        slope_threshold)
            constants[f"{base}/norm-ratio"] = track[-1][1]

            # sup/Lipschitz interpolation of the gamma seminorm on the lift
            lift = _TangentialLift(v)
            sv = sup_norm(lift, window).value
            lip = weighted_seminorm(lift, window, 1.0, 0.0,
                                    pairs="xprime").value
            hol = weighted_seminorm(lift, window, p.gamma, 0.0,
                                    pairs="xprime").value
            if sv > atol and lip > atol:
                c_int = hol / (sv ** (1 - p.gamma) * lip ** p.gamma)
                criteria.append(_crit(f"{base}/sup-lip-interpolation",
                                      c_int, "le", 2.5))
                constants[f"{base}/interpolation-constant"] = c_int
            members.append({"set": tag, "member": name, "terms": terms})
    return VerificationReport(
        "trace-extension", REGISTRY["trace-extension"].description,
        [_params_dict(p) for p in sets],
        {"ladder": asdict(ladder), "window": asdict(window), "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# interpolation of the mixed seminorm between generating terms
# --------------------------------------------------------------------------

def check_interpolation(family=None, params=None,
                        eps_grid=None, h_grid=None, *, window=None,
                        atol=1e-10) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A, SET_B))
    cert_grid = tuple(2.0 ** j for j in range(-6, 7))
    eps_grid = tuple(eps_grid) if eps_grid else tuple(
        2.0 ** (0.5 * j) for j in range(5))
    h_grid = tuple(h_grid) if h_grid else tuple(
        2.0 ** j for j in range(-4, 5))
    window = _window_or(window, tangent_points=33, time_points=1)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        wg = p.omega * p.gamma
        u = family[0][1] if family else families.interpolation_member(p)
        uname = family[0][0] if family else "two-power"
        alpha = MultiIndex((p.m - 1, 1))
        terms = []

        def axis_sem(f, ax, win, pre):
            return weighted_seminorm(f, win, p.gamma, wg, pairs="axis",
                                     axis=ax, pre_weight=pre).value

        for k, ax in ((0, 0), (1, "xn")):
            ak = alpha.entries[k]
            lv, av, bv = [], [], []
            for e in eps_grid:
                ue = dilate(u, ax, e)
                due = differentiate(ue, alpha, 0)
                # sample the dilated axis on the base mesh shrunk by 1/e so
                # every pair of the base window keeps its covariant image
                if ax == 0:
                    win_e = replace(window,
                                    tangent_extent=window.tangent_extent / e)
                else:
                    win_e = replace(window,
                                    boundary_extent=window.boundary_extent / e)
                lv.append(axis_sem(due, ax, win_e, p.n))
                gen = {t.label: t.value
                       for t in generating_terms(ue, p, win_e,
                                                 parabolic=False)}
                bk = gen["rhs:ax0" if ax == 0 else "rhs:axxn"]
                ak_sum = sum(val for lbl, val in gen.items()
                             if lbl != ("rhs:ax0" if ax == 0 else "rhs:axxn"))
                av.append(ak_sum)
                bv.append(bk)
            sl_a = _fit_slope(eps_grid, np.array(lv) / np.array(av), atol)
            sl_b = _fit_slope(eps_grid, np.array(lv) / np.array(bv), atol)
            base = f"{tag}/{uname}/k{k}"
            criteria.append(_crit(f"{base}/low-exponent",
                                  abs(-sl_a - (-ak - p.gamma)), "le", 0.1))
            criteria.append(_crit(f"{base}/high-exponent",
                                  abs(-sl_b - (p.m - ak)), "le", 0.1))
            constants[f"{base}/recovered"] = [-sl_a, -sl_b]
            terms.append(_value_term(f"k{k}/dilation-slopes", sl_a,
                                     trail=[{"scale": e, "value": r}
                                            for e, r in zip(eps_grid, lv)]))
            # single constant across the epsilon sweep
            l0, a0, b0 = lv[0], av[0], bv[0]
            cu = max(l0 / (e ** (-ak - p.gamma) * a0 + e ** (p.m - ak) * b0)
                     for e in cert_grid)
            criteria.append(_crit(f"{base}/single-constant", cu, "finite"))
            constants[f"{base}/constant"] = cu

        # sup bound swept over the step parameter: the optimum is interior
        s_top, lhs0 = 0.0, 0.0
        for a2 in multiindices(p.m, window.dim):
            d = differentiate(u, a2, 0)
            s_top += weighted_seminorm(d, window, p.gamma, wg,
                                       pre_weight=p.n).value
            lhs0 += sup_norm(d, window, pre_weight=p.n).value
        s_low = 0.0
        low_pre = p.n - 1 if p.n >= 1 else 0.0
        for a1 in multiindices(p.m - 1, window.dim):
            s_low += sup_norm(differentiate(u, a1, 0), window,
                              pre_weight=low_pre).value
        r_sup = 1.4
        fac = (1.0 + r_sup) if p.n >= 1 else (1.0 + r_sup ** p.n)
        bound = [h ** ((1 - p.omega) * p.gamma) * s_top + fac / h * s_low
                 for h in h_grid]
        best = min(bound)
        terms.append(_value_term("h-sweep-bound", best,
                                 trail=[{"scale": h, "value": b}
                                        for h, b in zip(h_grid, bound)]))
        criteria.append(_crit(f"{tag}/{uname}/interior-optimum",
                              max(best / bound[0], best / bound[-1]),
                              "lt", 1.0))
        constants[f"{tag}/{uname}/sup-constant"] = lhs0 / best
        members.append({"set": tag, "member": uname, "terms": terms})
    return VerificationReport(
        "interpolation", REGISTRY["interpolation"].description,
        [_params_dict(p) for p in sets],
        {"eps_grid": list(eps_grid), "h_grid": list(h_grid),
         "window": asdict(window), "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# small-time decay on the doubly flat subspace
# --------------------------------------------------------------------------

def _assert_flat_start(name, u, window):
    """The statements need u(x, 0) = u_t(x, 0) = 0."""
    cloud = HALF_SPACE.cloud(window)
    x = cloud.coords
    t0 = np.zeros(x.shape[0])
    v0 = np.max(np.abs(np.asarray(u.evaluate(x, t0), dtype=float)))
    ut = differentiate(u, MultiIndex((0,) * x.shape[1]), 1)
    v1 = np.max(np.abs(np.asarray(ut.evaluate(x, t0), dtype=float)))
    scale = 1.0 + np.max(np.abs(np.asarray(
        u.evaluate(x, np.ones(x.shape[0])), dtype=float)))
    if v0 > 1e-14 * scale or v1 > 1e-14 * scale:
        raise ValueError(
            f"member {name!r} violates the zero initial state: "
            f"|u(.,0)| = {v0:.3g}, |u_t(.,0)| = {v1:.3g}")


def check_small_time(family=None, params=None,
                     t_grid=(1.0, 0.5, 0.25, 0.125), *, window=None,
                     atol=1e-10) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A, SET_B, SET_C))
    t_grid = tuple(float(T) for T in t_grid)
    base = _window_or(window)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        wg = p.omega * p.gamma
        fam = family if family is not None else families.small_time_members(p)
        jobs = []
        for j in range(1, math.floor(p.n) + 1):
            for alpha in multiindices(p.m - j, base.dim):
                lbl = "a" + ".".join(str(a) for a in alpha.entries)
                jobs.append((f"j{j}:{lbl}:sup", alpha, p.n, "sup",
                             p.gamma / p.m))
                jobs.append((f"j{j}:{lbl}:time", alpha, p.n, "time", j / p.m))
                jobs.append((f"j{j}:{lbl}:space", alpha, p.n, "space",
                             min(j / p.m, (1 - p.gamma) / p.m)))
        low_target = min(p.gamma / p.m, (1 - p.gamma) / p.m)
        for order in range(0, math.ceil(p.m - p.n)):
            for alpha in multiindices(order, base.dim):
                lbl = "a" + ".".join(str(a) for a in alpha.entries)
                jobs.append((f"low:{lbl}:sup", alpha, 0.0, "sup",
                             p.gamma / p.m))
                jobs.append((f"low:{lbl}:time", alpha, 0.0, "time",
                             low_target))
                jobs.append((f"low:{lbl}:space", alpha, 0.0, "space",
                             low_target))
        for name, u in fam:
            _assert_flat_start(name, u, base)
            trails = {lbl: [] for lbl, *_ in jobs}
            for T in t_grid:
                win = Window(dim=base.dim, tangent_extent=base.tangent_extent,
                             boundary_extent=base.boundary_extent,
                             tangent_points=base.tangent_points,
                             time_points=base.time_points,
                             grading_ratio=base.grading_ratio,
                             levels=base.levels, time_extent=T,
                             time_from_zero=True)
                for lbl, alpha, pre, kind, target in jobs:
                    f = differentiate(u, alpha, 0)
                    if kind == "sup":
                        val = sup_norm(f, win, pre_weight=pre).value
                    elif kind == "time":
                        val = time_seminorm(f, win, p.gamma / p.m,
                                            pre_weight=pre).value
                    else:
                        val = weighted_seminorm(f, win, p.gamma, wg,
                                                pre_weight=pre).value
                    trails[lbl].append({"scale": T, "value": val})
            terms = []
            for lbl, alpha, pre, kind, target in jobs:
                tr = trails[lbl]
                vals = [r["value"] for r in tr]
                slope = _fit_slope(t_grid, vals, atol)
                terms.append(_value_term(lbl, vals[0], trail=tr))
                key = f"{tag}/{name}/{lbl}"
                if max(vals) <= atol:
                    criteria.append(_crit(f"{key}/vacuous", 0.0, "vacuous"))
                else:
                    criteria.append(_crit(f"{key}/decay-rate", slope, "ge",
                                          target - 0.05))
            members.append({"set": tag, "member": name, "terms": terms})
    return VerificationReport(
        "small-time", REGISTRY["small-time"].description,
        [_params_dict(p) for p in sets],
        {"t_grid": list(t_grid), "window": asdict(base), "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# curved boundary
# --------------------------------------------------------------------------

def check_general_domain(family=None, geometry=None, params=None,
                         ladder=None, *, window=None, atol=1e-10,
                         slope_threshold=0.1) -> VerificationReport:
    sets = _resolve_sets(params, (SET_A,))
    geometry = geometry or DomainGeometry("disk", center=(0.0, 0.0),
                                          radius=1.0)
    ladder = ladder or Ladder("refine", (0, 1, 2))
    window = _window_or(window, time_points=1)
    members, criteria, constants = [], [], {}
    for p in sets:
        tag = _tag(p)
        wg = p.omega * p.gamma
        fam = family if family is not None else families.disk_members(
            p, geometry)
        for name, u in fam:
            trails: dict[str, list] = {}
            rhs_track = []
            for scale, win in ladder.windows(window):
                nd = composite_norm(u, p, win, "domain", geometry=geometry,
                                    parabolic=False)
                rhs_track.append((scale, nd["total"]))
                for j in range(math.floor(p.n) + 1):
                    for alpha in multiindices(p.m - j, window.dim):
                        lbl = f"j{j}:a" + ".".join(
                            str(a) for a in alpha.entries)
                        est = weighted_seminorm(
                            differentiate(u, alpha, 0), win, p.gamma, wg,
                            pre_weight=p.n - j, geometry=geometry)
                        trails.setdefault(lbl, []).append((scale, est.value))
            terms, worst_slope, lhs_last, lhs_prev = [], 0.0, 0.0, 0.0
            for lbl, tr in sorted(trails.items()):
                cls, slope = classify_growth(tr, atol=atol,
                                             slope_threshold=slope_threshold)
                terms.append({"label": lbl, "value": tr[-1][1],
                              "classification": cls, "slope": slope,
                              "trail": [{"scale": s, "value": v}
                                        for s, v in tr],
                              "flags": {"nonfinite_skipped": 0,
                                        "subsampled": False}})
                if cls != "diverging":
                    worst_slope = max(worst_slope, slope)
                    lhs_last = max(lhs_last, tr[-1][1])
                    lhs_prev = max(lhs_prev, tr[-2][1])
            base = f"{tag}/{name}"
            criteria.append(_crit(f"{base}/finite-group-slopes", worst_slope,
                                  "le", slope_threshold))
            rhs_last, rhs_prev = rhs_track[-1][1], rhs_track[-2][1]
            if rhs_last > atol and lhs_last > atol:
                drift = abs((lhs_last / rhs_last) / (lhs_prev / rhs_prev)
                            - 1.0)
                criteria.append(_crit(f"{base}/ratio-drift", drift,
                                      "le", 0.2))
                constants[f"{base}/ratio"] = lhs_last / rhs_last
            else:
                criteria.append(_crit(f"{base}/vacuous", 0.0, "vacuous"))
            terms.append(_value_term("domain-norm", rhs_last,
                                     trail=[{"scale": s, "value": v}
                                            for s, v in rhs_track]))
            members.append({"set": tag, "member": name, "terms": terms})
    return VerificationReport(
        "general-domain", REGISTRY["general-domain"].description,
        [_params_dict(p) for p in sets],
        {"ladder": asdict(ladder), "window": asdict(window),
         "geometry": {"kind": geometry.kind,
                      "center": list(geometry.center),
                      "radius": geometry.radius},
         "atol": atol},
        members, constants, criteria).finalize()


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckInfo:
    check_id: str
    runner: object
    description: str
    defaults: tuple


REGISTRY: dict[str, CheckInfo] = {}


def _register(check_id, runner, description, defaults):
    REGISTRY[check_id] = CheckInfo(check_id, runner, description,
                                   tuple(defaults))


_register("embedding", check_embedding,
          "Unweighted Holder seminorm controlled by the weighted "
          "anisotropic one.", (SET_A, SET_B))
_register("kdiff-equivalence", check_kdiff_equivalence,
          "First differences and k-th differences give two-sidedly "
          "comparable seminorms.", (SET_A, SET_B))
_register("minmax-weight", check_minmax_weight,
          "Max- and min-endpoint weight conventions are comparable.",
          (SET_A,))
_register("main-estimate", check_main_estimate,
          "Finite left-side groups stay bounded against the generating "
          "side over a member family.", (SET_A, SET_B, SET_C))
_register("counterexample", check_counterexample,
          "Generating side collapses to zero while a mixed seminorm "
          "grows along window dilations.", (SET_A,))
_register("eps-restriction", check_eps_restriction,
          "Step-restricted seminorm controls the full one at an explicit "
          "epsilon rate.", (SET_A,))
_register("lower-order", check_lower_order,
          "Lower-order weighted seminorms, the boundary dichotomy at "
          "integer depth, and the derivative envelope chain.",
          (SET_A, SET_B, SET_C))
_register("trace-extension", check_trace_extension,
          "Harmonic extension reproduces boundary data with controlled "
          "norm and stated derivative decay.", (SET_A,))
_register("interpolation", check_interpolation,
          "Mixed-derivative seminorm interpolates between generating "
          "terms with the stated epsilon exponents.", (SET_A, SET_B))
_register("small-time", check_small_time,
          "Lower-order norms of doubly time-flat members shrink with the "
          "time window at the stated rates.", (SET_A, SET_B, SET_C))
_register("general-domain", check_general_domain,
          "Disk-domain analog of the main estimate with the boundary "
          "distance as the weight.", (SET_A,))


def registry_ids() -> list:
    return list(REGISTRY)


def check_description(check_id: str) -> str:
    return REGISTRY[check_id].description


def default_params(check_id: str) -> tuple:
    return REGISTRY[check_id].defaults


def run_check(case: CheckCase) -> VerificationReport:
    """Dispatch a case to its runner; attach wall-clock runtime."""
    if case.check_id not in REGISTRY:
        raise ValueError(f"unknown check id {case.check_id!r}")
    if case.family is not None and len(case.family) == 0:
        raise ValueError("family must be nonempty when given")
    if case.ladder is not None and len(case.ladder.rungs) < 3:
        raise TooFewRungs(
            f"need at least 3 rungs, got {len(case.ladder.rungs)}")
    info = REGISTRY[case.check_id]
    kwargs = dict(case.options)
    if case.window is not None:
        kwargs["window"] = case.window
    if case.check_id == "counterexample":
        args = (case.params,)
    elif case.check_id == "general-domain":
        args = (case.family, kwargs.pop("geometry", None), case.params)
        if case.ladder is not None:
            kwargs["ladder"] = case.ladder
    elif case.check_id in ("eps-restriction", "interpolation", "small-time"):
        args = (case.family, case.params)
    else:
        args = (case.family, case.params)
        if case.ladder is not None:
            kwargs["ladder"] = case.ladder
    t0 = time.perf_counter()
    report = info.runner(*args, **kwargs)
    report.runtime = time.perf_counter() - t0
    return report
