"""Composite norm variants and the two sides of the main estimate."""

import numpy as np
import pytest

from holderlab.fields import (
    BoundaryPower,
    Const,
    Cutoff1D,
    Mono,
    SpaceParams,
    TimeMono,
    mk_product,
)
from holderlab.norms import (
    NORM_VARIANTS,
    composite_norm,
    derived_group_terms,
    generating_terms,
)
from holderlab.windows import Window

SET_A = SpaceParams(m=2, n=0.5, gamma=0.5)
SET_B = SpaceParams(m=2, n=1.0, gamma=0.25)
WIN = Window(dim=2, tangent_points=5, levels=10, time_points=3)

BUMP = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(1.5)])
PARA = BUMP + 0.3 * mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4),
                                BoundaryPower(2.0), TimeMono(1)])


def test_zero_field_has_zero_norm():
    for variant in ("full", "generating", "domain"):
        out = composite_norm(Const(0.0), SET_A, WIN, variant)
        assert out["total"] == 0.0


def test_constant_field_is_pure_sup():
    out = composite_norm(Const(2.5), SET_A, WIN, "full")
    assert out["total"] == pytest.approx(2.5)
    by_label = {t.label: t.value for t in out["terms"]}
    assert by_label["sup:u"] == pytest.approx(2.5)
    assert all(v == 0.0 for k, v in by_label.items() if k != "sup:u")


def test_generating_terms_have_directional_labels():
    terms = generating_terms(BUMP, SET_A, WIN)
    labels = [t.label for t in terms]
    assert labels == ["rhs:ax0", "rhs:axxn"]
    assert all(t.group == "rhs" for t in terms)
    assert all(np.isfinite(t.value) and t.value >= 0.0 for t in terms)


def test_generating_terms_add_time_channel_for_parabolic_data():
    labels = [t.label for t in generating_terms(PARA, SET_A, WIN)]
    assert labels == ["rhs:ax0", "rhs:axxn", "rhs:time"]


def test_derived_groups_cover_expected_labels():
    terms = derived_group_terms(BUMP, SET_A, WIN)
    labels = [t.label for t in terms]
    assert len(set(labels)) == len(labels)
    groups = {t.group for t in terms}
    assert groups == {"g1", "g4", "g5"}
    para_groups = {t.group for t in derived_group_terms(PARA, SET_A, WIN)}
    assert para_groups == {"g1", "g2", "g3", "g4", "g5", "g6"}


def test_norm_is_positively_homogeneous():
    base = composite_norm(BUMP, SET_A, WIN, "full")
    doubled = composite_norm(2.0 * BUMP, SET_A, WIN, "full")
    assert doubled["total"] == pytest.approx(2.0 * base["total"], rel=1e-12)


def test_unknown_variant_rejected():
    with pytest.raises(ValueError):
        composite_norm(BUMP, SET_A, WIN, "bogus")
    assert set(NORM_VARIANTS) == {"full", "full_all", "generating",
                                  "generating_mixed", "domain"}


def test_mixed_variant_requires_integer_weight_exponent():
    with pytest.raises(ValueError):
        composite_norm(BUMP, SET_A, WIN, "generating_mixed")
    out = composite_norm(BUMP, SET_B, WIN, "generating_mixed")
    labels = [t.label for t in out["terms"]]
    assert "mixed:dxn" in labels
    assert labels[0] == "sup:u"


def test_full_excludes_only_the_pure_boundary_derivative():
    lean = composite_norm(BUMP, SET_B, WIN, "full")
    rich = composite_norm(BUMP, SET_B, WIN, "full_all")
    lean_labels = {t.label for t in lean["terms"]}
    rich_labels = {t.label for t in rich["terms"]}
    extra = rich_labels - lean_labels
    assert extra == {"top:j1:a0.1:sup", "top:j1:a0.1:space"}
    assert rich["total"] >= lean["total"]
    # for noninteger n the excluded index does not exist at all
    a = composite_norm(BUMP, SET_A, WIN, "full")
    b = composite_norm(BUMP, SET_A, WIN, "full_all")
    assert {t.label for t in a["terms"]} == {t.label for t in b["terms"]}


def test_domain_variant_measures_all_top_derivatives():
    out = composite_norm(BUMP, SET_A, WIN, "domain")
    top = [t for t in out["terms"] if t.group == "top"]
    assert {t.label for t in top} == {"top:a2.0", "top:a1.1", "top:a0.2"}
    assert out["total"] == pytest.approx(sum(t.value for t in out["terms"]))


def test_flags_aggregate_estimator_diagnostics():
    out = composite_norm(BUMP, SET_A, WIN, "generating")
    assert out["flags"] == {"nonfinite_skipped": 0, "subsampled": False}


def test_planted_solution_has_finite_norm_both_sides():
    gen = composite_norm(BUMP, SET_A, WIN, "generating")
    der = derived_group_terms(BUMP, SET_A, WIN)
    assert np.isfinite(gen["total"]) and gen["total"] > 0.0
    assert all(np.isfinite(t.value) for t in der)
