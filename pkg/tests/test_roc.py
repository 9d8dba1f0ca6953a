import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqkit.roc import (
    ACCEPT_ALL,
    REJECT_ALL,
    RocCurve,
    RocPoint,
    ScoredDataset,
    UtilityModel,
    analysis_report,
    auc,
    baseline_value,
    build_roc,
    curve_from_report_points,
    empirical_prevalence,
    evaluate_option,
    expected_utility,
    indifference_line,
    iso_utility_slope,
    optimal_operating_point,
    upper_convex_hull,
    utility_field,
)

finite_values = st.floats(min_value=-100, max_value=100, allow_nan=False)


@st.composite
def datasets(draw):
    n_pos = draw(st.integers(1, 25))
    n_neg = draw(st.integers(1, 25))
    scores = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
    pos = draw(st.lists(scores, min_size=n_pos, max_size=n_pos))
    neg = draw(st.lists(scores, min_size=n_neg, max_size=n_neg))
    return ScoredDataset.from_pairs([(s, True) for s in pos] + [(s, False) for s in neg])


@st.composite
def utility_models(draw):
    return UtilityModel(
        draw(st.floats(0.01, 0.99)),
        draw(finite_values), draw(finite_values), draw(finite_values), draw(finite_values),
    )


@st.composite
def gain_positive_utility_models(draw):
    """Utilities where detection pays (v_tp > v_fn) and false alarms do not
    (v_tn >= v_fp); expected utility then increases with tpr and the maximum
    sits on the upper convex hull."""
    v_fn = draw(st.floats(-50, 50))
    v_tp = v_fn + draw(st.floats(0.5, 100))
    v_fp = draw(st.floats(-50, 50))
    v_tn = v_fp + draw(st.floats(0, 100))
    return UtilityModel(draw(st.floats(0.01, 0.99)), v_tp, v_fp, v_tn, v_fn)


# ---------------------------------------------------------------------------
# build_roc


def test_separated_scores_reach_perfect_corner():
    data = ScoredDataset.from_pairs([(0.9, True), (0.8, True), (0.2, False), (0.1, False)])
    points = {(pt.fpr, pt.tpr) for pt in build_roc(data).points}
    assert (0.0, 1.0) in points


def test_identical_scores_give_two_point_curve():
    data = ScoredDataset.from_pairs([(0.5, True), (0.5, False), (0.5, True), (0.5, False)])
    curve = build_roc(data)
    assert [(pt.fpr, pt.tpr) for pt in curve.points] == [(0.0, 0.0), (1.0, 1.0)]


def test_four_case_curve_enumerated_by_hand(fixtures_dir):
    # pos@0.9, neg@0.8, pos@0.6, neg@0.3; rule is positive when score >= t.
    data = ScoredDataset.from_pairs([(0.9, True), (0.8, False), (0.6, True), (0.3, False)])
    curve = build_roc(data)
    assert [(pt.threshold, pt.fpr, pt.tpr) for pt in curve.points] == [
        (math.inf, 0.0, 0.0),
        (0.9, 0.0, 0.5),
        (0.8, 0.5, 0.5),
        (0.6, 0.5, 1.0),
        (0.3, 1.0, 1.0),
    ]


def test_single_class_rejected():
    with pytest.raises(ValueError, match="positive and one negative"):
        build_roc(ScoredDataset.from_pairs([(0.5, True), (0.7, True)]))


def test_nonfinite_scores_rejected():
    with pytest.raises(ValueError, match="finite"):
        ScoredDataset.from_pairs([(math.nan, True), (0.1, False)])


@given(datasets())
@settings(max_examples=80, deadline=None)
def test_curve_monotone_with_unit_auc_bounds(data):
    curve = build_roc(data)
    fprs = [pt.fpr for pt in curve.points]
    tprs = [pt.tpr for pt in curve.points]
    assert fprs == sorted(fprs)
    assert tprs == sorted(tprs)
    assert all(0.0 <= x <= 1.0 for x in fprs + tprs)
    assert curve.points[0] == RocPoint(math.inf, 0.0, 0.0)
    assert (fprs[-1], tprs[-1]) == (1.0, 1.0)
    assert -1e-12 <= auc(curve) <= 1.0 + 1e-12


@given(datasets(), st.integers(2, 5))
@settings(max_examples=50, deadline=None)
def test_curve_invariant_to_class_ratio(data, k):
    # fpr/tpr are class-conditional: replicating positives moves no point.
    replicated = ScoredDataset.from_pairs(
        [(s, label) for s, label in data.cases for _ in range(k if label else 1)]
    )
    assert build_roc(replicated).points == build_roc(data).points


# ---------------------------------------------------------------------------
# expected utility and the iso-utility geometry


def test_widget_utilities_at_corners(widget_utility):
    assert expected_utility(0.0, 0.0, widget_utility) == 0.0
    assert expected_utility(1.0, 1.0, widget_utility) == -67.6
    assert expected_utility(0.0, 1.0, widget_utility) == 1.0
    assert expected_utility(1.0, 0.0, widget_utility) == -68.6


def test_iso_utility_slope_widget(widget_utility):
    assert abs(iso_utility_slope(widget_utility) - 68.6) <= 1e-9


def test_iso_utility_slope_symmetric_costs():
    u = UtilityModel(0.5, 1.0, -1.0, 0.0, 0.0)
    assert iso_utility_slope(u) == 1.0


def test_iso_utility_slope_fpr_indifferent():
    u = UtilityModel(0.3, 5.0, 2.0, 2.0, 0.0)
    assert iso_utility_slope(u) == 0.0


def test_iso_utility_slope_vertical_reported_not_raised():
    u = UtilityModel(0.3, 4.0, -1.0, 0.0, 4.0)
    assert iso_utility_slope(u) is None
    assert indifference_line(u) is None


def test_utility_model_rejects_bad_prevalence():
    with pytest.raises(ValueError):
        UtilityModel(0.0, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        UtilityModel(1.0, 1, 0, 0, 0)


@given(
    utility_models(),
    st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1),
    st.floats(0, 1),
)
@settings(max_examples=100, deadline=None)
def test_expected_utility_is_linear(u, px, py, qx, qy, lam):
    mixed = expected_utility(
        lam * px + (1 - lam) * qx,
        lam * py + (1 - lam) * qy,
        u,
    )
    combo = lam * expected_utility(px, py, u) + (1 - lam) * expected_utility(qx, qy, u)
    assert abs(mixed - combo) <= 1e-12 * max(1.0, abs(mixed), abs(combo))


# ---------------------------------------------------------------------------
# optimal operating point


def test_uninformative_curve_optimum_is_reject_corner(widget_utility):
    curve = RocCurve([RocPoint(math.inf, 0.0, 0.0), RocPoint(0.5, 1.0, 1.0)])
    opt = optimal_operating_point(curve, widget_utility)
    assert (opt.fpr, opt.tpr) == (0.0, 0.0)
    assert opt.expected_utility_per_case == 0.0


def test_separating_curve_optimum_is_perfect_corner(widget_utility):
    curve = RocCurve([
        RocPoint(math.inf, 0.0, 0.0),
        RocPoint(0.9, 0.0, 1.0),
        RocPoint(0.1, 1.0, 1.0),
    ])
    opt = optimal_operating_point(curve, widget_utility)
    assert (opt.fpr, opt.tpr) == (0.0, 1.0)
    assert opt.expected_utility_per_case == 1.0
    assert opt.threshold == 0.9


def test_ties_resolve_to_lowest_fpr_then_lowest_threshold():
    flat = UtilityModel(0.5, 2.0, 2.0, 2.0, 2.0)
    curve = build_roc(ScoredDataset.from_pairs(
        [(0.9, True), (0.8, False), (0.6, True), (0.3, False)]
    ))
    opt = optimal_operating_point(curve, flat)
    # Every point has utility 2; lowest fpr is shared by thresholds inf and 0.9.
    assert opt.expected_utility_per_case == 2.0
    assert (opt.fpr, opt.threshold) == (0.0, 0.9)


@given(datasets(), utility_models())
@settings(max_examples=80, deadline=None)
def test_optimum_attains_pointwise_maximum(data, u):
    curve = build_roc(data)
    opt = optimal_operating_point(curve, u)
    best = max(expected_utility(pt.fpr, pt.tpr, u) for pt in curve.points)
    assert opt.expected_utility_per_case == best


@given(datasets(), gain_positive_utility_models())
@settings(max_examples=80, deadline=None)
def test_optimum_lies_on_upper_convex_hull(data, u):
    curve = build_roc(data)
    opt = optimal_operating_point(curve, u)
    hull = upper_convex_hull([(pt.fpr, pt.tpr) for pt in curve.points])
    assert _on_polyline((opt.fpr, opt.tpr), hull)


def _on_polyline(point, hull, tol=1e-9):
    if point in hull:
        return True
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 - tol <= point[0] <= x2 + tol:
            cross = (x2 - x1) * (point[1] - y1) - (y2 - y1) * (point[0] - x1)
            if abs(cross) <= tol:
                return True
    return False


def test_upper_convex_hull_drops_dominated_points():
    hull = upper_convex_hull([(0.0, 0.0), (0.5, 0.2), (0.5, 0.9), (1.0, 1.0)])
    assert hull == [(0.0, 0.0), (0.5, 0.9), (1.0, 1.0)]
    assert upper_convex_hull([(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)]) == [(0.0, 0.0), (1.0, 1.0)]


@given(datasets(), gain_positive_utility_models())
@settings(max_examples=50, deadline=None)
def test_displaced_iso_lines_never_beat_the_optimum(data, u):
    # The iso-utility line through any curve point carries that point's
    # utility everywhere; none may exceed the optimum.
    slope = iso_utility_slope(u)
    curve = build_roc(data)
    opt = optimal_operating_point(curve, u)
    for pt in curve.points:
        base = expected_utility(pt.fpr, pt.tpr, u)
        assert base <= opt.expected_utility_per_case + 1e-9
        for t in (-0.4, -0.1, 0.2, 0.5):
            along = expected_utility(pt.fpr + t, pt.tpr + slope * t, u)
            assert abs(along - base) <= 1e-6 * max(1.0, abs(base), abs(slope))


# ---------------------------------------------------------------------------
# baseline and indifference line


def test_widget_baseline_is_zero_at_reject_all(widget_utility):
    value, which = baseline_value(widget_utility)
    assert value == 0.0
    assert which == REJECT_ALL


def test_constant_utilities_tie_to_reject_all():
    value, which = baseline_value(UtilityModel(0.4, 3.0, 3.0, 3.0, 3.0))
    assert value == 3.0
    assert which == REJECT_ALL


def test_accept_all_baseline_when_positives_pay():
    value, which = baseline_value(UtilityModel(0.5, 10.0, -1.0, 0.0, 0.0))
    assert value == 4.5
    assert which == ACCEPT_ALL


def test_widget_indifference_line_through_origin(widget_utility):
    slope, intercept = indifference_line(widget_utility)
    assert abs(slope - 68.6) <= 1e-9
    assert intercept == 0.0


def test_symmetric_indifference_line_is_diagonal():
    slope, intercept = indifference_line(UtilityModel(0.5, 1.0, -1.0, 0.0, 0.0))
    assert slope == 1.0
    assert intercept == 0.0


@given(utility_models())
@settings(max_examples=100, deadline=None)
def test_utility_constant_along_indifference_line(u):
    line = indifference_line(u)
    if line is None:
        return
    slope, intercept = line
    base = baseline_value(u)[0]
    for i in range(100):
        fpr = i / 99
        eu = expected_utility(fpr, slope * fpr + intercept, u)
        assert abs(eu - base) <= 1e-6 * max(1.0, abs(base), abs(slope))


# ---------------------------------------------------------------------------
# utility field


def test_field_corners_match_pointwise_utility(widget_utility):
    field = utility_field(widget_utility, 5)
    assert field[0][0] == expected_utility(0.0, 0.0, widget_utility)
    assert field[0][4] == expected_utility(1.0, 0.0, widget_utility)
    assert field[4][0] == expected_utility(0.0, 1.0, widget_utility)
    assert field[4][4] == expected_utility(1.0, 1.0, widget_utility)


def test_field_two_by_two_widget(widget_utility):
    assert utility_field(widget_utility, 2).tolist() == [[0.0, -68.6], [1.0, -67.6]]


def test_field_constant_model_is_constant():
    field = utility_field(UtilityModel(0.3, 7.0, 7.0, 7.0, 7.0), 4)
    assert all(v == 7.0 for row in field.tolist() for v in row)


def test_field_rejects_tiny_grid(widget_utility):
    with pytest.raises(ValueError):
        utility_field(widget_utility, 1)


# ---------------------------------------------------------------------------
# option evaluation


def test_status_quo_net_is_zero_under_widget_utilities(widget_utility):
    assert evaluate_option(None, widget_utility, 5000) == 0.0


def test_option_net_values(widget_utility):
    curve_a = RocCurve([RocPoint(math.inf, 0.0, 0.0), RocPoint(0.7, 0.0, 0.05), RocPoint(0.1, 1.0, 1.0)])
    # Optimal per-case utility for curve_a is 0.05 at (0, 0.05).
    assert abs(evaluate_option(curve_a, widget_utility, 10_000, 200.0) - 300.0) <= 1e-9
    curve_b = RocCurve([RocPoint(math.inf, 0.0, 0.0), RocPoint(0.6, 0.0, 0.08), RocPoint(0.1, 1.0, 1.0)])
    assert abs(evaluate_option(curve_b, widget_utility, 10_000, 700.0) - 100.0) <= 1e-9


def test_negative_case_volume_rejected(widget_utility):
    with pytest.raises(ValueError):
        evaluate_option(None, widget_utility, -1)


# ---------------------------------------------------------------------------
# report plumbing


def test_report_round_trips_curve(widget_utility):
    data = ScoredDataset.from_pairs([(0.9, True), (0.8, False), (0.6, True), (0.3, False)])
    curve = build_roc(data)
    report = analysis_report(curve, widget_utility, grid_n=3)
    assert report["curve"][0]["threshold"] is None  # +inf encoded as null
    assert curve_from_report_points(report["curve"]) == curve
    assert report["field"]["n"] == 3
    assert len(report["field"]["values"]) == 9
    assert report["baseline"] == {"value": 0.0, "which": REJECT_ALL}


def test_empirical_prevalence():
    data = ScoredDataset.from_pairs([(0.9, True), (0.8, False), (0.6, False), (0.3, False)])
    assert empirical_prevalence(data) == 0.25
