"""ROC curves with an explicit value model.

Builds empirical ROC curves from scored labeled cases, overlays a linear
per-case utility (prevalence plus the four outcome unit values), and locates
the operating point with maximal expected utility, the best no-model baseline,
and the indifference line that a curve must cross to beat the status quo.

Classification rule: predict positive when score >= threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import groupby

import numpy as np

DEFAULT_GRID_N = 25

ACCEPT_ALL = "accept-all"
REJECT_ALL = "reject-all"


@dataclass
class ScoredDataset:
    cases: list[tuple[float, bool]]
    positive_count: int
    negative_count: int

    @classmethod
    def from_pairs(cls, pairs) -> "ScoredDataset":
        cases = []
        for score, label in pairs:
            score = float(score)
            if not math.isfinite(score):
                raise ValueError(f"score {score!r} is not finite")
            cases.append((score, bool(label)))
        pos = sum(1 for _, label in cases if label)
        return cls(cases, pos, len(cases) - pos)

    @property
    def is_single_class(self) -> bool:
        return self.positive_count == 0 or self.negative_count == 0


def empirical_prevalence(data: ScoredDataset) -> float:
    total = data.positive_count + data.negative_count
    if total == 0:
        raise ValueError("empty dataset has no prevalence")
    return data.positive_count / total


@dataclass(frozen=True)
class RocPoint:
    threshold: float
    fpr: float
    tpr: float


@dataclass
class RocCurve:
    points: list[RocPoint]


@dataclass(frozen=True)
class UtilityModel:
    prevalence: float
    v_tp: float
    v_fp: float
    v_tn: float
    v_fn: float

    def __post_init__(self):
        if not (0.0 < self.prevalence < 1.0):
            raise ValueError(f"prevalence must be strictly inside (0, 1), got {self.prevalence!r}")
        for name in ("v_tp", "v_fp", "v_tn", "v_fn"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class OperatingPoint:
    threshold: float
    fpr: float
    tpr: float
    expected_utility_per_case: float


def build_roc(data: ScoredDataset) -> RocCurve:
    """Empirical ROC: one point per distinct score, descending, ties grouped;
    (0, 0) is prepended at threshold +inf, and the lowest score yields (1, 1)."""
    if data.is_single_class:
        raise ValueError("ROC construction needs at least one positive and one negative case")
    ordered = sorted(data.cases, key=lambda c: -c[0])
    points = [RocPoint(math.inf, 0.0, 0.0)]
    tp = fp = 0
    for score, group in groupby(ordered, key=lambda c: c[0]):
        for _, label in group:
            if label:
                tp += 1
            else:
                fp += 1
        points.append(RocPoint(score, fp / data.negative_count, tp / data.positive_count))
    return RocCurve(points)


def expected_utility(fpr: float, tpr: float, u: UtilityModel) -> float:
    """Per-case expected utility of operating at (fpr, tpr); linear in both."""
    p = u.prevalence
    return p * (tpr * u.v_tp + (1.0 - tpr) * u.v_fn) + (1.0 - p) * (fpr * u.v_fp + (1.0 - fpr) * u.v_tn)


def iso_utility_slope(u: UtilityModel) -> float | None:
    """Slope of iso-utility lines in (fpr, tpr) axes; None when v_tp == v_fn
    (the lines are vertical and no finite slope exists)."""
    if u.v_tp == u.v_fn:
        return None
    return (1.0 - u.prevalence) * (u.v_tn - u.v_fp) / (u.prevalence * (u.v_tp - u.v_fn))


def optimal_operating_point(curve: RocCurve, u: UtilityModel) -> OperatingPoint:
    """Scan every curve point for maximal expected utility. Ties break toward
    the lowest fpr, then the lowest threshold."""
    if not curve.points:
        raise ValueError("curve has no points")
    best = None
    best_eu = -math.inf
    for pt in curve.points:
        eu = expected_utility(pt.fpr, pt.tpr, u)
        if best is None or eu > best_eu or (
            eu == best_eu and (pt.fpr, pt.threshold) < (best.fpr, best.threshold)
        ):
            best = pt
            best_eu = eu
    return OperatingPoint(best.threshold, best.fpr, best.tpr, best_eu)


def baseline_value(u: UtilityModel) -> tuple[float, str]:
    """Best no-model policy: classify everything negative (operate at (0,0))
    or everything positive (operate at (1,1)); ties go to reject-all."""
    reject = expected_utility(0.0, 0.0, u)
    accept = expected_utility(1.0, 1.0, u)
    if accept > reject:
        return accept, ACCEPT_ALL
    return reject, REJECT_ALL


def indifference_line(u: UtilityModel) -> tuple[float, float] | None:
    """Iso-utility line through the baseline operating point, as (slope,
    intercept) in (fpr, tpr) axes; a curve beats the status quo iff some point
    lies strictly above it. None when iso-lines are vertical."""
    slope = iso_utility_slope(u)
    if slope is None:
        return None
    value, which = baseline_value(u)
    fpr0, tpr0 = (1.0, 1.0) if which == ACCEPT_ALL else (0.0, 0.0)
    return slope, tpr0 - slope * fpr0


def utility_field(u: UtilityModel, grid_n: int) -> np.ndarray:
    """Expected utility on the uniform grid over [0, 1]^2; tpr-major, row 0 at
    tpr = 0, column j at fpr = j / (grid_n - 1)."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    axis = [i / (grid_n - 1) for i in range(grid_n)]
    return np.array([[expected_utility(fpr, tpr, u) for fpr in axis] for tpr in axis])


def evaluate_option(
    curve: RocCurve | None,
    u: UtilityModel,
    n_cases: int,
    investment_cost: float = 0.0,
) -> float:
    """Net value of deploying an option over n_cases: per-case expected
    utility at the optimal operating point (or the baseline, for the no-model
    option) times volume, minus the upfront investment cost."""
    if n_cases < 0:
        raise ValueError("n_cases must be nonnegative")
    if curve is None:
        per_case = baseline_value(u)[0]
    else:
        per_case = optimal_operating_point(curve, u).expected_utility_per_case
    return per_case * n_cases - investment_cost


def auc(curve: RocCurve) -> float:
    fprs = [pt.fpr for pt in curve.points]
    tprs = [pt.tpr for pt in curve.points]
    return float(np.trapezoid(tprs, fprs))


def upper_convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Vertices of the upper convex hull of (fpr, tpr) points, left to right.
    Collinear interior points are dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    hull: list[tuple[float, float]] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) >= 0:
            hull.pop()
        hull.append(p)
    return hull


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


# ---------------------------------------------------------------------------
# JSON report (shared by the CLI and the HTTP service)


def _json_threshold(threshold: float) -> float | None:
    # JSON has no Infinity literal; the all-negative endpoint is encoded null.
    return None if math.isinf(threshold) else threshold


def analysis_report(curve: RocCurve, u: UtilityModel, grid_n: int = DEFAULT_GRID_N) -> dict:
    optimal = optimal_operating_point(curve, u)
    base_value, base_which = baseline_value(u)
    line = indifference_line(u)
    field = utility_field(u, grid_n)
    return {
        "curve": [
            {"threshold": _json_threshold(pt.threshold), "fpr": pt.fpr, "tpr": pt.tpr}
            for pt in curve.points
        ],
        "optimal": {
            "threshold": _json_threshold(optimal.threshold),
            "fpr": optimal.fpr,
            "tpr": optimal.tpr,
            "expected_utility_per_case": optimal.expected_utility_per_case,
        },
        "baseline": {"value": base_value, "which": base_which},
        "indifference": {
            "slope": None if line is None else line[0],
            "intercept": None if line is None else line[1],
        },
        "field": {"n": grid_n, "values": [v for row in field.tolist() for v in row]},
    }


def curve_from_report_points(points: list[dict]) -> RocCurve:
    """Rebuild a curve from report-format points ({threshold, fpr, tpr} with
    null threshold meaning +inf)."""
    rebuilt = []
    for pt in points:
        threshold = pt.get("threshold")
        rebuilt.append(RocPoint(
            math.inf if threshold is None else float(threshold),
            float(pt["fpr"]),
            float(pt["tpr"]),
        ))
    return RocCurve(rebuilt)
