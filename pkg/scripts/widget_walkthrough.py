#!/usr/bin/env python3
"""End-to-end walkthrough on the widget production line.

Starts from the bare sell/scrap decision, prices a noiseless acceptance test
via value of information, then evaluates two imperfect candidate classifiers
through ROC-utility analysis and picks the best investment net of costs.
"""
import argparse

from dqkit.diagram import ChanceNode, DecisionNode, InfluenceDiagram, ValueNode
from dqkit.ingest import WidgetLineConfig, generate_widget_line
from dqkit.roc import (
    UtilityModel,
    baseline_value,
    build_roc,
    evaluate_option,
    indifference_line,
    optimal_operating_point,
)
from dqkit.solver import choose_model, solve, value_of_information

P_GOOD = 0.02
UTILITY = UtilityModel(prevalence=P_GOOD, v_tp=50.0, v_fp=-70.0, v_tn=0.0, v_fn=0.0)


def widget_diagram() -> InfluenceDiagram:
    return InfluenceDiagram(
        chance=[
            ChanceNode("quality", ["good", "bad"], [], {(): [P_GOOD, 1 - P_GOOD]}),
            ChanceNode("test_result", ["good", "bad"], ["quality"],
                       {("good",): [1.0, 0.0], ("bad",): [0.0, 1.0]}),
        ],
        decisions=[DecisionNode("sell", ["accept", "reject"], [])],
        values=[ValueNode("payout", ["quality", "sell"], {
            ("good", "accept"): 50.0, ("good", "reject"): 0.0,
            ("bad", "accept"): -70.0, ("bad", "reject"): 0.0,
        })],
        decision_order=["sell"],
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-cases", type=int, default=10_000, help="widgets per decision period")
    args = parser.parse_args()

    print("== blind decision ==")
    diagram = widget_diagram()
    result = solve(diagram)
    print(f"optimal policy without any test: {result.policy['sell'][()]}  "
          f"(expected value {result.expected_value:.6g} per widget)")

    print("\n== what is a perfect acceptance test worth? ==")
    voi = value_of_information(diagram, "sell", "test_result")
    print(f"value of observing a noiseless test: {voi:.6g} per widget "
          f"({voi * args.n_cases:.6g} over {args.n_cases} widgets)")

    print("\n== imperfect candidate classifiers ==")
    slope, intercept = indifference_line(UTILITY)
    print(f"status quo pays {baseline_value(UTILITY)[0]:.6g}; a classifier adds value only if its "
          f"curve crosses tpr = {slope:.4g}*fpr + {intercept:.4g}")
    candidates = {
        # (separation of class score means, upfront cost)
        "simple-rule": (2.0, 50.0),
        "richer-model": (2.6, 1800.0),
    }
    options = [("status-quo", evaluate_option(None, UTILITY, args.n_cases), 0.0)]
    for name, (separation, cost) in candidates.items():
        cfg = WidgetLineConfig(n_cases=20_000, p_good=P_GOOD, good_score_mean=separation,
                               bad_score_mean=0.0, score_stddev=1.0, seed=1844)
        curve = build_roc(generate_widget_line(cfg))
        opt = optimal_operating_point(curve, UTILITY)
        print(f"{name}: operate at threshold {opt.threshold:.4g} "
              f"(fpr {opt.fpr:.4g}, tpr {opt.tpr:.4g}) for {opt.expected_utility_per_case:.6g}/case")
        options.append((name, opt.expected_utility_per_case * args.n_cases, cost))

    print("\n== investment choice ==")
    choice = choose_model(options)
    for name, net in choice.net_values.items():
        marker = "  <- winner" if name == choice.chosen_option else ""
        print(f"{name:<14} net {net:>12.6g}{marker}")


if __name__ == "__main__":
    main()
