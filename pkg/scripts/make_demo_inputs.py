#!/usr/bin/env python3
"""Write demo inputs under demo/: the widget decision model, two synthetic
scored datasets of different quality, and a generator config, ready for the
CLI and the explorer."""
import json
from pathlib import Path

from dqkit.diagram import ChanceNode, DecisionNode, InfluenceDiagram, ValueNode, diagram_to_json
from dqkit.ingest import WidgetLineConfig, generate_widget_line, write_scored_csv

OUT = Path(__file__).resolve().parent.parent / "demo"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    model = InfluenceDiagram(
        chance=[ChanceNode("quality", ["good", "bad"], [], {(): [0.02, 0.98]})],
        decisions=[DecisionNode("sell", ["accept", "reject"], [])],
        values=[ValueNode("payout", ["quality", "sell"], {
            ("good", "accept"): 50.0, ("good", "reject"): 0.0,
            ("bad", "accept"): -70.0, ("bad", "reject"): 0.0,
        })],
        decision_order=["sell"],
    )
    (OUT / "widget_model.json").write_text(diagram_to_json(model) + "\n")

    for name, separation in (("simple_rule_scores.csv", 2.0), ("richer_model_scores.csv", 2.6)):
        cfg = WidgetLineConfig(n_cases=20_000, p_good=0.02, good_score_mean=separation,
                               bad_score_mean=0.0, score_stddev=1.0, seed=1844)
        write_scored_csv(generate_widget_line(cfg), OUT / name)

    (OUT / "generator_config.json").write_text(json.dumps({
        "n_cases": 20_000, "p_good": 0.02, "good_score_mean": 2.0,
        "bad_score_mean": 0.0, "score_stddev": 1.0, "seed": 1844,
    }, indent=2) + "\n")
    print(f"wrote demo inputs to {OUT}")


if __name__ == "__main__":
    main()
