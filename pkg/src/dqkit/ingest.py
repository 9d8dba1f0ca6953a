"""Scored-dataset IO and the synthetic widget-production-line generator."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .roc import ScoredDataset


class CsvFormatError(ValueError):
    """CSV input violating the score,label contract; message cites the line."""

    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"line {line}: {reason}")


def parse_scored_csv(text: str) -> ScoredDataset:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise CsvFormatError(1, "missing 'score,label' header")
    header = [col.strip() for col in lines[0].lstrip("﻿").split(",")]
    if header != ["score", "label"]:
        raise CsvFormatError(1, f"header must be 'score,label', got {lines[0].strip()!r}")
    pairs: list[tuple[float, bool]] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        fields = [f.strip() for f in raw.split(",")]
        if len(fields) != 2:
            raise CsvFormatError(lineno, f"expected 2 fields, got {len(fields)}")
        try:
            score = float(fields[0])
        except ValueError:
            raise CsvFormatError(lineno, f"score {fields[0]!r} is not a number") from None
        if not math.isfinite(score):
            raise CsvFormatError(lineno, f"score {fields[0]!r} is not finite")
        if fields[1] not in ("0", "1"):
            raise CsvFormatError(lineno, f"label must be 0 or 1, got {fields[1]!r}")
        pairs.append((score, fields[1] == "1"))
    if not pairs:
        raise CsvFormatError(2, "no data rows")
    return ScoredDataset.from_pairs(pairs)


def load_scored_csv(path) -> ScoredDataset:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scored_csv(fh.read())


def scored_csv_text(data: ScoredDataset) -> str:
    lines = ["score,label"]
    for score, label in data.cases:
        lines.append(f"{score!r},{1 if label else 0}")
    return "\n".join(lines) + "\n"


def write_scored_csv(data: ScoredDataset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(scored_csv_text(data))


@dataclass(frozen=True)
class WidgetLineConfig:
    """Synthetic acceptance-test scores for a widget production line: a latent
    good/bad state per widget and a Gaussian score conditioned on it."""

    n_cases: int
    p_good: float
    good_score_mean: float
    bad_score_mean: float
    score_stddev: float
    seed: int

    def __post_init__(self):
        if self.n_cases < 2:
            raise ValueError("n_cases must be at least 2")
        if not (0.0 < self.p_good < 1.0):
            raise ValueError("p_good must be strictly inside (0, 1)")
        if self.score_stddev <= 0:
            raise ValueError("score_stddev must be positive")

    @classmethod
    def from_dict(cls, obj: dict) -> "WidgetLineConfig":
        try:
            return cls(
                n_cases=int(obj["n_cases"]),
                p_good=float(obj["p_good"]),
                good_score_mean=float(obj["good_score_mean"]),
                bad_score_mean=float(obj["bad_score_mean"]),
                score_stddev=float(obj["score_stddev"]),
                seed=int(obj["seed"]),
            )
        except KeyError as exc:
            raise ValueError(f"generator config missing field {exc.args[0]!r}") from None

    @classmethod
    def from_json(cls, text: str) -> "WidgetLineConfig":
        return cls.from_dict(json.loads(text))


def generate_widget_line(cfg: WidgetLineConfig) -> ScoredDataset:
    """Deterministic under a fixed seed; good widgets are the positive class."""
    rng = np.random.default_rng(cfg.seed)
    good = rng.random(cfg.n_cases) < cfg.p_good
    means = np.where(good, cfg.good_score_mean, cfg.bad_score_mean)
    scores = rng.normal(loc=means, scale=cfg.score_stddev)
    return ScoredDataset.from_pairs(zip(scores.tolist(), good.tolist()))
