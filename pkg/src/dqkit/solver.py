"""Optimal policies and expected values for influence diagrams.

solve() runs backward induction on the unrolled tree: expectation at chance
branches, maximization at decision branches (ties to the earliest-declared
alternative). evaluate_policy() is the independent check: it scores a fixed
policy by direct enumeration of full chance configurations, never touching the
tree. choose_model() ranks candidate models by expected value net of an
investment cost, which is equivalent to prepending the model choice as a first
decision and solving.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Sequence

from .diagram import (
    ChanceNode,
    Config,
    DecisionNode,
    InfluenceDiagram,
    InvalidDiagramError,
    ValueNode,
    close_no_forgetting,
    closed_informs,
    diagram_to_dict,
    renormalize,
    validate,
)
from .tree import DEFAULT_LEAF_CAP, ChanceBranch, DecisionBranch, Leaf, unroll

Policy = dict[str, dict[Config, str]]


@dataclass
class SolveResult:
    policy: Policy
    expected_value: float
    # Conditional optimal value per first-stage information configuration,
    # and the probability of seeing that configuration.
    per_information_value: dict[Config, float]
    information_weights: dict[Config, float]
    unreachable: list[tuple[str, Config]]
    informs: dict[str, list[str]]


@dataclass
class InvestmentChoice:
    chosen_option: str
    net_values: dict[str, float]


def solve(diagram: InfluenceDiagram, leaf_cap: int = DEFAULT_LEAF_CAP) -> SolveResult:
    violations = validate(diagram)
    if violations:
        raise InvalidDiagramError(violations)
    tree = unroll(diagram, leaf_cap=leaf_cap)
    informs = closed_informs(diagram)
    alternatives = {d.id: d.alternatives for d in diagram.decisions}
    first_decision = diagram.decision_order[0] if diagram.decision_order else None

    policy: Policy = {d.id: {} for d in diagram.decisions}
    per_information: dict[Config, float] = {}
    weights: dict[Config, float] = {}
    unreachable: list[tuple[str, Config]] = []

    def induct(node, assignment: dict[str, str], path_prob: float) -> float:
        if isinstance(node, Leaf):
            return node.payoff
        if isinstance(node, ChanceBranch):
            total = 0.0
            for state, p, child in node.branches:
                total += p * induct(child, {**assignment, node.node_id: state}, path_prob * p)
            return total
        assert isinstance(node, DecisionBranch)
        cfg = tuple(assignment[n] for n in informs[node.node_id])
        child_values = [
            induct(child, {**assignment, node.node_id: alt}, path_prob)
            for alt, child in node.branches
        ]
        if path_prob == 0.0:
            choice_idx = 0
            unreachable.append((node.node_id, cfg))
        else:
            choice_idx = max(range(len(child_values)), key=lambda i: (child_values[i], -i))
        policy[node.node_id][cfg] = alternatives[node.node_id][choice_idx]
        best = child_values[choice_idx]
        if node.node_id == first_decision:
            per_information[cfg] = best
            weights[cfg] = path_prob
        return best

    expected_value = induct(tree, {}, 1.0)
    if first_decision is None:
        per_information = {(): expected_value}
        weights = {(): 1.0}
    return SolveResult(policy, expected_value, per_information, weights, unreachable, informs)


def evaluate_policy(diagram: InfluenceDiagram, policy: Policy) -> float:
    """Expected value of a fixed policy by direct enumeration over every full
    chance configuration. The policy must map every information configuration
    of every decision (after no-forgetting closure) to a legal alternative."""
    violations = validate(diagram)
    if violations:
        raise InvalidDiagramError(violations)
    closed, _ = close_no_forgetting(diagram)
    prepared = renormalize(closed)
    informs = {d.id: d.informs for d in prepared.decisions}
    for d in prepared.decisions:
        table = policy.get(d.id)
        if table is None:
            raise ValueError(f"policy has no table for decision {d.id!r}")
        for cfg in itertools.product(*[prepared.domain(n) for n in informs[d.id]]):
            choice = table.get(tuple(cfg))
            if choice is None:
                raise ValueError(f"policy for decision {d.id!r} is missing configuration {tuple(cfg)}")
            if choice not in d.alternatives:
                raise ValueError(f"policy maps {d.id!r}{tuple(cfg)} to illegal alternative {choice!r}")

    chance = prepared.chance
    total = 0.0
    for combo in itertools.product(*[c.states for c in chance]):
        assignment = {c.id: s for c, s in zip(chance, combo)}
        for did in prepared.decision_order:
            cfg = tuple(assignment[n] for n in informs[did])
            assignment[did] = policy[did][cfg]
        weight = 1.0
        for c in chance:
            row = c.cpt[tuple(assignment[p] for p in c.parents)]
            weight *= row[c.states.index(assignment[c.id])]
            if weight == 0.0:
                break
        if weight == 0.0:
            continue
        payoff = sum(v.table[tuple(assignment[p] for p in v.parents)] for v in prepared.values)
        total += weight * payoff
    return total


def value_of_information(diagram: InfluenceDiagram, decision_id: str, observed_node_id: str) -> float:
    """Gain in optimal expected value from letting the decision observe the
    node: solve with the extra informs arc minus solve without it."""
    diagram.node(observed_node_id)  # raises KeyError if unknown
    decision = diagram.node(decision_id)
    if not isinstance(decision, DecisionNode):
        raise ValueError(f"{decision_id!r} is not a decision node")
    base = solve(diagram).expected_value
    new_decisions = [
        replace(d, informs=d.informs + [observed_node_id]) if d.id == decision_id and observed_node_id not in d.informs else d
        for d in diagram.decisions
    ]
    extended = replace(diagram, decisions=new_decisions)
    violations = validate(extended)
    if violations:
        raise InvalidDiagramError(violations)
    return solve(extended).expected_value - base


OptionSpec = tuple[str, "InfluenceDiagram | float", float]


def choose_model(options: Sequence[OptionSpec], weights: dict[Config, float] | None = None) -> InvestmentChoice:
    """Pick the option with the highest expected value net of its investment
    cost. Each option is (name, diagram or precomputed expected value, cost);
    the status quo is just an option with zero cost. Optional weights replace
    the diagram-internal first-stage information distribution; all diagram
    options must then share one information domain."""
    if not options:
        raise ValueError("choose_model needs at least one option")
    names = [name for name, _, _ in options]
    if len(set(names)) != len(names):
        raise ValueError("option names must be distinct")

    if weights is not None:
        total = sum(weights.values())
        if total <= 0:
            raise ValueError("information weights must have positive total")
        weights = {cfg: w / total for cfg, w in weights.items()}

    nets: dict[str, float] = {}
    domain: set[Config] | None = None
    for name, model, cost in options:
        if isinstance(model, InfluenceDiagram):
            result = solve(model)
            opt_domain = set(result.per_information_value)
            if domain is None:
                domain = opt_domain
            elif opt_domain != domain:
                raise ValueError(f"option {name!r} has a mismatched information domain")
            if weights is not None:
                if set(weights) != opt_domain:
                    raise ValueError(f"weights do not cover the information domain of option {name!r}")
                value = sum(w * result.per_information_value[cfg] for cfg, w in weights.items())
            else:
                value = result.expected_value
        else:
            value = float(model)
        nets[name] = value - cost

    chosen = names[0]
    for name in names[1:]:
        if nets[name] > nets[chosen]:
            chosen = name
    return InvestmentChoice(chosen, nets)


def prepend_model_choice(
    options: Sequence[tuple[str, InfluenceDiagram, float]],
    choice_id: str = "model_choice",
) -> InfluenceDiagram:
    """Build the one-diagram equivalent of choose_model: a new first decision
    selects among structurally identical option diagrams whose tables may
    differ, and an extra value node charges each option's investment cost."""
    if not options:
        raise ValueError("need at least one option")
    names = [name for name, _, _ in options]
    if len(set(names)) != len(names):
        raise ValueError("option names must be distinct")
    base = options[0][1]
    skeleton = _structure_only(base)
    for name, diag, _ in options[1:]:
        if _structure_only(diag) != skeleton:
            raise ValueError(f"option {name!r} does not share the base diagram structure")
    if choice_id in base.ids() or f"{choice_id}_cost" in base.ids():
        raise ValueError(f"node id {choice_id!r} already used in the option diagrams")

    diagrams = {name: diag for name, diag, _ in options}
    chance = []
    for c in base.chance:
        cpt = {}
        for name in names:
            for cfg, row in diagrams[name].node(c.id).cpt.items():
                cpt[(name,) + cfg] = list(row)
        chance.append(ChanceNode(c.id, list(c.states), [choice_id] + list(c.parents), cpt))
    values = []
    for v in base.values:
        table = {}
        for name in names:
            for cfg, val in diagrams[name].node(v.id).table.items():
                table[(name,) + cfg] = val
        values.append(ValueNode(v.id, [choice_id] + list(v.parents), table))
    values.append(ValueNode(
        f"{choice_id}_cost",
        [choice_id],
        {(name,): -cost for name, _, cost in options},
    ))
    decisions = [DecisionNode(choice_id, list(names), [])]
    for d in base.decisions:
        decisions.append(DecisionNode(d.id, list(d.alternatives), [choice_id] + list(d.informs)))
    return InfluenceDiagram(chance, decisions, values, [choice_id] + list(base.decision_order))


def _structure_only(diagram: InfluenceDiagram) -> dict:
    obj = diagram_to_dict(diagram)
    for node in obj["nodes"]:
        node.pop("table", None)
    return obj


# ---------------------------------------------------------------------------
# JSON serialization


def _cfg_key(cfg: Config) -> str:
    return ",".join(cfg)


def solve_result_to_dict(result: SolveResult) -> dict:
    return {
        "expected_value": result.expected_value,
        "policy": {
            did: {_cfg_key(cfg): alt for cfg, alt in table.items()}
            for did, table in result.policy.items()
        },
        "per_information_value": {_cfg_key(cfg): v for cfg, v in result.per_information_value.items()},
        "information_weights": {_cfg_key(cfg): w for cfg, w in result.information_weights.items()},
        "unreachable": [
            {"decision": did, "configuration": list(cfg)} for did, cfg in result.unreachable
        ],
        "informs": {did: list(nodes) for did, nodes in result.informs.items()},
    }


def investment_choice_to_dict(choice: InvestmentChoice) -> dict:
    return {
        "chosen_option": choice.chosen_option,
        "net_values": dict(choice.net_values),
    }
