"""Seeded random influence diagrams small enough for exhaustive policy search.

The generator lays nodes on a timeline so parents and information arcs always
point backwards; decision_order follows the timeline, which keeps every
generated diagram valid. Declared informs are trimmed until the total policy
space stays under `policy_cap`, so brute-force enumeration is always feasible.
"""
from __future__ import annotations

import itertools
import math
import random

from dqkit.diagram import (
    ChanceNode,
    DecisionNode,
    InfluenceDiagram,
    ValueNode,
    closed_informs,
    validate,
)
from dqkit.solver import Policy, evaluate_policy


def random_diagram(
    rng: random.Random,
    max_chance: int = 4,
    max_decisions: int = 2,
    max_alternatives: int = 3,
    policy_cap: int = 400,
) -> InfluenceDiagram:
    n_chance = rng.randint(1, max_chance)
    n_decisions = rng.randint(1, max_decisions)
    kinds = ["c"] * n_chance + ["d"] * n_decisions
    rng.shuffle(kinds)

    timeline: list[str] = []
    chance_specs: list[tuple[str, list[str]]] = []  # (id, parents)
    decision_specs: list[tuple[str, int, list[str]]] = []  # (id, n_alts, informs)
    earlier_chance: list[str] = []
    ci = di = 0
    for kind in kinds:
        if kind == "c":
            nid = f"c{ci}"
            ci += 1
            candidates = list(timeline)
            rng.shuffle(candidates)
            parents = sorted(candidates[: rng.randint(0, min(2, len(candidates)))])
            chance_specs.append((nid, parents))
            earlier_chance.append(nid)
        else:
            nid = f"d{di}"
            di += 1
            n_alts = rng.choice([1, 2, 2, 2, 3, 3])
            candidates = list(earlier_chance)
            rng.shuffle(candidates)
            informs = sorted(candidates[: rng.randint(0, min(2, len(candidates)))])
            decision_specs.append((nid, n_alts, informs))
        timeline.append(nid)

    decision_order = [nid for nid, _, _ in decision_specs]
    alternatives = {nid: [f"a{i}" for i in range(n)] for nid, n, _ in decision_specs}

    cpt_seed = rng.getrandbits(32)
    value_seed = rng.getrandbits(32)

    def build(informs_map: dict[str, list[str]]) -> InfluenceDiagram:
        cpt_rng = random.Random(cpt_seed)
        value_rng = random.Random(value_seed)
        domains = {nid: ["n", "y"] for nid, _ in chance_specs}
        domains.update(alternatives)
        chance_nodes = []
        for nid, parents in chance_specs:
            cpt = {}
            for cfg in itertools.product(*[domains[p] for p in parents]):
                # Occasional deterministic rows exercise unreachable branches.
                roll = cpt_rng.random()
                if roll < 0.08:
                    row = [1.0, 0.0]
                elif roll < 0.16:
                    row = [0.0, 1.0]
                else:
                    p = round(cpt_rng.uniform(0.05, 0.95), 3)
                    row = [p, 1.0 - p]
                cpt[tuple(cfg)] = row
            chance_nodes.append(ChanceNode(nid, ["n", "y"], list(parents), cpt))
        decision_nodes = [
            DecisionNode(nid, alternatives[nid], list(informs_map[nid]))
            for nid, _, _ in decision_specs
        ]
        value_nodes = []
        parent_pool = [nid for nid, _ in chance_specs] + decision_order
        for vi in range(value_rng.choice([1, 1, 1, 2])):
            shuffled = list(parent_pool)
            value_rng.shuffle(shuffled)
            parents = sorted(shuffled[: value_rng.randint(1, min(3, len(shuffled)))])
            # Full-precision values: coincidental exact ties between distinct
            # payoff computations would make argmax tie-breaking fragile.
            table = {
                tuple(cfg): value_rng.uniform(-10.0, 10.0)
                for cfg in itertools.product(*[domains[p] for p in parents])
            }
            value_nodes.append(ValueNode(f"v{vi}", parents, table))
        return InfluenceDiagram(chance_nodes, decision_nodes, value_nodes, list(decision_order))

    informs_map = {nid: list(informs) for nid, _, informs in decision_specs}
    diagram = build(informs_map)
    while policy_count(diagram) > policy_cap:
        widest = max(
            (d for d in diagram.decisions if informs_map[d.id]),
            key=lambda d: len(closed_informs(diagram)[d.id]),
            default=None,
        )
        if widest is None:
            break
        informs_map[widest.id].pop()
        diagram = build(informs_map)
    assert validate(diagram) == [], validate(diagram)
    return diagram


def with_dense_value(diagram: InfluenceDiagram, rng: random.Random) -> InfluenceDiagram:
    """Add a value node covering every chance and decision node, with
    full-precision entries. Guarantees every alternative changes the payoff,
    so expected values of distinct choices never collide up to float dust
    (diagrams where a choice only reroutes probability mass over
    payoff-identical states produce real-valued ties that float rounding can
    break either way)."""
    parents = [c.id for c in diagram.chance] + list(diagram.decision_order)
    table = {
        tuple(cfg): rng.uniform(-10.0, 10.0)
        for cfg in itertools.product(*[diagram.domain(p) for p in parents])
    }
    dense = ValueNode("v_dense", parents, table)
    return InfluenceDiagram(
        diagram.chance, diagram.decisions, diagram.values + [dense], diagram.decision_order
    )


def policy_count(diagram: InfluenceDiagram) -> int:
    informs = closed_informs(diagram)
    total = 1
    for d in diagram.decisions:
        configs = math.prod(len(diagram.domain(n)) for n in informs[d.id])
        total *= len(d.alternatives) ** configs
    return total


def enumerate_total_policies(diagram: InfluenceDiagram):
    informs = closed_informs(diagram)
    slots: list[tuple[str, tuple[str, ...]]] = []
    menus: list[list[str]] = []
    for did in diagram.decision_order:
        node = diagram.node(did)
        for cfg in itertools.product(*[diagram.domain(n) for n in informs[did]]):
            slots.append((did, tuple(cfg)))
            menus.append(node.alternatives)
    for combo in itertools.product(*menus):
        policy: Policy = {d.id: {} for d in diagram.decisions}
        for (did, cfg), alt in zip(slots, combo):
            policy[did][cfg] = alt
        yield policy


def brute_force_best(diagram: InfluenceDiagram) -> tuple[float, Policy]:
    """Independent oracle: max expected value over every total policy."""
    best = -math.inf
    best_policy: Policy | None = None
    for policy in enumerate_total_policies(diagram):
        value = evaluate_policy(diagram, policy)
        if value > best:
            best = value
            best_policy = policy
    assert best_policy is not None
    return best, best_policy
