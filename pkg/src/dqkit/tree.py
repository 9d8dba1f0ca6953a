"""Unrolling an influence diagram into an explicit decision tree.

The tree interleaves chance branches (weighted by the probability of each
state conditional on everything already on the path) with decision branches in
declared decision order; chance nodes observed by a decision branch before it,
all remaining chance nodes resolve after the last decision. Leaves sum the
value tables over the full path configuration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagram import (
    CHANCE,
    InfluenceDiagram,
    InvalidDiagramError,
    TreeSizeError,
    close_no_forgetting,
    renormalize,
    validate,
)

DEFAULT_LEAF_CAP = 10_000_000


@dataclass
class Leaf:
    payoff: float


@dataclass
class ChanceBranch:
    node_id: str
    branches: list[tuple[str, float, "TreeNode"]]


@dataclass
class DecisionBranch:
    node_id: str
    branches: list[tuple[str, "TreeNode"]]


TreeNode = Leaf | ChanceBranch | DecisionBranch


def count_leaves(tree: TreeNode) -> int:
    if isinstance(tree, Leaf):
        return 1
    if isinstance(tree, ChanceBranch):
        return sum(count_leaves(child) for _, _, child in tree.branches)
    return sum(count_leaves(child) for _, child in tree.branches)


def unroll_schedule(diagram: InfluenceDiagram) -> list[tuple[str, str]]:
    """Branch order as (kind, node_id) pairs for the no-forgetting-closed
    diagram: each decision preceded by its newly observed chance nodes, then
    every still-unobserved chance node in declared order."""
    closed, _ = close_no_forgetting(diagram)
    informs = {d.id: d.informs for d in closed.decisions}
    chance_ids = {c.id for c in closed.chance}
    schedule: list[tuple[str, str]] = []
    branched: set[str] = set()
    for did in closed.decision_order:
        for src in informs[did]:
            if src in chance_ids and src not in branched:
                schedule.append((CHANCE, src))
                branched.add(src)
        schedule.append(("decision", did))
        branched.add(did)
    for c in closed.chance:
        if c.id not in branched:
            schedule.append((CHANCE, c.id))
    return schedule


def unroll(diagram: InfluenceDiagram, leaf_cap: int = DEFAULT_LEAF_CAP) -> TreeNode:
    violations = validate(diagram)
    if violations:
        raise InvalidDiagramError(violations)
    closed, _ = close_no_forgetting(diagram)
    prepared = renormalize(closed)
    schedule = unroll_schedule(prepared)

    leaves = 1
    for _, nid in schedule:
        leaves *= len(prepared.domain(nid))
    if leaves > leaf_cap:
        raise TreeSizeError(f"unrolled tree would have {leaves} leaves, cap is {leaf_cap}")

    chance_by_id = {c.id: c for c in prepared.chance}
    values = prepared.values

    def leaf_payoff(assignment: dict[str, str]) -> float:
        total = 0.0
        for v in values:
            total += v.table[tuple(assignment[p] for p in v.parents)]
        return total

    def build(idx: int, assignment: dict[str, str]) -> TreeNode:
        if idx == len(schedule):
            return Leaf(leaf_payoff(assignment))
        kind, nid = schedule[idx]
        if kind == CHANCE:
            dist = conditional_distribution(prepared, nid, assignment, chance_by_id)
            branches = []
            for state, p in zip(chance_by_id[nid].states, dist):
                branches.append((state, p, build(idx + 1, {**assignment, nid: state})))
            return ChanceBranch(nid, branches)
        alternatives = prepared.domain(nid)
        return DecisionBranch(nid, [(alt, build(idx + 1, {**assignment, nid: alt})) for alt in alternatives])

    return build(0, {})


def conditional_distribution(
    diagram: InfluenceDiagram,
    target: str,
    assignment: dict[str, str],
    chance_by_id: dict | None = None,
) -> list[float]:
    """P(target = state | assignment) by enumeration over the ancestral chance
    set of the target and the assigned chance nodes. Decision values must be
    present in `assignment` wherever a relevant CPT conditions on them."""
    if chance_by_id is None:
        chance_by_id = {c.id: c for c in diagram.chance}
    evidence = {k: v for k, v in assignment.items() if k in chance_by_id}

    ancestral: set[str] = set()
    stack = [target, *evidence]
    while stack:
        nid = stack.pop()
        if nid in ancestral or nid not in chance_by_id:
            continue
        ancestral.add(nid)
        stack.extend(chance_by_id[nid].parents)

    # Fixed iteration orders keep float rounding identical across processes,
    # so identical inputs always produce identical trees.
    anc_order = sorted(ancestral)
    free = sorted(ancestral - set(evidence) - {target})
    states = chance_by_id[target].states
    weights = [0.0] * len(states)
    fixed = dict(assignment)
    for i, state in enumerate(states):
        fixed[target] = state
        acc = 0.0
        for combo in itertools.product(*[chance_by_id[f].states for f in free]):
            full = {**fixed, **dict(zip(free, combo))}
            w = 1.0
            for nid in anc_order:
                node = chance_by_id[nid]
                row = node.cpt[tuple(full[p] for p in node.parents)]
                w *= row[node.states.index(full[nid])]
                if w == 0.0:
                    break
            acc += w
        weights[i] = acc
    total = sum(weights)
    if total <= 0.0:
        # Impossible evidence: only happens on zero-probability paths, whose
        # subtrees never influence expected values. Keep them well-formed.
        return [1.0 / len(states)] * len(states)
    return [w / total for w in weights]
