"""Discrete influence diagrams.

A diagram is a DAG over three node kinds: chance nodes carry conditional
probability tables, decision nodes carry alternative sets plus an information
set (the nodes observed when the decision is made), and value nodes map parent
configurations to monetary payoffs. Tables are keyed by full parent
configurations, enumerated lexicographically in declared parent order.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, replace

Config = tuple[str, ...]

ROW_SUM_TOL = 1e-9

CHANCE = "chance"
DECISION = "decision"
VALUE = "value"


class ModelFormatError(ValueError):
    """Model file or dict is structurally uninterpretable (missing fields,
    wrong kinds, tables whose length does not match the parent domains)."""


class InvalidDiagramError(ValueError):
    """Raised when an operation requires a valid diagram; carries violations."""

    def __init__(self, violations: list["Violation"]):
        self.violations = list(violations)
        super().__init__("invalid diagram: " + "; ".join(str(v) for v in self.violations))


class TreeSizeError(RuntimeError):
    """Unrolling would exceed the configured leaf cap."""


@dataclass(frozen=True)
class Violation:
    node_id: str | None
    reason: str

    def __str__(self) -> str:
        return f"{self.node_id or '<diagram>'}: {self.reason}"


@dataclass
class ChanceNode:
    id: str
    states: list[str]
    parents: list[str]
    # parent configuration -> probability vector over states (declared order)
    cpt: dict[Config, list[float]]


@dataclass
class DecisionNode:
    id: str
    alternatives: list[str]
    informs: list[str]


@dataclass
class ValueNode:
    id: str
    parents: list[str]
    table: dict[Config, float]


@dataclass
class InfluenceDiagram:
    chance: list[ChanceNode]
    decisions: list[DecisionNode]
    values: list[ValueNode]
    decision_order: list[str]

    def node(self, node_id: str) -> ChanceNode | DecisionNode | ValueNode:
        for group in (self.chance, self.decisions, self.values):
            for n in group:
                if n.id == node_id:
                    return n
        raise KeyError(f"unknown node id: {node_id!r}")

    def kind(self, node_id: str) -> str:
        n = self.node(node_id)
        if isinstance(n, ChanceNode):
            return CHANCE
        if isinstance(n, DecisionNode):
            return DECISION
        return VALUE

    def domain(self, node_id: str) -> list[str]:
        """States of a chance node or alternatives of a decision node."""
        n = self.node(node_id)
        if isinstance(n, ChanceNode):
            return n.states
        if isinstance(n, DecisionNode):
            return n.alternatives
        raise KeyError(f"value node {node_id!r} has no outcome domain")

    def ids(self) -> list[str]:
        return [n.id for group in (self.chance, self.decisions, self.values) for n in group]


def parent_configurations(diagram: InfluenceDiagram, node_id: str) -> list[Config]:
    """All configurations of a node's conditioning set, lexicographic in
    declared order. For chance/value nodes that is the parent list; for
    decision nodes it is the information set."""
    n = diagram.node(node_id)
    ids = n.informs if isinstance(n, DecisionNode) else n.parents
    domains = [diagram.domain(p) for p in ids]
    return [tuple(cfg) for cfg in itertools.product(*domains)]


def _configurations(diagram: InfluenceDiagram, ids: list[str]) -> list[Config]:
    return [tuple(cfg) for cfg in itertools.product(*[diagram.domain(p) for p in ids])]


# ---------------------------------------------------------------------------
# Validation


def validate(diagram: InfluenceDiagram) -> list[Violation]:
    """Every invariant violation, with node id and reason; empty iff solvable."""
    out: list[Violation] = []
    seen: set[str] = set()
    for nid in diagram.ids():
        if not nid:
            out.append(Violation(nid, "empty node id"))
        if nid in seen:
            out.append(Violation(nid, "duplicate node id"))
        seen.add(nid)
    known = seen
    chance_ids = {n.id for n in diagram.chance}
    decision_ids = {n.id for n in diagram.decisions}
    value_ids = {n.id for n in diagram.values}

    order_ok = (
        sorted(diagram.decision_order) == sorted(decision_ids)
        and len(diagram.decision_order) == len(decision_ids)
    )
    if not order_ok:
        out.append(Violation(None, "decision_order must list every decision exactly once"))
    position = {d: i for i, d in enumerate(diagram.decision_order)}

    def check_refs(nid: str, refs: list[str], label: str) -> bool:
        ok = True
        for r in refs:
            if r not in known:
                out.append(Violation(nid, f"{label} references unknown node {r!r}"))
                ok = False
            elif r in value_ids:
                out.append(Violation(nid, f"{label} may not reference value node {r!r}"))
                ok = False
        return ok

    for c in diagram.chance:
        if len(c.states) < 2:
            out.append(Violation(c.id, "chance node needs at least 2 states"))
        if len(set(c.states)) != len(c.states):
            out.append(Violation(c.id, "states must be distinct"))
        if not check_refs(c.id, c.parents, "parents"):
            continue
        expected = set(_configurations(diagram, c.parents))
        got = set(c.cpt)
        for cfg in sorted(expected - got):
            out.append(Violation(c.id, f"cpt missing row for configuration {cfg}"))
        for cfg in sorted(got - expected):
            out.append(Violation(c.id, f"cpt has row for unknown configuration {cfg}"))
        for cfg in sorted(expected & got):
            row = c.cpt[cfg]
            if len(row) != len(c.states):
                out.append(Violation(c.id, f"cpt row {cfg} has {len(row)} entries, expected {len(c.states)}"))
                continue
            if any(not (0.0 <= p <= 1.0) or math.isnan(p) for p in row):
                out.append(Violation(c.id, f"cpt row {cfg} has probabilities outside [0, 1]"))
            elif abs(sum(row) - 1.0) > ROW_SUM_TOL:
                out.append(Violation(c.id, f"cpt row {cfg} sums to {sum(row)!r}, expected 1"))

    for d in diagram.decisions:
        if not d.alternatives:
            out.append(Violation(d.id, "decision needs at least one alternative"))
        if len(set(d.alternatives)) != len(d.alternatives):
            out.append(Violation(d.id, "alternatives must be distinct"))
        if not check_refs(d.id, d.informs, "informs"):
            continue
        if order_ok:
            for r in d.informs:
                if r in decision_ids and position[r] >= position[d.id]:
                    out.append(Violation(d.id, f"informs references decision {r!r} that is not earlier in decision_order"))

    for v in diagram.values:
        if not check_refs(v.id, v.parents, "parents"):
            continue
        expected = set(_configurations(diagram, v.parents))
        got = set(v.table)
        for cfg in sorted(expected - got):
            out.append(Violation(v.id, f"value table missing entry for configuration {cfg}"))
        for cfg in sorted(got - expected):
            out.append(Violation(v.id, f"value table has entry for unknown configuration {cfg}"))
        for cfg in sorted(expected & got):
            if not math.isfinite(v.table[cfg]):
                out.append(Violation(v.id, f"value table entry {cfg} is not finite"))

    if not diagram.values:
        out.append(Violation(None, "diagram needs at least one value node"))

    # Combined arc set: table parents plus information arcs.
    arcs: dict[str, set[str]] = {nid: set() for nid in known}
    for c in diagram.chance:
        for p in c.parents:
            if p in known:
                arcs.setdefault(p, set()).add(c.id)
    for v in diagram.values:
        for p in v.parents:
            if p in known:
                arcs.setdefault(p, set()).add(v.id)
    for d in diagram.decisions:
        for p in d.informs:
            if p in known:
                arcs.setdefault(p, set()).add(d.id)

    if _has_cycle(arcs):
        out.append(Violation(None, "graph of parent and informs arcs contains a cycle"))
    elif order_ok:
        # The declared order must agree with every directed path between
        # decisions, including paths through chance nodes; otherwise the
        # diagram has no consistent timeline.
        for later in diagram.decisions:
            reach = _reachable(arcs, later.id)
            for earlier_id in diagram.decision_order[: position[later.id]]:
                if earlier_id in reach:
                    out.append(Violation(
                        later.id,
                        f"decision_order places {later.id!r} before it, but a directed path leads from it to {earlier_id!r}",
                    ))
    return out


def _has_cycle(arcs: dict[str, set[str]]) -> bool:
    white, grey, black = 0, 1, 2
    color = {n: white for n in arcs}
    for start in arcs:
        if color[start] != white:
            continue
        stack: list[tuple[str, iter]] = [(start, iter(arcs[start]))]
        color[start] = grey
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color.get(nxt, white) == grey:
                    return True
                if color.get(nxt, white) == white:
                    color[nxt] = grey
                    stack.append((nxt, iter(arcs.get(nxt, set()))))
                    advanced = True
                    break
            if not advanced:
                color[node] = black
                stack.pop()
    return False


def _reachable(arcs: dict[str, set[str]], start: str) -> set[str]:
    seen: set[str] = set()
    stack = [start]
    while stack:
        n = stack.pop()
        for nxt in arcs.get(n, set()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


# ---------------------------------------------------------------------------
# No-forgetting closure and solver preparation


def close_no_forgetting(diagram: InfluenceDiagram) -> tuple[InfluenceDiagram, list[tuple[str, str]]]:
    """Extend each decision's information set with every earlier decision and
    everything those decisions observed. Returns the closed diagram and the
    list of added (observed, decision) arcs."""
    added: list[tuple[str, str]] = []
    closed: dict[str, list[str]] = {}
    carried: list[str] = []
    by_id = {d.id: d for d in diagram.decisions}
    for did in diagram.decision_order:
        decl = by_id[did].informs
        informs: list[str] = []
        for src in carried + decl:
            if src not in informs:
                informs.append(src)
                if src not in decl:
                    added.append((src, did))
        closed[did] = informs
        carried = informs + [did]
    new_decisions = [replace(d, informs=list(closed[d.id])) for d in diagram.decisions]
    return replace(diagram, decisions=new_decisions), added


def closed_informs(diagram: InfluenceDiagram) -> dict[str, list[str]]:
    """Information set of each decision after no-forgetting closure."""
    closed, _ = close_no_forgetting(diagram)
    return {d.id: list(d.informs) for d in closed.decisions}


def renormalize(diagram: InfluenceDiagram) -> InfluenceDiagram:
    """Row-wise renormalized copy; tolerates text-format rounding in CPTs."""
    new_chance = []
    for c in diagram.chance:
        cpt = {}
        for cfg, row in c.cpt.items():
            s = sum(row)
            cpt[cfg] = [p / s for p in row] if s > 0 else list(row)
        new_chance.append(replace(c, cpt=cpt))
    return replace(diagram, chance=new_chance)


# ---------------------------------------------------------------------------
# JSON model format


def _flat_table(diagram: InfluenceDiagram, node: ChanceNode | ValueNode) -> list[float]:
    configs = _configurations(diagram, node.parents)
    if isinstance(node, ChanceNode):
        return [p for cfg in configs for p in node.cpt[cfg]]
    return [node.table[cfg] for cfg in configs]


def diagram_to_dict(diagram: InfluenceDiagram) -> dict:
    nodes = []
    for c in diagram.chance:
        nodes.append({
            "id": c.id,
            "kind": CHANCE,
            "states": list(c.states),
            "parents": list(c.parents),
            "table": _flat_table(diagram, c),
        })
    for d in diagram.decisions:
        nodes.append({
            "id": d.id,
            "kind": DECISION,
            "alternatives": list(d.alternatives),
            "informs": list(d.informs),
        })
    for v in diagram.values:
        nodes.append({
            "id": v.id,
            "kind": VALUE,
            "parents": list(v.parents),
            "table": _flat_table(diagram, v),
        })
    return {"nodes": nodes, "decision_order": list(diagram.decision_order)}


def diagram_to_json(diagram: InfluenceDiagram, indent: int | None = 2) -> str:
    return json.dumps(diagram_to_dict(diagram), indent=indent)


def _require(obj: dict, key: str, types, node_id: str | None = None) -> object:
    where = f"node {node_id!r}" if node_id else "model"
    if key not in obj:
        raise ModelFormatError(f"{where}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, types):
        raise ModelFormatError(f"{where}: field {key!r} has wrong type")
    return val


def parse_diagram(source: str | dict) -> InfluenceDiagram:
    """Parse the JSON model format. Raises json.JSONDecodeError for syntax
    problems and ModelFormatError for structural ones; content-level problems
    (bad probabilities, cycles) are left for validate()."""
    obj = json.loads(source) if isinstance(source, str) else source
    if not isinstance(obj, dict):
        raise ModelFormatError("model: top level must be an object")
    raw_nodes = _require(obj, "nodes", list)
    order = _require(obj, "decision_order", list)
    if not all(isinstance(x, str) for x in order):
        raise ModelFormatError("model: decision_order must be a list of node ids")

    # First pass: domains, so flat tables can be sliced in the second pass.
    domains: dict[str, list[str]] = {}
    kinds: dict[str, str] = {}
    for raw in raw_nodes:
        if not isinstance(raw, dict):
            raise ModelFormatError("model: each node must be an object")
        nid = _require(raw, "id", str)
        kind = _require(raw, "kind", str, nid)
        if kind not in (CHANCE, DECISION, VALUE):
            raise ModelFormatError(f"node {nid!r}: unknown kind {kind!r}")
        kinds[nid] = kind
        if kind == CHANCE:
            domains[nid] = _str_list(raw, "states", nid)
        elif kind == DECISION:
            domains[nid] = _str_list(raw, "alternatives", nid)

    chance: list[ChanceNode] = []
    decisions: list[DecisionNode] = []
    values: list[ValueNode] = []
    for raw in raw_nodes:
        nid = raw["id"]
        kind = kinds[nid]
        if kind == DECISION:
            decisions.append(DecisionNode(nid, _str_list(raw, "alternatives", nid), _str_list(raw, "informs", nid)))
            continue
        parents = _str_list(raw, "parents", nid)
        for p in parents:
            if p not in kinds:
                raise ModelFormatError(f"node {nid!r}: parent {p!r} is not defined")
            if kinds[p] == VALUE:
                raise ModelFormatError(f"node {nid!r}: parent {p!r} is a value node")
        configs = [tuple(cfg) for cfg in itertools.product(*[domains[p] for p in parents])]
        flat = _require(raw, "table", list, nid)
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in flat):
            raise ModelFormatError(f"node {nid!r}: table must contain numbers")
        if kind == CHANCE:
            width = len(domains[nid])
            if len(flat) != len(configs) * width:
                raise ModelFormatError(
                    f"node {nid!r}: table has {len(flat)} entries, expected {len(configs) * width}")
            cpt = {cfg: [float(x) for x in flat[i * width:(i + 1) * width]] for i, cfg in enumerate(configs)}
            chance.append(ChanceNode(nid, domains[nid], parents, cpt))
        else:
            if len(flat) != len(configs):
                raise ModelFormatError(f"node {nid!r}: table has {len(flat)} entries, expected {len(configs)}")
            values.append(ValueNode(nid, parents, {cfg: float(x) for cfg, x in zip(configs, flat)}))
    return InfluenceDiagram(chance, decisions, values, [str(x) for x in order])


def _str_list(obj: dict, key: str, nid: str) -> list[str]:
    val = _require(obj, key, list, nid)
    if not all(isinstance(x, str) for x in val):
        raise ModelFormatError(f"node {nid!r}: field {key!r} must be a list of strings")
    return list(val)


def load_diagram(path) -> InfluenceDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_diagram(fh.read())
