"""The Ext recursion materialized as a deduplicated DAG.

Expanding the recursion naively produces a tree whose leaves are the
``s = 0`` groups; the dimension of the root equals the number of times
``Hom(Delta(2), nabla(2))`` occurs among those leaves. The DAG stores each
distinct subquery once and recovers tree occurrence counts by counting
root-to-leaf paths.

Recursion "steps" are identified with twist levels: a node at twist ``s``
under a root at twist ``r - 1`` sits ``r - 1 - s`` steps below it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ext import ExtQuery
from .weights import in_block_of_two_p_s

BASE_CASE = "base-case"
BLOCK_VANISH = "block-vanish"
RECURSION = "recursion"


@dataclass(eq=False)
class TraceNode:
    query: ExtQuery
    rule: str
    dim: int
    children: list[tuple[int, "TraceNode"]] = field(default_factory=list)


@dataclass
class TraceDag:
    root: TraceNode
    nodes: dict[ExtQuery, TraceNode]

    @property
    def p(self) -> int:
        return self.root.query.p

    def topological(self) -> list[TraceNode]:
        """Nodes ordered parents-before-children (edges strictly lower the twist)."""
        return sorted(self.nodes.values(), key=lambda node: -node.query.s)

    def edges(self):
        for node in self.nodes.values():
            for i, child in node.children:
                yield node, i, child

    def nonzero(self) -> list[ExtQuery]:
        return [q for q, node in self.nodes.items() if node.dim]

    def to_json(self) -> dict:
        nodes = {}
        for query, node in self.nodes.items():
            nodes[query.node_id] = {
                "m": query.m,
                "n": query.n,
                "s": query.s,
                "rule": node.rule,
                "dim": node.dim,
                "children": [{"i": i, "node_id": child.query.node_id} for i, child in node.children],
            }
        return {"p": self.p, "root": self.root.query.node_id, "nodes": nodes}

    def to_dot(self) -> str:
        lines = ["digraph trace {"]
        for query, node in self.nodes.items():
            label = f"Ext^{query.m}(Δ({query.n}),∇(2)^({query.s})) = {node.dim}"
            lines.append(f'  "{query.node_id}" [label="{label}"];')
        for parent, i, child in self.edges():
            lines.append(f'  "{parent.query.node_id}" -> "{child.query.node_id}" [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def trace(query: ExtQuery, prune: bool = False) -> TraceDag:
    """Expand ``query`` into its recursion DAG.

    Zero-dimensional children are kept unless ``prune`` is set, in which case
    every node with ``dim == 0`` other than the root is dropped.
    """
    store: dict[ExtQuery, TraceNode] = {}
    p = query.p

    def build(q: ExtQuery) -> TraceNode:
        node = store.get(q)
        if node is not None:
            return node
        if q.s == 0:
            node = TraceNode(q, BASE_CASE, 1 if (q.m, q.n) == (0, 2) else 0)
        elif not in_block_of_two_p_s(q.n, q.s, p):
            node = TraceNode(q, BLOCK_VANISH, 0)
        else:
            base = q.n // p
            children = [(i, build(ExtQuery(q.m - i, base + i, q.s - 1, p))) for i in range(q.m + 1)]
            node = TraceNode(q, RECURSION, sum(c.dim for _, c in children), children)
        store[q] = node
        return node

    root = build(query)
    dag = TraceDag(root, _reachable(root))
    if prune:
        dag = _pruned(dag)
    return dag


def _reachable(root: TraceNode) -> dict[ExtQuery, TraceNode]:
    seen: dict[ExtQuery, TraceNode] = {}
    stack = [root]
    while stack:
        node = stack.pop()
        if node.query in seen:
            continue
        seen[node.query] = node
        stack.extend(child for _, child in reversed(node.children))
    return seen


def _pruned(dag: TraceDag) -> TraceDag:
    copies: dict[ExtQuery, TraceNode] = {}

    def copy(node: TraceNode) -> TraceNode:
        if node.query not in copies:
            kept = [(i, copy(c)) for i, c in node.children if c.dim]
            copies[node.query] = TraceNode(node.query, node.rule, node.dim, kept)
        return copies[node.query]

    root = copy(dag.root)
    return TraceDag(root, _reachable(root))


def path_counts(dag: TraceDag) -> dict[ExtQuery, int]:
    """Number of distinct root-to-node paths for every node."""
    counts = {q: 0 for q in dag.nodes}
    counts[dag.root.query] = 1
    for node in dag.topological():
        c = counts[node.query]
        if c:
            for _, child in node.children:
                counts[child.query] += c
    return counts


def leaf_path_count(dag: TraceDag, leaf: ExtQuery) -> int:
    if leaf.s != 0:
        raise ValueError(f"leaf must be a base-case query (s = 0), got s = {leaf.s}")
    return path_counts(dag).get(leaf, 0)


def dim_from_leaves(dag: TraceDag) -> int:
    """Root dimension recomputed as a path-weighted sum over base-case leaves."""
    counts = path_counts(dag)
    return sum(counts[q] * node.dim for q, node in dag.nodes.items() if node.rule == BASE_CASE)


def precursors(child: ExtQuery) -> list[ExtQuery]:
    """Queries at twist ``child.s + 1`` whose one-step expansion contains ``child``.

    The summand index producing ``child`` is ``parent.m - child.m``. Candidates
    have weight ``p(b-i)`` for even ``b-i`` and ``p(b-i) + p - 2`` for odd
    ``b-i``; those failing the block test against ``2 p^(s+1)`` are dropped.
    """
    a, b, s, p = child.key
    out = []
    for i in range(b + 1):
        k = b - i
        weight = p * k if k % 2 == 0 else p * k + (p - 2)
        if in_block_of_two_p_s(weight, s + 1, p):
            out.append(ExtQuery(a + i, weight, s + 1, p))
    return out


@dataclass
class DeficitReport:
    checked: int
    violations: list[ExtQuery]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_deficit(dag: TraceDag) -> DeficitReport:
    """Check ``m + n >= 2 p^s`` on every node with nonzero dimension.

    The root must be normalized with ``m + n == 2 p^s``.
    """
    root = dag.root.query
    if root.m + root.n != 2 * root.p**root.s:
        raise ValueError(f"root {root.node_id} does not satisfy m + n = 2p^s")
    checked = 0
    violations = []
    for q, node in dag.nodes.items():
        if node.dim:
            checked += 1
            if q.m + q.n < 2 * q.p**q.s:
                violations.append(q)
    return DeficitReport(checked, violations)
