import json

import pytest

from sl2ext.ext import ExtEngine, ExtQuery, top_degree
from sl2ext.oracles import naive_ext_dim
from sl2ext.trace import (
    BASE_CASE,
    BLOCK_VANISH,
    RECURSION,
    dim_from_leaves,
    leaf_path_count,
    path_counts,
    precursors,
    trace,
    verify_deficit,
)
from sl2ext.weights import in_block_of_two_p_s


def Q(m, n, s, p):
    return ExtQuery(m, n, s, p)


def tree_leaf_occurrences(m, n, s, p, leaf):
    """Occurrences of ``leaf`` among the leaves of the fully expanded tree."""
    if s == 0:
        return int((m, n) == leaf)
    a, i = divmod(n, p)
    if not ((a % 2 == 0 and i == 0) or (a % 2 == 1 and i == p - 2)):
        return 0
    return sum(tree_leaf_occurrences(m - k, n // p + k, s - 1, p, leaf) for k in range(m + 1))


def test_chain_example_p2_r3():
    dag = trace(Q(0, 8, 2, 2))
    assert dag.root.dim == 1
    assert sorted(dag.nonzero(), key=lambda q: -q.s) == [Q(0, 8, 2, 2), Q(0, 4, 1, 2), Q(0, 2, 0, 2)]


def test_base_case_single_node():
    dag = trace(Q(0, 2, 0, 5))
    assert list(dag.nodes) == [Q(0, 2, 0, 5)]
    assert dag.root.rule == BASE_CASE and dag.root.dim == 1


def test_block_vanish_root_has_no_children():
    # 1 is odd, so it fails the block test against 2p at p = 2
    dag = trace(Q(3, 1, 1, 2))
    assert dag.root.rule == BLOCK_VANISH
    assert dag.root.children == [] and dag.root.dim == 0


def test_recursion_root_keeps_zero_children_unless_pruned():
    dag = trace(Q(3, 2, 1, 2))
    assert dag.root.rule == RECURSION
    assert [i for i, _ in dag.root.children] == [0, 1, 2, 3]
    assert dag.root.dim == 0 == naive_ext_dim(3, 2, 1, 2)
    pruned = trace(Q(3, 2, 1, 2), prune=True)
    assert list(pruned.nodes) == [Q(3, 2, 1, 2)]


def test_shared_subqueries_stored_once():
    # sharing needs two levels of expansion below the root's children
    dag = trace(Q(8, 16, 3, 2))
    edges = list(dag.edges())
    targets = [child.query for _, _, child in edges]
    assert len(set(targets)) < len(targets)
    assert len(dag.nodes) == len({id(node) for node in dag.nodes.values()})


def test_node_invariants():
    dag = trace(Q(10, 18, 2, 3))
    for q, node in dag.nodes.items():
        assert (node.rule == BASE_CASE) == (q.s == 0)
        if node.rule in (BASE_CASE, BLOCK_VANISH):
            assert node.children == []
        else:
            assert node.dim == sum(c.dim for _, c in node.children)


def test_leaf_path_count_examples():
    assert leaf_path_count(trace(Q(0, 6, 1, 3)), Q(0, 2, 0, 3)) == 1
    assert leaf_path_count(trace(Q(0, 2, 0, 2)), Q(0, 2, 0, 2)) == 1
    assert leaf_path_count(trace(Q(2, 2, 1, 2)), Q(0, 2, 0, 2)) == 0


def test_leaf_path_count_rejects_non_leaf():
    with pytest.raises(ValueError):
        leaf_path_count(trace(Q(0, 4, 1, 2)), Q(0, 4, 1, 2))


@pytest.mark.parametrize("query", [(4, 6, 2, 2), (8, 10, 2, 2), (6, 9, 2, 3), (12, 20, 2, 2)])
def test_path_count_equals_tree_occurrences(query):
    dag = trace(Q(*query))
    counts = path_counts(dag)
    for q, node in dag.nodes.items():
        if node.rule == BASE_CASE:
            assert counts[q] == tree_leaf_occurrences(*query, (q.m, q.n))


def test_dim_from_leaves_examples():
    assert dim_from_leaves(trace(Q(0, 4, 1, 2))) == 1
    assert dim_from_leaves(trace(Q(4, 0, 1, 2))) == 0 == naive_ext_dim(4, 0, 1, 2)


@pytest.mark.parametrize("p", [2, 3])
def test_dim_from_leaves_matches_engine_grid(p):
    engine = ExtEngine()
    for s in range(3):
        for n in range(21):
            for m in range(13):
                dag = trace(Q(m, n, s, p))
                assert dag.root.dim == dim_from_leaves(dag) == engine.ext_delta_nabla2(m, n, s, p)


def test_precursor_examples():
    assert Q(0, 4, 1, 2) in precursors(Q(0, 2, 0, 2))
    found = precursors(Q(0, 2, 0, 3))
    assert Q(1, 4, 1, 3) in found and Q(2, 0, 1, 3) in found
    assert found == [Q(0, 6, 1, 3), Q(1, 4, 1, 3), Q(2, 0, 1, 3)]
    assert precursors(Q(0, 0, 0, 2)) == [Q(0, 0, 1, 2)]


def _one_step(parent, i):
    return Q(parent.m - i, parent.n // parent.p + i, parent.s - 1, parent.p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_precursors_expand_back_to_child(p):
    for s in range(3):
        for a in range(8):
            for b in range(12):
                child = Q(a, b, s, p)
                for parent in precursors(child):
                    assert in_block_of_two_p_s(parent.n, parent.s, p)
                    assert _one_step(parent, parent.m - a) == child


@pytest.mark.parametrize("root", [(0, 8, 2, 2), (6, 12, 2, 3), (12, 6, 2, 3), (10, 40, 2, 5)])
def test_every_edge_is_a_precursor_edge(root):
    for parent, i, child in trace(Q(*root)).edges():
        assert parent.query in precursors(child.query)
        assert parent.query.m - child.query.m == i


def test_deficit_examples():
    assert verify_deficit(trace(Q(0, 8, 2, 2))).ok
    assert verify_deficit(trace(Q(0, 2, 0, 5))).ok
    with pytest.raises(ValueError):
        verify_deficit(trace(Q(0, 3, 1, 2)))


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_deficit_over_top_summands(p, r):
    q = top_degree(r, p)
    for n in range(q + 1):
        report = verify_deficit(trace(Q(q - n, n, r - 1, p)))
        assert report.violations == []


def test_deficit_detects_planted_violation():
    dag = trace(Q(0, 8, 2, 2))
    bogus = trace(Q(1, 1, 1, 2))
    node = bogus.root
    node.dim = 1
    dag.nodes[node.query] = node
    assert verify_deficit(dag).violations == [Q(1, 1, 1, 2)]


def test_json_schema():
    payload = trace(Q(0, 8, 2, 2)).to_json()
    assert payload["root"] == "0:8:2"
    node = payload["nodes"]["0:8:2"]
    assert set(node) == {"m", "n", "s", "rule", "dim", "children"}
    assert node["children"][0] == {"i": 0, "node_id": "0:4:1"}
    json.dumps(payload)


def test_dot_output():
    dot = trace(Q(0, 2, 0, 3)).to_dot()
    assert dot.count("[label=") == 1
    assert 'label="Ext^0(Δ(2),∇(2)^(0)) = 1"' in dot
    chain = trace(Q(0, 8, 2, 2), prune=True).to_dot()
    assert '"0:8:2" -> "0:4:1" [label="0"];' in chain
