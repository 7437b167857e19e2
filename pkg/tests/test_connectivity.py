import json
from itertools import combinations, product

import pytest

from connposet import (
    EdgeSet,
    MultiGraph,
    bridges,
    contract_set,
    is_cactus,
    is_chorded_cycle_free,
    is_two_edge_connected,
    removable_edges,
    removal_condensation,
    skeleton,
)
from connposet.connectivity import (
    bridges_by_deletion,
    chorded_cycle_sweep,
    doubled_star,
    removability_findings,
    skeleton_findings,
)
from connposet.graphs import enumerate_level, slot_count


def path(n, *verts):
    return EdgeSet.from_edges(n, list(zip(verts, verts[1:])))


def test_bridges_examples():
    assert bridges(path(3, 1, 2, 3)) == [(1, 2), (2, 3)]
    assert bridges(EdgeSet.complete(3)) == []
    pendant = EdgeSet.from_edges(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    assert bridges(pendant) == [(3, 4)]


def test_bridges_rejects_disconnected():
    with pytest.raises(ValueError):
        bridges(EdgeSet.from_edges(4, [(1, 2), (3, 4)]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bridges_against_deletion_oracle(n):
    for bits in range(1 << slot_count(n)):
        g = EdgeSet(n, bits)
        try:
            fast = bridges(g)
        except ValueError:
            continue
        assert fast == bridges_by_deletion(g)


def test_skeleton_examples():
    sk = skeleton(path(3, 1, 2, 3))
    assert sk.bridges == ((1, 2), (2, 3))
    assert sk.parts == ((1,), (2,), (3,))
    assert sk.t == 3

    sk = skeleton(EdgeSet.complete(3))
    assert sk.bridges == ()
    assert sk.parts == ((1, 2, 3),)

    two_triangles = EdgeSet.from_edges(
        6, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6)]
    )
    sk = skeleton(two_triangles)
    assert sk.bridges == ((3, 4),)
    assert sk.parts == ((1, 2, 3), (4, 5, 6))
    assert sk.t == 2


def test_two_edge_connected_conventions():
    assert is_two_edge_connected(EdgeSet.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)]))
    assert not is_two_edge_connected(path(3, 1, 2, 3))
    assert is_two_edge_connected(EdgeSet.empty(1))
    assert not is_two_edge_connected(EdgeSet.complete(2))
    assert not is_two_edge_connected(EdgeSet.from_edges(4, [(1, 2), (3, 4)]))


def test_removable_edges_examples():
    k4 = removable_edges(EdgeSet.complete(4))
    assert (k4.r, k4.removable, k4.q, k4.bound) == (0, (), 1, 0)

    c4 = removable_edges(EdgeSet.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)]))
    assert c4.r == 4 and c4.q == 4 and c4.bound == 6

    k3 = removable_edges(EdgeSet.complete(3))
    assert k3.r == 3 and k3.q == 3 and k3.bound == 4


def test_removable_edges_rejects_bridged_input():
    with pytest.raises(ValueError):
        removable_edges(path(3, 1, 2, 3))


def test_removal_condensation_cycle():
    c6 = EdgeSet.from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)])
    report, condensed = removal_condensation(c6)
    assert report.r == 6 and report.q == 6
    assert condensed.q == 6 and condensed.edge_total == 6
    assert is_chorded_cycle_free(condensed)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_skeleton_structure_exhaustive(n):
    checked, findings = skeleton_findings(n)
    assert findings == []
    assert checked == sum(
        len(list(enumerate_level(n, k, "connected"))) for k in range(slot_count(n) + 1)
    )


@pytest.mark.parametrize("n", [1, 3, 4, 5])
def test_removability_bounds_exhaustive(n):
    checked, findings = removability_findings(n)
    assert findings == []
    if n == 5:
        assert checked == 253


def test_parallel_sweep_matches_sequential():
    assert skeleton_findings(4, workers=2) == skeleton_findings(4)
    assert removability_findings(4, workers=2) == removability_findings(4)


# ---------------------------------------------------------------------------
# multigraphs


def test_multigraph_validation():
    with pytest.raises(ValueError):
        MultiGraph(3, ((2, 2, 1),))
    with pytest.raises(ValueError):
        MultiGraph(3, ((1, 2, 0),))
    with pytest.raises(ValueError):
        MultiGraph(3, ((1, 2, 1), (1, 2, 2)))
    with pytest.raises(ValueError):
        MultiGraph(2, ((1, 3, 1),))


def test_multigraph_from_pairs_and_json():
    h = MultiGraph.from_pairs(3, [(1, 2), (2, 1), (2, 3)])
    assert h.edges == ((1, 2, 2), (2, 3, 1))
    assert h.edge_total == 3
    again = MultiGraph.from_json(h.to_json())
    assert again == h
    assert json.loads(h.to_json()) == {"q": 3, "edges": [[1, 2, 2], [2, 3, 1]]}


def test_chorded_cycle_examples():
    assert is_chorded_cycle_free(MultiGraph(2, ((1, 2, 2),)))
    assert not is_chorded_cycle_free(MultiGraph(2, ((1, 2, 3),)))
    k4 = MultiGraph.from_pairs(4, combinations(range(1, 5), 2))
    assert not is_chorded_cycle_free(k4)
    c5 = MultiGraph.from_pairs(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    assert is_chorded_cycle_free(c5)


def test_cactus_examples():
    assert is_cactus(MultiGraph(2, ((1, 2, 2),)))
    assert not is_cactus(MultiGraph(2, ((1, 2, 3),)))
    assert is_cactus(MultiGraph.from_pairs(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]))
    # two triangles sharing a vertex
    assert is_cactus(
        MultiGraph.from_pairs(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])
    )
    # two triangles sharing an edge
    assert not is_cactus(
        MultiGraph.from_pairs(4, [(1, 2), (2, 3), (1, 3), (2, 4), (3, 4)])
    )


def test_predicates_diverge_on_complete_bipartite_2_3():
    """The one shape where the two tests disagree at q = 5: every cycle of
    K_{2,3} spans exactly its own edges (no chord anywhere), yet the graph
    is a single block that is neither an edge nor a cycle."""
    k23 = MultiGraph.from_pairs(5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
    assert is_chorded_cycle_free(k23)
    assert not is_cactus(k23)
    assert k23.edge_total <= 2 * 5 - 2  # the edge bound is still respected


def test_cactus_implies_chorded_cycle_free_q4():
    pairs = list(combinations(range(1, 5), 2))
    for mults in product(range(4), repeat=len(pairs)):
        edges = tuple((u, v, c) for (u, v), c in zip(pairs, mults) if c)
        h = MultiGraph(4, edges)
        if is_cactus(h):
            assert is_chorded_cycle_free(h)


def test_chorded_cycle_sweep_small():
    sweep = chorded_cycle_sweep(4)
    assert sweep["bound_violations"] == []
    assert sweep["mismatches"] == []
    assert sweep["per_q"][4]["multigraphs"] == 4 ** 6
    for q in (2, 3, 4):
        assert sweep["per_q"][q]["doubled_star_tight"]


def test_doubled_star_is_tight():
    for q in range(2, 7):
        star = doubled_star(q)
        assert star.edge_total == 2 * q - 2
        assert is_chorded_cycle_free(star)
        assert is_cactus(star)


def test_contract_examples():
    triangle = MultiGraph.from_pairs(3, [(1, 2), (2, 3), (1, 3)])
    collapsed = contract_set(triangle, [1, 2, 3])
    assert collapsed.q == 1 and collapsed.edge_total == 0

    c4 = MultiGraph.from_pairs(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    contracted = contract_set(c4, [1, 2])
    assert contracted.q == 3 and contracted.edge_total == 3
    assert is_chorded_cycle_free(contracted)

    p3 = MultiGraph.from_pairs(3, [(1, 2), (2, 3)])
    assert contract_set(p3, [1, 2]) == MultiGraph(2, ((1, 2, 1),))


def test_contract_validation():
    h = MultiGraph.from_pairs(3, [(1, 2)])
    with pytest.raises(ValueError):
        contract_set(h, [])
    with pytest.raises(ValueError):
        contract_set(h, [4])


def test_contracting_a_cycle_keeps_the_count():
    # collapsing the vertex set of a cycle whose span carries no extra edge
    # removes exactly |cycle| edges and |cycle|-1 vertices
    k23 = MultiGraph.from_pairs(5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
    contracted = contract_set(k23, [1, 3, 2, 4])
    assert contracted.q == 5 - 4 + 1
    assert contracted.edge_total == k23.edge_total - 4
    assert is_chorded_cycle_free(contracted)
