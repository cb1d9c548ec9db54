import random

import pytest

from pcsf.core import (
    MoatFamily,
    PcsfInstance,
    Solution,
    StructuralError,
    UnionFind,
    VertexSet,
    cuts_pair,
    cutting_edges,
    solution_cost,
)
from pcsf.rational import Rat


def vs(members, n=3):
    return VertexSet.of(members, n)


@pytest.mark.parametrize("members,expected", [({0}, True), ({0, 1}, False), ({2}, False)])
def test_cuts_pair(members, expected):
    assert cuts_pair(vs(members), 0, 1) is expected


def test_cuts_pair_preconditions():
    with pytest.raises(ValueError):
        cuts_pair(vs({0}), 1, 1)
    with pytest.raises(ValueError):
        cuts_pair(vs({0}), 0, 5)


def test_cutting_edges():
    tri = PcsfInstance(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert cutting_edges(vs({0}), tri) == {tri.edge_index(0, 1), tri.edge_index(0, 2)}
    assert cutting_edges(VertexSet.full(3), tri) == set()
    path = PcsfInstance(3, [(0, 1, 1), (1, 2, 1)])
    assert cutting_edges(vs({1}), path) == {0, 1}
    with pytest.raises(ValueError):
        cutting_edges(VertexSet(0, 3), path)


def test_solution_cost_examples(single_edge_pricey):
    inst = single_edge_pricey
    assert solution_cost(Solution.build(inst, [], []), inst) == 0
    assert solution_cost(Solution.build(inst, [], [0]), inst) == 10
    assert solution_cost(Solution.build(inst, [(0, 1)], []), inst) == 4


def test_solution_cost_dangling(single_edge_pricey):
    inst = single_edge_pricey
    with pytest.raises(StructuralError):
        solution_cost(Solution(frozenset(), frozenset({3}), Rat(0)), inst)
    with pytest.raises(StructuralError):
        Solution.build(PcsfInstance(3, [], {(0, 1): 1}), [(0, 2)], [])


def test_instance_normalization():
    inst = PcsfInstance(3, [(0, 1, 5), (1, 0, 2), (1, 2, 7)], [(1, 0, 3), (0, 2, 0)])
    assert [(e.u, e.v, e.cost) for e in inst.edges] == [(0, 1, 2), (1, 2, 7)]
    assert inst.penalties == {(0, 1): 3}
    assert inst.penalty(1, 0) == 3 and inst.penalty(0, 2) == 0


@pytest.mark.parametrize(
    "edges,pens",
    [([(0, 0, 1)], {}), ([(0, 1, -1)], {}), ([(0, 3, 1)], {}), ([], {(1, 1): 2}), ([], [(0, 1, 1), (1, 0, 2)])],
)
def test_instance_rejects(edges, pens):
    with pytest.raises(ValueError):
        PcsfInstance(3, edges, pens)


def test_union_find_partitions():
    rng = random.Random(3)
    uf = UnionFind(30)
    for _ in range(40):
        uf.union(rng.randrange(30), rng.randrange(30))
    groups = uf.groups()
    assert sorted(v for g in groups for v in g) == list(range(30))
    for g in groups:
        assert all(uf.connected(g[0], v) for v in g)


def test_moat_family_merge_and_laminarity():
    fam = MoatFamily.singletons(4)
    fam.grow(Rat(1))
    a = fam.merge(0, 1)
    b = fam.merge(a, 2)
    assert fam[b].members == VertexSet.of({0, 1, 2}, 4)
    assert fam.active_ids() == [3, b]
    assert fam.current_ids() == [3, b]
    assert fam.is_laminar()
    assert fam.total_duration() == 4
    with pytest.raises(StructuralError):
        fam.merge(0, 3)
    with pytest.raises(StructuralError):
        fam[99]


def test_moat_family_bound():
    fam = MoatFamily.singletons(3)
    x = fam.merge(0, 1)
    fam.merge(x, 2)
    assert len(fam) == 5  # 2n - 1
