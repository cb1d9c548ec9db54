import itertools
import random

import pytest

from pcsf.core import PcsfInstance, Solution, UnionFind
from pcsf.harness import generate_instance, trial_instance
from pcsf.oracle import (
    OracleLimitError,
    compute_diagnostics,
    exact_cost_by_partition,
    exact_solve,
    verify_solution,
)
from pcsf.pcsf3 import pcsf3_solve
from pcsf.rational import Rat


def test_examples(single_edge_pricey, single_edge_cheap, path_uwv):
    pay = exact_solve(single_edge_pricey)
    assert pay.cost == 4 and pay.forest == frozenset()
    assert exact_solve(single_edge_cheap).cost == 10
    assert exact_solve(path_uwv).cost == Rat(3, 2)


def test_limits():
    with pytest.raises(OracleLimitError):
        exact_solve(generate_instance(10, 23, 1, 5, 5, 1))
    with pytest.raises(OracleLimitError):
        exact_solve(generate_instance(10, 5, 17, 5, 5, 1))


def brute_force(inst):
    """Plain enumeration with the same tie-break; independent of the search."""
    best = None
    m = len(inst.edges)
    for r in range(m + 1):
        for subset in itertools.combinations(range(m), r):
            uf = UnionFind(inst.n)
            if any(uf.connected(inst.edges[k].u, inst.edges[k].v) or uf.union(inst.edges[k].u, inst.edges[k].v) is None for k in subset):
                continue
            sol = Solution.build(inst, [p for p in inst.pairs if not uf.connected(*p)], subset)
            key = (sol.cost, subset)
            if best is None or key < best[0]:
                best = (key, sol)
    return best[1]


def test_matches_plain_enumeration():
    for trial in range(150):
        inst = trial_instance("oracle", trial, 6, max_edges=9)
        assert exact_solve(inst) == brute_force(inst)


def test_matches_partition_program():
    for trial in range(400):
        inst = trial_instance("partition", trial, 8)
        assert exact_solve(inst).cost == exact_cost_by_partition(inst)


def test_beats_random_feasible_solutions():
    rng = random.Random(9)
    for trial in range(20):
        inst = trial_instance("sanity", trial, 7, max_edges=10)
        opt = exact_solve(inst).cost
        m = len(inst.edges)
        for _ in range(10_000 // 20):
            uf = UnionFind(inst.n)
            forest = []
            for k in rng.sample(range(m), rng.randint(0, m)):
                e = inst.edges[k]
                if not uf.connected(e.u, e.v):
                    uf.union(e.u, e.v)
                    forest.append(k)
            sol = Solution.build(inst, [p for p in inst.pairs if not uf.connected(*p)], forest)
            assert opt <= sol.cost


class TestVerify:
    inst = PcsfInstance(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], {(0, 2): 5})

    def test_valid(self):
        assert verify_solution(self.inst, Solution.build(self.inst, [], [0, 1])) == []

    def test_cycle(self):
        problems = verify_solution(self.inst, Solution.build(self.inst, [], [0, 1, 2]))
        assert any(p.startswith("cycle") for p in problems)

    def test_infeasible(self):
        problems = verify_solution(self.inst, Solution.build(self.inst, [], [0]))
        assert any(p.startswith("infeasible") for p in problems)

    def test_cost_mismatch(self):
        problems = verify_solution(self.inst, Solution(frozenset(), frozenset({0, 1}), Rat(7)))
        assert any(p.startswith("cost mismatch") for p in problems)


def diagnostics_for(inst):
    res = pcsf3_solve(inst)
    return compute_diagnostics(inst, res.family, res.coloring, res.solution.penalized, exact_solve(inst), res.solution)


def test_diagnostics_all_connected(single_edge_cheap):
    d = diagnostics_for(single_edge_cheap)
    assert (d.cp, d.pc, d.pp) == (0, 0, 0) and d.cc == 10
    assert d.ratio == 1


def test_diagnostics_both_pay(single_edge_pricey, path_uwv):
    d = diagnostics_for(single_edge_pricey)
    assert d.pp == 4 and (d.cc, d.cp, d.pc) == (0, 0, 0)
    d = diagnostics_for(path_uwv)
    assert d.pp == Rat(3, 2) and d.cp1 == d.cp2 == 0
