import pytest

from pcsf.core import PcsfInstance, StructuralError
from pcsf.harness import trial_instance
from pcsf.ipcsf import ipcsf_solve, reduce_instance
from pcsf.oracle import exact_solve, verify_solution
from pcsf.pcsf3 import pcsf3_solve
from pcsf.rational import Rat


def test_pays_nothing_matches_base(single_edge_cheap):
    sol, records = ipcsf_solve(single_edge_cheap)
    assert sol == pcsf3_solve(single_edge_cheap).solution
    assert len(records) == 1 and records[0].cost2 is None


def test_tie_keeps_first_branch(single_edge_pricey):
    sol, records = ipcsf_solve(single_edge_pricey)
    assert sol.cost == 4 and sol.penalized == {(0, 1)}
    top = records[0]
    assert (top.cost1, top.cost2, top.chosen) == (4, 4, 1)
    assert records[1].q1 == frozenset() and records[1].cost1 == 0


def test_path_is_optimal(path_uwv):
    sol, records = ipcsf_solve(path_uwv)
    assert sol.cost == Rat(3, 2) == exact_solve(path_uwv).cost
    assert records[0].cost2 == Rat(3, 2)


class TestReduceInstance:
    inst = PcsfInstance(3, [(0, 1, 1)], {(0, 1): 2, (1, 2): 3})

    def test_empty(self):
        assert reduce_instance(self.inst, []) == self.inst

    def test_all(self):
        r = reduce_instance(self.inst, self.inst.pairs)
        assert r.penalties == {} and r.edges == self.inst.edges

    def test_one(self):
        assert reduce_instance(self.inst, [(1, 0)]).penalties == {(1, 2): 3}

    def test_unknown(self):
        with pytest.raises(StructuralError):
            reduce_instance(self.inst, [(0, 2)])


def test_records_on_random_instances():
    for trial in range(200):
        inst = trial_instance("ipcsf", trial, 8)
        sol, records = ipcsf_solve(inst)
        assert verify_solution(inst, sol) == []
        assert len(records) <= len(inst.penalties) + 1
        assert [r.depth for r in records] == list(range(len(records)))
        for r in records:
            if r.q2 is not None:
                assert r.q1 <= r.q2
                assert r.chosen == (1 if r.cost1 <= r.cost2 else 2)
        assert sol.cost == min(records[0].cost1, records[0].cost2 or records[0].cost1)
