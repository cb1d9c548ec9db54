"""Iterative wrapper: re-solve with the paid pairs' penalties zeroed, keep the cheaper answer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import InvariantError, Pair, PcsfInstance, Solution, StructuralError, pair_key
from .pcsf3 import Pcsf3Result, pcsf3_solve
from .rational import Rat


@dataclass(frozen=True)
class IterationRecord:
    """One level of the recursion.

    ``q2`` is the lifted penalized set of the deeper solution (absent at the
    deepest level, together with ``cost2``).  ``chosen`` is 1 or 2.
    """

    depth: int
    q1: frozenset[Pair]
    cost1: Rat
    cost2: Rat | None
    chosen: int
    q2: frozenset[Pair] | None = None
    result: Pcsf3Result | None = field(default=None, repr=False, compare=False)


def reduce_instance(inst: PcsfInstance, q1: Iterable[Pair]) -> PcsfInstance:
    """Same graph with the penalties of ``q1`` removed."""
    drop = set()
    for p in q1:
        key = pair_key(*p)
        if key not in inst.penalties:
            raise StructuralError(f"pair {key} has no positive penalty in the instance")
        drop.add(key)
    kept = {p: v for p, v in inst.penalties.items() if p not in drop}
    return PcsfInstance(inst.n, inst.edges, kept)


def ipcsf_solve(inst: PcsfInstance, *, check: bool | None = None) -> tuple[Solution, list[IterationRecord]]:
    # descend: each level zeroes the pairs its base solution paid for
    levels: list[tuple[PcsfInstance, Pcsf3Result]] = []
    current = inst
    while True:
        res = pcsf3_solve(current, check=check)
        levels.append((current, res))
        if not res.solution.penalized:
            break
        if len(levels) > len(inst.penalties) + 1:
            raise InvariantError("recursion deeper than the number of penalized pairs")
        current = reduce_instance(current, res.solution.penalized)

    depth = len(levels) - 1
    level_inst, res = levels[depth]
    best_q, best_f = res.solution.penalized, res.solution.forest
    records = [IterationRecord(depth, best_q, res.solution.cost, None, 1, None, res)]
    for d in range(depth - 1, -1, -1):
        level_inst, res = levels[d]
        q1 = res.solution.penalized
        # pairs zeroed below are tight there, so they stay penalized
        q2 = frozenset(best_q) | q1
        cost1 = res.solution.cost
        cost2 = Solution.build(level_inst, q2, best_f).cost
        if cost1 <= cost2:
            best_q, best_f, chosen = q1, res.solution.forest, 1
        else:
            best_q, chosen = q2, 2
        records.append(IterationRecord(d, q1, cost1, cost2, chosen, q2, res))
    records.reverse()
    return Solution.build(inst, best_q, best_f), records


__all__ = ["IterationRecord", "ipcsf_solve", "reduce_instance"]
