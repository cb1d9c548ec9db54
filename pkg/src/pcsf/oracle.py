"""Exact brute-force solver, solution verifier, and pair-class diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .coloring import DynamicColoring
from .core import InvariantError, MoatFamily, Pair, PcsfError, PcsfInstance, Solution, UnionFind, pair_key
from .rational import ZERO, Rat

MAX_EDGES = 22
MAX_PAIRS = 16


class OracleLimitError(PcsfError):
    """Instance too large for exhaustive enumeration."""


def _check_limits(inst: PcsfInstance) -> None:
    if len(inst.edges) > MAX_EDGES:
        raise OracleLimitError(f"{len(inst.edges)} edges exceed the oracle limit of {MAX_EDGES}")
    if len(inst.penalties) > MAX_PAIRS:
        raise OracleLimitError(f"{len(inst.penalties)} pairs exceed the oracle limit of {MAX_PAIRS}")


def _scaled(inst: PcsfInstance) -> tuple[int, list[int], list[tuple[int, int, int]]]:
    values = [e.cost for e in inst.edges] + list(inst.penalties.values())
    scale = 1
    for v in values:
        scale = math.lcm(scale, int(v.denominator))
    costs = [int(e.cost * scale) for e in inst.edges]
    pens = [(i, j, int(p * scale)) for (i, j), p in inst.penalties.items()]
    return scale, costs, pens


def exact_solve(inst: PcsfInstance) -> Solution:
    """Minimum-cost solution by enumerating every acyclic edge subset.

    Unconnected positive pairs are charged.  Among optimal forests the one
    whose sorted edge-index tuple is lexicographically smallest wins.
    """
    _check_limits(inst)
    n = inst.n
    edges = inst.edges
    m = len(edges)
    _, costs, pens = _scaled(inst)
    label = list(range(n))
    members = [[v] for v in range(n)]
    chosen: list[int] = []
    best: list = [None, None]  # cost, edge tuple

    def must_pay(k: int) -> int:
        # pairs that stay separated even if every remaining edge is bought
        uf = UnionFind(n)
        for v in range(n):
            uf.union(v, label[v])
        for e in edges[k:]:
            uf.union(e.u, e.v)
        return sum(w for i, j, w in pens if uf.find(i) != uf.find(j))

    def dfs(k: int, spent: int, paid: int) -> None:
        if best[0] is not None:
            if spent > best[0]:
                return
            if k < m and spent + must_pay(k) > best[0]:
                return
        if k == m:
            key = (spent + paid, tuple(chosen))
            if best[0] is None or key < (best[0], best[1]):
                best[0], best[1] = key
            return
        e = edges[k]
        a, b = label[e.u], label[e.v]
        if a != b:
            if len(members[a]) < len(members[b]):
                a, b = b, a
            side_a, side_b = members[a], members[b]
            joined = 0
            for i, j, w in pens:
                la, lb = label[i], label[j]
                if (la == a and lb == b) or (la == b and lb == a):
                    joined += w
            for v in side_b:
                label[v] = a
            moved = len(side_b)
            side_a.extend(side_b)
            members[b] = []
            chosen.append(k)
            dfs(k + 1, spent + costs[k], paid - joined)
            chosen.pop()
            side_a = members[a]  # deeper undos may have replaced the list
            members[b] = side_a[-moved:]
            del side_a[-moved:]
            for v in members[b]:
                label[v] = b
        dfs(k + 1, spent, paid)

    dfs(0, 0, sum(w for _, _, w in pens))
    forest = frozenset(best[1])
    uf = UnionFind(n)
    for k in forest:
        uf.union(edges[k].u, edges[k].v)
    penalized = [p for p in inst.pairs if not uf.connected(*p)]
    return Solution.build(inst, penalized, forest)


def exact_cost_by_partition(inst: PcsfInstance) -> Rat:
    """Optimal cost via a dynamic program over vertex partitions.

    Every forest splits the vertices into trees; the cheapest forest with a
    given partition is the union of the blocks' minimum spanning trees, so the
    optimum is total penalty plus the best partition under block weight
    ``mst(B) - penalty inside B``.  Exponential in ``n``; an independent
    cross-check for ``exact_solve`` on tiny graphs.
    """
    n = inst.n
    if n > 12:
        raise OracleLimitError("partition oracle limited to 12 vertices")
    if n == 0:
        return ZERO
    full = (1 << n) - 1
    order = sorted(range(len(inst.edges)), key=lambda k: (inst.edges[k].cost, k))

    weights: dict[int, Rat | None] = {}
    for block in range(1, full + 1):
        uf = UnionFind(n)
        total = ZERO
        joins = 0
        for k in order:
            e = inst.edges[k]
            if (block >> e.u) & 1 and (block >> e.v) & 1 and not uf.connected(e.u, e.v):
                uf.union(e.u, e.v)
                total += e.cost
                joins += 1
        if joins != bin(block).count("1") - 1:
            weights[block] = None
            continue
        inside = sum(
            (p for (i, j), p in inst.penalties.items() if (block >> i) & 1 and (block >> j) & 1), ZERO
        )
        weights[block] = total - inside

    best: dict[int, Rat] = {0: ZERO}
    for s in range(1, full + 1):
        low = s & -s
        rest = s ^ low
        value = None
        sub = rest
        while True:
            block = sub | low
            w = weights[block]
            if w is not None:
                cand = w + best[s ^ block]
                if value is None or cand < value:
                    value = cand
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[s] = value
    return inst.total_penalty() + best[full]


def verify_solution(inst: PcsfInstance, sol: Solution) -> list[str]:
    """Violations of acyclicity, feasibility and cost; empty when valid."""
    problems = []
    m = len(inst.edges)
    uf = UnionFind(inst.n)
    for k in sorted(sol.forest):
        if not 0 <= k < m:
            problems.append(f"forest references unknown edge {k}")
            continue
        e = inst.edges[k]
        if uf.connected(e.u, e.v):
            problems.append(f"cycle: edge {e.u + 1}-{e.v + 1} closes a cycle")
        uf.union(e.u, e.v)
    penalized = set()
    for p in sol.penalized:
        key = pair_key(*p)
        penalized.add(key)
        if key not in inst.penalties:
            problems.append(f"penalized pair {key[0] + 1}-{key[1] + 1} has no positive penalty")
    for p in inst.pairs:
        if p not in penalized and not uf.connected(*p):
            problems.append(f"infeasible: pair {p[0] + 1}-{p[1] + 1} neither connected nor penalized")
    if not problems:
        actual = sum((inst.edges[k].cost for k in sol.forest), ZERO) + inst.total_penalty(penalized)
        if actual != sol.cost:
            problems.append(f"cost mismatch: reported {sol.cost}, actual {actual}")
    return problems


def forest_degree(bits: int, inst: PcsfInstance, forest: Iterable[int]) -> int:
    """Number of forest edges with exactly one endpoint in the set ``bits``."""
    return sum(1 for k in forest if ((bits >> inst.edges[k].u) ^ (bits >> inst.edges[k].v)) & 1)


@dataclass(frozen=True)
class Diagnostics:
    cc: Rat
    cp: Rat
    pc: Rat
    pp: Rat
    cp1: Rat
    cp2: Rat
    lower_bound: Rat
    ratio: Rat | None

    @property
    def total(self) -> Rat:
        return self.cc + self.cp + self.pc + self.pp


def compute_diagnostics(
    inst: PcsfInstance,
    family: MoatFamily,
    coloring: DynamicColoring,
    q1: Iterable[Pair],
    opt: Solution,
    solution: Solution | None = None,
) -> Diagnostics:
    """Split pair durations by (optimum connects?, base solver pays?).

    ``cp`` is further split by whether the assigning moat crosses exactly one
    edge of the optimal forest (``cp1``) or more (``cp2``).  ``ratio`` is
    ``solution.cost / opt.cost`` when a solution is given.
    """
    _check_limits(inst)
    paid = {pair_key(*p) for p in q1}
    uf = UnionFind(inst.n)
    for k in opt.forest:
        uf.union(inst.edges[k].u, inst.edges[k].v)
    sums = {"cc": ZERO, "cp": ZERO, "pc": ZERO, "pp": ZERO}
    cp_pairs = set()
    for p in inst.pairs:
        y = coloring.pair_total.get(p, ZERO)
        connected = uf.connected(*p)
        cls = ("c" if connected else "p") + ("p" if p in paid else "c")
        sums[cls] += y
        if cls == "cp":
            cp_pairs.add(p)
    cp1 = cp2 = ZERO
    degree: dict[int, int] = {}
    for (mid, p), y in coloring.assignment.items():
        if p not in cp_pairs:
            continue
        if mid not in degree:
            degree[mid] = forest_degree(family[mid].members.bits, inst, opt.forest)
        d = degree[mid]
        if d == 0:
            raise InvariantError(f"moat {mid} cuts a pair the optimum connects but no optimal edge")
        if d == 1:
            cp1 += y
        else:
            cp2 += y
    ratio = None
    if solution is not None:
        ratio = solution.cost / opt.cost if opt.cost else (Rat(1) if solution.cost == 0 else None)
    lower = sums["cc"] + sums["cp"] + cp2 + sums["pc"] + sums["pp"]
    return Diagnostics(sums["cc"], sums["cp"], sums["pc"], sums["pp"], cp1, cp2, lower, ratio)


__all__ = [
    "Diagnostics",
    "MAX_EDGES",
    "MAX_PAIRS",
    "OracleLimitError",
    "compute_diagnostics",
    "exact_cost_by_partition",
    "exact_solve",
    "forest_degree",
    "verify_solution",
]
