"""Moat-growing base solver (3-approximation) with tight-pair reduction and pruning."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .coloring import (
    CutCache,
    DynamicColoring,
    analyze_coloring,
    check_set_is_tight,
    edge_coloring,
    find_delta_e,
    reduce_tight_pairs,
    search_delta_p,
)
from .core import InvariantError, MoatFamily, Pair, PcsfInstance, Solution, UnionFind
from .rational import INF, ZERO, Rat, format_rat, to_rat


def assertions_enabled() -> bool:
    return os.environ.get("PCSF_ASSERT", "") not in ("", "0")


@dataclass(frozen=True)
class GrowStep:
    delta: Rat
    active: tuple[int, ...]


@dataclass(frozen=True)
class EdgeBought:
    edge: int


@dataclass(frozen=True)
class Merge:
    a: int
    b: int
    merged: int


@dataclass(frozen=True)
class Deactivate:
    moat: int


@dataclass
class GrowthTrace:
    """Ordered record of one solver run.

    ``tightness[t]`` is the set of moat ids found tight after iteration ``t``
    among ``present[t]``, the moats in that step's set-pair network (every
    moat when checking is on).
    """

    events: list = field(default_factory=list)
    tightness: list[frozenset[int]] = field(default_factory=list)
    present: list[frozenset[int]] = field(default_factory=list)
    forest: list[int] = field(default_factory=list)
    iterations: int = 0
    flow_calls: int = 0
    validity_checks: int = 0

    def to_lines(self) -> list[str]:
        out = []
        for ev in self.events:
            if isinstance(ev, GrowStep):
                ids = ",".join(map(str, ev.active)) or "-"
                out.append(f"grow {format_rat(ev.delta)} {ids}")
            elif isinstance(ev, EdgeBought):
                out.append(f"buy {ev.edge}")
            elif isinstance(ev, Merge):
                out.append(f"merge {ev.a} {ev.b} {ev.merged}")
            else:
                out.append(f"deactivate {ev.moat}")
        return out

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "GrowthTrace":
        trace = cls()
        for line in lines:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            kind = parts[0]
            if kind == "grow":
                ids = () if parts[2] == "-" else tuple(int(x) for x in parts[2].split(","))
                trace.events.append(GrowStep(to_rat(parts[1]), ids))
            elif kind == "buy":
                trace.events.append(EdgeBought(int(parts[1])))
                trace.forest.append(int(parts[1]))
            elif kind == "merge":
                trace.events.append(Merge(int(parts[1]), int(parts[2]), int(parts[3])))
            elif kind == "deactivate":
                trace.events.append(Deactivate(int(parts[1])))
            else:
                raise ValueError(f"unknown trace event {kind!r}")
        return trace


def replay(inst: PcsfInstance, trace: GrowthTrace) -> MoatFamily:
    """Rebuild the final moat family from a trace."""
    family = MoatFamily.singletons(inst.n)
    for ev in trace.events:
        if isinstance(ev, GrowStep):
            if tuple(family.active_ids()) != ev.active:
                raise InvariantError("trace active set disagrees with replay")
            family.grow(ev.delta)
        elif isinstance(ev, Merge):
            got = family.merge(ev.a, ev.b)
            if got != ev.merged:
                raise InvariantError("trace merge id disagrees with replay")
        elif isinstance(ev, Deactivate):
            family.deactivate(ev.moat)
    return family


def prune_forest(inst: PcsfInstance, forest: Iterable[int], pairs: Iterable[Pair]) -> frozenset[int]:
    """Edges of ``forest`` lying on the tree path of at least one pair."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for k in forest:
        e = inst.edges[k]
        adj.setdefault(e.u, []).append((e.v, k))
        adj.setdefault(e.v, []).append((e.u, k))
    parent: dict[int, tuple[int, int]] = {}
    depth: dict[int, int] = {}
    root: dict[int, int] = {}
    for r in sorted(adj):
        if r in depth:
            continue
        depth[r] = 0
        root[r] = r
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y, k in adj[x]:
                if y in depth:
                    if parent.get(x, (None,))[0] != y:
                        if parent.get(y, (None,))[0] != x:
                            raise InvariantError("grown edge set contains a cycle")
                    continue
                depth[y] = depth[x] + 1
                parent[y] = (x, k)
                root[y] = r
                queue.append(y)
    keep: set[int] = set()
    for i, j in pairs:
        if i == j:
            continue
        if root.get(i, i) != root.get(j, j) or i not in depth:
            raise InvariantError(f"non-tight pair {(i, j)} is not connected by the grown forest")
        a, b = i, j
        while depth[a] > depth[b]:
            a, k = parent[a]
            keep.add(k)
        while depth[b] > depth[a]:
            b, k = parent[b]
            keep.add(k)
        while a != b:
            a, k = parent[a]
            keep.add(k)
            b, k = parent[b]
            keep.add(k)
    return frozenset(keep)


class Pcsf3Result(NamedTuple):
    solution: Solution
    family: MoatFamily
    coloring: DynamicColoring
    trace: GrowthTrace


def pcsf3_solve(inst: PcsfInstance, *, check: bool | None = None) -> Pcsf3Result:
    """Grow moats until none is active, then reduce tight pairs and prune.

    With ``check`` (default: ``PCSF_ASSERT`` set) every iteration also
    recomputes edge coloring from scratch, runs the literal per-moat
    tightness test and checks laminarity.
    """
    if check is None:
        check = assertions_enabled()
    n = inst.n
    edges = inst.edges
    family = MoatFamily.singletons(n)
    cuts = CutCache(inst)
    colored: list[Rat] = [ZERO] * len(edges)
    trace = GrowthTrace()

    while True:
        active = family.active_ids()
        if not active:
            break
        trace.iterations += 1
        if trace.iterations > 2 * n:
            raise InvariantError(f"growth loop exceeded 2n = {2 * n} iterations")

        delta_e = find_delta_e(inst, family, colored)
        if check and delta_e != find_delta_e(inst, family):
            raise InvariantError("incremental edge coloring drifted")
        search = search_delta_p(inst, family, cuts=cuts)
        trace.flow_calls += search.iterations
        delta_p = search.delta
        delta = delta_p if delta_e is INF or delta_p <= delta_e else delta_e

        comp = family.component_labels()
        for k, e in enumerate(edges):
            a, b = comp[e.u], comp[e.v]
            if a != b:
                t = family.moats[a].active + family.moats[b].active
                if t:
                    colored[k] += delta * t
                    if colored[k] > e.cost:
                        raise InvariantError(f"edge {k} overfilled")
        family.grow(delta)
        trace.events.append(GrowStep(delta, tuple(active)))

        for k, e in enumerate(edges):
            # labels change with every merge, so look them up afresh
            a, b = family.component_moat(e.u), family.component_moat(e.v)
            if a != b and colored[k] == e.cost:
                merged = family.merge(a, b)
                trace.forest.append(k)
                trace.events.append(EdgeBought(k))
                trace.events.append(Merge(a, b, merged))

        # check mode puts every moat in the network so each gets a verdict
        everyone = tuple(range(len(family))) if check else ()
        state = analyze_coloring(inst, family, cuts=cuts, include=everyone, want_flows=False)
        trace.flow_calls += 1
        trace.validity_checks += 1
        if not state.valid:
            raise state.error()

        tight = state.tight_moats()
        trace.tightness.append(frozenset(tight))
        trace.present.append(frozenset(state.network.moat_node))
        current_active = family.active_ids()
        if check:
            if edge_coloring(inst, family) != colored:
                raise InvariantError("incremental edge coloring drifted")
            for mid in current_active:
                if check_set_is_tight(inst, family, mid) != (mid in tight):
                    raise InvariantError(f"batched tightness disagrees with the literal test on moat {mid}")
            if not family.is_laminar():
                raise InvariantError("moat family is not laminar")
        for mid in current_active:
            if mid in tight:
                family.deactivate(mid)
                trace.events.append(Deactivate(mid))

    penalized, coloring = reduce_tight_pairs(inst, family, cuts=cuts)
    connect = [p for p in inst.pairs if p not in penalized]
    forest = prune_forest(inst, trace.forest, connect)
    solution = Solution.build(inst, penalized, forest)
    return Pcsf3Result(solution, family, coloring, trace)


def forest_cost(inst: PcsfInstance, forest: Iterable[int]) -> Rat:
    return sum((inst.edges[k].cost for k in forest), ZERO)


def connected_pairs(inst: PcsfInstance, forest: Iterable[int]) -> set[Pair]:
    """Positive-penalty pairs whose endpoints the edge set connects."""
    uf = UnionFind(inst.n)
    for k in forest:
        e = inst.edges[k]
        uf.union(e.u, e.v)
    return {p for p in inst.pairs if uf.connected(*p)}


__all__ = [
    "Deactivate",
    "EdgeBought",
    "GrowStep",
    "GrowthTrace",
    "Merge",
    "Pcsf3Result",
    "assertions_enabled",
    "connected_pairs",
    "forest_cost",
    "pcsf3_solve",
    "prune_forest",
    "replay",
]
