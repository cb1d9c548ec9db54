"""Static/dynamic coloring machinery built on max flow.

The set-pair network has a node per moat that is active or has positive
duration, a node per positive-penalty pair, and arcs

    source -> moat  (capacity = moat duration)
    moat -> pair    (infinite, only when the moat cuts the pair)
    pair -> sink    (capacity = penalty)

A static coloring is valid exactly when the max flow saturates every source
arc; a flow then reads off as a dynamic coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import InvariantError, MoatFamily, Pair, PcsfError, PcsfInstance, StructuralError
from .flow import Arc, FlowNetwork, MaxFlowResult, solve_arrays
from .rational import INF, ZERO, Rat


class ValidityError(PcsfError):
    """The static coloring admits no dynamic coloring."""

    def __init__(self, flow_value: Rat, total_duration: Rat, cut_moats=(), cut_pairs=()):
        self.flow_value = flow_value
        self.total_duration = total_duration
        self.cut_moats = tuple(cut_moats)
        self.cut_pairs = tuple(cut_pairs)
        super().__init__(
            f"invalid static coloring: max flow {flow_value} < total duration {total_duration}; "
            f"minimal cut holds moats {list(self.cut_moats)} and pairs {list(self.cut_pairs)}"
        )


class CutCache:
    """Per-instance memo of the positive-penalty pairs each vertex set cuts."""

    def __init__(self, inst: PcsfInstance):
        self.pairs = inst.pairs
        self._memo: dict[int, list[Pair]] = {}

    def __call__(self, bits: int) -> list[Pair]:
        hit = self._memo.get(bits)
        if hit is None:
            hit = [p for p in self.pairs if ((bits >> p[0]) ^ (bits >> p[1])) & 1]
            self._memo[bits] = hit
        return hit


class SetPairNetwork:
    """Set-pair network held as parallel arc arrays.

    Arc order: source arcs (moats by ascending id), then each moat's cut arcs
    (pairs in lexicographic order), then sink arcs.
    """

    def __init__(self, node_count: int, moat_node: dict[int, int], pair_node: dict[Pair, int]):
        self.node_count = node_count
        self.source = 0
        self.sink = node_count - 1
        self.moat_node = moat_node
        self.pair_node = pair_node
        self.tails: list[int] = []
        self.heads: list[int] = []
        self.caps: list = []
        self.source_arc: dict[int, int] = {}
        self.sink_arc: dict[Pair, int] = {}
        self.cut_span: dict[int, tuple[int, list[Pair]]] = {}

    def _add(self, tail: int, head: int, cap) -> int:
        self.tails.append(tail)
        self.heads.append(head)
        self.caps.append(cap)
        return len(self.caps) - 1

    @property
    def cut_arc(self) -> dict[tuple[int, Pair], int]:
        return {(mid, p): start + k for mid, (start, ps) in self.cut_span.items() for k, p in enumerate(ps)}

    @property
    def network(self) -> FlowNetwork:
        arcs = [Arc(t, h, c) for t, h, c in zip(self.tails, self.heads, self.caps)]
        return FlowNetwork(self.node_count, arcs, self.source, self.sink)

    def solve(self, boost: Mapping[int, Rat] | None = None, *, want_flows: bool = True) -> MaxFlowResult:
        caps = self.caps
        if boost:
            caps = list(caps)
            for mid, extra in boost.items():
                caps[self.source_arc[mid]] += extra
        return solve_arrays(
            self.node_count, self.tails, self.heads, caps, self.source, self.sink, want_flows=want_flows
        )


def build_set_pair_graph(
    inst: PcsfInstance,
    family: MoatFamily,
    *,
    boost: Mapping[int, Rat] | None = None,
    include: tuple[int, ...] = (),
    cuts: CutCache | None = None,
) -> SetPairNetwork:
    """Set-pair network of the current static coloring.

    ``boost`` adds extra source capacity per moat id (used by the Δp search and
    the tightness check); ``include`` forces moat ids into the network.
    """
    cuts = cuts or CutCache(inst)
    boost = boost or {}
    extra = set(include)
    ids = [m.id for m in family.moats if m.active or m.duration > 0 or m.id in extra]
    pairs = inst.pairs
    node_count = 2 + len(ids) + len(pairs)
    moat_node = {mid: 1 + k for k, mid in enumerate(ids)}
    pair_node = {p: 1 + len(ids) + k for k, p in enumerate(pairs)}
    spn = SetPairNetwork(node_count, moat_node, pair_node)
    for mid in ids:
        cap = family.moats[mid].duration + boost.get(mid, ZERO)
        spn.source_arc[mid] = spn._add(0, moat_node[mid], cap)
    tails, heads, caps = spn.tails, spn.heads, spn.caps
    for mid in ids:
        cut = cuts(family.moats[mid].members.bits)
        spn.cut_span[mid] = (len(caps), cut)
        node = moat_node[mid]
        tails.extend([node] * len(cut))
        heads.extend(pair_node[p] for p in cut)
        caps.extend([INF] * len(cut))
    for p in pairs:
        spn.sink_arc[p] = spn._add(pair_node[p], spn.sink, inst.penalties[p])
    return spn


@dataclass
class DynamicColoring:
    """``assignment[(moat, pair)]`` is y_Sij (positive entries only); ``pair_total[pair]`` is y_ij."""

    assignment: dict[tuple[int, Pair], Rat]
    pair_total: dict[Pair, Rat]

    def moat_total(self, moat_id: int) -> Rat:
        return sum((v for (m, _), v in self.assignment.items() if m == moat_id), ZERO)

    def get(self, moat_id: int, pair: Pair) -> Rat:
        return self.assignment.get((moat_id, pair), ZERO)

    def tight_pairs(self, inst: PcsfInstance) -> frozenset[Pair]:
        return frozenset(p for p, pen in inst.penalties.items() if self.pair_total.get(p, ZERO) == pen)

    def copy(self) -> "DynamicColoring":
        return DynamicColoring(dict(self.assignment), dict(self.pair_total))


def coloring_from_flow(spn: SetPairNetwork, result: MaxFlowResult) -> DynamicColoring:
    flows = result.arc_flows
    assignment = {}
    for mid, (start, cut) in spn.cut_span.items():
        for k, p in enumerate(cut):
            f = flows[start + k]
            if f > 0:
                assignment[(mid, p)] = f
    totals = {p: flows[a] for p, a in spn.sink_arc.items()}
    return DynamicColoring(assignment, totals)


def edge_coloring(inst: PcsfInstance, family: MoatFamily) -> list[Rat]:
    """Colored length of every edge: sum of durations of moats cutting it."""
    grown = [m for m in family.moats if m.duration > 0]
    out = []
    for e in inst.edges:
        total = ZERO
        for m in grown:
            if m.members.cuts(e.u, e.v):
                total += m.duration
        out.append(total)
    return out


def find_delta_e(inst: PcsfInstance, family: MoatFamily, colored: list[Rat] | None = None):
    """Largest uniform growth of the active moats that overfills no edge.

    Returns ``INF`` when no cross-component edge touches an active moat.
    """
    if colored is None:
        colored = edge_coloring(inst, family)
    best = INF
    comp = family.component_labels()
    for k, e in enumerate(inst.edges):
        a, b = comp[e.u], comp[e.v]
        if a == b:
            continue
        t = family.moats[a].active + family.moats[b].active
        if t == 0:
            continue
        remaining = e.cost - colored[k]
        if remaining < 0:
            raise InvariantError(f"edge {k} colored beyond its cost")
        step = remaining / t
        if best is INF or step < best:
            best = step
    return best


@dataclass
class DeltaPSearch:
    delta: Rat
    iterations: int
    network: SetPairNetwork
    result: MaxFlowResult


def search_delta_p(
    inst: PcsfInstance,
    family: MoatFamily,
    *,
    cuts: CutCache | None = None,
) -> DeltaPSearch:
    active = family.active_ids()
    if not active:
        raise ValueError("find_delta_p needs at least one active moat")
    cuts = cuts or CutCache(inst)
    total_y = family.total_duration()
    count = len(active)
    delta = (inst.total_penalty() - total_y) / count
    if delta < 0:
        raise InvariantError("total duration exceeds total penalty")
    spn = build_set_pair_graph(inst, family, cuts=cuts)
    iterations = 0
    while True:
        iterations += 1
        if iterations > count + 1:
            raise InvariantError("Δp search exceeded |ActS| refinements")
        result = spn.solve({m: delta for m in active}, want_flows=False)
        target = count * delta + total_y
        if result.value == target:
            return DeltaPSearch(delta, iterations, spn, result)
        k = sum(1 for m in active if spn.moat_node[m] in result.source_side)
        if k == 0:
            raise InvariantError("minimal min-cut holds no active moat on the source side")
        delta -= (target - result.value) / k
        if delta < 0:
            raise InvariantError("Δp became negative; coloring was not valid")


def find_delta_p(inst: PcsfInstance, family: MoatFamily) -> Rat:
    """Largest uniform growth of the active moats that keeps the coloring valid."""
    return search_delta_p(inst, family).delta


def check_set_is_tight(inst: PcsfInstance, family: MoatFamily, moat_id: int) -> bool:
    """True iff one more unit of duration on ``moat_id`` cannot be routed."""
    family[moat_id]  # raises StructuralError for unknown ids
    spn = build_set_pair_graph(inst, family, boost={moat_id: Rat(1)}, include=(moat_id,))
    result = spn.solve(want_flows=False)
    return not result.value > family.total_duration()


@dataclass
class ColoringState:
    """One max flow of the set-pair network plus what it certifies."""

    network: SetPairNetwork
    result: MaxFlowResult
    total_duration: Rat

    @property
    def valid(self) -> bool:
        return self.result.value == self.total_duration

    def tight_moats(self) -> set[int]:
        """Moats that cannot reach the sink in the residual graph.

        For a valid coloring these are exactly the moats whose duration cannot
        grow, i.e. what ``check_set_is_tight`` reports, from a single flow.
        """
        sink_side = self.result.sink_side
        return {m for m, node in self.network.moat_node.items() if node not in sink_side}

    def coloring(self) -> DynamicColoring:
        if not self.result.arc_flows and self.network.caps:
            raise ValueError("flow was computed without arc flows")
        return coloring_from_flow(self.network, self.result)

    def error(self) -> ValidityError:
        side = self.result.source_side
        moats = [m for m, node in self.network.moat_node.items() if node in side]
        pairs = [p for p, node in self.network.pair_node.items() if node in side]
        return ValidityError(self.result.value, self.total_duration, moats, pairs)


def analyze_coloring(
    inst: PcsfInstance,
    family: MoatFamily,
    *,
    cuts: CutCache | None = None,
    include: tuple[int, ...] = (),
    want_flows: bool = True,
) -> ColoringState:
    spn = build_set_pair_graph(inst, family, cuts=cuts, include=include)
    result = spn.solve(want_flows=want_flows)
    return ColoringState(spn, result, family.total_duration())


def extract_dynamic_coloring(inst: PcsfInstance, family: MoatFamily) -> DynamicColoring:
    """Dynamic coloring from a max flow; raises ``ValidityError`` if none exists."""
    state = analyze_coloring(inst, family)
    if not state.valid:
        raise state.error()
    return state.coloring()


def assert_coloring_valid(inst: PcsfInstance, family: MoatFamily) -> None:
    state = analyze_coloring(inst, family)
    if not state.valid:
        raise state.error()


def reduce_tight_pairs(
    inst: PcsfInstance,
    family: MoatFamily,
    *,
    cuts: CutCache | None = None,
    coloring: DynamicColoring | None = None,
) -> tuple[frozenset[Pair], DynamicColoring]:
    """Shift assignment away from tight pairs until the coloring is minimal.

    A shift moves ``min(y_Sij, pi_i'j' - y_i'j') / 2`` from a tight pair to a
    non-tight pair cut by the same moat.  Returns the remaining tight pairs
    and the minimal dynamic coloring.
    """
    cuts = cuts or CutCache(inst)
    if coloring is None:
        state = analyze_coloring(inst, family, cuts=cuts)
        if not state.valid:
            raise state.error()
        coloring = state.coloring()
    else:
        coloring = coloring.copy()
    pen = inst.penalties
    assign, total = coloring.assignment, coloring.pair_total
    moat_ids = [m.id for m in family.moats if m.duration > 0]
    cutters: dict[Pair, list[int]] = {p: [] for p in pen}
    for mid in moat_ids:
        for p in cuts(family.moats[mid].members.bits):
            cutters[p].append(mid)

    limit = max(inst.n * inst.n, 1)
    shifts = 0
    while True:
        move = None
        for p in pen:
            if total[p] != pen[p]:
                continue
            for mid in cutters[p]:
                if assign.get((mid, p), ZERO) <= 0:
                    continue
                for q in cuts(family.moats[mid].members.bits):
                    if total[q] < pen[q]:
                        move = (mid, p, q)
                        break
                if move:
                    break
            if move:
                break
        if move is None:
            break
        mid, p, q = move
        eps = min(assign[(mid, p)], pen[q] - total[q]) / 2
        assign[(mid, p)] -= eps
        if assign[(mid, p)] == 0:
            del assign[(mid, p)]
        assign[(mid, q)] = assign.get((mid, q), ZERO) + eps
        total[p] -= eps
        total[q] += eps
        shifts += 1
        if shifts > limit:
            raise InvariantError("tight-pair reduction exceeded n^2 shifts")
    return coloring.tight_pairs(inst), coloring


def minimality_violations(
    inst: PcsfInstance, family: MoatFamily, coloring: DynamicColoring
) -> list[tuple[int, Pair, Pair]]:
    """Every (moat, tight pair, non-tight pair) triple with positive assignment."""
    pen = inst.penalties
    tight = coloring.tight_pairs(inst)
    out = []
    for m in family.moats:
        cut = [p for p in pen if m.members.cuts(*p)]
        for p in cut:
            if p in tight and coloring.get(m.id, p) > 0:
                out.extend((m.id, p, q) for q in cut if q not in tight)
    return out


def coloring_violations(inst: PcsfInstance, family: MoatFamily, coloring: DynamicColoring) -> list[str]:
    """Conservation and pair-constraint checks on a dynamic coloring."""
    problems = []
    for (mid, p), v in coloring.assignment.items():
        if v < 0:
            problems.append(f"negative assignment {mid}->{p}")
        if not family[mid].members.cuts(*p):
            problems.append(f"moat {mid} assigned to pair {p} it does not cut")
    for m in family.moats:
        got = coloring.moat_total(m.id)
        if got != m.duration:
            problems.append(f"moat {m.id}: assigned {got} != duration {m.duration}")
    for p, pen in inst.penalties.items():
        got = sum((v for (mid, q), v in coloring.assignment.items() if q == p), ZERO)
        if got != coloring.pair_total.get(p, ZERO):
            problems.append(f"pair {p}: total {coloring.pair_total.get(p)} != sum {got}")
        if got > pen:
            problems.append(f"pair {p}: {got} exceeds penalty {pen}")
    return problems


__all__ = [
    "CutCache",
    "ColoringState",
    "DeltaPSearch",
    "DynamicColoring",
    "SetPairNetwork",
    "StructuralError",
    "ValidityError",
    "analyze_coloring",
    "assert_coloring_valid",
    "build_set_pair_graph",
    "check_set_is_tight",
    "coloring_from_flow",
    "coloring_violations",
    "edge_coloring",
    "extract_dynamic_coloring",
    "find_delta_e",
    "find_delta_p",
    "minimality_violations",
    "reduce_tight_pairs",
    "search_delta_p",
]
