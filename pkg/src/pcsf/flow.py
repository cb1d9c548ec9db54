"""Exact maximum flow with the inclusion-minimal minimum cut.

The Dinic kernel comes from the compiled ``_flowcore`` extension when it is
importable, else from ``_flow_py``.  Set ``PCSF_PURE_PYTHON=1`` to force the
fallback.  ``BACKEND`` names the one in use.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from . import _flow_py
from .core import PcsfError, VertexSet
from .rational import INF, ZERO, Rat, to_rat

try:
    if os.environ.get("PCSF_PURE_PYTHON") == "1":
        raise ImportError("pure-Python backend requested")
    from . import _flowcore  # type: ignore[attr-defined]
except ImportError:
    _flowcore = None

BACKEND = "compiled" if _flowcore is not None else "python"


class UnboundedFlowError(PcsfError):
    """Source and sink are joined by a path of infinite-capacity arcs."""


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: object  # Rat or INF


@dataclass
class FlowNetwork:
    n: int
    arcs: list[Arc]
    source: int
    sink: int

    def __post_init__(self):
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for a in self.arcs:
            if not (0 <= a.tail < self.n and 0 <= a.head < self.n):
                raise ValueError(f"arc {a} out of range")
            if a.capacity is not INF and a.capacity < 0:
                raise ValueError(f"negative capacity on arc {a}")

    def add_arc(self, tail: int, head: int, capacity) -> int:
        cap = capacity if capacity is INF else to_rat(capacity)
        if not (0 <= tail < self.n and 0 <= head < self.n):
            raise ValueError(f"arc ({tail}, {head}) out of range")
        if cap is not INF and cap < 0:
            raise ValueError(f"negative capacity on arc ({tail}, {head})")
        self.arcs.append(Arc(tail, head, cap))
        return len(self.arcs) - 1


@dataclass(frozen=True)
class MaxFlowResult:
    """``value`` is f*, ``source_side`` the minimal min-cut source side.

    ``sink_side`` holds the nodes that can still reach the sink in the final
    residual graph (the complement of the maximal min-cut source side).
    """

    value: Rat
    source_side: VertexSet
    arc_flows: tuple[Rat, ...]
    sink_side: VertexSet

    def cut_capacity(self, net: FlowNetwork):
        total = ZERO
        for a in net.arcs:
            if a.tail in self.source_side and a.head not in self.source_side:
                if a.capacity is INF:
                    return INF
                total += a.capacity
        return total


def _bits(flags: Sequence[bool]) -> int:
    bits = 0
    for i, f in enumerate(flags):
        if f:
            bits |= 1 << i
    return bits


def _check_bounded(net: FlowNetwork) -> None:
    out: dict[int, list[int]] = {}
    for a in net.arcs:
        if a.capacity is INF:
            out.setdefault(a.tail, []).append(a.head)
    seen = {net.source}
    stack = [net.source]
    while stack:
        x = stack.pop()
        for y in out.get(x, ()):
            if y == net.sink:
                raise UnboundedFlowError("infinite-capacity path from source to sink")
            if y not in seen:
                seen.add(y)
                stack.append(y)


def solve_arrays(
    n: int, tails, heads, caps, source: int, sink: int, initial_flow=None, *, want_flows: bool = True
) -> MaxFlowResult:
    """Max flow on parallel arc arrays; ``caps`` holds rationals or ``INF``.

    Skips the up-front boundedness scan; an all-infinite augmenting path is
    still reported as ``UnboundedFlowError`` by the kernel.  Without
    ``want_flows`` the result's ``arc_flows`` is empty.
    """
    try:
        if _flowcore is not None:
            raw_caps = [None if c is INF else (int(c.numerator), int(c.denominator)) for c in caps]
            init = None
            if initial_flow is not None:
                init = [(int(f.numerator), int(f.denominator)) for f in initial_flow]
            (vn, vd), raw, src, snk = _flowcore.max_flow_arrays(
                n, tails, heads, raw_caps, source, sink, init, want_flows
            )
            value = Rat(vn, vd)
            flows = tuple(Rat(p, q) for p, q in raw) if want_flows else ()
        else:
            raw_caps = [None if c is INF else c for c in caps]
            init = None if initial_flow is None else [to_rat(f) for f in initial_flow]
            value, flows, src, snk = _flow_py.max_flow_arrays(
                n, tails, heads, raw_caps, source, sink, init, want_flows
            )
            flows = tuple(flows) if want_flows else ()
    except OverflowError as exc:
        raise UnboundedFlowError(str(exc)) from None
    return MaxFlowResult(value, VertexSet(_bits(src), n), flows, VertexSet(_bits(snk), n))


def max_flow(net: FlowNetwork, initial_flow: Sequence[Rat] | None = None) -> MaxFlowResult:
    """Exact max flow.  ``initial_flow`` may seed any feasible flow."""
    _check_bounded(net)
    return solve_arrays(
        net.n,
        [a.tail for a in net.arcs],
        [a.head for a in net.arcs],
        [a.capacity for a in net.arcs],
        net.source,
        net.sink,
        initial_flow,
    )
