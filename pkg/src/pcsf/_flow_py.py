"""Pure-Python Dinic max-flow over exact rationals.

Mirrors ``_flowcore.pyx`` line for line; selected when the extension is not
built or ``PCSF_PURE_PYTHON=1``.  Capacities are rationals or ``None`` for an
unbounded arc.  Half-arc ``2a`` is arc ``a`` forward, ``2a+1`` its reverse.
"""

from __future__ import annotations

from collections import deque

from .rational import ZERO


def max_flow_arrays(n, tails, heads, caps, source, sink, init=None, want_flows=True):
    """Return ``(value, arc_flows, source_reach, sink_reach)``.

    ``source_reach[v]`` is True when ``v`` is reachable from the source in the
    final residual graph; ``sink_reach[v]`` when the sink is reachable from
    ``v``.  ``arc_flows`` is None unless ``want_flows``.
    """
    m = len(tails)
    to = [0] * (2 * m)
    res = [ZERO] * (2 * m)
    inf = [False] * (2 * m)
    adj = [[] for _ in range(n)]
    for a in range(m):
        u, v, c = tails[a], heads[a], caps[a]
        f = ZERO if init is None else init[a]
        to[2 * a] = v
        to[2 * a + 1] = u
        if c is None:
            inf[2 * a] = True
        else:
            res[2 * a] = c - f
        res[2 * a + 1] = f
        adj[u].append(2 * a)
        adj[v].append(2 * a + 1)

    def live(h):
        return inf[h] or res[h] > 0

    while True:
        level = [-1] * n
        level[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for h in adj[x]:
                y = to[h]
                if level[y] < 0 and live(h):
                    level[y] = level[x] + 1
                    queue.append(y)
        if level[sink] < 0:
            break
        ptr = [0] * n
        # path-at-a-time blocking flow with current-arc pointers
        while True:
            path = []
            x = source
            while x != sink:
                lst = adj[x]
                while ptr[x] < len(lst):
                    h = lst[ptr[x]]
                    y = to[h]
                    if level[y] == level[x] + 1 and live(h):
                        break
                    ptr[x] += 1
                if ptr[x] == len(lst):
                    if x == source:
                        break
                    level[x] = -1  # dead end
                    h = path.pop()
                    x = to[h ^ 1]
                    ptr[x] += 1
                    continue
                h = lst[ptr[x]]
                path.append(h)
                x = to[h]
            if x != sink:
                break
            bottleneck = None
            for h in path:
                if not inf[h] and (bottleneck is None or res[h] < bottleneck):
                    bottleneck = res[h]
            if bottleneck is None:
                raise OverflowError("unbounded flow along an all-infinite path")
            for h in path:
                if not inf[h]:
                    res[h] -= bottleneck
                if not inf[h ^ 1]:
                    res[h ^ 1] += bottleneck

    value = ZERO
    for a in range(m):
        if tails[a] == source:
            value += res[2 * a + 1]
        if heads[a] == source:
            value -= res[2 * a + 1]
    flows = [res[2 * a + 1] for a in range(m)] if want_flows else None

    source_reach = [False] * n
    source_reach[source] = True
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for h in adj[x]:
            y = to[h]
            if not source_reach[y] and live(h):
                source_reach[y] = True
                queue.append(y)

    sink_reach = [False] * n
    sink_reach[sink] = True
    queue = deque([sink])
    while queue:
        y = queue.popleft()
        for h in adj[y]:
            # half-arc h leaves y; its partner h^1 enters y from to[h]
            x = to[h]
            if not sink_reach[x] and live(h ^ 1):
                sink_reach[x] = True
                queue.append(x)

    return value, flows, source_reach, sink_reach
