import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcsf import _flow_py, flow
from pcsf.flow import FlowNetwork, UnboundedFlowError, max_flow
from pcsf.rational import INF, ZERO, Rat


def net_of(n, arcs, source=0, sink=None):
    net = FlowNetwork(n, [], source, n - 1 if sink is None else sink)
    for t, h, c in arcs:
        net.add_arc(t, h, c)
    return net


def cut_weight(net, side):
    total = ZERO
    for a in net.arcs:
        if a.tail in side and a.head not in side:
            if a.capacity is INF:
                return INF
            total += a.capacity
    return total


def brute_min_cuts(net):
    """All minimum s-t cuts by enumeration: (weight, list of source sides)."""
    others = [v for v in range(net.n) if v not in (net.source, net.sink)]
    best, sides = None, []
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            side = {net.source, *extra}
            w = cut_weight(net, side)
            if w is INF:
                continue
            if best is None or w < best:
                best, sides = w, [side]
            elif w == best:
                sides.append(side)
    return best, sides


def check_result(net, res):
    flows = res.arc_flows
    for a, f in zip(net.arcs, flows):
        assert f >= 0
        assert a.capacity is INF or f <= a.capacity
    for v in range(net.n):
        if v in (net.source, net.sink):
            continue
        inflow = sum((f for a, f in zip(net.arcs, flows) if a.head == v), ZERO)
        outflow = sum((f for a, f in zip(net.arcs, flows) if a.tail == v), ZERO)
        assert inflow == outflow
    assert res.cut_capacity(net) == res.value


def test_single_path():
    res = max_flow(net_of(3, [(0, 1, 1), (1, 2, 1)]))
    assert res.value == 1
    assert set(res.source_side) == {0}


def test_two_paths_example():
    # source 0, a 1, b 2, t 3
    net = net_of(4, [(0, 1, 3), (0, 2, 3), (1, 3, 2), (2, 3, 5)])
    res = max_flow(net)
    assert res.value == 5
    assert res.arc_flows == (2, 3, 2, 3)
    assert set(res.source_side) == {0, 1}


def test_empty_network():
    res = max_flow(FlowNetwork(2, [], 0, 1))
    assert res.value == 0 and set(res.source_side) == {0}


def test_unbounded_detected():
    with pytest.raises(UnboundedFlowError):
        max_flow(net_of(3, [(0, 1, INF), (1, 2, INF)]))


def test_huge_rational_capacity():
    big = Rat(10**30, 7)
    res = max_flow(net_of(3, [(0, 1, big), (1, 2, INF)]))
    assert res.value == big


def test_rejects_bad_network():
    with pytest.raises(ValueError):
        FlowNetwork(2, [], 0, 0)
    with pytest.raises(ValueError):
        net_of(2, [(0, 1, -1)])


def test_initial_flow_seed():
    net = net_of(4, [(0, 1, 3), (0, 2, 3), (1, 3, 2), (2, 3, 5)])
    res = max_flow(net, [Rat(1), Rat(1), Rat(1), Rat(1)])
    assert res.value == 5


capacity = st.one_of(
    st.integers(0, 6).map(Rat),
    st.fractions(min_value=0, max_value=5, max_denominator=6).map(lambda f: Rat(f.numerator, f.denominator)),
    st.just(INF),
)


@st.composite
def networks(draw):
    n = draw(st.integers(2, 6))
    arcs = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), capacity), max_size=12)
    )
    return n, [a for a in arcs if a[0] != a[1]]


@settings(max_examples=300, deadline=None)
@given(networks())
def test_against_cut_enumeration(drawn):
    n, arcs = drawn
    net = net_of(n, arcs)
    best, sides = brute_min_cuts(net)
    if best is None:
        with pytest.raises(UnboundedFlowError):
            max_flow(net)
        return
    res = max_flow(net)
    check_result(net, res)
    assert res.value == best
    # residual reachability is the inclusion-minimal minimum cut
    minimal = set.intersection(*sides)
    assert set(res.source_side) == minimal
    assert all(set(res.source_side) <= s for s in sides)
    # nodes that reach the sink lie outside the maximal min-cut
    maximal = set.union(*sides)
    assert set(res.sink_side) == set(range(n)) - maximal


@pytest.mark.skipif(flow._flowcore is None, reason="compiled backend not built")
def test_backends_agree():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 9)
        tails, heads, caps = [], [], []
        for _ in range(rng.randint(0, 20)):
            u, v = rng.sample(range(n), 2)
            tails.append(u)
            heads.append(v)
            caps.append(None if rng.random() < 0.2 else Rat(rng.randint(0, 30), rng.randint(1, 4)))
        args = (n, tails, heads, caps, 0, n - 1)
        try:
            py = _flow_py.max_flow_arrays(*args)
        except OverflowError:
            with pytest.raises(OverflowError):
                flow._flowcore.max_flow_arrays(n, tails, heads, [None if c is None else (int(c.numerator), int(c.denominator)) for c in caps], 0, n - 1)
            continue
        raw = [None if c is None else (int(c.numerator), int(c.denominator)) for c in caps]
        (vn, vd), cflows, csrc, csnk = flow._flowcore.max_flow_arrays(n, tails, heads, raw, 0, n - 1)
        assert py[0] == Rat(vn, vd)
        assert list(py[1]) == [Rat(p, q) for p, q in cflows]
        assert list(py[2]) == list(csrc) and list(py[3]) == list(csnk)


def test_determinism():
    net = net_of(5, [(0, 1, 2), (0, 2, 2), (1, 3, 1), (2, 3, 1), (1, 2, 1), (3, 4, 3), (2, 4, 1)])
    assert max_flow(net) == max_flow(net)


def test_without_flows():
    res = flow.solve_arrays(3, [0, 1], [1, 2], [Rat(2), Rat(1)], 0, 2, want_flows=False)
    assert res.value == 1 and res.arc_flows == ()
