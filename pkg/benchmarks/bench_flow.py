"""Compare the compiled and pure-Python max-flow kernels.

Usage: python3 benchmarks/bench_flow.py [--repeat N] [--end-to-end]

The kernel run times max flow on set-pair networks taken from a mid-run
moat family of a seeded instance.  ``--end-to-end`` also times a full
solve under each backend in a fresh interpreter.
"""

import argparse
import os
import subprocess
import sys
import time

from pcsf import _flow_py
from pcsf.coloring import build_set_pair_graph
from pcsf.harness import generate_instance
from pcsf.pcsf3 import GrowthTrace, pcsf3_solve, replay
from pcsf.rational import INF

try:
    from pcsf import _flowcore
except ImportError:
    _flowcore = None


def sample_networks(nodes, edges, pairs, seed, count):
    inst = generate_instance(nodes, edges, pairs, 1000, 1000, seed)
    events = pcsf3_solve(inst).trace.events
    cuts = sorted({len(events) * (k + 1) // (count + 1) for k in range(count)})
    return [build_set_pair_graph(inst, replay(inst, GrowthTrace(events=events[:c]))) for c in cuts]


def run_compiled(spn):
    caps = [None if c is INF else (int(c.numerator), int(c.denominator)) for c in spn.caps]
    return _flowcore.max_flow_arrays(spn.node_count, spn.tails, spn.heads, caps, spn.source, spn.sink, None, True)[0]


def run_python(spn):
    caps = [None if c is INF else c for c in spn.caps]
    return _flow_py.max_flow_arrays(spn.node_count, spn.tails, spn.heads, caps, spn.source, spn.sink, None, True)[0]


def timed(fn, nets, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        values = [fn(n) for n in nets]
        best = min(best, time.perf_counter() - start)
    return best, values


def end_to_end(pure):
    env = dict(os.environ, PCSF_PURE_PYTHON="1" if pure else "0")
    code = (
        "import time; from pcsf import BACKEND, ipcsf_solve, generate_instance\n"
        "inst = generate_instance(200, 2000, 100, 1000, 1000, 11)\n"
        "t = time.perf_counter(); sol, _ = ipcsf_solve(inst)\n"
        "print(BACKEND, time.perf_counter() - t, sol.cost)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, seconds, cost = out.stdout.split()
    return backend, float(seconds), cost


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()

    nets = sample_networks(200, 2000, 100, 11, 8)
    arcs = sum(len(n.caps) for n in nets)
    print(f"{len(nets)} networks, {arcs} arcs in total")
    py_time, py_values = timed(run_python, nets, args.repeat)
    print(f"python    {py_time * 1e3:9.1f} ms")
    if _flowcore is None:
        print("compiled  unavailable (extension not built)")
    else:
        c_time, c_values = timed(run_compiled, nets, args.repeat)
        same = [(v.numerator, v.denominator) for v in py_values] == [tuple(map(int, v)) for v in c_values]
        print(f"compiled  {c_time * 1e3:9.1f} ms  speedup {py_time / c_time:5.2f}x  values agree: {same}")

    if args.end_to_end:
        for pure in (False, True):
            backend, seconds, cost = end_to_end(pure)
            print(f"solve n=200 |E|=2000 [{backend}] {seconds:.2f} s  cost {cost}")


if __name__ == "__main__":
    main()
