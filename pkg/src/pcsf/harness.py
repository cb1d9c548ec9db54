"""Seeded random instances and the approximation-ratio campaign."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .core import PcsfInstance
from .ipcsf import ipcsf_solve
from .oracle import MAX_EDGES, MAX_PAIRS, OracleLimitError, exact_solve, verify_solution
from .rational import Rat, format_rat


def generate_instance(
    nodes: int, edges: int, pairs: int, max_cost: int, max_penalty: int, seed
) -> PcsfInstance:
    """Simple graph with uniform integer costs in [0, max_cost] and penalties in [1, max_penalty]."""
    slots = nodes * (nodes - 1) // 2
    if nodes < 0 or edges < 0 or pairs < 0:
        raise ValueError("counts must be nonnegative")
    if edges > slots:
        raise ValueError(f"{edges} edges exceed the {slots} possible on {nodes} nodes")
    if pairs > slots:
        raise ValueError(f"{pairs} pairs exceed the {slots} possible on {nodes} nodes")
    if max_cost < 0:
        raise ValueError("max_cost must be nonnegative")
    if pairs and max_penalty < 1:
        raise ValueError("max_penalty must be at least 1")
    rng = random.Random(seed)
    universe = [(u, v) for u in range(nodes) for v in range(u + 1, nodes)]
    chosen = rng.sample(universe, edges)
    edge_list = [(u, v, rng.randint(0, max_cost)) for u, v in chosen]
    demand = rng.sample(universe, pairs)
    penalties = {p: rng.randint(1, max_penalty) for p in demand}
    return PcsfInstance(nodes, edge_list, penalties)


def random_small_instance(
    rng: random.Random, max_nodes: int, max_edges: int = 12, max_pairs: int = 6, max_cost: int = 10, max_penalty: int = 10
) -> PcsfInstance:
    n = rng.randint(2, max_nodes)
    slots = n * (n - 1) // 2
    m = rng.randint(1, min(max_edges, slots))
    k = rng.randint(1, min(max_pairs, slots))
    return generate_instance(n, m, k, max_cost, max_penalty, rng.getrandbits(64))


def trial_instance(seed, trial: int, max_nodes: int, **kw) -> PcsfInstance:
    return random_small_instance(random.Random(f"{seed}/{trial}"), max_nodes, **kw)


@dataclass(frozen=True)
class TrialResult:
    trial: int
    n: int
    cost: Rat
    optimum: Rat
    ratio: Rat
    problems: tuple[str, ...] = ()


@dataclass
class RatioReport:
    trials: int = 0
    results: list[TrialResult] = field(default_factory=list)

    @property
    def failures(self) -> list[TrialResult]:
        return [r for r in self.results if r.problems]

    @property
    def worst(self) -> TrialResult | None:
        if not self.results:
            return None
        return max(self.results, key=lambda r: (r.ratio, -r.trial))

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"trials {self.trials}"]
        worst = self.worst
        if worst is not None:
            out.append(
                f"worst-ratio {format_rat(worst.ratio)} trial {worst.trial} n {worst.n} "
                f"cost {format_rat(worst.cost)} opt {format_rat(worst.optimum)}"
            )
        for r in self.failures:
            for p in r.problems:
                out.append(f"violation trial {r.trial}: {p}")
        out.append("ok" if self.ok else f"failed {len(self.failures)}")
        return out


def run_ratio_test(
    trials: int,
    max_nodes: int,
    seed,
    *,
    max_edges: int = 12,
    max_pairs: int = 6,
    max_cost: int = 10,
    max_penalty: int = 10,
    check: bool | None = None,
    progress: Callable[[TrialResult], None] | None = None,
) -> RatioReport:
    """Solve random instances and compare against the exact optimum.

    Each trial must be feasible and cost at most ``(2 - 1/n)`` times the
    optimum, compared exactly.
    """
    if max_nodes < 2:
        raise ValueError("max_nodes must be at least 2")
    if max_edges > MAX_EDGES or max_pairs > MAX_PAIRS or max_nodes > MAX_EDGES + 1:
        raise OracleLimitError(
            f"ratio test needs max_nodes <= {MAX_EDGES + 1}, max_edges <= {MAX_EDGES}, max_pairs <= {MAX_PAIRS}"
        )
    report = RatioReport(trials)
    for t in range(trials):
        inst = trial_instance(
            seed, t, max_nodes, max_edges=max_edges, max_pairs=max_pairs, max_cost=max_cost, max_penalty=max_penalty
        )
        sol, _ = ipcsf_solve(inst, check=check)
        opt = exact_solve(inst)
        problems = list(verify_solution(inst, sol))
        bound = (2 - Rat(1, inst.n)) * opt.cost
        if sol.cost > bound:
            problems.append(f"cost {format_rat(sol.cost)} exceeds (2-1/{inst.n}) * {format_rat(opt.cost)}")
        if opt.cost:
            ratio = sol.cost / opt.cost
        else:
            ratio = Rat(1) if sol.cost == 0 else Rat(sol.cost)  # only reachable on a violation
        result = TrialResult(t, inst.n, sol.cost, opt.cost, ratio, tuple(problems))
        report.results.append(result)
        if progress:
            progress(result)
    return report


__all__ = [
    "RatioReport",
    "TrialResult",
    "generate_instance",
    "random_small_instance",
    "run_ratio_test",
    "trial_instance",
]
