"""Text formats for instances and solutions.

Instance files::

    pcsf 1
    nodes 3
    edge 1 3 1        # 1-indexed endpoints, nonnegative decimal cost
    pair 1 2 1.5

Solution files hold ``cost <value>``, one ``buy u v`` per forest edge and one
``pay i j`` per penalized pair.
"""

from __future__ import annotations

from .core import Pair, PcsfError, PcsfInstance, Solution, pair_key
from .rational import Rat, format_decimal, format_rat, parse_decimal, to_rat

HEADER = ("pcsf", "1")


class ParseError(PcsfError, ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield number, body


def _vertex(token: str, n: int, line: int) -> int:
    if not token.isdigit():
        raise ParseError(line, f"vertex {token!r} is not a positive integer")
    v = int(token)
    if not 1 <= v <= n:
        raise ParseError(line, f"vertex {v} outside 1..{n}")
    return v - 1


def _value(token: str, line: int, what: str) -> Rat:
    if token.startswith("-"):
        raise ParseError(line, f"negative {what} {token}")
    try:
        return parse_decimal(token)
    except ValueError:
        raise ParseError(line, f"{what} {token!r} is not a decimal with at most 9 fractional digits") from None


def parse_instance(text: str) -> PcsfInstance:
    n = None
    edges: list[tuple[int, int, Rat]] = []
    pairs: dict[Pair, Rat] = {}
    seen_header = False
    for line, parts in _lines(text):
        if not seen_header:
            if tuple(parts) != HEADER:
                raise ParseError(line, "expected header 'pcsf 1'")
            seen_header = True
            continue
        kind = parts[0]
        if kind == "nodes":
            if n is not None:
                raise ParseError(line, "duplicate 'nodes' line")
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(line, "expected 'nodes <n>'")
            n = int(parts[1])
            continue
        if kind not in ("edge", "pair"):
            raise ParseError(line, f"unknown record {kind!r}")
        if n is None:
            raise ParseError(line, f"'{kind}' before 'nodes'")
        if len(parts) != 4:
            raise ParseError(line, f"expected '{kind} <u> <v> <value>'")
        u, v = _vertex(parts[1], n, line), _vertex(parts[2], n, line)
        if u == v:
            what = "self-loop" if kind == "edge" else "pair with equal endpoints"
            raise ParseError(line, f"{what} at vertex {u + 1}")
        if kind == "edge":
            edges.append((u, v, _value(parts[3], line, "cost")))
        else:
            key = pair_key(u, v)
            if key in pairs:
                raise ParseError(line, f"duplicate pair {key[0] + 1} {key[1] + 1}")
            pairs[key] = _value(parts[3], line, "penalty")
    if not seen_header:
        raise ParseError(1, "empty file; expected header 'pcsf 1'")
    if n is None:
        raise ParseError(1, "missing 'nodes' line")
    return PcsfInstance(n, edges, pairs)


def format_instance(inst: PcsfInstance) -> str:
    out = [" ".join(HEADER), f"nodes {inst.n}"]
    for e in inst.edges:
        out.append(f"edge {e.u + 1} {e.v + 1} {format_decimal(e.cost)}")
    for (i, j), p in inst.penalties.items():
        out.append(f"pair {i + 1} {j + 1} {format_decimal(p)}")
    return "\n".join(out) + "\n"


def format_solution(inst: PcsfInstance, sol: Solution) -> str:
    out = [f"cost {format_rat(sol.cost)}"]
    for k in sorted(sol.forest):
        e = inst.edges[k]
        out.append(f"buy {e.u + 1} {e.v + 1}")
    for i, j in sorted(sol.penalized):
        out.append(f"pay {i + 1} {j + 1}")
    return "\n".join(out) + "\n"


def parse_solution(text: str, inst: PcsfInstance) -> Solution:
    """Read a solution against ``inst``; the stated cost is kept as written."""
    index = {pair_key(e.u, e.v): k for k, e in enumerate(inst.edges)}
    cost = None
    forest: set[int] = set()
    penalized: set[Pair] = set()
    for line, parts in _lines(text):
        kind = parts[0]
        if kind == "cost":
            if cost is not None or len(parts) != 2:
                raise ParseError(line, "expected a single 'cost <value>' line")
            try:
                cost = to_rat(parts[1])
            except (ValueError, ZeroDivisionError):
                raise ParseError(line, f"bad cost {parts[1]!r}") from None
            continue
        if kind not in ("buy", "pay") or len(parts) != 3:
            raise ParseError(line, f"expected 'buy <u> <v>' or 'pay <i> <j>', got {' '.join(parts)!r}")
        u, v = _vertex(parts[1], inst.n, line), _vertex(parts[2], inst.n, line)
        if u == v:
            raise ParseError(line, f"equal endpoints at vertex {u + 1}")
        key = pair_key(u, v)
        if kind == "buy":
            if key not in index:
                raise ParseError(line, f"no edge {u + 1}-{v + 1} in the instance")
            forest.add(index[key])
        else:
            penalized.add(key)
    if cost is None:
        raise ParseError(1, "missing 'cost' line")
    return Solution(frozenset(penalized), frozenset(forest), cost)


__all__ = ["ParseError", "format_instance", "format_solution", "parse_instance", "parse_solution"]
