"""Domain types: instances, solutions, vertex sets, components and moats."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .rational import ZERO, Rat, to_rat

Pair = tuple[int, int]


class PcsfError(Exception):
    """Base class for library errors."""


class StructuralError(PcsfError, ValueError):
    """A reference to an edge, pair, vertex or moat that does not exist."""


class InvariantError(PcsfError, AssertionError):
    """An internal invariant failed; indicates a solver bug."""


def pair_key(i: int, j: int) -> Pair:
    if i == j:
        raise ValueError(f"pair endpoints must differ, got ({i}, {j})")
    return (i, j) if i < j else (j, i)


class VertexSet:
    """Immutable set of vertices stored as an integer bitmask."""

    __slots__ = ("bits", "n")

    def __init__(self, bits: int, n: int):
        if bits < 0 or bits >> n:
            raise ValueError("bitmask has members outside 0..n-1")
        self.bits = bits
        self.n = n

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> "VertexSet":
        bits = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            bits |= 1 << v
        return cls(bits, n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1, n)

    def __contains__(self, v: int) -> bool:
        return (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits, v = self.bits, 0
        while bits:
            if bits & 1:
                yield v
            bits >>= 1
            v += 1

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexSet) and self.bits == other.bits and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.bits, self.n))

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits | other.bits, self.n)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & other.bits, self.n)

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.bits & other.bits == 0

    def cuts(self, i: int, j: int) -> bool:
        return ((self.bits >> i) ^ (self.bits >> j)) & 1 == 1

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def cuts_pair(s: VertexSet, i: int, j: int) -> bool:
    """True iff exactly one of ``i``, ``j`` lies in ``s``."""
    if i == j:
        raise ValueError("pair endpoints must differ")
    if not (0 <= i < s.n and 0 <= j < s.n):
        raise ValueError("vertex out of range")
    return s.cuts(i, j)


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    cost: Rat

    def __iter__(self):
        return iter((self.u, self.v, self.cost))


@dataclass(frozen=True, init=False)
class PcsfInstance:
    """Undirected graph with exact edge costs and a sparse pair-penalty map.

    Parallel edges collapse to the cheapest one (first occurrence keeps its
    position); zero penalties are dropped.  Pair keys are ``(i, j)`` with
    ``i < j``.
    """

    n: int
    edges: tuple[Edge, ...]
    penalties: Mapping[Pair, Rat]

    def __init__(self, n: int, edges: Iterable = (), penalties: Mapping | Iterable = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        slot: dict[Pair, int] = {}
        kept: list[Edge] = []
        for e in edges:
            u, v, c = e
            u, v, c = int(u), int(v), to_rat(c)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if c < 0:
                raise ValueError(f"negative cost on edge ({u}, {v})")
            key = pair_key(u, v)
            if key in slot:
                k = slot[key]
                if c < kept[k].cost:
                    kept[k] = Edge(kept[k].u, kept[k].v, c)
                continue
            slot[key] = len(kept)
            kept.append(Edge(u, v, c))

        items = penalties.items() if isinstance(penalties, Mapping) else penalties
        pens: dict[Pair, Rat] = {}
        seen: set[Pair] = set()
        for entry in items:
            if len(entry) == 2:
                (i, j), p = entry
            else:
                i, j, p = entry
            i, j, p = int(i), int(j), to_rat(p)
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i}, {j}) out of range for n={n}")
            key = pair_key(i, j)
            if key in seen:
                raise ValueError(f"duplicate penalty for pair {key}")
            seen.add(key)
            if p < 0:
                raise ValueError(f"negative penalty on pair {key}")
            if p > 0:
                pens[key] = p
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(kept))
        object.__setattr__(self, "penalties", dict(sorted(pens.items())))

    def __hash__(self) -> int:
        return hash((self.n, self.edges, tuple(self.penalties.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PcsfInstance):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.penalties == other.penalties
        )

    @property
    def pairs(self) -> list[Pair]:
        """Positive-penalty pairs in lexicographic order."""
        return list(self.penalties)

    def penalty(self, i: int, j: int) -> Rat:
        return self.penalties.get(pair_key(i, j), ZERO)

    def total_penalty(self, pairs: Iterable[Pair] | None = None) -> Rat:
        if pairs is None:
            return sum(self.penalties.values(), ZERO)
        return sum((self.penalty(*p) for p in pairs), ZERO)

    def edge_index(self, u: int, v: int) -> int:
        key = pair_key(u, v)
        for k, e in enumerate(self.edges):
            if pair_key(e.u, e.v) == key:
                return k
        raise StructuralError(f"no edge between {u} and {v}")


def cutting_edges(s: VertexSet, inst: PcsfInstance) -> set[int]:
    """Indices of edges with exactly one endpoint in ``s``."""
    if not s:
        raise ValueError("cutting_edges needs a nonempty set")
    return {k for k, e in enumerate(inst.edges) if s.cuts(e.u, e.v)}


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for v in range(len(self.parent)):
            out.setdefault(self.find(v), []).append(v)
        return list(out.values())

    def copy(self) -> "UnionFind":
        uf = UnionFind(0)
        uf.parent = list(self.parent)
        uf.size = list(self.size)
        return uf


@dataclass
class Moat:
    id: int
    members: VertexSet
    duration: Rat = ZERO
    active: bool = True


class MoatFamily:
    """Append-only laminar family of moats plus the current components.

    ``components`` mirrors the connected components of the grown forest and
    ``root_moat`` maps each union-find root to the moat equal to that
    component.
    """

    def __init__(self, n: int):
        self.n = n
        self.moats: list[Moat] = []
        self.components = UnionFind(n)
        self.root_moat: dict[int, int] = {}

    @classmethod
    def singletons(cls, n: int) -> "MoatFamily":
        fam = cls(n)
        for v in range(n):
            fam.moats.append(Moat(v, VertexSet(1 << v, n)))
            fam.root_moat[v] = v
        return fam

    def __len__(self) -> int:
        return len(self.moats)

    def __getitem__(self, moat_id: int) -> Moat:
        if not 0 <= moat_id < len(self.moats):
            raise StructuralError(f"unknown moat id {moat_id}")
        return self.moats[moat_id]

    def active_ids(self) -> list[int]:
        return [m.id for m in self.moats if m.active]

    def component_moat(self, v: int) -> int:
        return self.root_moat[self.components.find(v)]

    def component_labels(self) -> list[int]:
        """``labels[v]`` is the id of the moat equal to ``v``'s component."""
        return [self.root_moat[self.components.find(v)] for v in range(self.n)]

    def current_ids(self) -> list[int]:
        return sorted(self.root_moat.values())

    def total_duration(self) -> Rat:
        return sum((m.duration for m in self.moats), ZERO)

    def grow(self, delta: Rat) -> None:
        for m in self.moats:
            if m.active:
                m.duration += delta

    def merge(self, a: int, b: int) -> int:
        """Replace components ``a`` and ``b`` by their union; returns the new moat id."""
        ma, mb = self[a], self[b]
        ra = self.components.find(next(iter(ma.members)))
        rb = self.components.find(next(iter(mb.members)))
        if ra == rb or self.root_moat.get(ra) != a or self.root_moat.get(rb) != b:
            raise StructuralError(f"moats {a} and {b} are not two distinct current components")
        new_id = len(self.moats)
        if new_id >= max(2 * self.n - 1, 1):
            raise InvariantError("more than 2n-1 moats")
        ma.active = False
        mb.active = False
        del self.root_moat[ra], self.root_moat[rb]
        root = self.components.union(ra, rb)
        self.moats.append(Moat(new_id, ma.members | mb.members))
        self.root_moat[root] = new_id
        return new_id

    def deactivate(self, moat_id: int) -> None:
        self[moat_id].active = False

    def copy(self) -> "MoatFamily":
        fam = MoatFamily(self.n)
        fam.moats = [Moat(m.id, m.members, m.duration, m.active) for m in self.moats]
        fam.components = self.components.copy()
        fam.root_moat = dict(self.root_moat)
        return fam

    def is_laminar(self) -> bool:
        sets = [m.members.bits for m in self.moats]
        for x in range(len(sets)):
            for y in range(x + 1, len(sets)):
                a, b = sets[x], sets[y]
                inter = a & b
                if inter and inter != a and inter != b:
                    return False
        return True


@dataclass(frozen=True)
class Solution:
    """Penalized pairs ``Q`` and bought forest edge indices, with exact cost."""

    penalized: frozenset[Pair]
    forest: frozenset[int]
    cost: Rat = field(default=ZERO)

    @classmethod
    def build(cls, inst: PcsfInstance, penalized: Iterable[Pair], forest: Iterable[int]) -> "Solution":
        q = frozenset(pair_key(*p) for p in penalized)
        f = frozenset(forest)
        return cls(q, f, solution_cost_parts(inst, q, f))


def solution_cost_parts(inst: PcsfInstance, penalized, forest) -> Rat:
    m = len(inst.edges)
    total = ZERO
    for k in forest:
        if not 0 <= k < m:
            raise StructuralError(f"forest references unknown edge {k}")
        total += inst.edges[k].cost
    for p in penalized:
        key = pair_key(*p)
        if not (0 <= key[0] < inst.n and 0 <= key[1] < inst.n):
            raise StructuralError(f"penalized pair {key} out of range")
        if key not in inst.penalties:
            raise StructuralError(f"penalized pair {key} has no positive penalty")
        total += inst.penalties[key]
    return total


def solution_cost(sol: Solution, inst: PcsfInstance) -> Rat:
    """Exact c(F') + pi(Q), recomputed from the instance."""
    return solution_cost_parts(inst, sol.penalized, sol.forest)
