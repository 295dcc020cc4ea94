"""Graded branching graphs (Bratteli diagrams) with edge multiplicities.

A graph of depth ``N`` stores vertex levels ``Z_0 .. Z_N`` and edge levels
``E_1 .. E_N``; an edge of ``E_n`` runs from a source on level ``n - 1`` up to a
target on level ``n``. Level ``N`` is a truncation boundary, so vertices there
are not required to have outgoing edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import LevelOutOfRange, VertexNotFound


@dataclass(frozen=True, order=True)
class Vertex:
    level: int
    label: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.level, self.label)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return f"({self.level},{self.label})"


@dataclass(frozen=True)
class Edge:
    source: Vertex
    target: Vertex
    multiplicity: int = 1
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.source, self.target, self.multiplicity)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def key(self) -> tuple[Vertex, Vertex]:
        return (self.target, self.source)

    def __str__(self) -> str:
        m = f" x{self.multiplicity}" if self.multiplicity != 1 else ""
        return f"{self.target}<-{self.source}{m}"


@dataclass(frozen=True)
class Violation:
    axiom: str
    message: str
    vertex: Vertex | None = None
    edge: Edge | None = None


Path = tuple  # tuple[Edge, ...], ordered e_1 .. e_n


@dataclass(frozen=True, eq=False)
class GradedGraph:
    levels: tuple[tuple[Vertex, ...], ...]
    edges: tuple[tuple[Edge, ...], ...] = field(default=())

    @classmethod
    def build(cls, level_labels: Sequence[Sequence[str]],
              edges: Iterable[tuple[tuple[int, str], tuple[int, str], int]]) -> "GradedGraph":
        """Build from label lists and ``((n-1, src), (n, tgt), m)`` triples."""
        levels = tuple(tuple(Vertex(n, str(lab)) for lab in labels)
                       for n, labels in enumerate(level_labels))
        buckets: list[list[Edge]] = [[] for _ in range(max(len(levels) - 1, 0))]
        for (sl, slab), (tl, tlab), m in edges:
            e = Edge(Vertex(sl, str(slab)), Vertex(tl, str(tlab)), m)
            idx = tl - 1
            if not 0 <= idx < len(buckets):
                buckets.extend([] for _ in range(idx - len(buckets) + 1))
            buckets[idx].append(e)
        return cls(levels, tuple(tuple(b) for b in buckets))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def root(self) -> Vertex:
        return self.levels[0][0]

    def vertices(self) -> Iterable[Vertex]:
        for level in self.levels:
            yield from level

    def all_edges(self) -> Iterable[Edge]:
        for level in self.edges:
            yield from level

    @cached_property
    def _position(self) -> dict[Vertex, int]:
        pos = {}
        for level in self.levels:
            for i, v in enumerate(level):
                pos.setdefault(v, i)
        return pos

    @cached_property
    def _incoming(self) -> dict[Vertex, tuple[Edge, ...]]:
        inc: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices()}
        for e in self.all_edges():
            inc.setdefault(e.target, []).append(e)
        pos = self._position
        return {v: tuple(sorted(es, key=lambda e: pos.get(e.source, -1))) for v, es in inc.items()}

    @cached_property
    def _outgoing(self) -> dict[Vertex, tuple[Edge, ...]]:
        out: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices()}
        for e in self.all_edges():
            out.setdefault(e.source, []).append(e)
        pos = self._position
        return {v: tuple(sorted(es, key=lambda e: pos.get(e.target, -1))) for v, es in out.items()}

    @cached_property
    def _edge_index(self) -> dict[tuple[Vertex, Vertex], Edge]:
        idx = {}
        for e in self.all_edges():
            idx.setdefault(e.key, e)
        return idx

    def __contains__(self, v) -> bool:
        return isinstance(v, Vertex) and v in self._position

    def position(self, v: Vertex) -> int:
        self.require(v)
        return self._position[v]

    def require(self, v: Vertex) -> Vertex:
        if v not in self:
            raise VertexNotFound(f"vertex {v} is not in the graph")
        return v

    def vertex(self, level: int, label) -> Vertex:
        return self.require(Vertex(level, str(label)))

    def incoming(self, z: Vertex) -> tuple[Edge, ...]:
        """Edges with target ``z``, ordered by source position."""
        return self._incoming[self.require(z)]

    def outgoing(self, z: Vertex) -> tuple[Edge, ...]:
        return self._outgoing[self.require(z)]

    def edge_between(self, z: Vertex, z_below: Vertex) -> Edge | None:
        return self._edge_index.get((z, z_below))

    @cached_property
    def dims(self) -> dict[Vertex, int]:
        """dim H_z for every vertex, by the level recursion."""
        d = {self.root: 1}
        for level in self.levels[1:]:
            for z in level:
                d[z] = sum(d[e.source] * e.multiplicity for e in self.incoming(z))
        return d

    def __repr__(self) -> str:
        sizes = ",".join(str(len(lv)) for lv in self.levels)
        return f"GradedGraph(depth={self.depth}, level_sizes=[{sizes}])"


def validate_graph(g: GradedGraph) -> list[Violation]:
    """Every violated axiom, as data. An empty list means the graph is valid."""
    out: list[Violation] = []
    if not g.levels or len(g.levels[0]) != 1:
        out.append(Violation("i", f"level 0 must hold exactly one vertex, found {len(g.levels[0]) if g.levels else 0}"))
    for n, level in enumerate(g.levels):
        seen = set()
        for v in level:
            if v.level != n:
                out.append(Violation("i", f"vertex {v} listed on level {n}", vertex=v))
            if v.label in seen:
                out.append(Violation("i", f"duplicate label {v.label!r} on level {n}", vertex=v))
            seen.add(v.label)
    if len(g.edges) > g.depth:
        out.append(Violation("i", f"{len(g.edges)} edge levels for a graph of depth {g.depth}"))
    keys = set()
    for n, level in enumerate(g.edges, start=1):
        for e in level:
            if e.target.level != n or e.source.level != n - 1:
                out.append(Violation("i", f"edge {e} is not between levels {n - 1} and {n}", edge=e))
            if e.source not in g or e.target not in g:
                out.append(Violation("i", f"edge {e} has an endpoint outside the graph", edge=e))
            if not isinstance(e.multiplicity, int) or isinstance(e.multiplicity, bool) or e.multiplicity < 1:
                out.append(Violation("m", f"edge {e} has non-positive or non-integer multiplicity", edge=e))
            if e.key in keys:
                out.append(Violation("ii", f"duplicate edge on ({e.target}, {e.source})", edge=e))
            keys.add(e.key)
    for v in g.vertices():
        if v.level < g.depth and not g._outgoing.get(v):
            out.append(Violation("iii", f"vertex {v} is not the source of any edge", vertex=v))
        if v.level >= 1 and not g._incoming.get(v):
            out.append(Violation("iv", f"vertex {v} is not the target of any edge", vertex=v))
    out.sort(key=lambda x: (x.axiom, str(x.vertex), str(x.edge), x.message))
    return out


def enumerate_paths(g: GradedGraph, z: Vertex) -> list[Path]:
    """All edge paths from the root to ``z``, lexicographic in vertex positions (level 1 first)."""
    g.require(z)
    memo: dict[Vertex, list[Path]] = {g.root: [()]}

    def paths(v: Vertex) -> list[Path]:
        if v not in memo:
            memo[v] = [p + (e,) for e in g.incoming(v) for p in paths(e.source)]
        return memo[v]

    pos = g._position
    return sorted(paths(z), key=lambda p: tuple(pos[e.target] for e in p))


def dim_vertex(g: GradedGraph, z: Vertex) -> int:
    """Dimension of H_z: sum over root paths of the product of multiplicities."""
    return g.dims[g.require(z)]


def path_vertices(path: Path, root: Vertex) -> tuple[Vertex, ...]:
    return (root,) + tuple(e.target for e in path)


def truncate(g: GradedGraph, n: int) -> GradedGraph:
    if not 0 <= n <= g.depth:
        raise LevelOutOfRange(f"cannot truncate depth-{g.depth} graph at level {n}")
    return GradedGraph(g.levels[: n + 1], g.edges[:n])
