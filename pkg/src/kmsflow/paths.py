"""Central measures on the path space: cylinders, samplers and the ergodic experiment.

Randomness comes from ``numpy.random.Generator`` seeded with PCG64. Each
transition consumes exactly one ``Generator.random()`` draw, and the candidate
vertices are scanned in level order, so a seed fixes the output path.
"""
from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import numeric as num
from .errors import InvalidCylinder, LevelOutOfRange, ZeroMassVertex
from .flow import FlowSpec
from .graph import Vertex
from .harmonic import CoherentSystem
from .links import link_adjacent, link_column


@dataclass(frozen=True)
class CylinderSpec:
    """Consecutive vertices z_n, z_{n-1}, ..., z_m read top-down."""

    vertices: tuple[Vertex, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not self.vertices:
            raise InvalidCylinder("empty cylinder")

    @property
    def top(self) -> Vertex:
        return self.vertices[0]


@dataclass(frozen=True)
class SampledPath:
    vertices: tuple[Vertex, ...]  # levels 1 .. N
    seed: int | None = None

    def at(self, level: int) -> Vertex:
        return self.vertices[level - 1]


def make_rng(rng) -> tuple[np.random.Generator, int | None]:
    if isinstance(rng, np.random.Generator):
        return rng, None
    seed = 0 if rng is None else int(rng)
    return np.random.Generator(np.random.PCG64(seed)), seed


def validate_cylinder(f: FlowSpec, c: CylinderSpec) -> None:
    g = f.graph
    for v in c.vertices:
        if v not in g:
            raise InvalidCylinder(f"vertex {v} not in graph")
    for hi, lo in zip(c.vertices, c.vertices[1:]):
        if hi.level != lo.level + 1:
            raise InvalidCylinder(f"{hi} and {lo} are not on consecutive levels")
        if g.edge_between(hi, lo) is None:
            raise InvalidCylinder(f"no edge between {hi} and {lo}")


def cylinder_prob(f: FlowSpec, nu: CoherentSystem, c: CylinderSpec):
    """nu(z_n) times the product of adjacent links down the cylinder."""
    validate_cylinder(f, c)
    if c.top.level > nu.depth:
        raise LevelOutOfRange(f"system depth {nu.depth} below cylinder top {c.top}")
    p = num.coerce(nu[c.top], f.mode)
    for hi, lo in zip(c.vertices, c.vertices[1:]):
        if not p:
            break
        p = p * link_adjacent(f, hi, lo)
    return p


def _draw(rng: np.random.Generator, items: Sequence, cum: Sequence[float]):
    u = rng.random() * cum[-1]
    i = bisect.bisect_right(cum, u)
    return items[min(i, len(items) - 1)]


class PathSampler:
    """Down- and up-samplers for the central measure of a coherent system."""

    def __init__(self, f: FlowSpec, nu: CoherentSystem):
        self.f = f
        self.nu = nu
        self._down: dict = {}
        self._up: dict = {}
        self._level: dict = {}

    def _level_table(self, n: int):
        if n not in self._level:
            items = list(self.f.graph.levels[n])
            weights = [max(float(self.nu[z]), 0.0) for z in items]
            keep = [(z, w) for z, w in zip(items, weights) if w > 0]
            if not keep:
                raise ZeroMassVertex(f"coherent system has no mass on level {n}")
            self._level[n] = ([z for z, _ in keep], list(itertools.accumulate(w for _, w in keep)))
        return self._level[n]

    def _down_table(self, z: Vertex):
        if z not in self._down:
            items, weights = [], []
            for e in self.f.graph.incoming(z):
                w = float(link_adjacent(self.f, z, e.source))
                if w > 0:
                    items.append(e.source)
                    weights.append(w)
            if not items:
                raise ZeroMassVertex(f"vertex {z} has a zero link row")
            self._down[z] = (items, list(itertools.accumulate(weights)))
        return self._down[z]

    def _up_table(self, zl: Vertex):
        if zl not in self._up:
            base = self.nu[zl]
            if not base:
                raise ZeroMassVertex(f"up-walk reached vertex {zl} with zero mass")
            items, weights = [], []
            for e in self.f.graph.outgoing(zl):
                w = float(self.nu[e.target] * link_adjacent(self.f, e.target, zl) / base)
                if w > 0:
                    items.append(e.target)
                    weights.append(w)
            if not items:
                raise ZeroMassVertex(f"no up-transition with positive mass from {zl}")
            self._up[zl] = (items, list(itertools.accumulate(weights)))
        return self._up[zl]

    def up_probabilities(self, zl: Vertex) -> dict:
        """p_up(z' -> z) = nu(z) kappa(z, z') / nu(z') over the children of z'."""
        base = self.nu[zl]
        if not base:
            raise ZeroMassVertex(f"vertex {zl} has zero mass")
        return {e.target: self.nu[e.target] * link_adjacent(self.f, e.target, zl) / base
                for e in self.f.graph.outgoing(zl)}

    def down(self, n: int, rng=None) -> SampledPath:
        if n > self.nu.depth:
            raise LevelOutOfRange(f"system depth {self.nu.depth} < {n}")
        gen, seed = make_rng(rng)
        z = _draw(gen, *self._level_table(n))
        out = [z]
        while z.level > 1:
            z = _draw(gen, *self._down_table(z))
            out.append(z)
        return SampledPath(tuple(reversed(out)), seed)

    def up(self, n: int, rng=None) -> SampledPath:
        if n > self.nu.depth:
            raise LevelOutOfRange(f"system depth {self.nu.depth} < {n}")
        gen, seed = make_rng(rng)
        z = self.f.graph.root
        out = []
        for _ in range(n):
            z = _draw(gen, *self._up_table(z))
            out.append(z)
        return SampledPath(tuple(out), seed)


def sample_down(f: FlowSpec, nu: CoherentSystem, n: int, rng=None) -> SampledPath:
    """Draw z_n from nu on level n, then walk down with the link kernel."""
    return PathSampler(f, nu).down(n, rng)


def sample_up(f: FlowSpec, nu: CoherentSystem, n: int, rng=None) -> SampledPath:
    """Grow a path from the root with p_up(z' -> z) = nu(z) kappa(z, z') / nu(z')."""
    return PathSampler(f, nu).up(n, rng)


@dataclass
class ErgodicTable:
    targets: tuple[Vertex, ...]
    levels: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    deviations: list | None = None

    def column(self, z: Vertex) -> list:
        j = self.targets.index(z)
        return [r[j] for r in self.rows]


def ergodic_experiment(f: FlowSpec, nu: CoherentSystem | None, targets: Iterable[Vertex], M: int,
                       rng=None, path: Sequence[Vertex] | None = None,
                       with_deviation: bool = True) -> ErgodicTable:
    """Rows kappa(z(m), z) for each target z, along a supplied or up-sampled path.

    When ``nu`` is given the deviation column holds max_z |kappa(z(m), z) - nu(z)|.
    """
    targets = tuple(targets)
    if path is None:
        if nu is None:
            raise ValueError("either a coherent system or an explicit path is required")
        path = sample_up(f, nu, M, rng).vertices
    low = max(t.level for t in targets)
    cols = [link_column(f, t) for t in targets]
    table = ErgodicTable(targets)
    if nu is not None and with_deviation:
        table.deviations = []
    for v in path:
        if v.level <= low or v.level > M:
            continue
        row = [col[v] for col in cols]
        table.levels.append(v.level)
        table.rows.append(row)
        if table.deviations is not None:
            table.deviations.append(max(num.deviation(k, nu[t]) for k, t in zip(row, targets)))
    return table
