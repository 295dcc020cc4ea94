"""Coherent systems: normalized non-negative kappa-harmonic functions to finite depth."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import numeric as num
from .errors import (
    InfiniteVertexOnPath,
    LevelOrderViolation,
    LevelOutOfRange,
    MassOnInfiniteVertex,
)
from .flow import FlowSpec, is_finite
from .graph import GradedGraph, Vertex
from .links import DiagonalObservable, link_adjacent, link_multi, tau_eval


@dataclass(frozen=True)
class LevelMeasure:
    level: int
    weights: Mapping[Vertex, object]

    def total(self):
        return sum(self.weights.values())


@dataclass(frozen=True, eq=False)
class CoherentSystem:
    graph: GradedGraph
    depth: int
    values: Mapping[Vertex, object]

    def __getitem__(self, z: Vertex):
        return self.values.get(z, 0)

    def level(self, n: int) -> dict:
        return {z: self[z] for z in self.graph.levels[n]}

    def level_masses(self) -> list:
        return [sum(self.level(n).values()) for n in range(self.depth + 1)]


@dataclass
class HarmonicReport:
    residuals: dict = field(default_factory=dict)
    tol: float = 0.0

    @property
    def max_residual(self):
        return max(self.residuals.values(), default=0)

    @property
    def worst(self):
        if not self.residuals:
            return None
        return max(self.residuals, key=self.residuals.get)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def pushdown(f: FlowSpec, upper: Mapping[Vertex, object], n: int) -> dict:
    """One step nu_{n} = nu_{n+1} . kappa, for every vertex of level ``n``."""
    g = f.graph
    out = {}
    for zl in g.levels[n]:
        total = num.zero(f.mode)
        for e in g.outgoing(zl):
            w = upper.get(e.target, 0)
            if w:
                total = total + w * link_adjacent(f, e.target, zl)
        out[zl] = total
    return out


def extend_down(f: FlowSpec, mu: LevelMeasure) -> CoherentSystem:
    """The coherent system of depth N whose top level is ``mu``."""
    g = f.graph
    if not 0 <= mu.level <= g.depth:
        raise LevelOutOfRange(f"level {mu.level} outside the graph")
    top = {}
    for z in g.levels[mu.level]:
        w = mu.weights.get(z, 0)
        if w and not is_finite(f, z):
            raise MassOnInfiniteVertex(f"measure puts mass {w} on infinite-Z vertex {z}")
        top[z] = num.coerce(w, f.mode)
    values = dict(top)
    layer = top
    for n in range(mu.level - 1, -1, -1):
        layer = pushdown(f, layer, n)
        values.update(layer)
    return CoherentSystem(g, mu.level, values)


def check_harmonic(f: FlowSpec, nu: CoherentSystem, tol: float = 1e-10) -> HarmonicReport:
    """Per-vertex residuals |nu(z') - sum_z nu(z) kappa(z, z')| on levels below the top."""
    rep = HarmonicReport(tol=0 if f.mode == num.EXACT else tol)
    for n in range(nu.depth):
        pushed = pushdown(f, nu.level(n + 1), n)
        for zl, v in pushed.items():
            rep.residuals[zl] = num.deviation(nu[zl], v)
    return rep


def state_eval(f: FlowSpec, nu: CoherentSystem, n: int, a: Mapping[Vertex, DiagonalObservable]):
    """omega(a) = sum_z nu(z) tau_z(z a) over finite-Z vertices of level ``n``."""
    if n > nu.depth:
        raise LevelOutOfRange(f"system has depth {nu.depth} < {n}")
    total = num.zero(f.mode)
    for z in f.graph.levels[n]:
        if not is_finite(f, z) or z not in a:
            continue
        w = nu[z]
        if w:
            total = total + w * tau_eval(f, z, a[z])
    return total


def decompose_at_level(f: FlowSpec, nu: CoherentSystem, n: int) -> LevelMeasure:
    """The level-n measure that reproduces ``nu`` below n under :func:`extend_down`."""
    if n > nu.depth:
        raise LevelOutOfRange(f"system has depth {nu.depth} < {n}")
    return LevelMeasure(n, nu.level(n))


def mixture(systems: Sequence[CoherentSystem], weights: Sequence) -> CoherentSystem:
    depth = min(s.depth for s in systems)
    g = systems[0].graph
    vals = {}
    for n in range(depth + 1):
        for z in g.levels[n]:
            vals[z] = sum(w * s[z] for s, w in zip(systems, weights))
    return CoherentSystem(g, depth, vals)


def boundary_kernel_approx(f: FlowSpec, path: Sequence[Vertex], z: Vertex) -> list:
    """kappa(z(m), z) along a growing path of finite-Z vertices."""
    prev = None
    for v in path:
        f.graph.require(v)
        if prev is not None and v.level <= prev.level:
            raise LevelOrderViolation("path levels must strictly increase")
        if not is_finite(f, v):
            raise InfiniteVertexOnPath(f"vertex {v} on the path has infinite Z")
        if v.level <= z.level:
            raise LevelOrderViolation(f"target {z} is not below path vertex {v}")
        prev = v
    return [link_multi(f, v, z) for v in path]
