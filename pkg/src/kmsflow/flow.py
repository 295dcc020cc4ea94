"""Thermal data on a graded graph: edge spectra, partition functions, densities.

Edge Hamiltonians are stored as eigenvalue multisets. The Boltzmann operator of
a vertex is diagonal in the canonical basis of H_z, which lists root paths in
:func:`~kmsflow.graph.enumerate_paths` order and, inside one path, the tensor
basis of the edge spaces in lexicographic order of eigenvalue indices.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Union

import numpy as np

from . import numeric as num
from .errors import (
    DimensionLimitExceeded,
    EdgeNotFound,
    InadmissibleGauge,
    InfinitePartitionFunction,
    ThermalDataMissing,
)
from .graph import Edge, GradedGraph, Vertex, enumerate_paths

DENSE_LIMIT = 256


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of H_e, one per dimension of the edge space.

    ``weights`` optionally pins the exact Boltzmann weights exp(-beta * lambda)
    at ``weights_beta``, so realized flows stay rational in exact mode.
    """

    eigenvalues: tuple
    weights: tuple | None = None
    weights_beta: object = None

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", tuple(self.eigenvalues))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))
            if len(self.weights) != len(self.eigenvalues):
                raise ValueError("weights and eigenvalues differ in length")

    @classmethod
    def from_weights(cls, weights, beta) -> "Spectrum":
        """Spectrum whose Boltzmann weights at ``beta`` are ``weights`` (all > 0)."""
        if beta == 0:
            raise ValueError("weights determine eigenvalues only for beta != 0")
        eig = tuple(-math.log(w) / float(beta) for w in weights)
        return cls(eig, tuple(weights), beta)

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    def boltzmann(self, beta, mode: str) -> tuple:
        if self.weights is not None and self.weights_beta == beta:
            return tuple(num.coerce(w, mode) for w in self.weights)
        return tuple(num.boltzmann(num.coerce(lam, mode) if mode == num.EXACT else lam, beta, mode)
                     for lam in self.eigenvalues)

    def shifted(self, shift) -> "Spectrum":
        if shift == 0:
            return self
        return Spectrum(tuple(lam + shift for lam in self.eigenvalues))


@dataclass(frozen=True)
class PartitionOnly:
    """Edge known only through Z_beta(e); ``math.inf`` marks a non-trace-class edge."""

    value: object


EdgeThermal = Union[Spectrum, PartitionOnly]


@dataclass(frozen=True)
class PartitionTable:
    edge_z: dict
    vertex_z: dict

    def __getitem__(self, z: Vertex):
        return self.vertex_z[z]


@dataclass(frozen=True, eq=False)
class FlowSpec:
    graph: GradedGraph
    beta: object
    thermal: Mapping[Edge, EdgeThermal] = field(repr=False)
    mode: str = num.FLOAT

    def __post_init__(self):
        num.check_mode(self.mode)
        for e in self.graph.all_edges():
            t = self.thermal.get(e)
            if t is None:
                raise ThermalDataMissing(f"edge {e} has no thermal data")
            if isinstance(t, Spectrum) and t.size != e.multiplicity:
                raise ValueError(f"edge {e}: spectrum size {t.size} != multiplicity {e.multiplicity}")

    def with_mode(self, mode: str) -> "FlowSpec":
        return replace(self, mode=mode)

    @cached_property
    def table(self) -> PartitionTable:
        g = self.graph
        ez = {e: edge_partition(self, e) for e in g.all_edges()}
        vz = {g.root: num.one(self.mode)}
        for level in g.levels[1:]:
            for z in level:
                total = num.zero(self.mode)
                for e in g.incoming(z):
                    a, b = ez[e], vz[e.source]
                    if num.is_inf(a) or num.is_inf(b) or num.is_inf(total):
                        total = num.INF
                    else:
                        total = total + a * b
                vz[z] = total
        return PartitionTable(ez, vz)

    @cached_property
    def cache(self) -> dict:
        """Memo for derived per-vertex data (bases, link columns)."""
        return {}


def edge_partition(f: FlowSpec, e: Edge):
    """Z_beta(e): trace of exp(-beta H_e), or the stored partition value."""
    t = f.thermal.get(e)
    if t is None:
        raise EdgeNotFound(f"edge {e} is not in the flow")
    if isinstance(t, PartitionOnly):
        return num.coerce(t.value, f.mode)
    return sum(t.boltzmann(f.beta, f.mode), num.zero(f.mode))


def vertex_partition(f: FlowSpec) -> PartitionTable:
    """Edge and vertex partition functions; the vertex table is filled level by level."""
    return f.table


def classify_vertices(f: FlowSpec, n: int) -> tuple[list[Vertex], list[Vertex]]:
    """Split level ``n`` into (finite-Z vertices, infinite-Z vertices)."""
    vz = f.table.vertex_z
    level = f.graph.levels[n]
    return [z for z in level if not num.is_inf(vz[z])], [z for z in level if num.is_inf(vz[z])]


def is_finite(f: FlowSpec, z: Vertex) -> bool:
    return not num.is_inf(f.table.vertex_z[f.graph.require(z)])


@dataclass(frozen=True)
class BasisElement:
    path: tuple  # edges e_1 .. e_n
    index: tuple  # eigen-index per edge
    weight: object  # diagonal entry of rho_{beta,z}
    energy: object  # diagonal entry of H_z


def canonical_basis(f: FlowSpec, z: Vertex) -> list[BasisElement]:
    """Canonical path-times-eigen basis of H_z with its Boltzmann weights and energies."""
    key = ("basis", z)
    if key in f.cache:
        return f.cache[key]
    per_edge = {}
    out = []
    for path in enumerate_paths(f.graph, z):
        data = []
        for e in path:
            if e not in per_edge:
                t = f.thermal[e]
                if not isinstance(t, Spectrum):
                    raise ThermalDataMissing(f"edge {e} carries only a partition value")
                eig = tuple(num.coerce(x, f.mode) if f.mode == num.EXACT else x for x in t.eigenvalues)
                per_edge[e] = (eig, t.boltzmann(f.beta, f.mode))
            data.append(per_edge[e])
        for idx in itertools.product(*(range(len(d[0])) for d in data)):
            w = num.one(f.mode)
            h = num.zero(f.mode)
            for (eig, wts), j in zip(data, idx):
                w = w * wts[j]
                h = h + eig[j]
            out.append(BasisElement(path, idx, w, h))
    f.cache[key] = out
    return out


def rho_spectrum(f: FlowSpec, z: Vertex) -> list:
    """Diagonal of the (unnormalized) Boltzmann operator rho_{beta,z}, canonical order."""
    return [b.weight for b in canonical_basis(f, z)]


def vertex_hamiltonian_spectrum(f: FlowSpec, z: Vertex) -> list:
    """Diagonal of H_z: per basis element, the sum of the chosen edge eigenvalues."""
    return [b.energy for b in canonical_basis(f, z)]


def _potential(f: FlowSpec, shifts: Mapping[Edge, object], tol: float):
    g = f.graph
    lam = {g.root: 0}
    for level in g.levels[1:]:
        for z in level:
            vals = []
            for e in g.incoming(z):
                if e not in shifts:
                    raise EdgeNotFound(f"no shift given for edge {e}")
                vals.append(lam[e.source] + shifts[e])
            if any(not num.close(v, vals[0], tol) for v in vals[1:]):
                return None
            lam[z] = vals[0]
    return lam


def gauge_check(f: FlowSpec, shifts: Mapping[Edge, object], tol: float = 1e-12) -> bool:
    """True iff the shift sum along root paths depends only on the endpoint."""
    return _potential(f, shifts, tol) is not None


def apply_gauge(f: FlowSpec, shifts: Mapping[Edge, object], tol: float = 1e-12) -> FlowSpec:
    """Shift every edge Hamiltonian by its scalar; the shifts must be admissible."""
    if not gauge_check(f, shifts, tol):
        raise InadmissibleGauge("shift sums differ between paths with a common endpoint")
    thermal = {}
    for e, t in f.thermal.items():
        if not isinstance(t, Spectrum):
            raise ThermalDataMissing(f"edge {e} carries only a partition value")
        thermal[e] = t.shifted(shifts[e])
    return FlowSpec(f.graph, f.beta, thermal, f.mode)


def gauge_from_potential(g: GradedGraph, potential: Mapping[Vertex, object]) -> dict:
    """Admissible shifts lambda_e = Lambda(r(e)) - Lambda(s(e)) from a vertex potential."""
    pot = dict(potential)
    pot.setdefault(g.root, 0)
    return {e: pot[e.target] - pot[e.source] for e in g.all_edges()}


def kms_verify(f: FlowSpec, z: Vertex, a, b, tol: float = 1e-10, limit: int = DENSE_LIMIT) -> bool:
    """Check tau(ab) == tau(b alpha_{i beta}(a)) for dense matrices on H_z.

    alpha_{i beta}(a) = exp(-beta H_z) a exp(beta H_z) is built from the vertex
    Hamiltonian; tau uses the density from the Boltzmann spectrum.
    """
    d = f.graph.dims[f.graph.require(z)]
    if d > limit:
        raise DimensionLimitExceeded(f"dim H_z = {d} exceeds the dense limit {limit}")
    zz = f.table.vertex_z[z]
    if num.is_inf(zz):
        raise InfinitePartitionFunction(f"Z_beta({z}) is infinite")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (d, d) or b.shape != (d, d):
        raise ValueError(f"observables must be {d}x{d}")
    rho = np.array([float(w) for w in rho_spectrum(f, z)])
    energy = np.array([float(h) for h in vertex_hamiltonian_spectrum(f, z)])
    beta = float(f.beta)
    analytic = np.exp(-beta * energy)[:, None] * a * np.exp(beta * energy)[None, :]
    lhs = np.trace(rho[:, None] * (a @ b))
    rhs = np.trace(rho[:, None] * (b @ analytic))
    return bool(abs(lhs - rhs) <= tol * float(zz))
