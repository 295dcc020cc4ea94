"""Inverse problem: edge spectra whose induced link is a prescribed kernel.

Each edge receives a Boltzmann profile with total weight kappa(e), so that
Z_beta(e) = kappa(e), every vertex partition function equals 1, and the
induced adjacent link reproduces kappa edge by edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from . import numeric as num
from .errors import BetaZero, GraphMismatch, InvalidLink
from .flow import FlowSpec, Spectrum
from .graph import Edge, GradedGraph
from .links import link_adjacent


@dataclass(frozen=True, eq=False)
class AbstractLink:
    graph: GradedGraph
    weights: Mapping[Edge, object]

    def validate(self, tol: float = 1e-12) -> None:
        g = self.graph
        for e in g.all_edges():
            w = self.weights.get(e)
            if w is None:
                raise InvalidLink(f"edge {e} has no weight")
            if not w > 0 or w > 1:
                raise InvalidLink(f"edge {e} weight {w} outside (0, 1]")
        for z in g.vertices():
            if z.level == 0:
                continue
            s = sum(self.weights[e] for e in g.incoming(z))
            if not num.close(s, 1, tol):
                raise InvalidLink(f"weights into {z} sum to {s}, not 1")


@dataclass(frozen=True)
class Uniform:
    """m(e) equal Boltzmann weights kappa(e) / m(e)."""


@dataclass(frozen=True)
class Geometric:
    """Boltzmann weights proportional to ratio**j, j = 0 .. m(e) - 1."""

    ratio: object = Fraction(1, 2)


SpectrumStyle = Union[Uniform, Geometric]


def parse_style(text: str) -> SpectrumStyle:
    """``uniform`` or ``geometric:R``."""
    t = text.strip().lower()
    if t == "uniform":
        return Uniform()
    if t.startswith("geometric"):
        _, _, r = t.partition(":")
        ratio = num.parse_number(r) if r else Fraction(1, 2)
        if not ratio > 0:
            raise ValueError("geometric ratio must be positive")
        return Geometric(ratio)
    raise ValueError(f"unknown spectrum style {text!r}")


def _profile(kappa, m: int, style: SpectrumStyle) -> tuple:
    if isinstance(style, Uniform):
        return (kappa / m,) * m
    powers = [style.ratio ** j for j in range(m)]
    total = sum(powers)
    return tuple(kappa * p / total for p in powers)


def realize_link(k: AbstractLink, beta, style: SpectrumStyle = Uniform(), mode: str = num.FLOAT) -> FlowSpec:
    """Flow at inverse temperature ``beta`` whose link equals ``k`` and Z == 1."""
    if beta == 0:
        raise BetaZero("realization needs beta != 0")
    k.validate()
    thermal = {}
    for e in k.graph.all_edges():
        kappa = num.coerce(k.weights[e], mode)
        ratio_style = style
        if isinstance(style, Geometric):
            ratio_style = Geometric(num.coerce(style.ratio, mode))
        thermal[e] = Spectrum.from_weights(_profile(kappa, e.multiplicity, ratio_style), beta)
    return FlowSpec(k.graph, beta, thermal, mode)


@dataclass
class RealizationReport:
    z_deviation: dict = field(default_factory=dict)
    link_deviation: dict = field(default_factory=dict)
    tol: float = 0.0

    @property
    def max_z_deviation(self):
        return max(self.z_deviation.values(), default=0)

    @property
    def max_link_deviation(self):
        return max(self.link_deviation.values(), default=0)

    @property
    def z_ok(self) -> bool:
        return self.max_z_deviation <= self.tol

    @property
    def link_ok(self) -> bool:
        return self.max_link_deviation <= self.tol

    @property
    def passed(self) -> bool:
        return self.z_ok and self.link_ok


def verify_realization(f: FlowSpec, k: AbstractLink, tol: float = 1e-12) -> RealizationReport:
    """Check Z(z) == 1 everywhere and kappa_f(r(e), s(e)) == k(e) on every edge."""
    if f.graph is not k.graph:
        same = ([tuple(lv) for lv in f.graph.levels] == [tuple(lv) for lv in k.graph.levels]
                and set(f.graph.all_edges()) == set(k.graph.all_edges()))
        if not same:
            raise GraphMismatch("flow and link live on different graphs")
    rep = RealizationReport(tol=0 if f.mode == num.EXACT else tol)
    vz = f.table.vertex_z
    for z in f.graph.vertices():
        rep.z_deviation[z] = num.INF if num.is_inf(vz[z]) else num.deviation(vz[z], 1)
    for e in f.graph.all_edges():
        rep.link_deviation[e] = num.deviation(link_adjacent(f, e.target, e.source),
                                              num.coerce(k.weights[e], f.mode))
    return rep
