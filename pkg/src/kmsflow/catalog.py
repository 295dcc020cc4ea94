"""Concrete graphs, flows and coherent systems.

``pascal``/``bernoulli_system`` give the de Finetti picture, ``q_pascal``
weights Pascal's triangle so that vertex partition functions are Gaussian
binomials, and ``young``/
``plancherel_system`` give the Young lattice with the Plancherel measures.
Random builders feed the property tests and the acceptance suite.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import numeric as num
from .errors import DepthLimit, ParameterOutOfRange
from .flow import FlowSpec, Spectrum
from .graph import GradedGraph, Vertex
from .harmonic import CoherentSystem
from .realize import AbstractLink

YOUNG_MAX_DEPTH = 12
EMPTY_PARTITION = "∅"


def _require_depth(N: int) -> None:
    if N < 1:
        raise ParameterOutOfRange(f"depth must be >= 1, got {N}")


def pascal(N: int) -> GradedGraph:
    """Vertices (n, k), 0 <= k <= n; edges (n-1, k) -> (n, k) and (n-1, k-1) -> (n, k)."""
    _require_depth(N)
    levels = [[str(k) for k in range(n + 1)] for n in range(N + 1)]
    edges = []
    for n in range(1, N + 1):
        for k in range(n + 1):
            if k < n:
                edges.append(((n - 1, str(k)), (n, str(k)), 1))
            if k > 0:
                edges.append(((n - 1, str(k - 1)), (n, str(k)), 1))
    return GradedGraph.build(levels, edges)


def zero_flow(g: GradedGraph, beta=0, mode: str = num.EXACT) -> FlowSpec:
    """Every edge Hamiltonian is 0, so Z(e) = m(e) at every beta."""
    thermal = {e: Spectrum((0,) * e.multiplicity) for e in g.all_edges()}
    return FlowSpec(g, beta, thermal, mode)


def pascal_flow(N: int, beta=0, mode: str = num.EXACT) -> FlowSpec:
    return zero_flow(pascal(N), beta, mode)


def bernoulli_system(N: int, p, mode: str = num.EXACT) -> CoherentSystem:
    """nu_p(n, k) = C(n, k) p^k (1 - p)^(n - k) on Pascal's graph."""
    p = num.coerce(p, mode)
    if not 0 < p < 1:
        raise ParameterOutOfRange(f"need 0 < p < 1, got {p}")
    g = pascal(N)
    vals = {}
    for level in g.levels:
        for z in level:
            n, k = z.level, int(z.label)
            vals[z] = math.comb(n, k) * p ** k * (1 - p) ** (n - k)
    return CoherentSystem(g, N, vals)


def q_pascal(N: int, q, beta, mode: str | None = None) -> FlowSpec:
    """Pascal's graph with Z(e) = q^k on the step (n-1, k) -> (n, k) and 1 on (n-1, k-1) -> (n, k).

    The q-Pascal rule [n, k]_q = [n-1, k-1]_q + q^k [n-1, k]_q makes the vertex
    partition function the Gaussian binomial [n choose k]_q. At q = 1 every
    Z(e) is 1 and the link is the classical one.
    """
    if mode is None:
        mode = num.EXACT if isinstance(q, (int, Fraction)) or (isinstance(q, str) and "." not in q) else num.FLOAT
    q = num.coerce(q, mode)
    if not 0 < q <= 1:
        raise ParameterOutOfRange(f"need 0 < q <= 1, got {q}")
    if beta == 0:
        raise ParameterOutOfRange("q_pascal needs beta != 0")
    g = pascal(N)
    thermal = {}
    for e in g.all_edges():
        k = int(e.target.label)
        stay = int(e.source.label) == k
        w = q ** k if stay else num.one(mode)
        thermal[e] = Spectrum((0,)) if w == 1 else Spectrum.from_weights((w,), beta)
    return FlowSpec(g, beta, thermal, mode)


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n in reverse-lexicographic order, e.g. (3), (2, 1), (1, 1, 1)."""
    out = []

    def rec(rest: int, cap: int, prefix: tuple):
        if rest == 0:
            out.append(prefix)
            return
        for part in range(min(rest, cap), 0, -1):
            rec(rest - part, part, prefix + (part,))

    rec(n, n, ())
    return out


def partition_label(lam: tuple[int, ...]) -> str:
    return ",".join(map(str, lam)) if lam else EMPTY_PARTITION


def parse_partition(label: str) -> tuple[int, ...]:
    if label == EMPTY_PARTITION:
        return ()
    return tuple(int(x) for x in label.split(","))


def add_box(lam: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []
    for i in range(len(lam) + 1):
        row = lam[i] if i < len(lam) else 0
        if i == 0 or lam[i - 1] > row:
            new = list(lam) + ([0] if i == len(lam) else [])
            new[i] += 1
            out.append(tuple(new))
    return out


def young(N: int) -> GradedGraph:
    """Young's lattice to depth N; edges add one box."""
    _require_depth(N)
    if N > YOUNG_MAX_DEPTH:
        raise DepthLimit(f"young graph limited to depth {YOUNG_MAX_DEPTH}")
    levels = [[partition_label(lam) for lam in partitions(n)] for n in range(N + 1)]
    edges = []
    for n in range(N):
        for lam in partitions(n):
            for mu in add_box(lam):
                edges.append(((n, partition_label(lam)), (n + 1, partition_label(mu)), 1))
    return GradedGraph.build(levels, edges)


def young_flow(N: int, beta=0, mode: str = num.EXACT) -> FlowSpec:
    return zero_flow(young(N), beta, mode)


def hook_dim(lam: tuple[int, ...]) -> int:
    """Number of standard tableaux of shape lam, by the hook length formula."""
    n = sum(lam)
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, r in enumerate(lam):
        for j in range(r):
            hooks *= (r - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(n) // hooks


def plancherel_system(N: int, mode: str = num.EXACT) -> CoherentSystem:
    """nu(lam) = dim(lam)^2 / n! on Young's lattice."""
    g = young(N)
    vals = {}
    for level in g.levels:
        for z in level:
            lam = parse_partition(z.label)
            vals[z] = num.coerce(Fraction(hook_dim(lam) ** 2, math.factorial(z.level)), mode)
    return CoherentSystem(g, N, vals)


def random_graph(depth: int, rng: np.random.Generator, max_width: int = 3, max_mult: int = 1) -> GradedGraph:
    """Random graph satisfying the graded-graph axioms below the top level."""
    widths = [1] + [int(rng.integers(1, max_width + 1)) for _ in range(depth)]
    levels = [[f"v{i}" for i in range(w)] for w in widths]
    edges = []
    for n in range(1, depth + 1):
        pairs = set()
        for t in range(widths[n]):
            k = int(rng.integers(1, widths[n - 1] + 1))
            for s in rng.choice(widths[n - 1], size=k, replace=False):
                pairs.add((int(s), t))
        for s in range(widths[n - 1]):
            if not any(p[0] == s for p in pairs):
                pairs.add((s, int(rng.integers(widths[n]))))
        for s, t in sorted(pairs):
            m = int(rng.integers(1, max_mult + 1))
            edges.append(((n - 1, f"v{s}"), (n, f"v{t}"), m))
    return GradedGraph.build(levels, edges)


def random_link(g: GradedGraph, rng: np.random.Generator, mode: str = num.EXACT) -> AbstractLink:
    """Strictly positive weights normalized over the incoming edges of every vertex."""
    weights = {}
    for z in g.vertices():
        inc = g.incoming(z) if z.level else ()
        if not inc:
            continue
        raw = [int(rng.integers(1, 10)) for _ in inc]
        total = sum(raw)
        for e, r in zip(inc, raw):
            weights[e] = Fraction(r, total) if mode == num.EXACT else r / total
    return AbstractLink(g, weights)


def random_flow(g: GradedGraph, beta, rng: np.random.Generator, mode: str = num.FLOAT) -> FlowSpec:
    """Random spectra. Exact mode with beta != 0 pins rational Boltzmann weights."""
    thermal = {}
    for e in g.all_edges():
        if mode == num.EXACT and beta != 0:
            w = tuple(Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 10))) for _ in range(e.multiplicity))
            thermal[e] = Spectrum.from_weights(w, beta)
        elif mode == num.EXACT:
            thermal[e] = Spectrum(tuple(Fraction(int(rng.integers(0, 20)), 10) for _ in range(e.multiplicity)))
        else:
            thermal[e] = Spectrum(tuple(float(x) for x in rng.uniform(-1.0, 2.0, size=e.multiplicity)))
    return FlowSpec(g, beta, thermal, mode)
