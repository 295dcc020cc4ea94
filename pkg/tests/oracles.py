"""Brute-force reference computations, kept independent of the library's recursions."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np


def raw_edges(g):
    """(source, target, multiplicity) triples read straight off the edge lists."""
    return [(e.source, e.target, e.multiplicity, e) for level in g.edges for e in level]


def dfs_vertex_paths(g, z):
    """Every vertex sequence root -> z found by scanning the raw edge list."""
    edges = raw_edges(g)
    out = []

    def walk(v, acc):
        if v.level == 0:
            out.append(tuple(reversed(acc)))
            return
        for s, t, _, e in edges:
            if t == v:
                walk(s, acc + [e])

    walk(z, [])
    return out


def path_sum_partition(f, z):
    """Z(z) as the literal sum over root paths of products of edge traces."""
    total = 0
    for path in dfs_vertex_paths(f.graph, z):
        prod = 1
        for e in path:
            prod *= edge_trace(f, e)
        total += prod
    return total


def edge_trace(f, e):
    t = f.thermal[e]
    if hasattr(t, "value"):
        return t.value
    if t.weights is not None and t.weights_beta == f.beta:
        return sum(t.weights)
    return sum(math.exp(-float(f.beta) * float(x)) for x in t.eigenvalues)


def dense_rho_blocks(f, z):
    """Per root path, the Kronecker product of exp(-beta H_e) diagonals, as float arrays."""
    blocks = []
    for path in dfs_vertex_paths(f.graph, z):
        mat = np.ones((1, 1))
        for e in path:
            t = f.thermal[e]
            if t.weights is not None and t.weights_beta == f.beta:
                d = np.array([float(w) for w in t.weights])
            else:
                d = np.exp(-float(f.beta) * np.array([float(x) for x in t.eigenvalues]))
            mat = np.kron(mat, np.diag(d))
        blocks.append((path, mat))
    return blocks


def dense_trace_link(f, z, z_low):
    """Tr(rho P) / Tr(rho) with P the projection onto paths through z_low."""
    blocks = dense_rho_blocks(f, z)
    total = sum(np.trace(m) for _, m in blocks)
    hit = 0.0
    for path, m in blocks:
        visited = {e.target for e in path} | {f.graph.root}
        if z_low in visited:
            hit += np.trace(m)
    return hit / total


def exact_trace_link(g, z, z_low, edge_z):
    """Exact version for flows whose edge traces are given as rationals."""
    total = Fraction(0)
    hit = Fraction(0)
    for path in dfs_vertex_paths(g, z):
        prod = Fraction(1)
        for e in path:
            prod *= edge_z[e]
        total += prod
        if z_low.level == 0 or z_low in {e.target for e in path}:
            hit += prod
    return hit / total


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by the coin-change recursion over part sizes."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


@lru_cache(maxsize=None)
def syt_count(lam: tuple) -> int:
    """Standard Young tableaux by removing one corner box at a time."""
    if sum(lam) == 0:
        return 1
    total = 0
    for i in range(len(lam)):
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        if lam[i] > nxt:
            smaller = list(lam)
            smaller[i] -= 1
            total += syt_count(tuple(x for x in smaller if x))
    return total


def binomial_pmf(n, k, p):
    return math.comb(n, k) * p ** k * (1 - p) ** (n - k)
