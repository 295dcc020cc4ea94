"""Markov links between levels, local KMS states and conditional expectations.

The link from z (level n) down to z' (level m) is

    kappa(z, z') = Z(z') * W(z' -> z) / Z(z),

where W(z' -> z) sums prod Z(e) over edge paths from z' up to z. Rows of
infinite-Z vertices are identically zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import numeric as num
from .errors import (
    InfinitePartitionFunction,
    LevelOrderViolation,
    NonAdjacentLevels,
)
from .flow import FlowSpec, canonical_basis, is_finite
from .graph import Vertex


@dataclass(frozen=True)
class LinkMatrix:
    upper: int
    lower: int
    rows: tuple[Vertex, ...]
    cols: tuple[Vertex, ...]
    entries: tuple[tuple, ...]

    def __getitem__(self, key):
        z, zl = key
        return self.entries[self.rows.index(z)][self.cols.index(zl)]

    def row(self, z: Vertex) -> dict:
        return dict(zip(self.cols, self.entries[self.rows.index(z)]))


@dataclass
class MarkovReport:
    level: int
    negative: list = field(default_factory=list)
    row_errors: dict = field(default_factory=dict)
    ck_errors: dict = field(default_factory=dict)
    zero_rows: list = field(default_factory=list)
    tol: float = 0.0

    @property
    def max_row_error(self):
        return max(self.row_errors.values(), default=0)

    @property
    def max_ck_error(self):
        return max(self.ck_errors.values(), default=0)

    @property
    def passed(self) -> bool:
        return (not self.negative and self.max_row_error <= self.tol
                and self.max_ck_error <= self.tol)


@dataclass(frozen=True)
class DiagonalObservable:
    """Values of a diagonal element of B(H_z), in the canonical basis order."""

    vertex: Vertex
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    @classmethod
    def constant(cls, f: FlowSpec, z: Vertex, c=1) -> "DiagonalObservable":
        return cls(z, (c,) * f.graph.dims[z])


def path_weights_up(f: FlowSpec, z_low: Vertex) -> dict:
    """W(z_low -> z) for every z at or above ``z_low``'s level (zero when unreachable)."""
    key = ("up", z_low)
    if key in f.cache:
        return f.cache[key]
    g = f.graph
    ez = f.table.edge_z
    w = {z_low: num.one(f.mode)}
    for level in g.levels[z_low.level + 1:]:
        for z in level:
            total = num.zero(f.mode)
            for e in g.incoming(z):
                below = w.get(e.source)
                if not below:
                    continue
                if num.is_inf(below) or num.is_inf(ez[e]) or num.is_inf(total):
                    total = num.INF
                else:
                    total = total + ez[e] * below
            if total:
                w[z] = total
    f.cache[key] = w
    return w


def link_column(f: FlowSpec, z_low: Vertex) -> dict:
    """kappa(z, z_low) for every vertex z strictly above ``z_low``'s level."""
    key = ("col", z_low)
    if key in f.cache:
        return f.cache[key]
    g = f.graph
    g.require(z_low)
    vz = f.table.vertex_z
    w = path_weights_up(f, z_low)
    col = {}
    for level in g.levels[z_low.level + 1:]:
        for z in level:
            wz = w.get(z)
            if not wz or num.is_inf(vz[z]):
                col[z] = num.zero(f.mode)
            else:
                col[z] = vz[z_low] * wz / vz[z]
    f.cache[key] = col
    return col


def link_adjacent(f: FlowSpec, z: Vertex, z_low: Vertex):
    """kappa(z, z') for z' one level below z."""
    f.graph.require(z)
    f.graph.require(z_low)
    if z.level != z_low.level + 1:
        raise NonAdjacentLevels(f"{z} and {z_low} are not on adjacent levels")
    if not is_finite(f, z):
        return num.zero(f.mode)
    e = f.graph.edge_between(z, z_low)
    if e is None:
        return num.zero(f.mode)
    t = f.table
    return t.vertex_z[z_low] * t.edge_z[e] / t.vertex_z[z]


def link_multi(f: FlowSpec, z: Vertex, z_low: Vertex):
    """kappa(z, z'') for any z'' on a strictly lower level."""
    f.graph.require(z)
    if z.level <= z_low.level:
        raise LevelOrderViolation(f"{z_low} is not below {z}")
    return link_column(f, z_low)[z]


def link_matrix(f: FlowSpec, upper: int, lower: int) -> LinkMatrix:
    if not 0 <= lower < upper <= f.graph.depth:
        raise LevelOrderViolation(f"need 0 <= lower < upper <= depth, got {lower}, {upper}")
    rows = f.graph.levels[upper]
    cols = f.graph.levels[lower]
    columns = [link_column(f, c) for c in cols]
    entries = tuple(tuple(col[z] for col in columns) for z in rows)
    return LinkMatrix(upper, lower, rows, cols, entries)


def compose(a: LinkMatrix, b: LinkMatrix) -> LinkMatrix:
    """Matrix product of kernels a: n -> m and b: m -> l."""
    if a.lower != b.upper:
        raise LevelOrderViolation("kernels do not chain")
    entries = tuple(
        tuple(sum(ra[k] * b.entries[k][j] for k in range(len(b.rows))) for j in range(len(b.cols)))
        for ra in a.entries
    )
    return LinkMatrix(a.upper, b.lower, a.rows, b.cols, entries)


def verify_markov(f: FlowSpec, n: int, tol: float = 1e-12) -> MarkovReport:
    """Kernel laws for level ``n``: non-negativity, row sums, Chapman-Kolmogorov.

    Every lower level m is checked, and every intermediate level between them.
    In exact mode the comparisons are equalities and ``tol`` is ignored.
    """
    rep = MarkovReport(level=n, tol=0 if f.mode == num.EXACT else tol)
    finite, infinite = _split(f, n)
    rep.zero_rows = list(infinite)
    mats = {m: link_matrix(f, n, m) for m in range(n)}
    lower_mats = {}
    for m in range(n):
        mat = mats[m]
        for i, z in enumerate(mat.rows):
            for j, v in enumerate(mat.entries[i]):
                if v < 0:
                    rep.negative.append((z, mat.cols[j]))
            if z in finite:
                rep.row_errors[(z, m)] = num.deviation(sum(mat.entries[i]), 1)
        for k in range(m + 1, n):
            if (k, m) not in lower_mats:
                lower_mats[(k, m)] = link_matrix(f, k, m)
            via = compose(mats[k], lower_mats[(k, m)])
            err = max((num.deviation(x, y) for r1, r2 in zip(via.entries, mat.entries)
                       for x, y in zip(r1, r2)), default=0)
            rep.ck_errors[(m, k)] = err
    return rep


def _split(f: FlowSpec, n: int):
    level = f.graph.levels[n]
    finite = [z for z in level if is_finite(f, z)]
    return finite, [z for z in level if z not in finite]


def _require_finite(f: FlowSpec, z: Vertex):
    if not is_finite(f, z):
        raise InfinitePartitionFunction(f"Z_beta({z}) is infinite")


def trace_link(f: FlowSpec, z: Vertex, z_low: Vertex):
    """Trace oracle: Tr(rho_z P) / Tr(rho_z), P projecting onto paths through ``z_low``."""
    if z.level <= z_low.level:
        raise LevelOrderViolation(f"{z_low} is not below {z}")
    if not is_finite(f, z):
        return num.zero(f.mode)
    basis = canonical_basis(f, z)
    total = sum((b.weight for b in basis), num.zero(f.mode))
    hit = sum((b.weight for b in basis if _through(b.path, z_low)), num.zero(f.mode))
    return hit / total


def _through(path, z_low: Vertex) -> bool:
    if z_low.level == 0:
        return True
    return path[z_low.level - 1].target == z_low


def tau_eval(f: FlowSpec, z: Vertex, a: DiagonalObservable):
    """Local KMS state of z applied to a diagonal observable: sum rho_i a_i / Z(z)."""
    _require_finite(f, z)
    basis = canonical_basis(f, z)
    if len(a.values) != len(basis):
        raise ValueError(f"observable has {len(a.values)} values, dim H_z = {len(basis)}")
    total = sum((b.weight * x for b, x in zip(basis, a.values)), num.zero(f.mode))
    return total / f.table.vertex_z[z]


def embed(f: FlowSpec, z: Vertex, z_low: Vertex, a: DiagonalObservable) -> DiagonalObservable:
    """Image of ``a`` under the non-unital inclusion B(H_z') -> B(H_z), x -> z x.

    Basis vectors of H_z whose path avoids z' get 0; the others read ``a`` at
    the basis vector of H_z' given by their lower path prefix and eigen indices.
    """
    if z.level < z_low.level:
        raise LevelOrderViolation(f"{z_low} is above {z}")
    if z == z_low:
        return a
    m = z_low.level
    lookup = {(b.path, b.index): i for i, b in enumerate(canonical_basis(f, z_low))}
    vals = []
    for b in canonical_basis(f, z):
        if _through(b.path, z_low):
            vals.append(a.values[lookup[(b.path[:m], b.index[:m])]])
        else:
            vals.append(0 * a.values[0] if a.values else 0)
    return DiagonalObservable(z, vals)


def lift(f: FlowSpec, a: Mapping[Vertex, DiagonalObservable], n: int) -> dict:
    """Embed an element of A_m (given per vertex of Z_m) into A_n, vertex by vertex."""
    out = {}
    for z in f.graph.levels[n]:
        acc = None
        for zl, obs in a.items():
            if zl.level == n:
                part = obs if zl == z else None
            else:
                part = embed(f, z, zl, obs)
            if part is None:
                continue
            acc = part.values if acc is None else tuple(x + y for x, y in zip(acc, part.values))
        if acc is None:
            acc = (num.zero(f.mode),) * f.graph.dims[z]
        out[z] = DiagonalObservable(z, acc)
    return out


def central(f: FlowSpec, coeffs: Mapping[Vertex, object]) -> dict:
    """The central element sum_z c_z z of A_n as per-vertex diagonal observables."""
    return {z: DiagonalObservable.constant(f, z, c) for z, c in coeffs.items()}


def conditional_expectation(f: FlowSpec, n: int, a: Mapping[Vertex, DiagonalObservable]) -> dict:
    """Central coefficients z -> tau_z(z a) over the finite-Z vertices of level n."""
    out = {}
    for z in f.graph.levels[n]:
        if not is_finite(f, z):
            continue
        obs = a.get(z)
        out[z] = num.zero(f.mode) if obs is None else tau_eval(f, z, obs)
    return out


def verify_compatibility(f: FlowSpec, z: Vertex, z_low: Vertex, a: DiagonalObservable,
                         tol: float = 1e-10) -> bool:
    """tau_z(iota(a)) == kappa(z, z') tau_z'(a)."""
    _require_finite(f, z)
    _require_finite(f, z_low)
    lhs = tau_eval(f, z, embed(f, z, z_low, a))
    k = link_multi(f, z, z_low) if z != z_low else num.one(f.mode)
    rhs = k * tau_eval(f, z_low, a)
    return num.close(lhs, rhs, tol)
