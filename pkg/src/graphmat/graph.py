"""Graph algorithms composed from the semiring kernels.

Adjacency rows are out-vertices: A(i, j) stored means an edge i -> j.
Frontier expansion therefore multiplies the transposed adjacency
against a column frontier (equivalently v^T A), so the result lands on
the in-vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Semiring, semiring_by_name
from .errors import DimensionError, DomainError, GraphMatError, IndexBoundsError
from .kernels import ewise_add, ewise_mult, mxm, mxv
from .matrix import SparseMatrix, build, extract_tuples, transpose

_BOOL_SR = semiring_by_name("or-and")
_GF2_SR = semiring_by_name("xor-and")
_MINPLUS = semiring_by_name("min-plus")
_ARITH = semiring_by_name("arith-real")


@dataclass
class GraphHandle:
    """Adjacency and/or incidence-pair view of one graph."""

    adjacency: SparseMatrix | None = None
    incidence_out: SparseMatrix | None = None
    incidence_in: SparseMatrix | None = None
    directed: bool = True

    @property
    def vertex_count(self):
        if self.adjacency is not None:
            return self.adjacency.nrows
        return self.incidence_out.ncols

    @property
    def edge_count(self):
        if self.incidence_out is not None:
            return self.incidence_out.nrows
        return self.adjacency.nnz

    def check_consistent(self, sr: Semiring) -> bool:
        """If both views are present, the adjacency must equal the
        incidence projection E_out^T E_in."""
        if self.adjacency is None or self.incidence_out is None:
            return True
        if self.incidence_out.nrows != self.incidence_in.nrows:
            return False
        return adjacency_from_incidence(
            sr, self.incidence_out, self.incidence_in) == self.adjacency


@dataclass
class BfsResult:
    """Hop counts (None = unreached) and optional predecessor tree."""

    levels: list
    parents: list | None = None


def adjacency_from_incidence(sr: Semiring, e_out: SparseMatrix,
                             e_in: SparseMatrix) -> SparseMatrix:
    """Project an incidence pair to an adjacency matrix: E_out^T E_in.

    Multi-edges combine through the semiring's add; a hyper-edge with h
    in-vertices contributes h adjacency entries per out-vertex.
    """
    if e_out.nrows != e_in.nrows:
        raise DimensionError("incidence matrices disagree on edge count",
                             expected=f"{e_out.nrows} edges",
                             actual=f"{e_in.nrows} edges")
    return mxm(sr, transpose(e_out), e_in)


def laplacian_from_incidence(e_signed: SparseMatrix) -> SparseMatrix:
    """Graph Laplacian E^T E from a signed incidence matrix.

    Each row must hold exactly one -1 (out-vertex) and one +1
    (in-vertex); the product has vertex degrees on the diagonal and
    negative edge multiplicities off it.
    """
    if e_signed.domain.name != "real":
        raise DomainError("signed incidence must be over the real domain")
    for k in range(e_signed.nrows):
        _, vals = e_signed.row(k)
        if sorted(vals.tolist()) != [-1.0, 1.0]:
            raise GraphMatError(
                f"incidence row {k} is not one -1 and one +1")
    return mxm(_ARITH, transpose(e_signed), e_signed)


def _one_hot(sr: Semiring, n, positions, value=None):
    positions = list(positions)
    return build(sr, (n, 1), (positions, [0] * len(positions),
                              [value if value is not None else sr.one]
                              * len(positions)))


def bfs_levels(a: SparseMatrix, sources, max_hops=None,
               with_parents=True, gf2=False) -> BfsResult:
    """Multi-source BFS by repeated frontier expansion q <- v^T A.

    Uses the boolean or-and structure semiring by default; gf2=True
    switches to xor-and, where even edge multiplicities cancel.
    """
    if a.nrows != a.ncols:
        raise DimensionError("BFS needs a square adjacency matrix",
                             expected=f"{a.nrows}x{a.nrows}",
                             actual=f"{a.nrows}x{a.ncols}")
    n = a.nrows
    sources = list(sources)
    for s in sources:
        if not 0 <= s < n:
            raise IndexBoundsError(f"source {s} outside [0, {n})")
    if max_hops is None:
        max_hops = n
    sr = _GF2_SR if gf2 else _BOOL_SR
    # structure-only copy of the transposed adjacency
    at = transpose(a)
    at = SparseMatrix(at.nrows, at.ncols, at.indptr, at.indices,
                      np.ones(at.nnz, dtype=np.uint8), sr.domain)
    levels = [None] * n
    parents = [None] * n if with_parents else None
    frontier = _one_hot(sr, n, set(sources))
    for s in sources:
        levels[s] = 0
    visited = frontier
    hop = 0
    while frontier.nnz and hop < max_hops:
        hop += 1
        reached = mxv(sr, at, frontier)
        # mask out already-visited vertices: keep vertices in `reached`
        # whose entry vanishes under structural intersection with
        # `visited`
        hits = ewise_mult(sr.mul, sr.zero, reached, visited)
        frontier = _subtract_structure(sr, reached, hits)
        for v in frontier.row_arrays():
            levels[int(v)] = hop
        visited = ewise_add(sr.add if not gf2 else _BOOL_SR.add,
                            sr.zero, visited, frontier)
    if with_parents:
        tri = extract_tuples(a)
        for u, v, _ in tri:
            if (levels[u] is not None and levels[v] == levels[u] + 1
                    and (parents[v] is None or u < parents[v])):
                parents[v] = u
    return BfsResult(levels=levels, parents=parents)


def _subtract_structure(sr, a, b):
    """Entries of `a` whose position is not stored in `b`."""
    if b.nnz == 0:
        return a
    a_keys = a.row_arrays() * a.ncols + a.indices
    b_keys = b.row_arrays() * b.ncols + b.indices
    rows = a.row_arrays()
    keep = ~np.isin(a_keys, b_keys)
    return build(sr, a.dims, (rows[keep], a.indices[keep],
                              a.values[keep]))


def sssp_minplus(a: SparseMatrix, source) -> list:
    """Single-source shortest paths over min-plus.

    Bellman-Ford style relaxation d <- min(d, A^T min-plus d) until
    fixpoint or n - 1 rounds. Weights must be non-negative; the
    implicit zero is +inf.
    """
    if a.nrows != a.ncols:
        raise DimensionError("SSSP needs a square adjacency matrix",
                             expected=f"{a.nrows}x{a.nrows}",
                             actual=f"{a.nrows}x{a.ncols}")
    if not 0 <= source < a.nrows:
        raise IndexBoundsError(f"source {source} outside [0, {a.nrows})")
    if a.nnz and float(a.values.min()) < 0:
        raise DomainError("negative edge weight in min-plus SSSP")
    n = a.nrows
    at = transpose(a)
    d = _one_hot(_MINPLUS, n, [source], value=0.0)
    for _ in range(max(n - 1, 1)):
        relaxed = ewise_add(_MINPLUS.add, _MINPLUS.zero, d,
                            mxv(_MINPLUS, at, d))
        if relaxed == d:
            break
        d = relaxed
    dist = [math.inf] * n
    for v, _, w in extract_tuples(d):
        dist[v] = float(w)
    dist[source] = 0.0
    return dist


def graph_union(sr: Semiring, a: SparseMatrix,
                b: SparseMatrix) -> SparseMatrix:
    """Edge union with weights combined by the semiring's add."""
    return ewise_add(sr.add, sr.zero, a, b)


def graph_intersection(sr: Semiring, a: SparseMatrix,
                       b: SparseMatrix) -> SparseMatrix:
    """Edge intersection with weights scaled by the semiring's mul."""
    return ewise_mult(sr.mul, sr.zero, a, b)
