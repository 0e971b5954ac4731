"""Sparse matrix storage and structural operations.

The canonical layout is compressed sparse row (CSR): a row-pointer
array, column indices strictly increasing within each row, and a value
array that never contains the semiring's 0-element. All indices are
0-based internally; file formats shift at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import BinaryOp, Domain, Semiring
from .errors import DimensionError, GraphMatError, IndexBoundsError


class Dimensions(NamedTuple):
    nrows: int
    ncols: int


@dataclass
class TripleList:
    """Parallel (rows, cols, vals) vectors, the interchange form."""

    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray

    @classmethod
    def from_lists(cls, rows, cols, vals, dtype=None):
        return cls(
            np.asarray(rows, dtype=np.int64),
            np.asarray(cols, dtype=np.int64),
            np.asarray(list(vals), dtype=dtype),
        )

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        for r, c, v in zip(self.rows, self.cols, self.vals):
            yield int(r), int(c), v


class SparseMatrix:
    """Immutable CSR matrix over a scalar domain.

    Construct through build(), not directly; the constructor trusts its
    arguments to already be canonical.
    """

    __slots__ = ("nrows", "ncols", "indptr", "indices", "values", "domain")

    def __init__(self, nrows, ncols, indptr, indices, values, domain: Domain):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.indptr = indptr
        self.indices = indices
        self.values = values
        self.domain = domain

    @property
    def dims(self) -> Dimensions:
        return Dimensions(self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return len(self.indices)

    def row(self, i):
        """(column indices, values) of stored entries in row i."""
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.values[lo:hi]

    def get(self, i, j, default=None):
        """Stored value at (i, j), or `default` if implicit."""
        cols, vals = self.row(i)
        k = np.searchsorted(cols, j)
        if k < len(cols) and cols[k] == j:
            return vals[k]
        return default

    def row_arrays(self):
        """Expanded row index per stored entry (CSR -> COO rows)."""
        return np.repeat(np.arange(self.nrows, dtype=np.int64),
                         np.diff(self.indptr))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.domain.name == other.domain.name
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and bool(np.all(self.values == other.values))
        )

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return (f"SparseMatrix({self.nrows}x{self.ncols}, "
                f"nnz={self.nnz}, domain={self.domain.name})")


def empty_matrix(sr: Semiring, nrows, ncols) -> SparseMatrix:
    _check_dims(nrows, ncols)
    return SparseMatrix(
        nrows, ncols,
        np.zeros(nrows + 1, dtype=np.int64),
        np.empty(0, dtype=np.int64),
        np.empty(0, dtype=sr.domain.dtype),
        sr.domain,
    )


def _check_dims(nrows, ncols):
    if nrows < 1 or ncols < 1:
        raise DimensionError("matrix dimensions must be at least 1x1",
                             expected="m >= 1, n >= 1",
                             actual=f"{nrows}x{ncols}")


def coalesce(nrows, ncols, rows, cols, vals, dup: BinaryOp, zero,
             domain: Domain, strict_dup=False) -> SparseMatrix:
    """Sort COO triples row-major, fold duplicates left-to-right with
    `dup`, strip values equal to `zero`, and emit canonical CSR.

    The stable sort preserves input order within a duplicate group, so
    the fold order is the input order even for non-commutative ops.
    """
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    vals = np.asarray(vals)
    if vals.dtype != domain.dtype:
        vals = vals.astype(domain.dtype)
    if len(rows):
        if nrows * ncols < 2**62:
            order = np.argsort(rows * ncols + cols, kind="stable")
        else:
            order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        boundary = np.empty(len(rows), dtype=bool)
        boundary[0] = True
        boundary[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
        if strict_dup and not boundary.all():
            k = int(np.flatnonzero(~boundary)[0])
            raise GraphMatError(
                f"duplicate entry at ({rows[k]}, {cols[k]}) in strict mode")
        starts = np.flatnonzero(boundary)
        rows, cols = rows[starts], cols[starts]
        vals = dup.ufunc.reduceat(vals, starts)
        if vals.dtype != domain.dtype:
            vals = vals.astype(domain.dtype)
        keep = vals != zero
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
    indptr = np.zeros(nrows + 1, dtype=np.int64)
    if len(rows):
        np.cumsum(np.bincount(rows, minlength=nrows), out=indptr[1:])
    return SparseMatrix(nrows, ncols, indptr, cols, vals, domain)


def build(sr: Semiring, dims, triples, dup: BinaryOp | None = None,
          strict_dup=False) -> SparseMatrix:
    """Construct a sparse matrix from (rows, cols, vals) triples.

    Duplicate (row, col) entries are combined left-to-right with `dup`
    (the semiring's add by default); combined values equal to the
    0-element are dropped. strict_dup=True errors on any duplicate
    instead.
    """
    nrows, ncols = dims
    _check_dims(nrows, ncols)
    if isinstance(triples, TripleList):
        rows, cols, vals = triples.rows, triples.cols, triples.vals
    else:
        rows, cols, vals = triples
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    if not (len(rows) == len(cols) == len(vals)):
        raise GraphMatError(
            f"triple vectors disagree in length: "
            f"{len(rows)}, {len(cols)}, {len(vals)}")
    if len(rows):
        if rows.min() < 0 or rows.max() >= nrows:
            raise IndexBoundsError(
                f"row index outside [0, {nrows})")
        if cols.min() < 0 or cols.max() >= ncols:
            raise IndexBoundsError(
                f"column index outside [0, {ncols})")
    vals = np.asarray(list(vals) if sr.domain.dtype is object else vals,
                      dtype=sr.domain.dtype)
    sr.domain.check_array(vals)
    return coalesce(nrows, ncols, rows, cols, vals,
                    dup or sr.add, sr.zero, sr.domain, strict_dup)


def extract_tuples(a: SparseMatrix) -> TripleList:
    """All stored entries in row-major order."""
    return TripleList(a.row_arrays(), a.indices.copy(), a.values.copy())


def transpose(a: SparseMatrix) -> SparseMatrix:
    """Swap rows and columns: result(j, i) = a(i, j)."""
    return _transpose(a)


def _transpose(a: SparseMatrix) -> SparseMatrix:
    rows = a.row_arrays()
    order = np.lexsort((rows, a.indices))
    t_rows = a.indices[order]
    indptr = np.zeros(a.ncols + 1, dtype=np.int64)
    if len(t_rows):
        np.cumsum(np.bincount(t_rows, minlength=a.ncols), out=indptr[1:])
    return SparseMatrix(a.ncols, a.nrows, indptr, rows[order],
                        a.values[order], a.domain)


def matrices_close(a: SparseMatrix, b: SparseMatrix, rel_tol=0.0) -> bool:
    """Structural equality, with optional relative tolerance on values
    (same stored pattern required either way)."""
    if rel_tol == 0.0 or a.domain.dtype is not np.float64:
        return a == b
    if (a.dims != b.dims or a.domain.name != b.domain.name
            or not np.array_equal(a.indptr, b.indptr)
            or not np.array_equal(a.indices, b.indices)):
        return False
    return bool(np.allclose(a.values, b.values, rtol=rel_tol, atol=0.0,
                            equal_nan=True))


def check_no_stored_zero(a: SparseMatrix, zero) -> bool:
    """Structural audit: no stored value equals the 0-element."""
    return not np.any(a.values == zero)
