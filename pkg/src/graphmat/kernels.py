"""Semiring compute kernels over CSR matrices.

Every public function validates its arguments and then delegates to a
private ``_``-prefixed implementation. The benchmark harness times both
layers to measure the overhead the public surface adds on top of the
raw kernels.

All kernels are pure: inputs are never mutated and outputs never store
a value equal to the semiring's 0-element.
"""

from __future__ import annotations

import numpy as np

from .algebra import BinaryOp, Semiring
from .errors import DimensionError, DomainError, GraphMatError, IndexBoundsError
from .matrix import SparseMatrix, coalesce

# soft cap on expansion size per multiply chunk; keeps peak memory of
# large products bounded without affecting results
_MXM_CHUNK_PRODUCTS = 1 << 22


def _ranges(starts, counts):
    """Concatenate ranges(starts[k], starts[k] + counts[k]) into one
    flat index array."""
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    ends = np.cumsum(counts)
    return (np.arange(total, dtype=np.int64)
            - np.repeat(ends - counts, counts)
            + np.repeat(starts, counts))


def _csr_from_sorted(nrows, ncols, rows, cols, vals, domain):
    indptr = np.zeros(nrows + 1, dtype=np.int64)
    if len(rows):
        np.cumsum(np.bincount(rows, minlength=nrows), out=indptr[1:])
    return SparseMatrix(nrows, ncols, indptr, cols, vals, domain)


def _check_domains(sr_or_domain, *mats):
    name = (sr_or_domain.domain.name if isinstance(sr_or_domain, Semiring)
            else sr_or_domain.name)
    for m in mats:
        if m.domain.name != name:
            raise DomainError(
                f"domain mismatch: matrix holds {m.domain.name}, "
                f"operation expects {name}")


def _check_index_vector(idx, bound, what):
    idx = np.asarray(idx, dtype=np.int64)
    if len(idx) and (idx.min() < 0 or idx.max() >= bound):
        raise IndexBoundsError(f"{what} index outside [0, {bound})")
    return idx


# ---------------------------------------------------------------------------
# matrix multiply


def mxm(sr: Semiring, a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """C(i,j) = add-reduction over k of a(i,k) mul b(k,j)."""
    if a.ncols != b.nrows:
        raise DimensionError("inner dimensions do not match",
                             expected=f"l x * with l={a.ncols}",
                             actual=f"{b.nrows}x{b.ncols}")
    _check_domains(sr, a, b)
    return _mxm(sr, a, b)


def _mxm(sr: Semiring, a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    add_u, mul_u = sr.add.ufunc, sr.mul.ufunc
    domain = sr.domain
    b_rowlen = np.diff(b.indptr)
    a_rows = a.row_arrays()
    per_entry = b_rowlen[a.indices]

    # split output rows into chunks whose expanded product count stays
    # below the cap; groups for a given (i, j) never straddle chunks
    # because chunks end on row boundaries
    cum = np.concatenate(([0], np.cumsum(per_entry)))
    row_products = cum[a.indptr[1:]] - cum[a.indptr[:-1]]
    out_rows, out_cols, out_vals = [], [], []
    r0 = 0
    while r0 < a.nrows:
        budget = 0
        r1 = r0
        while r1 < a.nrows and (budget == 0
                                or budget + row_products[r1] <= _MXM_CHUNK_PRODUCTS):
            budget += row_products[r1]
            r1 += 1
        lo, hi = a.indptr[r0], a.indptr[r1]
        counts = per_entry[lo:hi]
        pos = _ranges(b.indptr[a.indices[lo:hi]], counts)
        i_exp = np.repeat(a_rows[lo:hi], counts)
        prod = mul_u(np.repeat(a.values[lo:hi], counts), b.values[pos])
        j_exp = b.indices[pos]
        if len(prod):
            # stable sort keeps k ascending within each (i, j) group;
            # a fused integer key sorts much faster than lexsort
            if a.nrows * b.ncols < 2**62:
                key = i_exp * b.ncols + j_exp
                order = np.argsort(key, kind="stable")
            else:
                order = np.lexsort((j_exp, i_exp))
            i_exp, j_exp, prod = i_exp[order], j_exp[order], prod[order]
            boundary = np.empty(len(prod), dtype=bool)
            boundary[0] = True
            boundary[1:] = (i_exp[1:] != i_exp[:-1]) | (j_exp[1:] != j_exp[:-1])
            starts = np.flatnonzero(boundary)
            vals = add_u.reduceat(prod, starts)
            if vals.dtype != domain.dtype:
                vals = vals.astype(domain.dtype)
            keep = vals != sr.zero
            out_rows.append(i_exp[starts][keep])
            out_cols.append(j_exp[starts][keep])
            out_vals.append(vals[keep])
        r0 = r1

    if out_rows:
        rows = np.concatenate(out_rows)
        cols = np.concatenate(out_cols)
        vals = np.concatenate(out_vals)
    else:
        rows = cols = np.empty(0, dtype=np.int64)
        vals = np.empty(0, dtype=domain.dtype)
    domain.check_array(vals)
    return _csr_from_sorted(a.nrows, b.ncols, rows, cols, vals, domain)


def mxv(sr: Semiring, a: SparseMatrix, v: SparseMatrix) -> SparseMatrix:
    """Matrix times column vector; v must be n x 1."""
    if v.ncols != 1:
        raise DimensionError("mxv expects a column vector",
                             expected=f"{a.ncols}x1",
                             actual=f"{v.nrows}x{v.ncols}")
    if a.ncols != v.nrows:
        raise DimensionError("vector length does not match matrix columns",
                             expected=f"{a.ncols}x1",
                             actual=f"{v.nrows}x1")
    _check_domains(sr, a, v)
    return _mxv(sr, a, v)


def _mxv(sr: Semiring, a: SparseMatrix, v: SparseMatrix) -> SparseMatrix:
    return _mxm(sr, a, v)


# ---------------------------------------------------------------------------
# element-wise


def _check_ewise(a, b):
    if a.dims != b.dims:
        raise DimensionError("element-wise operands differ in shape",
                             expected=f"{a.nrows}x{a.ncols}",
                             actual=f"{b.nrows}x{b.ncols}")
    if a.domain.name != b.domain.name:
        raise DomainError(f"domain mismatch: {a.domain.name} vs "
                          f"{b.domain.name}")


def ewise_add(op: BinaryOp, zero, a: SparseMatrix,
              b: SparseMatrix) -> SparseMatrix:
    """Structural union; op applied where both matrices store a value."""
    _check_ewise(a, b)
    return _ewise_add(op, zero, a, b)


def _ewise_add(op, zero, a, b):
    rows = np.concatenate([a.row_arrays(), b.row_arrays()])
    cols = np.concatenate([a.indices, b.indices])
    vals = np.concatenate([a.values, b.values])
    return coalesce(a.nrows, a.ncols, rows, cols, vals, op, zero, a.domain)


def ewise_mult(op: BinaryOp, zero, a: SparseMatrix,
               b: SparseMatrix) -> SparseMatrix:
    """Structural intersection; op applied to each co-located pair."""
    _check_ewise(a, b)
    return _ewise_mult(op, zero, a, b)


def _ewise_mult(op, zero, a, b):
    rows = np.concatenate([a.row_arrays(), b.row_arrays()])
    cols = np.concatenate([a.indices, b.indices])
    vals = np.concatenate([a.values, b.values])
    order = np.lexsort((cols, rows))  # stable: a's entry precedes b's
    rows, cols, vals = rows[order], cols[order], vals[order]
    if len(rows) < 2:
        pair = np.empty(0, dtype=np.int64)
    else:
        pair = np.flatnonzero((rows[1:] == rows[:-1])
                              & (cols[1:] == cols[:-1]))
    out_vals = op.ufunc(vals[pair], vals[pair + 1])
    out_vals = np.asarray(out_vals)
    if out_vals.dtype != a.domain.dtype:
        out_vals = out_vals.astype(a.domain.dtype)
    keep = out_vals != zero
    a.domain.check_array(out_vals[keep])
    return _csr_from_sorted(a.nrows, a.ncols, rows[pair][keep],
                            cols[pair][keep], out_vals[keep], a.domain)


# ---------------------------------------------------------------------------
# extract / assign / selection


def extract(a: SparseMatrix, i, j) -> SparseMatrix:
    """C(p,q) = a(i[p], j[q]). Repeats replicate, order permutes."""
    i = _check_index_vector(i, a.nrows, "row")
    j = _check_index_vector(j, a.ncols, "column")
    if len(i) == 0 or len(j) == 0:
        raise DimensionError("extract needs nonempty index vectors",
                             expected="|i| >= 1 and |j| >= 1",
                             actual=f"|i|={len(i)}, |j|={len(j)}")
    return _extract(a, i, j)


def _extract(a, i, j):
    # gather selected source rows
    counts = np.diff(a.indptr)[i]
    pos = _ranges(a.indptr[i], counts)
    p_exp = np.repeat(np.arange(len(i), dtype=np.int64), counts)
    cols_exp = a.indices[pos]
    vals_exp = a.values[pos]
    # fan each source column out to every output column that selects it
    j_order = np.argsort(j, kind="stable")
    j_sorted = j[j_order]
    left = np.searchsorted(j_sorted, cols_exp, side="left")
    right = np.searchsorted(j_sorted, cols_exp, side="right")
    fan = right - left
    q_exp = j_order[_ranges(left, fan)]
    rows = np.repeat(p_exp, fan)
    vals = np.repeat(vals_exp, fan)
    order = np.lexsort((q_exp, rows))
    return _csr_from_sorted(len(i), len(j), rows[order], q_exp[order],
                            vals[order], a.domain)


def selection_matrix(sr: Semiring, idx, n_source) -> SparseMatrix:
    """|idx| x n_source matrix with the multiplicative identity at
    (p, idx[p]); extract(a, i, j) == S(i) a S(j)^T."""
    idx = _check_index_vector(idx, n_source, "selection")
    m = len(idx)
    return SparseMatrix(
        m, n_source,
        np.arange(m + 1, dtype=np.int64),
        idx.copy(),
        np.full(m, sr.one, dtype=sr.domain.dtype),
        sr.domain,
    )


def assign(c: SparseMatrix, i, j, a: SparseMatrix) -> SparseMatrix:
    """Write a into c at the row/column image of (i, j).

    Total assignment over the selected rectangle: positions where `a`
    has no stored entry are cleared in the result. Repeated indices are
    rejected (the write would be ambiguous).
    """
    i = _check_index_vector(i, c.nrows, "row")
    j = _check_index_vector(j, c.ncols, "column")
    if a.dims != (len(i), len(j)):
        raise DimensionError("assign source shape must match index vectors",
                             expected=f"{len(i)}x{len(j)}",
                             actual=f"{a.nrows}x{a.ncols}")
    if len(np.unique(i)) != len(i):
        raise GraphMatError("repeated row index in assign")
    if len(np.unique(j)) != len(j):
        raise GraphMatError("repeated column index in assign")
    if a.domain.name != c.domain.name:
        raise DomainError(f"domain mismatch: {a.domain.name} vs "
                          f"{c.domain.name}")
    return _assign(c, i, j, a)


def _assign(c, i, j, a):
    row_sel = np.zeros(c.nrows, dtype=bool)
    row_sel[i] = True
    col_sel = np.zeros(c.ncols, dtype=bool)
    col_sel[j] = True
    c_rows = c.row_arrays()
    keep = ~(row_sel[c_rows] & col_sel[c.indices])
    rows = np.concatenate([c_rows[keep], i[a.row_arrays()]])
    cols = np.concatenate([c.indices[keep], j[a.indices]])
    vals = np.concatenate([c.values[keep], a.values])
    order = np.lexsort((cols, rows))
    return _csr_from_sorted(c.nrows, c.ncols, rows[order], cols[order],
                            vals[order], c.domain)
