"""Exact linear algebra over GF(q) on numpy arrays of element codes."""

from __future__ import annotations

import numpy as np

from .field import FieldContext

# bound on the size of the broadcast product tensor in matmul
_MATMUL_CHUNK = 1 << 22


def matmul(ctx: FieldContext, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    b = np.atleast_2d(np.asarray(b, dtype=np.int64))
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    rows = max(1, _MATMUL_CHUNK // max(1, a.shape[1] * b.shape[1]))
    out = np.empty((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, a.shape[0], rows):
        prod = ctx.vmul(a[s:s + rows, :, None], b[None, :, :])
        out[s:s + rows] = ctx.vsum(prod, axis=1)
    return out


def rref(ctx: FieldContext, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    r = np.array(m, dtype=np.int64, copy=True)
    nrows, ncols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = ctx.vmul(r[row], ctx.inv_table[r[row, col]])
        factors = r[:, col].copy()
        factors[row] = 0
        others = np.nonzero(factors)[0]
        if others.size:
            r[others] = ctx.vsub(r[others], ctx.vmul(factors[others, None], r[row][None, :]))
        pivots.append(col)
        row += 1
    return r, pivots


def rank(ctx: FieldContext, m: np.ndarray) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(ctx, m)[1])


def solve(ctx: FieldContext, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solve a x = b for square nonsingular a; None when a is singular."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = a.shape[0]
    vec = b.ndim == 1
    aug = np.concatenate([a, b[:, None] if vec else b], axis=1)
    r, piv = rref(ctx, aug)
    if piv[:n] != list(range(n)):
        return None
    x = r[:n, n:]
    return x[:, 0] if vec else x


def row_spaces_equal(ctx: FieldContext, g1: np.ndarray, g2: np.ndarray) -> bool:
    r1 = rank(ctx, g1)
    return r1 == rank(ctx, g2) == rank(ctx, np.concatenate([g1, g2], axis=0))


def left_kernel_vector(ctx: FieldContext, m: np.ndarray) -> np.ndarray | None:
    """A nonzero x with x @ m == 0, or None if the rows are independent."""
    m = np.asarray(m, dtype=np.int64)
    k = m.shape[0]
    aug = np.concatenate([m, np.eye(k, dtype=np.int64)], axis=1)
    r, piv = rref(ctx, aug)
    for i in range(k):
        if i >= len(piv) or piv[i] >= m.shape[1]:
            return r[i, m.shape[1]:]
    return None


def batch_nonsingular(ctx: FieldContext, mats: np.ndarray) -> np.ndarray:
    """Nonsingularity of a stack of square matrices, shape (B, s, s) -> (B,)."""
    m = np.array(mats, dtype=np.int64, copy=True)
    if m.ndim != 3 or m.shape[1] != m.shape[2]:
        raise ValueError(f"expected a stack of square matrices, got {m.shape}")
    bsz, s, _ = m.shape
    ok = np.ones(bsz, dtype=bool)
    idx = np.arange(bsz)
    for c in range(s):
        col = m[:, c:, c]
        nz = col != 0
        has = nz.any(axis=1)
        ok &= has
        piv = c + nz.argmax(axis=1)
        swap = piv != c
        if swap.any():
            bi = idx[swap]
            top = m[bi, c].copy()
            m[bi, c] = m[bi, piv[swap]]
            m[bi, piv[swap]] = top
        # singular members get a unit pivot so the sweep stays well defined
        dead = ~has
        if dead.any():
            m[dead, c, c:] = 0
            m[dead, c, c] = 1
        if c + 1 == s:
            break
        inv_p = ctx.inv_table[m[:, c, c]]
        factors = ctx.vmul(m[:, c + 1:, c], inv_p[:, None])
        m[:, c + 1:, c:] = ctx.vsub(
            m[:, c + 1:, c:], ctx.vmul(factors[:, :, None], m[:, c, None, c:])
        )
    return ok
