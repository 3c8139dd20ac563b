"""Linear algebra over GF(q) on element codes.

Two flavours live here: scalar routines on lists of codes (used for single
evaluations and as a cross-check) and batched numpy kernels that eliminate a
whole stack of matrices at once through the field's operation tables.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx


def det_rank(ctx: FieldCtx, rows) -> tuple[int, int]:
    """Determinant code and rank of one square matrix of codes."""
    a = [list(r) for r in rows]
    n = len(a)
    det, rank = 1, 0
    used = [False] * n
    pivots = []
    for c in range(n):
        p = next((i for i in range(n) if not used[i] and a[i][c]), None)
        if p is None:
            det = 0
            continue
        used[p] = True
        pivots.append(p)
        rank += 1
        pv = a[p][c]
        det = ctx.mul(det, pv)
        ipv = ctx.inv(pv)
        for i in range(n):
            if not used[i] and a[i][c]:
                f = ctx.mul(a[i][c], ipv)
                a[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(a[i], a[p])]
    if det and _parity(pivots):
        det = ctx.neg(det)
    return det, rank


def _parity(perm) -> bool:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inv % 2 == 1


def rank_of(ctx: FieldCtx, rows) -> int:
    """Rank of a possibly non-square matrix of codes."""
    basis: dict[int, list[int]] = {}
    for row in rows:
        v = reduce_against(ctx, basis, list(row))
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is not None:
            basis[lead] = _normalise(ctx, v, lead)
    return len(basis)


def _normalise(ctx, v, lead):
    s = ctx.inv(v[lead])
    return [ctx.mul(s, x) for x in v]


def reduce_against(ctx: FieldCtx, basis: dict[int, list[int]], v: list[int]) -> list[int]:
    """Reduce v by an echelon basis keyed on pivot column (pivots normalised to 1)."""
    for lead in sorted(basis):
        c = v[lead]
        if c:
            v = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(v, basis[lead])]
    return v


# -- batched kernels ---------------------------------------------------------

def batch_det_rank(ctx: FieldCtx, mats: np.ndarray, want_det: bool = True):
    """Eliminate a stack of square matrices of codes, shape (B, n, n).

    Returns (det, rank) as int64 arrays of length B; det is None when
    want_det is False (skips the permutation sign bookkeeping).
    """
    M = np.array(mats, dtype=np.int32, copy=True)
    B, n, _ = M.shape
    q = ctx.q
    mul, sub, inv = _tables32(ctx)
    ar = np.arange(B)
    used = np.zeros((B, n), dtype=bool)
    rank = np.zeros(B, dtype=np.int64)
    det = np.ones(B, dtype=np.int32) if want_det else None
    pivrow = np.zeros((B, n), dtype=np.int64)
    for c in range(n):
        col = M[:, :, c]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        p = cand.argmax(axis=1)
        pv = col[ar, p]
        rank += has
        if want_det:
            det = np.where(has, mul[det * q + pv], 0)
            pivrow[:, c] = p
        used[ar[has], p[has]] = True
        if c == n - 1:
            break
        f = mul[col * q + inv[pv][:, None]]
        f *= ~used & has[:, None]
        prow = M[ar, p, c + 1:]
        rest = M[:, :, c + 1:]
        M[:, :, c + 1:] = sub[rest * q + mul[f[:, :, None] * q + prow[:, None, :]]]
    if want_det:
        odd = np.zeros(B, dtype=bool)
        for i in range(n):
            for j in range(i + 1, n):
                odd ^= pivrow[:, i] > pivrow[:, j]
        det = np.where(odd, ctx.neg_table[det], det).astype(np.int64)
    return det, rank


def _tables32(ctx: FieldCtx):
    cache = ctx.__dict__.get("_tables32")
    if cache is None:
        cache = (ctx.mul_table.ravel().astype(np.int32),
                 ctx.sub_table.ravel().astype(np.int32),
                 ctx.inv_table.astype(np.int32))
        ctx.__dict__["_tables32"] = cache
    return cache


def batch_rank(ctx: FieldCtx, mats: np.ndarray) -> np.ndarray:
    if mats.ndim != 3 or mats.shape[1] == 0:
        return np.zeros(mats.shape[0], dtype=np.int64)
    return batch_det_rank(ctx, mats, want_det=False)[1]


def odometer_digits(lo: int, hi: int, q: int, m: int) -> np.ndarray:
    """Digits of assignment indices lo..hi-1, first variable most significant."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, m), dtype=np.int64)
    for j in range(m - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, q)
    return out


def eval_monomial_sum(ctx: FieldCtx, X: np.ndarray, monomials) -> np.ndarray:
    """Evaluate sum over monomials of prod X[:, v] for each row of X."""
    q = ctx.q
    mul = ctx.mul_table.ravel()
    add = ctx.add_table.ravel()
    acc = np.zeros(X.shape[0], dtype=np.int64)
    for mono in monomials:
        t = np.ones(X.shape[0], dtype=np.int64)
        for v in mono:
            t = mul[t * q + X[:, v]]
        acc = add[acc * q + t]
    return acc
