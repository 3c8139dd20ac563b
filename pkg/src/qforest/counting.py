"""Exact exhaustive counters over GF(q).

Every counter enumerates assignments with the odometer of `qforest.shard`
and evaluates a batch kernel per chunk.  Results are Python ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, prod

import numpy as np

from .gf import FieldCtx, FieldError, find_nonsquare
from .graph import Graph, is_apex
from .linalg import batch_rank, eval_monomial_sum, odometer_digits, reduce_against
from .shard import check_budget, sharded_sum
from .treepoly import enumerate_trees, reduced_laplacian, tree_monomials


@dataclass(frozen=True)
class SupportPattern:
    n: int
    allowed: frozenset
    symmetric: bool = False

    def __post_init__(self):
        cells = frozenset((int(i), int(j)) for i, j in self.allowed)
        for i, j in cells:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"cell ({i},{j}) outside {self.n}x{self.n}")
        if self.symmetric and any((j, i) not in cells for i, j in cells):
            raise ValueError("pattern flagged symmetric but not closed under transpose")
        object.__setattr__(self, "allowed", cells)

    @classmethod
    def from_rows(cls, rows, symmetric: bool = False) -> SupportPattern:
        rows = [str(r).strip() for r in rows]
        n = len(rows)
        cells = set()
        for i, r in enumerate(rows):
            if len(r) != n or set(r) - {"0", "1"}:
                raise ValueError(f"pattern row {i + 1} must be {n} characters of 0/1")
            cells.update((i, j) for j, ch in enumerate(r) if ch == "1")
        return cls(n, frozenset(cells), symmetric)

    @classmethod
    def full(cls, n: int) -> SupportPattern:
        return cls(n, frozenset(itertools.product(range(n), repeat=2)), True)

    def row_cells(self, i: int) -> list[int]:
        return sorted(j for r, j in self.allowed if r == i)

    def to_rows(self) -> list[str]:
        return ["".join("1" if (i, j) in self.allowed else "0" for j in range(self.n))
                for i in range(self.n)]

    def transpose(self) -> SupportPattern:
        return SupportPattern(self.n, frozenset((j, i) for i, j in self.allowed), self.symmetric)


def parse_pattern(text: str, symmetric: bool = False) -> SupportPattern:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    n = int(lines[0])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} pattern rows, got {len(lines) - 1}")
    return SupportPattern.from_rows(lines[1:], symmetric)


FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def fano_pattern() -> SupportPattern:
    """7x7 incidence support: row = line, column = point."""
    return SupportPattern(7, frozenset((i, p - 1) for i, line in enumerate(FANO_LINES) for p in line))


def embed_bipartite(T: SupportPattern) -> SupportPattern:
    """Symmetric 2n x 2n pattern {(i, j+n), (j+n, i) : (i, j) in T}."""
    n = T.n
    cells = {(i, j + n) for i, j in T.allowed} | {(j + n, i) for i, j in T.allowed}
    return SupportPattern(2 * n, frozenset(cells), True)


@dataclass
class RankProfile:
    counts: list[int] = field(default_factory=list)

    def __getitem__(self, r):
        return self.counts[r]

    def __len__(self):
        return len(self.counts)

    def total(self) -> int:
        return sum(self.counts)


# -- batch kernels (module level so they pickle for process pools) ----------

class _Embed:
    """Build the full assignment from free digits: fixed columns are zero."""

    def __init__(self, m: int, free_cols):
        self.m = m
        self.free = list(free_cols)

    def __call__(self, Xfree: np.ndarray) -> np.ndarray:
        if len(self.free) == self.m:
            return Xfree
        X = np.zeros((Xfree.shape[0], self.m), dtype=np.int64)
        X[:, self.free] = Xfree
        return X


class _LaplacianKernel:
    def __init__(self, G: Graph, ctx: FieldCtx, root, embed: _Embed, profile: bool = False):
        self.L0 = reduced_laplacian(G, root)
        self.ctx = ctx
        self.embed = embed
        self.profile = profile

    def __call__(self, Xfree):
        X = self.embed(Xfree)
        ranks = batch_rank(self.ctx, self.L0.evaluate_batch(X, self.ctx))
        if self.profile:
            return np.bincount(ranks, minlength=self.L0.size + 1)
        return int(np.count_nonzero(ranks == self.L0.size))


class _MonomialKernel:
    def __init__(self, monomials, ctx: FieldCtx, embed: _Embed):
        self.monomials = [tuple(m) for m in monomials]
        self.ctx = ctx
        self.embed = embed

    def __call__(self, Xfree):
        vals = eval_monomial_sum(self.ctx, self.embed(Xfree), self.monomials)
        return int(np.count_nonzero(vals))


class _MatrixKernel:
    """Place digits into the given cells (mirrored if symmetric) and rank."""

    def __init__(self, n: int, cells, ctx: FieldCtx, symmetric: bool, profile: bool):
        self.n = n
        self.rows = np.array([c[0] for c in cells], dtype=np.int64)
        self.cols = np.array([c[1] for c in cells], dtype=np.int64)
        self.ctx = ctx
        self.symmetric = symmetric
        self.profile = profile

    def __call__(self, X):
        M = np.zeros((X.shape[0], self.n, self.n), dtype=np.int64)
        M[:, self.rows, self.cols] = X
        if self.symmetric:
            M[:, self.cols, self.rows] = X
        ranks = batch_rank(self.ctx, M)
        if self.profile:
            return np.bincount(ranks, minlength=self.n + 1)
        return int(np.count_nonzero(ranks == self.n))


# -- graph counters ----------------------------------------------------------

def count_nonvanishing(G: Graph, kind: str, ctx: FieldCtx, root: int | None = None,
                       workers: int = 1, shards: int | None = None, shard: int | None = None,
                       force: bool = False) -> int:
    """g_G(q) (kind "g", det L_0 != 0) or f_G(q) (kind "f", P_G != 0)."""
    return count_zero_set(G, (), kind, "at_least", ctx, root=root, workers=workers,
                          shards=shards, shard=shard, force=force)


def count_zero_set(G: Graph, S, kind: str, mode: str, ctx: FieldCtx, root: int | None = None,
                   workers: int = 1, shards: int | None = None, shard: int | None = None,
                   force: bool = False) -> int:
    """Count assignments with x_e = 0 on S (mode "at_least") or exactly on S
    (mode "exact") for which Q_G (kind "g") or P_G (kind "f") is nonzero."""
    S = frozenset(S)
    if any(not 1 <= e <= G.m for e in S):
        raise ValueError("zero set contains an edge index out of range")
    if kind not in ("g", "f"):
        raise ValueError(f"kind must be 'g' or 'f', not {kind!r}")
    if mode == "exact":
        rest = [e for e in range(1, G.m + 1) if e not in S]
        total = 0
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                c = count_zero_set(G, S | set(extra), kind, "at_least", ctx, root=root,
                                   workers=workers, force=force)
                total += -c if r % 2 else c
        return total
    if mode != "at_least":
        raise ValueError(f"mode must be 'at_least' or 'exact', not {mode!r}")
    if not G.is_connected():
        return 0
    q = ctx.q
    if kind == "g":
        loops = [e for e in G.loops() if e not in S]
        H_edges = [e for e in range(1, G.m + 1) if e not in G.loops()]
        H = G.without_loops()
        free = [i for i, e in enumerate(H_edges) if e not in S]
        size = G.n - 1
        check_budget(q ** len(free) * max(1, size) ** 3, force, "g count")
        kernel = _LaplacianKernel(H, ctx, root, _Embed(H.m, free))
        return sharded_sum(kernel, q, len(free), workers, shards, shard) * q ** len(loops)
    free = [e - 1 for e in range(1, G.m + 1) if e not in S]
    trees = enumerate_trees(G)
    check_budget(q ** len(free) * len(trees) * max(1, G.m), force, "f count")
    kernel = _MonomialKernel(tree_monomials(G, "P", trees), ctx, _Embed(G.m, free))
    return sharded_sum(kernel, q, len(free), workers, shards, shard)


def rank_profile(G: Graph, ctx: FieldCtx, root: int | None = None, workers: int = 1,
                 force: bool = False) -> RankProfile:
    """counts[r] = number of assignments for which L_0 has rank r."""
    H = G.without_loops()
    loops = G.m - H.m
    size = G.n - 1
    check_budget(ctx.q ** H.m * max(1, size) ** 3, force, "rank profile")
    kernel = _LaplacianKernel(H, ctx, root, _Embed(H.m, range(H.m)), profile=True)
    if size == 0:
        return RankProfile([ctx.q ** G.m])
    counts = sharded_sum(kernel, ctx.q, H.m, workers)
    return RankProfile([c * ctx.q ** loops for c in counts])


# -- support-constrained matrices -------------------------------------------

def count_support_invertible(S: SupportPattern, ctx: FieldCtx, algo: str = "brute",
                             workers: int = 1, force: bool = False) -> int:
    """h_S(q): invertible n x n matrices vanishing outside S."""
    if algo == "brute":
        cells = sorted(S.allowed)
        check_budget(ctx.q ** len(cells) * S.n ** 3, force, "support brute force")
        kernel = _MatrixKernel(S.n, cells, ctx, symmetric=False, profile=False)
        return sharded_sum(kernel, ctx.q, len(cells), workers)
    if algo in ("span_dp", "span-dp"):
        return span_dp(S, ctx, force=force)
    raise ValueError(f"unknown algorithm {algo!r}")


def count_support_symmetric(S: SupportPattern, ctx: FieldCtx, workers: int = 1,
                            force: bool = False) -> int:
    """k_S(q): invertible symmetric matrices vanishing outside S."""
    if not S.symmetric:
        raise ValueError("pattern must be flagged symmetric")
    cells = sorted((i, j) for i, j in S.allowed if i <= j)
    check_budget(ctx.q ** len(cells) * S.n ** 3, force, "symmetric support count")
    kernel = _MatrixKernel(S.n, cells, ctx, symmetric=True, profile=False)
    return sharded_sum(kernel, ctx.q, len(cells), workers)


def sym_rank_census(n: int, ctx: FieldCtx, workers: int = 1, force: bool = False) -> RankProfile:
    """Number of symmetric n x n matrices of each rank, by brute force."""
    if n == 0:
        return RankProfile([1])
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    check_budget(ctx.q ** len(cells) * n ** 3, force, "symmetric census")
    kernel = _MatrixKernel(n, cells, ctx, symmetric=True, profile=True)
    return RankProfile(sharded_sum(kernel, ctx.q, len(cells), workers))


def _gaussian_binomial(n: int, k: int, q: int) -> int:
    num = prod(q ** (n - i) - 1 for i in range(k))
    den = prod(q ** (i + 1) - 1 for i in range(k))
    return num // den


def span_dp_estimate(S: SupportPattern, q: int) -> int:
    est, reach = 0, 1
    for i in range(S.n):
        cand = q ** len(S.row_cells(i))
        states = min(reach, _gaussian_binomial(S.n, i, q))
        est += states * cand * S.n * (i + 1)
        reach *= cand
    return est


def span_dp(S: SupportPattern, ctx: FieldCtx, force: bool = False, chunk_elems: int = 1 << 22) -> int:
    """Row-by-row count of invertible matrices supported on S.

    The state after i rows is the span of those rows, stored as its reduced
    row echelon basis; only rows outside the current span are kept, so every
    state at step i has dimension i and the last step collapses to one state.
    """
    n, q = S.n, ctx.q
    check_budget(span_dp_estimate(S, q), force, "span DP")
    mul, sub, inv = ctx.mul_table.ravel(), ctx.sub_table.ravel(), ctx.inv_table
    big = q ** len(S.allowed) >= 2 ** 62
    mdtype = object if big else np.int64

    basis = np.zeros((1, 0, n), dtype=np.int64)
    mult = np.ones(1, dtype=mdtype)
    for i in range(n):
        cells = S.row_cells(i)
        if not cells:
            return 0
        digits = np.array(list(itertools.product(range(q), repeat=len(cells)))[1:], dtype=np.int64)
        cand = np.zeros((len(digits), n), dtype=np.int64)
        cand[:, cells] = digits
        C = len(cand)
        step = max(1, chunk_elems // max(1, C * n))
        keys_parts, rows_parts, mult_parts = [], [], []
        for s0 in range(0, len(basis), step):
            Bs = basis[s0:s0 + step]
            Ms = mult[s0:s0 + step]
            ns = len(Bs)
            R = np.broadcast_to(cand, (ns, C, n)).copy()
            if i:
                piv = np.argmax(Bs != 0, axis=2)
                sa = np.arange(ns)[:, None]
                ca = np.arange(C)[None, :]
                for t in range(i):
                    coef = R[sa, ca, piv[:, t][:, None]]
                    R = sub[R * q + mul[coef[:, :, None] * q + Bs[:, t][:, None, :]]]
            si, ci = np.nonzero(R.any(axis=2))
            if not len(si):
                continue
            V = R[si, ci]
            P = len(V)
            ar = np.arange(P)
            lead = np.argmax(V != 0, axis=1)
            V = mul[V * q + inv[V[ar, lead]][:, None]]
            old = Bs[si]
            if i:
                coef = old[ar[:, None], np.arange(i)[None, :], lead[:, None]]
                old = sub[old * q + mul[coef[:, :, None] * q + V[:, None, :]]]
            rows = np.concatenate([old, V[:, None, :]], axis=1)
            pivs = np.argmax(rows != 0, axis=2)
            order = np.argsort(pivs, axis=1)
            rows = np.take_along_axis(rows, order[:, :, None], axis=1)
            keys = _row_keys(rows, q)
            uk, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
            agg = np.zeros(len(uk), dtype=mdtype)
            np.add.at(agg, inverse.ravel(), Ms[si])
            keys_parts.append(uk)
            rows_parts.append(rows[first])
            mult_parts.append(agg)
        if not keys_parts:
            return 0
        keys = np.concatenate(keys_parts)
        rows = np.concatenate(rows_parts)
        ms = np.concatenate(mult_parts)
        uk, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
        mult = np.zeros(len(uk), dtype=mdtype)
        np.add.at(mult, inverse.ravel(), ms)
        basis = rows[first]
    return int(mult.sum())


def _row_keys(rows: np.ndarray, q: int) -> np.ndarray:
    P, k, n = rows.shape
    if q ** n < 2 ** 62:
        w = q ** np.arange(n, dtype=np.int64)
        return rows @ w
    return rows.reshape(P, k * n)


# -- orthogonal geometry checks ---------------------------------------------

def form_matrix(n: int, form: str, ctx: FieldCtx) -> list[list[int]]:
    """Gram matrix of the chosen nondegenerate symmetric scalar product."""
    H = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if form == "plus":
        return H
    if form != "minus":
        raise ValueError(f"form must be 'plus' or 'minus', not {form!r}")
    if ctx.p != 2:
        H[0][0] = find_nonsquare(ctx).code
        return H
    if n % 2:
        raise FieldError("no minus form for even q and odd n")
    E = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        E[i][i + 1] = E[i + 1][i] = 1
    return E


def _bilinear(ctx, H, a, b):
    acc = 0
    n = len(a)
    for i in range(n):
        if not a[i]:
            continue
        for j in range(n):
            if H[i][j] and b[j]:
                acc = ctx.add(acc, ctx.mul(a[i], ctx.mul(H[i][j], b[j])))
    return acc


def isotropic_count(n: int, form: str, ctx: FieldCtx, force: bool = False) -> int:
    """Vectors u in GF(q)^n with <u, u> = 0."""
    H = np.array(form_matrix(n, form, ctx), dtype=np.int64)
    q = ctx.q
    check_budget(q ** n * n * n, force, "isotropic count")
    mul, add = ctx.mul_table.ravel(), ctx.add_table.ravel()
    total = 0
    for lo in range(0, q ** n, 1 << 16):
        U = odometer_digits(lo, min(q ** n, lo + (1 << 16)), q, n)
        acc = np.zeros(len(U), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if H[i, j]:
                    t = mul[mul[U[:, i] * q + H[i, j]] * q + U[:, j]]
                    acc = add[acc * q + t]
        total += int(np.count_nonzero(acc == 0))
    return total


def ordered_basis_count(G: Graph, form: str, ctx: FieldCtx, force: bool = False) -> int:
    """b_G^{+/-}(q) for a graph whose last vertex is an apex.

    Counts ordered bases (u_1..u_n) of GF(q)^n, n = G.n - 1, with
    <u_i, u_j> = 0 whenever i != j are non-adjacent in G.
    """
    n = G.n - 1
    if not is_apex(G, G.n):
        raise ValueError("the last vertex must be an apex")
    H = form_matrix(n, form, ctx)
    q = ctx.q
    check_budget(q ** (n * n) * n * n, force, "ordered basis enumeration")
    vectors = [list(v) for v in itertools.product(range(q), repeat=n)]
    need = [[j for j in range(i) if not G.adjacent(i + 1, j + 1)] for i in range(n)]

    def rec(i, chosen, basis):
        if i == n:
            return 1
        total = 0
        for v in vectors:
            if any(_bilinear(ctx, H, chosen[j], v) for j in need[i]):
                continue
            r = reduce_against(ctx, basis, v)
            lead = next((c for c, x in enumerate(r) if x), None)
            if lead is None:
                continue
            s = ctx.inv(r[lead])
            nb = dict(basis)
            nb[lead] = [ctx.mul(s, x) for x in r]
            total += rec(i + 1, chosen + [v], nb)
        return total

    return rec(0, [], {})


def diagonal_profile(k: int, q: int) -> list[int]:
    """Rank profile of a generic k x k diagonal matrix."""
    return [comb(k, r) * (q - 1) ** r for r in range(k + 1)]
