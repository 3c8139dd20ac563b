"""Generic reduced Laplacian and spanning-tree polynomials.

``Q_G(x) = sum_T x^T`` and ``P_G(x) = sum_T x^(E - T)`` over spanning trees
T.  The determinant route (reduced Laplacian) and the enumeration route
(explicit tree list) are kept separate so each can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gf import FieldCtx, FieldElem
from .graph import Graph
from .linalg import batch_det_rank, det_rank, eval_monomial_sum


@dataclass(frozen=True)
class GenericLaplacian:
    """Symbolic L_0: cell (i, j), 1-based, maps to signed edge indices."""

    size: int
    root: int
    vertices: tuple[int, ...]
    cells: dict = field(default_factory=dict, compare=False)

    def cell(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        return self.cells.get((i, j), ())

    def evaluate(self, codes: Sequence[int], ctx: FieldCtx) -> list[list[int]]:
        M = [[0] * self.size for _ in range(self.size)]
        for (i, j), terms in self.cells.items():
            acc = 0
            for sign, e in terms:
                x = codes[e - 1]
                acc = ctx.add(acc, x) if sign > 0 else ctx.sub(acc, x)
            M[i - 1][j - 1] = acc
        return M

    def evaluate_batch(self, X: np.ndarray, ctx: FieldCtx) -> np.ndarray:
        """X has shape (B, m) of edge-value codes; returns (B, size, size)."""
        q = ctx.q
        add = ctx.add_table.ravel()
        sub = ctx.sub_table.ravel()
        M = np.zeros((X.shape[0], self.size, self.size), dtype=np.int64)
        for (i, j), terms in self.cells.items():
            acc = np.zeros(X.shape[0], dtype=np.int64)
            for sign, e in terms:
                acc = (add if sign > 0 else sub)[acc * q + X[:, e - 1]]
            M[:, i - 1, j - 1] = acc
        return M


def reduced_laplacian(G: Graph, root: int | None = None) -> GenericLaplacian:
    """Drop row/column ``root`` (default: vertex n).  Loops are ignored."""
    root = G.n if root is None else root
    if not 1 <= root <= G.n:
        raise ValueError(f"root {root} out of range")
    keep = tuple(v for v in range(1, G.n + 1) if v != root)
    pos = {v: i for i, v in enumerate(keep, 1)}
    cells: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e, (u, v) in enumerate(G.edges, 1):
        if u == v:
            continue
        for a in (u, v):
            if a in pos:
                cells.setdefault((pos[a], pos[a]), []).append((1, e))
        if u in pos and v in pos:
            cells.setdefault((pos[u], pos[v]), []).append((-1, e))
            cells.setdefault((pos[v], pos[u]), []).append((-1, e))
    return GenericLaplacian(len(keep), root, keep, {k: tuple(t) for k, t in cells.items()})


def _codes(a) -> list[int]:
    return [int(x) for x in a]


def eval_det_rank(L0: GenericLaplacian, a, ctx: FieldCtx) -> tuple[FieldElem, int]:
    d, r = det_rank(ctx, L0.evaluate(_codes(a), ctx))
    return FieldElem(ctx, d), r


def enumerate_trees(G: Graph) -> list[tuple[int, ...]]:
    """All spanning trees as sorted tuples of 1-based edge indices.

    Backtracks over edges in index order, trying "contract" (take the edge)
    before "delete" (skip it), so the output order is deterministic.
    """
    need = G.n - 1
    if need == 0:
        return [()]
    if not G.is_connected():
        return []
    out: list[tuple[int, ...]] = []
    edges = G.edges

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i, chosen, parent):
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        if len(chosen) + (len(edges) - i) < need:
            return
        u, v = edges[i]
        a, b = find(parent, u), find(parent, v)
        if a != b:
            p2 = list(parent)
            p2[max(a, b)] = min(a, b)
            rec(i + 1, chosen + [i + 1], p2)
        rec(i + 1, chosen, parent)

    rec(0, [], list(range(G.n + 1)))
    return out


def tree_monomials(G: Graph, kind: str, trees=None) -> list[tuple[int, ...]]:
    """0-based variable indices of each monomial of Q (kind "Q") or P ("P")."""
    trees = enumerate_trees(G) if trees is None else trees
    if kind == "Q":
        return [tuple(e - 1 for e in t) for t in trees]
    if kind == "P":
        return [tuple(e - 1 for e in range(1, G.m + 1) if e not in set(t)) for t in trees]
    raise ValueError(f"kind must be 'Q' or 'P', not {kind!r}")


def eval_tree_poly(G: Graph, a, kind: str, ctx: FieldCtx, trees=None) -> FieldElem:
    codes = _codes(a)
    if len(codes) != G.m:
        raise ValueError(f"assignment has {len(codes)} values for {G.m} edges")
    acc = 0
    for mono in tree_monomials(G, kind, trees):
        t = 1
        for v in mono:
            t = ctx.mul(t, codes[v])
        acc = ctx.add(acc, t)
    return FieldElem(ctx, acc)


def eval_tree_poly_batch(G: Graph, X: np.ndarray, kind: str, ctx: FieldCtx, trees=None) -> np.ndarray:
    return eval_monomial_sum(ctx, X, tree_monomials(G, kind, trees))


def det_batch(G: Graph, X: np.ndarray, ctx: FieldCtx, root: int | None = None):
    L0 = reduced_laplacian(G, root)
    return batch_det_rank(ctx, L0.evaluate_batch(X, ctx))
