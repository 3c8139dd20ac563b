"""Basis polynomials of matroids and the count g_M(q) of non-vanishing points.

Q_M(x) = sum over bases B of prod_{e in B} x_e.  Two counters are provided:
plain enumeration of all q^s assignments, and an elimination counter that
enumerates all variables but two and counts the remaining q^2 pairs in
closed form (Q_M is multilinear, so it is bilinear in any two variables).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .formulas import fourpoint_formula
from .gf import FieldCtx, FieldElem
from .graph import Graph
from .linalg import eval_monomial_sum
from .shard import check_budget, sharded_sum
from .treepoly import enumerate_trees

__all__ = ["Matroid", "MatroidError", "build_matroid", "uniform", "r10", "graphic",
           "parse_bases", "eval_basis_poly", "count_g_matroid", "fourpoint_formula",
           "R10_GOLDEN"]

# g_{R10}(q), computed here by both counters (exploratory data, no closed form).
R10_GOLDEN = {2: 232, 3: 33804, 4: 743616}


class MatroidError(ValueError):
    pass


@dataclass(frozen=True)
class Matroid:
    ground_size: int
    bases: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.bases:
            raise MatroidError("empty basis list")
        sizes = {len(b) for b in self.bases}
        if len(sizes) != 1:
            raise MatroidError(f"bases have unequal sizes {sorted(sizes)}")
        for b in self.bases:
            if len(set(b)) != len(b) or any(not 1 <= e <= self.ground_size for e in b):
                raise MatroidError(f"bad basis {b}")
        if len(set(map(frozenset, self.bases))) != len(self.bases):
            raise MatroidError("repeated basis")

    @property
    def rank(self) -> int:
        return len(self.bases[0])

    def monomials(self) -> list[tuple[int, ...]]:
        return [tuple(e - 1 for e in b) for b in self.bases]

    def exchange_check(self, trials: int = 50, seed: int = 0) -> bool:
        """Spot-check the basis exchange axiom on random pairs of bases."""
        rng = random.Random(seed)
        bset = set(map(frozenset, self.bases))
        for _ in range(trials):
            b1, b2 = map(frozenset, (rng.choice(self.bases), rng.choice(self.bases)))
            for e in b1 - b2:
                if not any((b1 - {e}) | {f} in bset for f in b2 - b1):
                    return False
        return True


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise MatroidError("need 0 <= r <= n")
    return Matroid(n, tuple(tuple(c) for c in combinations(range(1, n + 1), r)))


def _gf2_rank(vectors: list[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def r10_columns() -> list[int]:
    """The ten weight-3 vectors of GF(2)^5 as bitmasks, in combinations order."""
    return [sum(1 << i for i in c) for c in combinations(range(5), 3)]


def r10() -> Matroid:
    cols = r10_columns()
    bases = tuple(b for b in combinations(range(1, 11), 5)
                  if _gf2_rank([cols[e - 1] for e in b]) == 5)
    return Matroid(10, bases)


def graphic(G: Graph) -> Matroid:
    trees = enumerate_trees(G)
    if not trees:
        raise MatroidError("graph is disconnected")
    return Matroid(G.m, tuple(trees))


def parse_bases(text: str) -> Matroid:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise MatroidError('basis file must start with "s r"')
    s, r = map(int, lines[0])
    bases = []
    for ln in lines[1:]:
        b = tuple(int(x) for x in ln)
        if len(b) != r:
            raise MatroidError(f"basis {b} does not have {r} elements")
        bases.append(b)
    return Matroid(s, tuple(bases))


def build_matroid(spec) -> Matroid:
    """spec is "u24", "uniform:r,n", "r10", a basis-file path, or a Graph."""
    if isinstance(spec, Matroid):
        return spec
    if isinstance(spec, Graph):
        return graphic(spec)
    if isinstance(spec, (list, tuple)):
        size = max((max(b) for b in spec if b), default=0)
        return Matroid(size, tuple(tuple(b) for b in spec))
    s = str(spec)
    if s == "u24":
        return uniform(2, 4)
    if s == "r10":
        return r10()
    if s.startswith("uniform:"):
        r, n = (int(x) for x in s.split(":", 1)[1].split(","))
        return uniform(r, n)
    path = Path(s)
    if path.exists():
        return parse_bases(path.read_text())
    raise MatroidError(f"unknown matroid spec {spec!r}")


def eval_basis_poly(M: Matroid, a, ctx: FieldCtx) -> FieldElem:
    codes = [int(x) for x in a]
    if len(codes) != M.ground_size:
        raise MatroidError(f"assignment has {len(codes)} values for {M.ground_size} elements")
    acc = 0
    for b in M.bases:
        t = 1
        for e in b:
            t = ctx.mul(t, codes[e - 1])
        acc = ctx.add(acc, t)
    return FieldElem(ctx, acc)


class _BasisKernel:
    def __init__(self, monomials, ctx: FieldCtx):
        self.monomials = monomials
        self.ctx = ctx

    def __call__(self, X):
        return int(np.count_nonzero(eval_monomial_sum(self.ctx, X, self.monomials)))


class _PairKernel:
    """Counts the q^2 completions in (x_a, x_b) for each assignment of the rest.

    Writing Q = x_a x_b A + x_a B + x_b C + D with A..D free of x_a, x_b:
      A != 0: (q-1)^2 if D - BC/A = 0, else q^2 - q + 1;
      A = 0, (B, C) != 0: q^2 - q;
      otherwise q^2 [D != 0].
    """

    def __init__(self, parts, ctx: FieldCtx):
        self.parts = parts
        self.ctx = ctx

    def __call__(self, X):
        ctx, q = self.ctx, self.ctx.q
        A, B, C, D = (eval_monomial_sum(ctx, X, p) for p in self.parts)
        mul = ctx.mul_table.ravel()
        sub = ctx.sub_table.ravel()
        inv = ctx.inv_table
        bc_over_a = mul[mul[B * q + C] * q + inv[A]]
        c = sub[D * q + bc_over_a]
        hasA = A != 0
        lin = ~hasA & ((B != 0) | (C != 0))
        const = ~hasA & ~lin & (D != 0)
        total = int(np.count_nonzero(hasA & (c == 0))) * (q - 1) ** 2
        total += int(np.count_nonzero(hasA & (c != 0))) * (q * q - q + 1)
        total += int(np.count_nonzero(lin)) * (q * q - q)
        total += int(np.count_nonzero(const)) * q * q
        return total


def _split_pair(monomials, a: int, b: int, s: int):
    """Split monomials on 0-based variables a, b and renumber the others."""
    rest = [v for v in range(s) if v not in (a, b)]
    pos = {v: i for i, v in enumerate(rest)}
    parts = ([], [], [], [])
    for mono in monomials:
        ia, ib = a in mono, b in mono
        key = 0 if ia and ib else 1 if ia else 2 if ib else 3
        parts[key].append(tuple(pos[v] for v in mono if v not in (a, b)))
    return tuple(parts)


def count_g_matroid(M: Matroid, ctx: FieldCtx, method: str = "brute", workers: int = 1,
                    force: bool = False, pair: tuple[int, int] = (1, 2)) -> int:
    """Number of assignments of the ground set with Q_M != 0.

    method "brute" evaluates Q_M at every point; "eliminate" sums the closed
    form over the two elements in ``pair`` (1-based).
    """
    q, s = ctx.q, M.ground_size
    monos = M.monomials()
    if M.rank == 0:
        return q ** s
    if method == "brute":
        check_budget(q ** s * len(monos) * M.rank, force, "matroid brute force")
        return sharded_sum(_BasisKernel(monos, ctx), q, s, workers)
    if method == "eliminate":
        a, b = pair[0] - 1, pair[1] - 1
        if s < 2 or not (0 <= a < s and 0 <= b < s) or a == b:
            raise MatroidError("elimination needs two distinct ground elements")
        check_budget(q ** (s - 2) * (len(monos) * M.rank + 8), force, "matroid elimination")
        return sharded_sum(_PairKernel(_split_pair(monos, a, b, s), ctx), q, s - 2, workers)
    raise MatroidError(f"method must be 'brute' or 'eliminate', not {method!r}")
