"""Finite multigraphs with labelled edges, named families and minors.

Vertices are 1..n.  Edges keep their input order; edge index i (1-based)
always refers to ``edges[i - 1]``.  Loops and parallel edges are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge ({u},{v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def loops(self) -> list[int]:
        return [i for i, (u, v) in enumerate(self.edges, 1) if u == v]

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def adjacent(self, u: int, v: int) -> bool:
        return any({a, b} == {u, v} for a, b in self.edges if a != b)

    def components(self) -> list[set[int]]:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        groups: dict[int, set[int]] = {}
        for v in range(1, self.n + 1):
            groups.setdefault(find(v), set()).add(v)
        return sorted(groups.values(), key=min)

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def without_loops(self) -> Graph:
        return Graph(self.n, tuple(e for e in self.edges if e[0] != e[1]))

    def with_edges(self, extra) -> Graph:
        return Graph(self.n, self.edges + tuple(extra))

    def to_text(self) -> str:
        return "\n".join([str(self.n)] + [f"{u} {v}" for u, v in self.edges]) + "\n"


def parse_graph(text: str) -> Graph:
    """Edge-list format: first line n, then one "u v" per line; '#' comments."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphError("empty graph description")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphError(f"bad vertex count line {lines[0]!r}") from None
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"malformed edge line {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"malformed edge line {line!r}") from None
    return Graph(n, tuple(edges))


def cycle(n: int) -> Graph:
    if n < 2:
        raise GraphError("cycle needs n >= 2")
    return Graph(n, tuple((i, i % n + 1) for i in range(1, n + 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def complete_minus_clique(n: int, k: int) -> Graph:
    """K_n with every edge inside {1..k} removed."""
    if not (1 <= k < n):
        raise GraphError("need n > k >= 1")
    return Graph(n, tuple(e for e in complete(n).edges if not (e[0] <= k and e[1] <= k)))


def complete_minus_star(n: int, s: int) -> Graph:
    """K_n with the s edges from vertex 1 to vertices 2..s+1 removed."""
    if not (s >= 0 and n > s + 1):
        raise GraphError("need n > s + 1")
    return Graph(n, tuple(e for e in complete(n).edges if not (e[0] == 1 and 2 <= e[1] <= s + 1)))


FAMILIES = {
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "complete_minus_clique": (complete_minus_clique, 2),
    "complete_minus_star": (complete_minus_star, 2),
}


def make_family(name: str, *params: int) -> Graph:
    name = name.replace("-", "_")
    if name not in FAMILIES:
        raise GraphError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    fn, arity = FAMILIES[name]
    if len(params) != arity:
        raise GraphError(f"{name} takes {arity} parameter(s)")
    return fn(*params)


def parse_family(spec: str) -> Graph:
    """'cycle:4', 'complete_minus_clique:6,3' and so on."""
    name, _, rest = spec.partition(":")
    params = [int(x) for x in rest.split(",") if x.strip()] if rest else []
    return make_family(name, *params)


def minor(G: Graph, delete=(), contract=()) -> Graph:
    """Delete and contract edges given by 1-based index.

    Contracting merges the endpoints into the smaller label and compacts the
    remaining labels in order.  Loops produced by contraction are kept.
    """
    delete, contract = set(delete), set(contract)
    if delete & contract:
        raise GraphError("an edge cannot be both deleted and contracted")
    for i in delete | contract:
        if not 1 <= i <= G.m:
            raise GraphError(f"edge index {i} out of range")
    rep = list(range(G.n + 1))

    def find(x):
        while rep[x] != x:
            x = rep[x]
        return x

    for i in sorted(contract):
        u, v = G.edges[i - 1]
        a, b = find(u), find(v)
        if a != b:
            rep[max(a, b)] = min(a, b)
    roots = sorted({find(v) for v in range(1, G.n + 1)})
    label = {r: j for j, r in enumerate(roots, 1)}
    edges = tuple((label[find(u)], label[find(v)])
                  for i, (u, v) in enumerate(G.edges, 1)
                  if i not in delete and i not in contract)
    return Graph(len(roots), edges)


def is_apex(G: Graph, v: int) -> bool:
    if not G.is_simple():
        raise GraphError("apex is defined for simple graphs")
    return all(G.adjacent(v, u) for u in range(1, G.n + 1) if u != v)


def reduced_laplacian_integer(G: Graph, root: int | None = None) -> list[list[int]]:
    """Integer reduced Laplacian (all edge weights 1); loops contribute nothing."""
    root = G.n if root is None else root
    keep = [v for v in range(1, G.n + 1) if v != root]
    pos = {v: i for i, v in enumerate(keep)}
    L = [[0] * len(keep) for _ in keep]
    for u, v in G.edges:
        if u == v:
            continue
        for a in (u, v):
            if a in pos:
                L[pos[a]][pos[a]] += 1
        if u in pos and v in pos:
            L[pos[u]][pos[v]] -= 1
            L[pos[v]][pos[u]] -= 1
    return L


def integer_det(A: list[list[int]]) -> int:
    """Exact determinant by Gaussian elimination over the rationals."""
    n = len(A)
    if n == 0:
        return 1
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return int(det)


def spanning_tree_count(G: Graph) -> int:
    return integer_det(reduced_laplacian_integer(G))


def two_edge_cuts(G: Graph) -> list[tuple[int, int]]:
    """Pairs (i, j) of edge indices that both cross the same 2-component split."""
    out = []
    if not G.is_connected():
        return out
    for i in range(1, G.m + 1):
        for j in range(i + 1, G.m + 1):
            comps = minor(G, delete={i, j}).components()
            if len(comps) != 2:
                continue
            side = {v: k for k, c in enumerate(comps) for v in c}
            if all(side[G.edges[e - 1][0]] != side[G.edges[e - 1][1]] for e in (i, j)):
                out.append((i, j))
    return out


def split_at(G: Graph, i: int, j: int) -> tuple[Graph, Graph]:
    """The two components left after deleting edges i and j, relabelled."""
    H = minor(G, delete={i, j})
    comps = H.components()
    if len(comps) != 2:
        raise GraphError("edges do not form a 2-edge cut")
    return tuple(induced(H, c) for c in comps)


def induced(G: Graph, verts) -> Graph:
    verts = sorted(verts)
    pos = {v: k for k, v in enumerate(verts, 1)}
    return Graph(len(verts), tuple((pos[u], pos[v]) for u, v in G.edges if u in pos and v in pos))


def canonical_form(G: Graph) -> tuple:
    """Isomorphism-invariant key by brute force over vertex orders (small n)."""
    best = None
    for perm in permutations(range(1, G.n + 1)):
        pos = {v: perm[v - 1] for v in range(1, G.n + 1)}
        key = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in G.edges))
        if best is None or key < best:
            best = key
    return (G.n, best)


def connected_graphs(n: int) -> list[Graph]:
    """One simple connected graph per isomorphism class on n vertices."""
    pairs = list(combinations(range(1, n + 1), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        G = Graph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))
        if G.is_connected():
            seen.setdefault(canonical_form(G), G)
    return [seen[k] for k in sorted(seen)]


def random_connected_graph(rng, n: int, extra: int = 0, multi: bool = False) -> Graph:
    """Random spanning tree on n vertices plus ``extra`` further edges.

    Extra edges avoid loops and repeats unless ``multi`` is set.
    """
    edges = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
    have = {tuple(sorted(e)) for e in edges}
    free = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u, v) not in have]
    for _ in range(extra):
        if multi:
            u, v = rng.randint(1, n), rng.randint(1, n)
            edges.append((u, v))
        elif free:
            edges.append(free.pop(rng.randrange(len(free))))
    return Graph(n, tuple(edges))
