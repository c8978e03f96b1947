"""Small undirected graphs with bit-set adjacency and exact invariants.

Vertices are labelled 0..n-1 with n <= 64, so every vertex set (and every
adjacency row) fits in a single Python int used as a bit mask.  The module
provides the named graphs of the standard contextuality scenarios, clique
machinery (Bron-Kerbosch), the independence number via branch and bound,
the edge clique cover number via iterative deepening, and a backtracking
isomorphism test.  Everything here is exact and deterministic.
"""

from __future__ import annotations

from typing import Iterable, Optional

MAX_VERTICES = 64


def vertex_set(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex labels into a bit mask."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def set_vertices(mask: int) -> tuple[int, ...]:
    """Unpack a bit mask into a sorted tuple of vertex labels."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class Graph:
    """Undirected simple graph on at most 64 vertices.

    ``adj[v]`` is the neighbour set of ``v`` as a bit mask.  Adjacency is
    kept symmetric and irreflexive; instances are immutable after
    construction and safe to share.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edge_list(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, in lexicographic order."""
        return [
            (u, v)
            for u in range(self.n)
            for v in set_vertices(self.adj[u] >> (u + 1) << (u + 1))
        ]

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_list()})"


def is_clique(g: Graph, mask: int) -> bool:
    """True when every pair of vertices in ``mask`` is adjacent in ``g``."""
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        if m & ~g.adj[v]:
            return False
    return True


# ---------------------------------------------------------------------------
# named constructors

def cycle(k: int) -> Graph:
    """Cycle graph C_k (k >= 3)."""
    if k < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {k}")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph(n)


def _two_subsets() -> list[frozenset[int]]:
    # 2-subsets of {0..4} in lexicographic order; fixes the vertex labelling
    # of both Kneser-type constructions below.
    return [frozenset((a, b)) for a in range(5) for b in range(a + 1, 5)]


def petersen() -> Graph:
    """Petersen graph: 2-subsets of a 5-set, adjacent iff disjoint."""
    subs = _two_subsets()
    edges = [
        (i, j)
        for i in range(10)
        for j in range(i + 1, 10)
        if not subs[i] & subs[j]
    ]
    return Graph(10, edges)


def johnson_5_2() -> Graph:
    """J(5,2) Johnson graph: 2-subsets of a 5-set, adjacent iff intersecting."""
    subs = _two_subsets()
    edges = [
        (i, j)
        for i in range(10)
        for j in range(i + 1, 10)
        if subs[i] & subs[j]
    ]
    return Graph(10, edges)


def named_graph(name: str) -> Graph:
    """Resolve a short graph id: ``c5``, ``petersen``, ``j52`` or ``twin``."""
    if name == "c5":
        return cycle(5)
    if name == "petersen":
        return petersen()
    if name == "j52":
        return johnson_5_2()
    if name == "twin":
        # deferred import: the twin graph is derived from its inequality
        from . import inequalities

        g, _ = inequalities.inequality_graph(inequalities.twin())
        return g
    raise ValueError(f"unknown graph id {name!r} (known: c5, petersen, j52, twin)")


# ---------------------------------------------------------------------------
# structural operations

def complement(g: Graph) -> Graph:
    """Complement graph: same vertices, exactly the missing edges."""
    full = (1 << g.n) - 1
    h = Graph.__new__(Graph)
    h.n = g.n
    h.adj = tuple((full & ~g.adj[v]) & ~(1 << v) for v in range(g.n))
    return h


def induced_subgraph(g: Graph, mask: int) -> tuple[Graph, list[int]]:
    """Subgraph induced by the vertex set ``mask``.

    Vertices are relabelled 0..k-1 in increasing original order; returns the
    subgraph together with the label map (new label -> original vertex).
    """
    if mask == 0:
        raise ValueError("induced subgraph of the empty vertex set")
    if mask >> g.n:
        raise ValueError("vertex set not contained in the graph")
    old = list(set_vertices(mask))
    pos = {v: i for i, v in enumerate(old)}
    edges = [
        (pos[u], pos[v])
        for u in old
        for v in set_vertices(g.adj[u] & mask)
        if u < v
    ]
    return Graph(len(old), edges), old


def is_isomorphic(g: Graph, h: Graph) -> Optional[list[int]]:
    """Search for a vertex bijection mapping g onto h.

    Returns a list ``pi`` with ``pi[v]`` the image of vertex ``v``, or None
    when the graphs are not isomorphic.  Backtracking over candidates
    filtered by (degree, sorted neighbour degrees); the returned map is
    re-checked edge by edge before being handed out.
    """
    if g.n != h.n or g.num_edges() != h.num_edges():
        return None
    n = g.n

    def refine(gr: Graph) -> list[tuple[int, tuple[int, ...]]]:
        deg = [gr.degree(v) for v in range(gr.n)]
        return [
            (deg[v], tuple(sorted(deg[u] for u in set_vertices(gr.adj[v]))))
            for v in range(gr.n)
        ]

    inv_g, inv_h = refine(g), refine(h)
    if sorted(inv_g) != sorted(inv_h):
        return None
    candidates = [
        [hv for hv in range(n) if inv_h[hv] == inv_g[gv]] for gv in range(n)
    ]
    if any(not c for c in candidates):
        return None

    # order g's vertices so each one touches as many already-placed vertices
    # as possible (ties: fewer candidates, then lowest index)
    order: list[int] = []
    placed = 0
    while len(order) < n:
        best = min(
            (v for v in range(n) if not (placed >> v) & 1),
            key=lambda v: (
                -(g.adj[v] & placed).bit_count(),
                len(candidates[v]),
                v,
            ),
        )
        order.append(best)
        placed |= 1 << best

    mapping = [-1] * n
    used = [False] * n

    def backtrack(i: int) -> bool:
        if i == n:
            return True
        gv = order[i]
        for hv in candidates[gv]:
            if used[hv]:
                continue
            ok = True
            for gu in order[:i]:
                if g.has_edge(gv, gu) != h.has_edge(hv, mapping[gu]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[gv] = hv
            used[hv] = True
            if backtrack(i + 1):
                return True
            mapping[gv] = -1
            used[hv] = False
        return False

    if not backtrack(0):
        return None
    for u in range(n):
        for v in range(u + 1, n):
            if g.has_edge(u, v) != h.has_edge(mapping[u], mapping[v]):
                raise AssertionError("isomorphism search returned an invalid map")
    return mapping


# ---------------------------------------------------------------------------
# cliques and independence

def maximal_cliques(g: Graph) -> list[int]:
    """All inclusion-maximal cliques as bit masks, canonically sorted.

    Bron-Kerbosch with pivoting; the pivot maximises the number of
    candidate neighbours (ties: lowest index).  Output order: size
    descending, then by sorted vertex tuple.
    """
    found: list[int] = []
    adj = g.adj

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            found.append(r)
            return
        pux = p | x
        pivot, best = -1, -1
        m = pux
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            cnt = (p & adj[u]).bit_count()
            if cnt > best:
                pivot, best = u, cnt
        m = p & ~adj[pivot]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            bk(r | low, p & adj[v], x & adj[v])
            p ^= low
            x |= low

    bk(0, (1 << g.n) - 1, 0)
    found.sort(key=lambda c: (-c.bit_count(), set_vertices(c)))
    return found


def max_clique(g: Graph) -> tuple[int, int]:
    """Exact maximum clique (size, witness mask) by branch and bound.

    Tomita-style search: candidates are greedily coloured in a static
    degree-descending order and expanded in decreasing colour, pruning
    branches that cannot beat the incumbent.
    """
    n, adj = g.n, g.adj
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    best_size = 0
    best_mask = 0

    def expand(cand: int, cur_mask: int, cur_size: int) -> None:
        nonlocal best_size, best_mask
        if cand == 0:
            if cur_size > best_size:
                best_size, best_mask = cur_size, cur_mask
            return
        # greedy colouring of the candidates; colour number bounds the
        # clique size reachable from this node
        color_masks: list[int] = []
        for v in order:
            if not (cand >> v) & 1:
                continue
            for ci in range(len(color_masks)):
                if color_masks[ci] & adj[v] == 0:
                    color_masks[ci] |= 1 << v
                    break
            else:
                color_masks.append(1 << v)
        seq = [
            (v, ci + 1)
            for ci in range(len(color_masks))
            for v in set_vertices(color_masks[ci])
        ]
        for v, c in reversed(seq):
            if cur_size + c <= best_size:
                return
            vbit = 1 << v
            expand(cand & adj[v], cur_mask | vbit, cur_size + 1)
            cand ^= vbit

    expand((1 << n) - 1, 0, 0)
    return best_size, best_mask


def independence_number(g: Graph) -> tuple[int, int]:
    """Exact alpha(g) with one witness independent set (as a bit mask)."""
    return max_clique(complement(g))


def edge_clique_cover_number(
    g: Graph, budget: Optional[int] = None
) -> tuple[Optional[int], Optional[list[int]]]:
    """Minimum number of cliques covering every edge, searched exactly.

    Iterative deepening on the cover size: depth-first search covers the
    lowest-index uncovered edge with each maximal clique containing it.
    ``budget`` caps the cover size considered (default: the edge count,
    which always suffices); if theta' exceeds the budget the result is
    (None, None).  Otherwise returns (theta', witness cliques as masks).
    """
    edges = g.edge_list()
    if not edges:
        return 0, []
    if budget is None:
        budget = len(edges)
    cliques = maximal_cliques(g)
    edge_pos = {e: i for i, e in enumerate(edges)}

    def edge_mask(c: int) -> int:
        m = 0
        vs = set_vertices(c)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                m |= 1 << edge_pos[(u, v)]
        return m

    clique_edges = [edge_mask(c) for c in cliques]
    containing = [
        [ci for ci in range(len(cliques)) if (clique_edges[ci] >> ei) & 1]
        for ei in range(len(edges))
    ]
    max_cover = max(m.bit_count() for m in clique_edges)
    full = (1 << len(edges)) - 1

    def dfs(uncovered: int, remaining: int) -> Optional[list[int]]:
        if uncovered == 0:
            return []
        if uncovered.bit_count() > remaining * max_cover:
            return None
        ei = (uncovered & -uncovered).bit_length() - 1
        for ci in containing[ei]:
            sub = dfs(uncovered & ~clique_edges[ci], remaining - 1)
            if sub is not None:
                return [ci] + sub
        return None

    for k in range(1, budget + 1):
        picks = dfs(full, k)
        if picks is not None:
            return k, [cliques[ci] for ci in picks]
    return None, None


# ---------------------------------------------------------------------------
# text format

def format_graph(g: Graph) -> str:
    """Render a graph in the plain text format (``n <count>`` then edges)."""
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the plain text graph format; errors carry 1-based line numbers."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise ValueError(f"line {lineno}: expected 'n <count>', got {raw!r}")
            try:
                n = int(fields[1])
            except ValueError:
                raise ValueError(f"line {lineno}: vertex count {fields[1]!r} is not an integer") from None
            if not 1 <= n <= MAX_VERTICES:
                raise ValueError(f"line {lineno}: vertex count must be in 1..{MAX_VERTICES}")
            continue
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ValueError(f"line {lineno}: edge labels must be integers, got {raw!r}") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValueError(f"line {lineno}: invalid edge ({u}, {v}) for n={n}")
        edges.append((u, v))
    if n is None:
        raise ValueError("line 1: missing 'n <count>' header")
    return Graph(n, edges)
