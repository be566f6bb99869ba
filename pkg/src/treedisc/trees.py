"""Tree data model, validated construction, family generators, and grids.

Vertices are dense 0-based integers.  Edges are identified by their input
order (the edge index) and keep the endpoint order they were given with;
colourings and orientations elsewhere in the package are flat sequences
indexed by edge.  All values are immutable after construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    BadEdgeIndex,
    CertificateError,
    Cyclic,
    Disconnected,
    DuplicateEdge,
    IsPath,
    ParamOutOfRange,
    ParseError,
    SelfLoop,
)

Pair = tuple[int, int]


class Tree:
    """Undirected labelled tree with indexed edges.

    Construction validates everything: simple, acyclic, connected,
    ``m == n - 1``.  Prefer :func:`from_edge_list` in user code.
    """

    __slots__ = ("n", "m", "edges", "adj", "deg")

    def __init__(self, pairs: Iterable[Pair]):
        edges = [(int(u), int(v)) for u, v in pairs]
        if not edges:
            raise ParamOutOfRange("a tree needs at least one edge")
        for u, v in edges:
            if u < 0 or v < 0:
                raise ParamOutOfRange(f"negative vertex id in edge ({u}, {v})")
            if u == v:
                raise SelfLoop(f"edge ({u}, {v}) is a self-loop")
        n = 1 + max(max(u, v) for u, v in edges)
        seen: set[Pair] = set()
        parent_dsu = list(range(n))

        def find(x: int) -> int:
            while parent_dsu[x] != x:
                parent_dsu[x] = parent_dsu[parent_dsu[x]]
                x = parent_dsu[x]
            return x

        for u, v in edges:
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"edge {{{key[0]}, {key[1]}}} appears twice")
            seen.add(key)
            ru, rv = find(u), find(v)
            if ru == rv:
                raise Cyclic(f"edge ({u}, {v}) closes a cycle")
            parent_dsu[ru] = rv
        if len(edges) != n - 1:
            raise Disconnected(f"{n} vertices but {len(edges)} edges")
        root = find(0)
        if any(find(v) != root for v in range(n)):
            raise Disconnected("edge list spans more than one component")

        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        self.n = n
        self.m = n - 1
        self.edges = tuple(edges)
        self.adj = tuple(tuple(a) for a in adj)
        self.deg = tuple(len(a) for a in adj)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tree) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={list(self.edges)!r})"


class Graph:
    """Simple undirected graph; input to spanning-tree extraction only."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, pairs: Iterable[Pair]):
        if n < 1:
            raise ParamOutOfRange("graph needs at least one vertex")
        edges = [(int(u), int(v)) for u, v in pairs]
        seen: set[Pair] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParamOutOfRange(f"vertex out of range in edge ({u}, {v})")
            if u == v:
                raise SelfLoop(f"edge ({u}, {v}) is a self-loop")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"edge {{{key[0]}, {key[1]}}} appears twice")
            seen.add(key)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        self.n = n
        self.edges = tuple(edges)
        self.adj = tuple(tuple(a) for a in adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class PathToAnchor:
    """Pendant path from a leaf down to its nearest degree->=3 vertex."""

    leaf: int
    anchor: int
    edge_ids: tuple[int, ...]  # ordered from anchor towards the leaf


def from_edge_list(pairs: Iterable[Pair]) -> Tree:
    """Build a validated tree from unordered vertex pairs."""
    return Tree(pairs)


def leaves(t: Tree) -> frozenset[int]:
    """Vertices of degree 1.  A single edge has two leaves."""
    return frozenset(v for v in range(t.n) if t.deg[v] == 1)


def branching_path(t: Tree, leaf: int) -> PathToAnchor:
    """Walk from ``leaf`` to the nearest vertex of degree >= 3.

    Raises :class:`IsPath` when the tree has no such vertex.
    """
    if t.deg[leaf] != 1:
        raise ParamOutOfRange(f"vertex {leaf} is not a leaf")
    if all(d <= 2 for d in t.deg):
        raise IsPath("tree is a path; no branching vertex exists")
    path_edges = []
    prev, cur = -1, leaf
    while t.deg[cur] < 3:
        nxt, eidx = next((w, i) for (w, i) in t.adj[cur] if w != prev)
        path_edges.append(eidx)
        prev, cur = cur, nxt
    path_edges.reverse()
    return PathToAnchor(leaf=leaf, anchor=cur, edge_ids=tuple(path_edges))


def rooted_order(t: Tree, root: int = 0) -> list[tuple[int, int, int]]:
    """BFS preorder of the tree's edges as ``(parent, child, edge)`` triples.

    Parents always precede their children; iterating the reversed list
    processes children before parents, which is what the bottom-up dynamic
    programs in the sibling modules rely on.
    """
    out: list[tuple[int, int, int]] = []
    seen = [False] * t.n
    seen[root] = True
    queue = [root]
    for v in queue:
        for (w, e) in t.adj[v]:
            if not seen[w]:
                seen[w] = True
                out.append((v, w, e))
                queue.append(w)
    return out


def path_between(t: Tree, a: int, b: int) -> tuple[list[int], list[int]]:
    """Unique path from ``a`` to ``b`` as (vertex sequence, edge sequence)."""
    parent = {a: (-1, -1)}
    queue = [a]
    for v in queue:
        if v == b:
            break
        for (w, e) in t.adj[v]:
            if w not in parent:
                parent[w] = (v, e)
                queue.append(w)
    verts = [b]
    eids = []
    cur = b
    while cur != a:
        p, e = parent[cur]
        verts.append(p)
        eids.append(e)
        cur = p
    verts.reverse()
    eids.reverse()
    return verts, eids


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def path(n: int) -> Tree:
    """Path on ``n`` vertices, edges in walk order."""
    if n < 2:
        raise ParamOutOfRange("path needs n >= 2")
    return Tree((i, i + 1) for i in range(n - 1))


def star(ell: int) -> Tree:
    """Star with ``ell`` leaves around centre 0."""
    if ell < 2:
        raise ParamOutOfRange("star needs ell >= 2")
    return Tree((0, j) for j in range(1, ell + 1))


def spider(k: int, ell: int) -> Tree:
    """Root attached to ``ell`` legs, each a path of ``k`` edges."""
    if k < 1 or ell < 2:
        raise ParamOutOfRange("spider needs k >= 1 and ell >= 2")
    pairs = []
    for leg in range(ell):
        base = 1 + leg * k
        pairs.append((0, base))
        for h in range(1, k):
            pairs.append((base + h - 1, base + h))
    return Tree(pairs)


def caterpillar(spine: int, legs: int) -> Tree:
    """Spine path of ``spine`` vertices with ``legs`` pendant leaves each."""
    if spine < 2 or legs < 0:
        raise ParamOutOfRange("caterpillar needs spine >= 2 and legs >= 0")
    pairs = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i in range(spine):
        for _ in range(legs):
            pairs.append((i, nxt))
            nxt += 1
    return Tree(pairs)


def _prufer_decode(seq: Sequence[int], n: int) -> list[Pair]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges: list[Pair] = []
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def random_tree(n: int, seed: int) -> Tree:
    """Uniform random labelled tree on ``n`` vertices.

    Samples a length ``n-2`` sequence over ``0..n-1`` with Python's
    Mersenne-Twister ``random.Random(seed)`` and decodes it; the same seed
    always yields the same tree.
    """
    if n < 2:
        raise ParamOutOfRange("random tree needs n >= 2")
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Tree(_prufer_decode(seq, n))


def grid_plus(m: int, n: int) -> Graph:
    """The m x n grid plus two edges pairing its four corners.

    The extra pairing makes every vertex have degree >= 3 and is always
    stored as the final two edge indices.  Corners join across each row
    (``(i,0)-(i,n-1)``) when ``n >= 3``, across each column when only
    ``m >= 3``, and diagonally for the 2 x 2 grid (whose row and column
    pairs already exist as grid edges).
    """
    if m < 2 or n < 2:
        raise ParamOutOfRange("grid needs m, n >= 2")

    def vid(i: int, j: int) -> int:
        return i * n + j

    pairs = []
    for i in range(m):
        for j in range(n - 1):
            pairs.append((vid(i, j), vid(i, j + 1)))
    for i in range(m - 1):
        for j in range(n):
            pairs.append((vid(i, j), vid(i + 1, j)))
    if n >= 3:
        pairs.append((vid(0, 0), vid(0, n - 1)))
        pairs.append((vid(m - 1, 0), vid(m - 1, n - 1)))
    elif m >= 3:
        pairs.append((vid(0, 0), vid(m - 1, 0)))
        pairs.append((vid(0, n - 1), vid(m - 1, n - 1)))
    else:
        pairs.append((vid(0, 0), vid(1, 1)))
        pairs.append((vid(0, 1), vid(1, 0)))
    return Graph(m * n, pairs)


# ---------------------------------------------------------------------------
# leafy spanning trees
# ---------------------------------------------------------------------------

def _graph_components(g: Graph) -> int:
    seen = [False] * g.n
    comps = 0
    for s in range(g.n):
        if seen[s]:
            continue
        comps += 1
        seen[s] = True
        queue = [s]
        for v in queue:
            for (w, _) in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return comps


def _leafy_forest(g: Graph) -> list[Pair]:
    """Greedy maximally-leafy forest: expand a vertex only when doing so
    attaches at least two new branches (three when seeding a component)."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deg_f = [0] * g.n
    chosen: list[Pair] = []
    order = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    for v in order:
        rv = find(v)
        picks = []
        used = {rv}
        for (u, _) in sorted(g.adj[v]):
            ru = find(u)
            if ru not in used:
                used.add(ru)
                picks.append(u)
        if deg_f[v] + len(picks) >= 3:
            for u in picks:
                parent[find(u)] = find(v)
                chosen.append((v, u))
                deg_f[v] += 1
                deg_f[u] += 1
    return chosen


def _join_components(g: Graph, chosen: list[Pair]) -> list[Pair]:
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deg_f = [0] * g.n
    for u, v in chosen:
        parent[find(u)] = find(v)
        deg_f[u] += 1
        deg_f[v] += 1

    # joining through forest-internal endpoints costs no leaves; through a
    # current leaf costs one
    def loss(u: int, v: int) -> int:
        return (deg_f[u] == 1) + (deg_f[v] == 1)

    candidates = sorted(range(len(g.edges)),
                        key=lambda i: (loss(*g.edges[i]), i))
    out = list(chosen)
    for i in candidates:
        u, v = g.edges[i]
        if find(u) != find(v):
            parent[find(u)] = find(v)
            out.append((u, v))
            deg_f[u] += 1
            deg_f[v] += 1
    return out


def _improve_leaves(g: Graph, tree_pairs: list[Pair],
                    target: Optional[int]) -> list[Pair]:
    """Re-hang degree-2 tree vertices as leaves while a move gains leaves.

    Each move removes one tree edge at a degree-2 vertex and reconnects the
    two halves through a different graph edge; it is applied only when the
    net leaf count strictly increases.
    """
    edge_set = {tuple(sorted(p)) for p in tree_pairs}

    def degrees() -> list[int]:
        d = [0] * g.n
        for u, v in edge_set:
            d[u] += 1
            d[v] += 1
        return d

    def leaf_count(d: list[int]) -> int:
        return sum(1 for x in d if x == 1)

    while True:
        d = degrees()
        if target is not None and leaf_count(d) >= target:
            break
        best_move = None
        for v in range(g.n):
            if d[v] != 2:
                continue
            for (a, cut) in [(w, tuple(sorted((v, w))))
                             for (w, _) in g.adj[v]
                             if tuple(sorted((v, w))) in edge_set]:
                # component of v once the cut edge is removed
                comp_v = {v}
                queue = [v]
                for x in queue:
                    for (y, _) in g.adj[x]:
                        k = tuple(sorted((x, y)))
                        if k in edge_set and k != cut and y not in comp_v:
                            comp_v.add(y)
                            queue.append(y)
                for (x, y) in g.edges:
                    k = tuple(sorted((x, y)))
                    if k in edge_set or k == cut:
                        continue
                    if (x in comp_v) == (y in comp_v):
                        continue
                    delta = {v: -1, a: -1}
                    delta[x] = delta.get(x, 0) + 1
                    delta[y] = delta.get(y, 0) + 1
                    gain = sum((d[w] + dw == 1) - (d[w] == 1)
                               for w, dw in delta.items())
                    if gain > 0 and (best_move is None or gain > best_move[0]):
                        best_move = (gain, cut, k)
            if best_move is not None and best_move[0] >= 2:
                break
        if best_move is None:
            break
        _, cut, add = best_move
        edge_set.remove(cut)
        edge_set.add(add)
    return sorted(edge_set)


def leafy_spanning_tree(g: Graph, min_leaves: Optional[int] = None) -> Tree:
    """Spanning tree grown to have many leaves.

    Greedy leafy expansion first, then arbitrary connection of what is
    left, then a local-improvement pass that re-hangs degree-2 vertices.
    When ``min_leaves`` is given and the final tree still falls short, a
    :class:`CertificateError` is raised.
    """
    if _graph_components(g) != 1:
        raise Disconnected("input graph is not connected")
    if g.n == 1:
        raise ParamOutOfRange("spanning tree needs at least two vertices")
    pairs = _join_components(g, _leafy_forest(g))
    pairs = _improve_leaves(g, pairs, min_leaves)
    t = Tree(pairs)
    if min_leaves is not None and len(leaves(t)) < min_leaves:
        raise CertificateError(
            f"spanning tree has {len(leaves(t))} leaves, needed {min_leaves}")
    return t


# ---------------------------------------------------------------------------
# contraction
# ---------------------------------------------------------------------------

def contract(t: Tree, e: int) -> tuple[Tree, tuple[int, ...]]:
    """Contract edge ``e``; returns the smaller tree and the vertex map.

    The two endpoints merge into the smaller label; every vertex above the
    removed label shifts down by one.  Surviving edges keep their relative
    order, so old edge ``k`` becomes ``k`` when ``k < e`` and ``k - 1``
    otherwise.
    """
    if not (0 <= e < t.m):
        raise BadEdgeIndex(f"edge index {e} out of range 0..{t.m - 1}")
    u, v = t.edges[e]
    keep, drop = (u, v) if u < v else (v, u)
    vmap = []
    for x in range(t.n):
        if x == drop:
            vmap.append(keep)
        elif x > drop:
            vmap.append(x - 1)
        else:
            vmap.append(x)
    pairs = [(vmap[a], vmap[b]) for k, (a, b) in enumerate(t.edges) if k != e]
    return Tree(pairs), tuple(vmap)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Tree:
    """Parse the plain text format: first line ``n m``, then m lines ``u v``."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("expected header 'n m'", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("expected header 'n m'", 1) from None
    pairs = []
    for k in range(m):
        lineno = k + 2
        if lineno - 1 >= len(lines):
            raise ParseError("missing edge line", lineno)
        parts = lines[lineno - 1].split()
        if len(parts) != 2:
            raise ParseError("expected 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("expected integer vertex ids", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id outside 0..{n - 1}", lineno)
        pairs.append((u, v))
    for extra in range(m + 1, len(lines)):
        if lines[extra].strip():
            raise ParseError("unexpected trailing line", extra + 1)
    t = Tree(pairs)
    if t.n != n:
        raise Disconnected(f"header declares {n} vertices, edges span {t.n}")
    return t


def emit_edge_list(t: Tree) -> str:
    """Inverse of :func:`parse_edge_list`; round-trips exactly."""
    out = [f"{t.n} {t.m}"]
    out.extend(f"{u} {v}" for u, v in t.edges)
    return "\n".join(out) + "\n"


_DOT_PALETTE = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
    "#f781bf", "#999999", "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3",
)


def emit_dot(t: Tree, colouring: Optional[Sequence[int]] = None,
             orientation: Optional[Sequence[int]] = None) -> str:
    """GraphViz export; colours and/or orientation annotate the edges."""
    directed = orientation is not None
    head = "digraph tree {" if directed else "graph tree {"
    sep = "->" if directed else "--"
    lines = [head]
    for i, (u, v) in enumerate(t.edges):
        a, b = (u, v)
        if directed and orientation[i]:
            a, b = b, a
        attrs = []
        if colouring is not None:
            c = colouring[i]
            attrs.append(f'label="{c}"')
            attrs.append(f'color="{_DOT_PALETTE[(c - 1) % len(_DOT_PALETTE)]}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {a} {sep} {b}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
