"""Domination-vector algebra and the inductive leaf-path colouring algorithm.

The colouring routine grows the tree from a path between two leaves, attaching
each remaining leaf's pendant path coloured periodically from the least popular
colour at the attachment vertex upward.  Its guaranteed output bound is
``(r-1) * ceil(ell/2)`` via the flat-based recursion in
:func:`certificate_vector`; :func:`d_vector` is the sharper published recursion
whose maximum is ``ceil((r-1) * ell / 2)``, reported alongside for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import CertificateError, LengthMismatch, ParamOutOfRange, TooSmall
from .imbalance import Colouring, SubtreeWitness, all_profiles
from .trees import Tree, leaves, path_between


def monotone(vec: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Stable ascending sort of ``vec``.

    Returns ``(sorted_vector, sigma)`` where ``sigma[i]`` is the 1-based
    original position of the i-th smallest entry; ties keep input order, so
    sigma is the lexicographically first sorting permutation.
    """
    if not vec:
        raise ParamOutOfRange("empty vector")
    order = sorted(range(len(vec)), key=lambda i: (vec[i], i))
    return tuple(vec[i] for i in order), tuple(i + 1 for i in order)


def alpha(vec: Sequence[int]) -> tuple[int, ...]:
    """Entry j becomes ``vec[j] + r - position of j in the sorted order``."""
    r = len(vec)
    _, sigma = monotone(vec)
    inv = [0] * r
    for pos, j in enumerate(sigma, start=1):
        inv[j - 1] = pos
    return tuple(vec[j] + r - inv[j] for j in range(r))


def dominated(m: Sequence[int], n: Sequence[int]) -> bool:
    """True iff some permutation of ``m`` is pointwise <= ``n``.

    Equivalent to comparing the sorted vectors pointwise (exchange argument;
    property-tested against the all-permutations brute force).
    """
    if len(m) != len(n):
        raise LengthMismatch(f"lengths {len(m)} and {len(n)} differ")
    return all(a <= b for a, b in zip(sorted(m), sorted(n)))


def join(m: Sequence[int], n: Sequence[int]) -> tuple[int, ...]:
    """Pointwise maximum."""
    if len(m) != len(n):
        raise LengthMismatch(f"lengths {len(m)} and {len(n)} differ")
    return tuple(max(a, b) for a, b in zip(m, n))


@dataclass(frozen=True)
class DominationVector:
    """Increasing 1-Lipschitz bounding vector for sorted colour profiles."""

    entries: tuple[int, ...]

    @property
    def max(self) -> int:
        return self.entries[-1]

    @property
    def min(self) -> int:
        return self.entries[0]


def _check_vector_invariants(seq: list[tuple[int, ...]], expected_max) -> None:
    for ell0, d in enumerate(seq, start=2):
        if any(d[i + 1] - d[i] not in (0, 1) for i in range(len(d) - 1)):
            raise CertificateError(f"vector for ell={ell0} not increasing 1-Lipschitz")
        if d[-1] != expected_max(ell0):
            raise CertificateError(
                f"max {d[-1]} != {expected_max(ell0)} at ell={ell0}")
        if ell0 >= 3 and d[0] != seq[ell0 - 3][-1]:
            raise CertificateError(f"min/max chaining broken at ell={ell0}")


@lru_cache(maxsize=None)
def _d_sequence(r: int, ell: int) -> tuple[tuple[int, ...], ...]:
    d2 = tuple(r - math.ceil((r + 1 - j) / 2) for j in range(1, r + 1))
    seq = [d2]
    for _ in range(ell - 2):
        seq.append(monotone(alpha(seq[-1]))[0])
    _check_vector_invariants(seq, lambda l: math.ceil(l * (r - 1) / 2))
    return tuple(seq)


def d_vector(r: int, ell: int) -> DominationVector:
    """The recursive bounding vector with maximum ``ceil(ell*(r-1)/2)``."""
    if r < 2 or ell < 2:
        raise ParamOutOfRange("need r >= 2 and ell >= 2")
    return DominationVector(_d_sequence(r, ell)[ell - 2])


@lru_cache(maxsize=None)
def _cert_sequence(r: int, ell: int) -> tuple[tuple[int, ...], ...]:
    seq = [tuple([r - 1] * r)]
    for _ in range(ell - 2):
        seq.append(monotone(alpha(seq[-1]))[0])
    _check_vector_invariants(seq, lambda l: (r - 1) * math.ceil(l / 2))
    return tuple(seq)


def certificate_vector(r: int, ell: int) -> DominationVector:
    """Profile bound the periodic-base construction actually guarantees.

    Same recursion as :func:`d_vector` but started from the flat vector
    ``(r-1, ..., r-1)``, which is what periodic path colourings really
    achieve at interior vertices; its maximum is ``(r-1) * ceil(ell/2)``.
    """
    if r < 2 or ell < 2:
        raise ParamOutOfRange("need r >= 2 and ell >= 2")
    return DominationVector(_cert_sequence(r, ell)[ell - 2])


def lower_bound(ell: int, r: int) -> int:
    """``ceil((r-1) * ell / r)``: floor every colouring must concede."""
    if ell < 2 or r < 2:
        raise ParamOutOfRange("need ell >= 2 and r >= 2")
    return math.ceil((r - 1) * ell / r)


def upper_bound(ell: int, r: int) -> int:
    """``ceil((r-1) * ell / 2)``: the published ceiling."""
    if ell < 2 or r < 2:
        raise ParamOutOfRange("need ell >= 2 and r >= 2")
    return math.ceil((r - 1) * ell / 2)


# ---------------------------------------------------------------------------
# the constructive colouring
# ---------------------------------------------------------------------------

def _partial_profile(t: Tree, assign: list[int], in_edge: list[bool],
                     b: int, r: int) -> list[int]:
    """Colour profile of ``b`` restricted to the already-coloured subtree."""
    order: list[tuple[int, int, int]] = []
    seen = [False] * t.n
    seen[b] = True
    queue = [b]
    for v in queue:
        for (w, e) in t.adj[v]:
            if in_edge[e] and not seen[w]:
                seen[w] = True
                order.append((v, w, e))
                queue.append(w)
    rev = list(reversed(order))
    chi = [0] * r
    best = [0] * t.n
    for j in range(1, r + 1):
        for v in queue:
            best[v] = 0
        for (p, ch, e) in rev:
            s = (r - 1 if assign[e] == j else -1) + best[ch]
            if s > 0:
                best[p] += s
        chi[j - 1] = best[b]
    return chi


def _walk_to_tree(t: Tree, u: int, in_vertex: list[bool]) -> list[int]:
    """Edges of the unique path from the current tree down to leaf ``u``."""
    parent: dict[int, tuple[int, int]] = {u: (-1, -1)}
    queue = [u]
    hit = -1
    for v in queue:
        if in_vertex[v]:
            hit = v
            break
        for (w, e) in t.adj[v]:
            if w not in parent:
                parent[w] = (v, e)
                queue.append(w)
    eids = []
    cur = hit
    while cur != u:
        p, e = parent[cur]
        eids.append(e)
        cur = p
    return eids  # ordered from the attachment vertex towards u


def colour_tree(t: Tree, r: int, check: bool = True) -> Colouring:
    """Grow a colouring achieving max imbalance <= (r-1) * ceil(ell/2).

    Base path between the two smallest leaves coloured periodically
    1, 2, ..., r; every remaining leaf's pendant path coloured periodically
    from the least popular colour at its attachment vertex upward.  Unless
    ``check`` is disabled the result is verified against
    :func:`certificate_vector` and the run aborts if that guarantee ever
    failed.  O(r * m * ell).
    """
    if r < 2:
        raise ParamOutOfRange("need r >= 2")
    assign = [0] * t.m
    in_edge = [False] * t.m
    in_vertex = [False] * t.n
    leaf_list = sorted(leaves(t))
    verts, eids = path_between(t, leaf_list[0], leaf_list[1])
    for i, e in enumerate(eids):
        assign[e] = i % r + 1
        in_edge[e] = True
    for v in verts:
        in_vertex[v] = True
    for u in leaf_list[2:]:
        path_edges = _walk_to_tree(t, u, in_vertex)
        b = next(x for x in t.edges[path_edges[0]] if in_vertex[x])
        chi = _partial_profile(t, assign, in_edge, b, r)
        order = sorted(range(r), key=lambda i: (chi[i], i))
        for i, e in enumerate(path_edges):
            assign[e] = order[i % r] + 1
            in_edge[e] = True
            u1, v1 = t.edges[e]
            in_vertex[u1] = in_vertex[v1] = True
    colouring = Colouring(r, tuple(assign))
    if check:
        cert = certificate_vector(r, len(leaf_list))
        for prof in all_profiles(t, colouring):
            if not dominated(prof.values, cert.entries):
                raise CertificateError(
                    f"profile {prof.values} exceeds guaranteed bound "
                    f"{cert.entries}")
    return colouring


def colouring_report(t: Tree, c: Colouring) -> dict:
    """Achieved imbalance, both leaf bounds, and the domination checks."""
    from .imbalance import max_imbalance  # local import keeps module load light

    ell = len(leaves(t))
    witness = max_imbalance(t, c)
    profs = all_profiles(t, c)
    d = d_vector(c.r, ell)
    cert = certificate_vector(c.r, ell)
    return {
        "n": t.n,
        "m": t.m,
        "ell": ell,
        "r": c.r,
        "achieved": witness.value,
        "lower_bound": lower_bound(ell, c.r),
        "upper_bound": upper_bound(ell, c.r),
        "certified_bound": cert.max,
        "dominated": all(dominated(p.values, d.entries) for p in profs),
        "dominated_certificate": all(
            dominated(p.values, cert.entries) for p in profs),
        "witness": witness.to_dict(),
    }


# ---------------------------------------------------------------------------
# pigeonhole lower-bound witness
# ---------------------------------------------------------------------------

def _leaf_edge_split(t: Tree) -> tuple[list[int], list[int]]:
    leafset = leaves(t)
    leaf_edges, inner = [], []
    for e, (u, v) in enumerate(t.edges):
        (leaf_edges if u in leafset or v in leafset else inner).append(e)
    return leaf_edges, inner


def pigeonhole_weights(t: Tree, c: Colouring) -> list[int]:
    """Weights ``w_j(T_j)`` of the stripped tree plus colour-j leaf edges.

    These always sum to ``(r-1) * ell``, which is what forces a colour with
    weight at least ``ceil((r-1) * ell / r)``.
    """
    if t.n < 3:
        raise TooSmall("needs n >= 3 so leaf edges are distinct per leaf")
    if len(c.assignment) != t.m:
        raise LengthMismatch("colouring does not match tree")
    leaf_edges, inner = _leaf_edge_split(t)
    m_inner = len(inner)
    out = []
    for j in range(1, c.r + 1):
        inner_j = sum(1 for e in inner if c.assignment[e] == j)
        leaf_j = sum(1 for e in leaf_edges if c.assignment[e] == j)
        out.append(c.r * (inner_j + leaf_j) - (m_inner + leaf_j))
    return out


def lower_bound_witness(t: Tree, c: Colouring) -> SubtreeWitness:
    """Witness subtree with weight >= ceil((r-1) * ell / r), any colouring."""
    if t.n == 2:
        return SubtreeWitness((0,), anchor=0, colour=c.assignment[0],
                              value=c.r - 1)
    ell = len(leaves(t))
    ws = pigeonhole_weights(t, c)
    if sum(ws) != (c.r - 1) * ell:
        raise CertificateError("pigeonhole identity failed")
    best_j = max(range(c.r), key=lambda j: (ws[j], -j)) + 1
    leaf_edges, inner = _leaf_edge_split(t)
    ids = sorted(inner + [e for e in leaf_edges
                          if c.assignment[e] == best_j])
    if ids:
        anchor = min(min(t.edges[e]) for e in ids)
    else:
        leafset = leaves(t)
        anchor = min(v for v in range(t.n) if v not in leafset)
    value = ws[best_j - 1]
    if value < lower_bound(ell, c.r):
        raise CertificateError("pigeonhole witness below guaranteed floor")
    return SubtreeWitness(tuple(ids), anchor=anchor, colour=best_j, value=value)


# ---------------------------------------------------------------------------
# grid pipeline
# ---------------------------------------------------------------------------

def grid_lower_bound(rows: int, cols: int, r: int) -> dict:
    """Leafy-spanning-tree pipeline: a certified grid discrepancy floor.

    Builds the corner-augmented grid, extracts a spanning tree with at least
    rows*cols/4 + 2 leaves, certifies ceil((r-1)*ell/r) on the tree, and
    subtracts 2r for the two augmenting edges (each can shift any subtree
    imbalance by at most r) to get a bound for the plain grid.
    """
    from .trees import grid_plus, leafy_spanning_tree

    if r < 2:
        raise ParamOutOfRange("need r >= 2")
    target = -((-rows * cols) // 4) + 2
    tree = leafy_spanning_tree(grid_plus(rows, cols), min_leaves=target)
    ell = len(leaves(tree))
    tree_bound = lower_bound(ell, r)
    return {
        "rows": rows,
        "cols": cols,
        "r": r,
        "leaves": ell,
        "leaf_target": target,
        "tree_bound": tree_bound,
        "grid_bound": tree_bound - 2 * r,
        "stated_bound": (r - 1) / (4 * r) * rows * cols + 1 - 2 * r,
    }
