"""Subtree weights, colour profiles, and maximum imbalance for a fixed colouring.

For a colouring with ``r`` colours, the weight of colour ``j`` on a connected
edge set ``S`` is ``r * e_j(S) - |S|`` where ``e_j`` counts the colour-``j``
edges of ``S``.  The single-vertex subtree (empty edge set) is admitted with
weight 0, so all maxima here are nonnegative.  Everything reduces to one
dynamic-programming kernel over per-edge weights: the best connected subtree
hanging below each vertex, accumulated bottom-up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    BadColour,
    BadEdgeIndex,
    DisconnectedSubtree,
    LengthMismatch,
    NonFiniteWeight,
    ParamOutOfRange,
)
from .trees import Tree, rooted_order

Number = Union[int, float]


@dataclass(frozen=True)
class Colouring:
    """Edge colouring: entry ``assignment[e]`` is the colour (1-based) of edge e."""

    r: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.r < 2:
            raise ParamOutOfRange("need at least 2 colours")
        object.__setattr__(self, "assignment", tuple(self.assignment))
        for c in self.assignment:
            if not (1 <= c <= self.r):
                raise BadColour(f"colour {c} outside 1..{self.r}")


@dataclass(frozen=True)
class ColourProfile:
    """Per-colour maxima of subtree weight over subtrees through one vertex."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if any(v < 0 for v in self.values):
            raise ParamOutOfRange("profile entries are nonnegative by definition")


@dataclass(frozen=True)
class SubtreeWitness:
    """A connected edge set certifying an imbalance value.

    ``edge_ids`` may be empty, meaning the single vertex ``anchor``.  For the
    symmetric imbalance, ``value`` is the absolute weight ``|w_j|``.
    """

    edge_ids: tuple[int, ...]
    anchor: int
    colour: int
    value: int

    def to_dict(self) -> dict:
        return {"value": self.value, "colour": self.colour,
                "anchor": self.anchor, "edge_ids": list(self.edge_ids)}


def _check_pair(t: Tree, c: Colouring) -> None:
    if len(c.assignment) != t.m:
        raise LengthMismatch(
            f"colouring has {len(c.assignment)} entries, tree has {t.m} edges")


def weight(t: Tree, c: Colouring, edge_ids: Iterable[int], j: int) -> int:
    """Weight ``r * e_j(S) - |S|`` of the connected edge set S for colour j."""
    _check_pair(t, c)
    if not (1 <= j <= c.r):
        raise BadColour(f"colour {j} outside 1..{c.r}")
    ids = list(edge_ids)
    for e in ids:
        if not (0 <= e < t.m):
            raise BadEdgeIndex(f"edge index {e} out of range")
    if len(set(ids)) != len(ids):
        raise BadEdgeIndex("repeated edge index in subtree")
    if ids:
        members = set(ids)
        start = t.edges[ids[0]][0]
        seen_v = {start}
        seen_e: set[int] = set()
        queue = [start]
        for v in queue:
            for (w, e) in t.adj[v]:
                if e in members and e not in seen_e:
                    seen_e.add(e)
                    if w not in seen_v:
                        seen_v.add(w)
                        queue.append(w)
        if len(seen_e) != len(ids):
            raise DisconnectedSubtree("edge set is not connected")
    hits = sum(1 for e in ids if c.assignment[e] == j)
    return c.r * hits - len(ids)


def max_weight_subtree(
    t: Tree, weights: Sequence[Number]
) -> tuple[Number, tuple[int, ...], int]:
    """Maximum-total-weight connected subtree (the empty subtree counts 0).

    Returns ``(value, edge_ids, anchor)``.  The anchor is the subtree vertex
    nearest the traversal root; ties prefer the smallest anchor, and only
    strictly positive branch contributions are included, which makes the
    witness deterministic and inclusion-minimal.
    """
    if len(weights) != t.m:
        raise LengthMismatch(f"{len(weights)} weights for {t.m} edges")
    for w in weights:
        if not math.isfinite(w):
            raise NonFiniteWeight(f"weight {w!r} is not finite")
    order = rooted_order(t, 0)
    best: list[Number] = [0] * t.n
    for (p, ch, e) in reversed(order):
        s = weights[e] + best[ch]
        if s > 0:
            best[p] += s
    value = max(best)
    anchor = best.index(value)
    children: list[list[tuple[int, int]]] = [[] for _ in range(t.n)]
    for (p, ch, e) in order:
        children[p].append((ch, e))
    picked = []
    stack = [anchor]
    while stack:
        v = stack.pop()
        for (ch, e) in children[v]:
            if weights[e] + best[ch] > 0:
                picked.append(e)
                stack.append(ch)
    return value, tuple(sorted(picked)), anchor


def _colour_weights(c: Colouring, j: int) -> list[int]:
    gain = c.r - 1
    return [gain if a == j else -1 for a in c.assignment]


def profile(t: Tree, c: Colouring, v: int) -> ColourProfile:
    """Colour profile of ``v``: per colour, the best weight among subtrees
    containing ``v``.  Computed by rooting the tree at ``v``; O(r m)."""
    _check_pair(t, c)
    if not (0 <= v < t.n):
        raise ParamOutOfRange(f"vertex {v} out of range")
    order = rooted_order(t, v)
    rev = list(reversed(order))
    vals = []
    for j in range(1, c.r + 1):
        w = _colour_weights(c, j)
        best = [0] * t.n
        for (p, ch, e) in rev:
            s = w[e] + best[ch]
            if s > 0:
                best[p] += s
        vals.append(best[v])
    return ColourProfile(tuple(vals))


def all_profiles(t: Tree, c: Colouring) -> list[ColourProfile]:
    """Colour profiles of every vertex in O(r m) total via rerooting."""
    _check_pair(t, c)
    order = rooted_order(t, 0)
    rev = list(reversed(order))
    table = [[0] * c.r for _ in range(t.n)]
    for j in range(1, c.r + 1):
        w = _colour_weights(c, j)
        down = [0] * t.n
        for (p, ch, e) in rev:
            s = w[e] + down[ch]
            if s > 0:
                down[p] += s
        up = [0] * t.n
        for (p, ch, e) in order:
            contrib = w[e] + down[ch]
            rest = down[p] - (contrib if contrib > 0 else 0) + up[p]
            up[ch] = max(0, w[e] + rest)
        for v in range(t.n):
            table[v][j - 1] = down[v] + up[v]
    return [ColourProfile(tuple(row)) for row in table]


def max_imbalance(t: Tree, c: Colouring) -> SubtreeWitness:
    """Maximum of ``w_j(S)`` over colours j and connected subtrees S."""
    _check_pair(t, c)
    best: Optional[SubtreeWitness] = None
    for j in range(1, c.r + 1):
        value, ids, anchor = max_weight_subtree(t, _colour_weights(c, j))
        if best is None or value > best.value:
            best = SubtreeWitness(ids, anchor, j, value)
    return best


def symmetric_max_imbalance(t: Tree, c: Colouring) -> SubtreeWitness:
    """Maximum of ``|w_j(S)|``; the negative side is a max-weight run with
    per-edge weights ``1 - r * [colour = j]``."""
    _check_pair(t, c)
    best: Optional[SubtreeWitness] = None
    for j in range(1, c.r + 1):
        pos = _colour_weights(c, j)
        neg = [-w for w in pos]
        for side in (pos, neg):
            value, ids, anchor = max_weight_subtree(t, side)
            if best is None or value > best.value:
                best = SubtreeWitness(ids, anchor, j, value)
    return best


# ---------------------------------------------------------------------------
# flat file format: one colour per line, indexed by edge
# ---------------------------------------------------------------------------

def colouring_to_text(c: Colouring) -> str:
    return "\n".join(str(a) for a in c.assignment) + "\n"


def colouring_from_text(text: str, r: Optional[int] = None) -> Colouring:
    """Parse one colour per line; ``r`` defaults to the largest colour seen."""
    entries = [int(line) for line in text.split()]
    if not entries:
        raise ParamOutOfRange("empty colouring")
    return Colouring(r if r is not None else max(max(entries), 2), tuple(entries))
