"""Exhaustive ground truth at desk scale.

Exact minimum discrepancies by enumeration over all colourings/orientations,
enumeration of all non-isomorphic small trees, and a sweep that checks the
leaf-count bounds exactly on every one of them.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from .errors import BudgetExceeded, ParamOutOfRange
from .imbalance import Colouring
from .multicolour import lower_bound, upper_bound
from .oriented import Orientation, star_oriented_discrepancy
from .trees import Tree, leaves, rooted_order


@dataclass(frozen=True)
class ExactResult:
    """Outcome of an exhaustive search."""

    value: int
    optimal: Union[Colouring, Orientation]
    search_size: int


def exact_discrepancy(t: Tree, r: int, budget_bits: float = 24.0,
                      prune: bool = True) -> ExactResult:
    """Minimum over all r-colourings of the maximum subtree imbalance.

    Colour-permutation symmetry is broken canonically (colour j may appear
    only after colours 1..j-1 have appeared); edges are assigned in a
    BFS-connected order so every partial assignment spans a subtree, whose
    exact maximum imbalance is a sound lower bound used for pruning.
    ``search_size`` counts visited search nodes.
    """
    if r < 2:
        raise ParamOutOfRange("need r >= 2")
    m = t.m
    if m * math.log2(r) > budget_bits:
        raise BudgetExceeded(
            f"{m} edges x log2({r}) exceeds {budget_bits} bits")
    order = rooted_order(t, 0)
    n = t.n
    gain = r - 1
    colour_at = [0] * m  # colour of the edge at each position of `order`
    best_val: Optional[int] = None
    best_cols: Optional[list[int]] = None
    nodes = 0

    def partial_value(k: int) -> int:
        best = 0
        for j in range(1, r + 1):
            acc = [0] * n
            for i in range(k - 1, -1, -1):
                p, c, _ = order[i]
                s = (gain if colour_at[i] == j else -1) + acc[c]
                if s > 0:
                    acc[p] += s
            mx = max(acc)
            if mx > best:
                best = mx
        return best

    def rec(k: int, used: int) -> None:
        nonlocal best_val, best_cols, nodes
        nodes += 1
        val = partial_value(k)
        if k == m:
            if best_val is None or val < best_val:
                best_val = val
                best_cols = colour_at.copy()
            return
        if prune and best_val is not None and val >= best_val:
            return
        top = used + 1 if used < r else r
        for cval in range(1, top + 1):
            colour_at[k] = cval
            rec(k + 1, used if cval <= used else cval)
        colour_at[k] = 0

    rec(0, 0)
    assign = [0] * m
    for i, (_, _, e) in enumerate(order):
        assign[e] = best_cols[i]
    return ExactResult(best_val, Colouring(r, tuple(assign)), nodes)


def _oriented_sweep(t: Tree) -> tuple[int, tuple[int, ...], int]:
    """Min over orientations (first bit fixed by flip symmetry) of the
    maximum rooted imbalance, evaluated with inlined down/up passes."""
    m, n = t.m, t.n
    order = rooted_order(t, 0)
    pos_parent = [p for (p, _, _) in order]
    pos_child = [c for (_, c, _) in order]
    pos_edge = [e for (_, _, e) in order]
    base = [1 if t.edges[e][0] == p else -1
            for (p, _, e) in order]  # sign of p -> c under bit 0
    best_val: Optional[int] = None
    best_bits: Optional[tuple[int, ...]] = None
    count = 0
    rng = range(m - 1, -1, -1)
    for mask in range(1 << (m - 1)) if m > 1 else range(1):
        sign = [0] * m
        for i in range(m):
            b = (mask >> (pos_edge[i] - 1)) & 1 if pos_edge[i] > 0 else 0
            sign[i] = -base[i] if b else base[i]
        down_a = [0] * n
        down_b = [0] * n
        for i in rng:
            p, c, s = pos_parent[i], pos_child[i], sign[i]
            a = s + down_a[c]
            if a > 0:
                down_a[p] += a
            bb = -s + down_b[c]
            if bb > 0:
                down_b[p] += bb
        up_a = [0] * n
        up_b = [0] * n
        val = max(down_a[0], down_b[0])
        for i in range(m):
            p, c, s = pos_parent[i], pos_child[i], sign[i]
            ca = s + down_a[c]
            cb = -s + down_b[c]
            rest_a = down_a[p] - (ca if ca > 0 else 0) + up_a[p]
            rest_b = down_b[p] - (cb if cb > 0 else 0) + up_b[p]
            ua = -s + rest_a
            ub = s + rest_b
            up_a[c] = ua = ua if ua > 0 else 0
            up_b[c] = ub = ub if ub > 0 else 0
            av = down_a[c] + ua
            bv = down_b[c] + ub
            if av > val:
                val = av
            if bv > val:
                val = bv
        count += 1
        if best_val is None or val < best_val:
            best_val = val
            bits = [0] * m
            for e in range(1, m):
                bits[e] = (mask >> (e - 1)) & 1
            best_bits = tuple(bits)
    return best_val, best_bits, count


def exact_oriented_discrepancy(t: Tree, budget_edges: int = 22) -> ExactResult:
    """Minimum over all orientations of the maximum rooted imbalance.

    The global flip symmetry halves the space (edge 0's bit is fixed).
    """
    if t.m > budget_edges:
        raise BudgetExceeded(f"{t.m} edges exceeds budget {budget_edges}")
    value, bits, count = _oriented_sweep(t)
    return ExactResult(value, Orientation(bits), count)


# ---------------------------------------------------------------------------
# enumeration of non-isomorphic trees
# ---------------------------------------------------------------------------

def _canonical(t: Tree) -> str:
    """Rooted-at-centroid canonical encoding (AHU bracket string)."""
    n = t.n
    order = rooted_order(t, 0)
    size = [1] * n
    for (p, c, _) in reversed(order):
        size[p] += size[c]
    heavy = [n - size[v] for v in range(n)]  # the component through the parent
    for (p, c, _) in order:
        if size[c] > heavy[p]:
            heavy[p] = size[c]
    best = min(heavy)
    centroids = [v for v in range(n) if heavy[v] == best]

    def encode(root: int) -> str:
        ro = rooted_order(t, root)
        kids: list[list[int]] = [[] for _ in range(n)]
        for (p, c, _) in ro:
            kids[p].append(c)
        code = [""] * n
        for (p, c, _) in reversed(ro):
            code[c] = "(" + "".join(sorted(code[c2] for c2 in kids[c])) + ")"
        return "(" + "".join(sorted(code[c2] for c2 in kids[root])) + ")"

    return min(encode(c) for c in centroids)


def trees_of_order(n: int) -> list[Tree]:
    """One representative per isomorphism class of trees on ``n`` vertices,
    built by leaf extension of the (n-1)-vertex classes with canonical-form
    deduplication."""
    if n < 2:
        raise ParamOutOfRange("need n >= 2")
    reps = [Tree([(0, 1)])]
    for size in range(3, n + 1):
        seen: dict[str, Tree] = {}
        for t in reps:
            for v in range(t.n):
                bigger = Tree(list(t.edges) + [(v, size - 1)])
                key = _canonical(bigger)
                if key not in seen:
                    seen[key] = bigger
        reps = list(seen.values())
    return reps


def enumerate_trees(n_max: int) -> Iterator[Tree]:
    """All non-isomorphic trees with 2..n_max vertices, ascending order."""
    if not (2 <= n_max <= 12):
        raise ParamOutOfRange("supported range is 2 <= n_max <= 12")
    for n in range(2, n_max + 1):
        yield from trees_of_order(n)


# ---------------------------------------------------------------------------
# theorem verification sweep
# ---------------------------------------------------------------------------

@dataclass
class VerifyReport:
    """Per-(tree, r) rows with the exact value against both bounds."""

    rows: list[dict] = field(default_factory=list)
    lower_gaps: dict = field(default_factory=dict)
    upper_gaps: dict = field(default_factory=dict)

    @property
    def violations(self) -> list[dict]:
        return [row for row in self.rows if not row["ok"]]

    def to_csv(self) -> str:
        out = ["tree_id,n,ell,r,exact,lower,upper"]
        out.extend(
            f"{r['tree_id']},{r['n']},{r['ell']},{r['r']},"
            f"{r['exact']},{r['lower']},{r['upper']}" for r in self.rows)
        return "\n".join(out) + "\n"


def _verify_one(args) -> list[dict]:
    pairs, tree_id, r_set, oriented, budget_bits, oriented_budget = args
    t = Tree(pairs)
    ell = len(leaves(t))
    rows = []
    for r in r_set:
        res = exact_discrepancy(t, r, budget_bits=budget_bits)
        lo, hi = lower_bound(ell, r), upper_bound(ell, r)
        ok = lo <= res.value <= hi
        if r == 2:
            ok = res.value == lo == hi
        rows.append({"tree_id": tree_id, "n": t.n, "ell": ell, "r": r,
                     "exact": res.value, "lower": lo, "upper": hi, "ok": ok})
    if oriented and t.n >= 3:
        res = exact_oriented_discrepancy(t, budget_edges=oriented_budget)
        lo = star_oriented_discrepancy(ell)
        rows.append({"tree_id": tree_id, "n": t.n, "ell": ell, "r": "oriented",
                     "exact": res.value, "lower": lo, "upper": ell,
                     "ok": lo <= res.value <= ell})
    return rows


def verify_theorems(n_max: int, r_set: Sequence[int], oriented: bool = True,
                    budget_bits: float = 24.0, oriented_budget: int = 22,
                    workers: int = 1) -> VerifyReport:
    """Check the exact bounds on every tree with up to ``n_max`` vertices.

    For r=2 equality with ceil(ell/2) is required; other r check the two
    ceilings; oriented rows check [ceil(ell/2)+1, ell].  Rows keep
    enumeration order regardless of worker count.
    """
    tasks = [(t.edges, i, tuple(r_set), oriented, budget_bits, oriented_budget)
             for i, t in enumerate(enumerate_trees(n_max))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_verify_one, tasks, chunksize=8))
    else:
        chunks = [_verify_one(task) for task in tasks]
    report = VerifyReport()
    for chunk in chunks:
        report.rows.extend(chunk)
    for row in report.rows:
        key = row["r"]
        report.lower_gaps.setdefault(key, Counter())[row["exact"] - row["lower"]] += 1
        report.upper_gaps.setdefault(key, Counter())[row["upper"] - row["exact"]] += 1
    return report
