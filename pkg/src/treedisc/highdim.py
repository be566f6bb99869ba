"""Unit-vector edge colourings: directional sweeps, projection witnesses,
the roots-of-unity embedding, and a coordinate-descent explorer.

The norm of a subtree's vector sum is certified from below through
directions: for any unit u, the best connected subtree for the per-edge
weights u . f(e) wins a lower bound u . D(S) <= ||D(S)||.  All directional
scans share the combinatorial kernel in
:func:`treedisc.imbalance.max_weight_subtree`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    CertificateError,
    DomainError,
    LengthMismatch,
    NonUnitDirection,
    ParamOutOfRange,
)
from .imbalance import Colouring, max_weight_subtree
from .trees import Tree, leaves, rooted_order

UNIT_TOL = 1e-12
CERT_TOL = 1e-9


@dataclass(frozen=True)
class SphericalColouring:
    """One unit vector in (d+1)-space per edge."""

    d: int
    vectors: np.ndarray  # shape (m, d + 1)

    def __post_init__(self):
        if self.d < 1:
            raise ParamOutOfRange("need d >= 1")
        arr = np.asarray(self.vectors, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != self.d + 1:
            raise ParamOutOfRange(
                f"vectors must have {self.d + 1} components each")
        norms = np.linalg.norm(arr, axis=1)
        if np.any(np.abs(norms - 1.0) > UNIT_TOL):
            raise NonUnitDirection("colour vectors must have unit norm")
        arr.setflags(write=False)
        object.__setattr__(self, "vectors", arr)

    @property
    def m(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class DirectionalWitness:
    """Subtree whose vector-sum norm is certified by one direction."""

    direction: tuple[float, ...]
    edge_ids: tuple[int, ...]
    value: float

    def to_dict(self) -> dict:
        return {"value": self.value, "direction": list(self.direction),
                "edge_ids": list(self.edge_ids)}


def _check_pair(t: Tree, sc: SphericalColouring) -> None:
    if sc.m != t.m:
        raise LengthMismatch(
            f"colouring has {sc.m} vectors, tree has {t.m} edges")


def imbalance_in_direction(t: Tree, sc: SphericalColouring,
                           u: Sequence[float]) -> DirectionalWitness:
    """Best subtree for the direction u, trying u and -u; the winner's
    directional sum is the returned (certified) value."""
    _check_pair(t, sc)
    u_arr = np.asarray(u, dtype=float)
    if u_arr.shape != (sc.d + 1,):
        raise NonUnitDirection(f"direction must have {sc.d + 1} components")
    if abs(np.linalg.norm(u_arr) - 1.0) > UNIT_TOL:
        raise NonUnitDirection("direction must have unit norm")
    w = sc.vectors @ u_arr
    best = None
    for flip in (1.0, -1.0):
        value, ids, _ = max_weight_subtree(t, (flip * w).tolist())
        if best is None or value > best[0]:
            best = (value, ids, flip)
    value, ids, flip = best
    return DirectionalWitness(tuple(flip * u_arr), ids, float(value))


def _directional_values(t: Tree, weights: np.ndarray) -> np.ndarray:
    """Vectorised subtree DP: best value per row of a (K, m) weight matrix."""
    order = rooted_order(t, 0)
    acc = np.zeros((weights.shape[0], t.n))
    for (p, c, e) in reversed(order):
        s = weights[:, e] + acc[:, c]
        np.maximum(s, 0.0, out=s)
        acc[:, p] += s
    return acc.max(axis=1)


def sweep_max_imbalance(t: Tree, sc: SphericalColouring, k: int,
                        seed: Optional[int] = None) -> DirectionalWitness:
    """Scan k directions (each with its antipode) and keep the best witness.

    For d=1 the directions are k evenly spaced angles over the half circle,
    so the result is within a factor cos(pi/(2k)) of the true maximum norm;
    for d >= 2 they are seeded uniform sphere samples.
    """
    _check_pair(t, sc)
    if k < 1:
        raise ParamOutOfRange("need k >= 1")
    if sc.d == 1:
        angles = np.pi * np.arange(k) / k
        dirs = np.column_stack([np.cos(angles), np.sin(angles)])
    else:
        if seed is None:
            raise ParamOutOfRange("seed is required for d >= 2 sweeps")
        rng = np.random.default_rng(seed)
        dirs = rng.normal(size=(k, sc.d + 1))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    full = np.vstack([dirs, -dirs])
    vals = _directional_values(t, full @ sc.vectors.T)
    u = full[int(np.argmax(vals))]
    u = u / np.linalg.norm(u)
    return imbalance_in_direction(t, sc, u)


def sample_sphere(d: int, rng: Union[int, np.random.Generator]) -> np.ndarray:
    """Uniform point on the d-sphere in R^(d+1): normalised Gaussian vector."""
    if d < 1:
        raise ParamOutOfRange("need d >= 1")
    gen = rng if isinstance(rng, np.random.Generator) \
        else np.random.default_rng(rng)
    while True:
        v = gen.normal(size=d + 1)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return v / norm


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def marginal_density(d: int, x: float) -> float:
    """Density at x of one coordinate of a uniform point on the unit sphere
    in R^d: (1 - x^2)^((d-3)/2) / B((d-1)/2, 1/2) on [-1, 1]."""
    if d < 2:
        raise ParamOutOfRange("need d >= 2")
    if abs(x) > 1:
        raise DomainError(f"|{x}| > 1")
    expo = (d - 3) / 2
    norm = math.exp(_log_beta((d - 1) / 2, 0.5))
    base = 1.0 - x * x
    if base == 0.0:
        if expo < 0:
            return math.inf
        return (1.0 if expo == 0 else 0.0) / norm
    return base ** expo / norm


def beta_bound(d: int, ell: int) -> float:
    """Guaranteed floor ell / (d * B(d/2, 1/2)) on the best subtree norm."""
    if d < 1 or ell < 2:
        raise ParamOutOfRange("need d >= 1 and ell >= 2")
    return ell / (d * math.exp(_log_beta(d / 2, 0.5)))


def _leaf_edges(t: Tree) -> list[int]:
    leafset = leaves(t)
    return [e for e, (u, v) in enumerate(t.edges)
            if u in leafset or v in leafset]


def mean_leaf_projection(t: Tree, sc: SphericalColouring, samples: int,
                         seed: int, chunk: int = 1 << 16) -> float:
    """Monte-Carlo mean of sum_e |v . f(e)| over leaf edges, v uniform."""
    _check_pair(t, sc)
    if samples < 1:
        raise ParamOutOfRange("need samples >= 1")
    F = sc.vectors[_leaf_edges(t)]
    rng = np.random.default_rng(seed)
    total = 0.0
    remaining = samples
    while remaining > 0:
        batch = min(chunk, remaining)
        v = rng.normal(size=(batch, sc.d + 1))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        total += float(np.abs(v @ F.T).sum())
        remaining -= batch
    return total / samples


def projection_witness(t: Tree, sc: SphericalColouring, samples: int,
                       seed: int) -> DirectionalWitness:
    """Split the leaf edges by the sign of their projection on the best
    sampled direction; whichever of the two complementary subtrees has the
    larger projected sum certifies at least half the absolute leaf mass."""
    _check_pair(t, sc)
    if samples < 1:
        raise ParamOutOfRange("need samples >= 1")
    leaf_ids = _leaf_edges(t)
    F_leaf = sc.vectors[leaf_ids]
    rng = np.random.default_rng(seed)
    best_dv = -1.0
    best_v: Optional[np.ndarray] = None
    remaining = samples
    while remaining > 0:
        batch = min(1 << 16, remaining)
        v = rng.normal(size=(batch, sc.d + 1))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        dv = np.abs(v @ F_leaf.T).sum(axis=1)
        i = int(np.argmax(dv))
        if dv[i] > best_dv:
            best_dv = float(dv[i])
            best_v = v[i].copy()
        remaining -= batch
    proj = F_leaf @ best_v
    keep_pos = [e for e, p in zip(leaf_ids, proj) if p > 0]
    keep_neg = [e for e, p in zip(leaf_ids, proj) if p <= 0]
    all_ids = set(range(t.m))
    cand_pos = sorted(all_ids - set(keep_neg))  # internal edges + positive leaves
    cand_neg = sorted(all_ids - set(keep_pos))
    best = None
    for ids in (cand_pos, cand_neg):
        s = float(sc.vectors[ids].sum(axis=0) @ best_v) if ids else 0.0
        if best is None or abs(s) > abs(best[0]):
            best = (s, ids)
    s, ids = best
    direction = best_v if s >= 0 else -best_v
    value = abs(s)
    if value < best_dv / 2 - CERT_TOL:
        raise CertificateError("projection split lost more than half the mass")
    return DirectionalWitness(tuple(direction), tuple(ids), value)


def roots_of_unity_embedding(c: Colouring) -> SphericalColouring:
    """Colour j becomes the unit vector at angle 2*pi*j/r."""
    angles = 2.0 * np.pi * np.asarray(c.assignment) / c.r
    vectors = np.column_stack([np.cos(angles), np.sin(angles)])
    return SphericalColouring(1, vectors)


def _angles_to_colouring(angles: np.ndarray) -> SphericalColouring:
    return SphericalColouring(
        1, np.column_stack([np.cos(angles), np.sin(angles)]))


def _sweep_value_from_angles(t: Tree, angles: np.ndarray, k: int,
                             dirs: np.ndarray) -> float:
    F = np.column_stack([np.cos(angles), np.sin(angles)])
    return float(_directional_values(t, dirs @ F.T).max())


def complex_local_search(
    t: Tree, iterations: int = 3, restarts: int = 4, seed: int = 0,
    k: int = 720, candidates: int = 16,
) -> tuple[SphericalColouring, float]:
    """Coordinate descent on edge angles minimising the sweep value.

    Starts from the roots-of-unity embeddings of the constructive colourings
    for several colour counts plus seeded random angle assignments; each pass
    tries a fixed grid of replacement angles per edge and keeps strict
    improvements, so the outcome is deterministic under the seed.
    """
    from .multicolour import colour_tree

    angles_dirs = np.pi * np.arange(k) / k
    half = np.column_stack([np.cos(angles_dirs), np.sin(angles_dirs)])
    dirs = np.vstack([half, -half])
    ell = len(leaves(t))
    starts = []
    for r in range(2, min(ell, 8) + 1):
        c = colour_tree(t, r)
        starts.append(2.0 * np.pi * np.asarray(c.assignment, dtype=float) / r)
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        starts.append(rng.uniform(0.0, 2.0 * np.pi, size=t.m))
    grid = 2.0 * np.pi * np.arange(candidates) / candidates
    best_angles, best_val = None, math.inf
    for venture in starts:
        cur = venture.copy()
        val = _sweep_value_from_angles(t, cur, k, dirs)
        for _ in range(iterations):
            improved = False
            for e in range(t.m):
                old = cur[e]
                choice_val, choice = val, old
                for cand in grid:
                    if cand == old:
                        continue
                    cur[e] = cand
                    v = _sweep_value_from_angles(t, cur, k, dirs)
                    if v < choice_val - 1e-12:
                        choice_val, choice = v, cand
                cur[e] = choice
                if choice != old:
                    val = choice_val
                    improved = True
            if not improved:
                break
        if val < best_val:
            best_val, best_angles = val, cur.copy()
    return _angles_to_colouring(best_angles), float(best_val)


# ---------------------------------------------------------------------------
# flat file format: one line of d+1 floats per edge
# ---------------------------------------------------------------------------

def spherical_to_text(sc: SphericalColouring) -> str:
    lines = [" ".join(f"{x:.17g}" for x in row) for row in sc.vectors]
    return "\n".join(lines) + "\n"


def spherical_from_text(text: str) -> SphericalColouring:
    rows = [[float(x) for x in line.split()]
            for line in text.splitlines() if line.strip()]
    if not rows:
        raise ParamOutOfRange("empty spherical colouring")
    width = len(rows[0])
    if width < 2 or any(len(r) != width for r in rows):
        raise ParamOutOfRange("rows must all have d+1 >= 2 floats")
    return SphericalColouring(width - 1, np.asarray(rows))
