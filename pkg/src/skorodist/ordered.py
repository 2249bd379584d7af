"""Finite ordered point sets and the metrics that compare them.

A point set carries an explicit partial order (stored decoupled from spatial
position; the interesting counterexamples need exactly that freedom).  Three
distances live here:

* ``hausdorff``        - plain two-sided sup-inf distance, order-blind;
* ``pair_dist``        - Hausdorff distance between the sets of ordered pairs
                         under the coordinatewise max metric; a metric on
                         partially ordered compacts;
* ``coupling_dist``    - minimax distortion over monotone correspondences
                         between two totally ordered sets, computed by a
                         coupled-traversal dynamic program with an exhaustive
                         enumeration oracle alongside.

For every pair one has ``hausdorff <= pair_dist <= coupling_dist`` exactly
(all three reduce to max/min combinations of one shared distance matrix).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .space import EUCLIDEAN, MetricSpace, as_value, distance_matrix

DEFAULT_TUPLE_BUDGET = 200_000
BRUTEFORCE_LIMIT = 6


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""


def tuple_budget() -> int:
    """Enumeration cap; the SKORODIST_BUDGET environment variable overrides it."""
    raw = os.environ.get("SKORODIST_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise ValueError(f"SKORODIST_BUDGET must be an integer, got {raw!r}") from exc
    return DEFAULT_TUPLE_BUDGET


def _transitive_closure(leq: np.ndarray) -> np.ndarray:
    out = leq.copy()
    while True:
        nxt = out | (out @ out)
        if (nxt == out).all():
            return out
        out = nxt


class OrderedPointSet:
    """A finite point set with an explicit partial order.

    ``order_pairs`` lists index pairs ``(i, j)`` meaning point ``i`` precedes
    point ``j``; the reflexive-transitive closure is taken, then antisymmetry
    is enforced (a cycle through distinct points raises).  Totality is
    inferred and cached.
    """

    __slots__ = ("points", "leq", "total", "space")

    def __init__(self, points: Sequence, order_pairs: Sequence[tuple[int, int]] | None = None,
                 space: MetricSpace = EUCLIDEAN, _leq: np.ndarray | None = None):
        self.points = [p if hasattr(p, "is_star") else as_value(p) for p in points]
        n = len(self.points)
        if n == 0:
            raise ValueError("ordered point set must be nonempty")
        if _leq is not None:
            leq = _leq
        else:
            leq = np.eye(n, dtype=bool)
            for i, j in (order_pairs or ()):
                if not (0 <= i < n and 0 <= j < n):
                    raise ValueError(f"order pair ({i},{j}) out of range")
                leq[i, j] = True
            leq = _transitive_closure(leq)
        cyc = leq & leq.T & ~np.eye(n, dtype=bool)
        if cyc.any():
            i, j = map(int, np.argwhere(cyc)[0])
            raise ValueError(f"order has a cycle through points {i} and {j}")
        self.leq = leq
        self.total = bool((leq | leq.T).all())
        self.space = space

    @classmethod
    def chain(cls, points: Sequence, space: MetricSpace = EUCLIDEAN) -> "OrderedPointSet":
        """A totally ordered set in list order."""
        n = len(points)
        leq = np.triu(np.ones((n, n), dtype=bool))
        return cls(points, space=space, _leq=leq)

    def __len__(self) -> int:
        return len(self.points)

    def linear_order(self) -> list[int]:
        """Indices sorted by the (total) order."""
        if not self.total:
            raise ValueError("linear order needs a total order")
        return sorted(range(len(self)), key=lambda i: -int(self.leq[i].sum()))

    def validate(self) -> list[str]:
        """Re-check the partial order axioms; empty list means valid."""
        problems = []
        leq = self.leq
        if not leq.diagonal().all():
            problems.append("order is not reflexive")
        if (leq & leq.T & ~np.eye(len(self), dtype=bool)).any():
            problems.append("order is not antisymmetric")
        if ((leq @ leq) & ~leq).any():
            problems.append("order is not transitive")
        return problems

    def __repr__(self):
        tag = "total" if self.total else "partial"
        return f"OrderedPointSet({len(self)} points, {tag})"


@dataclass(frozen=True)
class Correspondence:
    """A relation between two point sets covering both sides."""

    pairs: tuple[tuple[int, int], ...]
    monotone: bool = False

    def covers(self, n1: int, n2: int) -> bool:
        left = {i for i, _ in self.pairs}
        right = {j for _, j in self.pairs}
        return left == set(range(n1)) and right == set(range(n2))


def _points_of(obj) -> list:
    if isinstance(obj, OrderedPointSet):
        return obj.points
    return [p if hasattr(p, "is_star") else as_value(p) for p in obj]


def _space_of(*objs, space: MetricSpace | None) -> MetricSpace:
    if space is not None:
        return space
    for o in objs:
        if isinstance(o, OrderedPointSet):
            return o.space
    return EUCLIDEAN


def _cross(a, b, space) -> np.ndarray:
    return distance_matrix(space, _points_of(a), _points_of(b))


def hausdorff(k1, k2, space: MetricSpace | None = None) -> float:
    """Two-sided sup-inf distance between nonempty point sets (order-blind)."""
    p1, p2 = _points_of(k1), _points_of(k2)
    if not p1 or not p2:
        raise ValueError("hausdorff needs nonempty sets")
    d = _cross(k1, k2, _space_of(k1, k2, space=space))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def hausdorff_correspondence(k1, k2, space: MetricSpace | None = None
                             ) -> tuple[float, Correspondence]:
    """Hausdorff distance with a nearest-point correspondence attaining it."""
    p1, p2 = _points_of(k1), _points_of(k2)
    if not p1 or not p2:
        raise ValueError("hausdorff needs nonempty sets")
    d = _cross(k1, k2, _space_of(k1, k2, space=space))
    pairs = {(i, int(d[i].argmin())) for i in range(len(p1))}
    pairs |= {(int(d[:, j].argmin()), j) for j in range(len(p2))}
    value = max(float(d[i, j]) for i, j in pairs)
    return value, Correspondence(tuple(sorted(pairs)))


def increasing_tuples(k: OrderedPointSet, m: int,
                      budget: int | None = None) -> np.ndarray:
    """All weakly increasing index m-tuples of ``k``, as an array of shape (N, m)."""
    if m < 1:
        raise ValueError("tuple length must be >= 1")
    cap = tuple_budget() if budget is None else budget
    n = len(k)
    succ = [np.flatnonzero(k.leq[i]) for i in range(n)]
    chains = np.arange(n, dtype=np.int64)[:, None]
    for _ in range(m - 1):
        grown = []
        count = 0
        for row in chains:
            nxt = succ[row[-1]]
            count += len(nxt)
            if count > cap:
                raise BudgetExceededError(
                    f"more than {cap} increasing {m}-tuples; raise SKORODIST_BUDGET")
            if len(nxt):
                grown.append(np.hstack([np.tile(row, (len(nxt), 1)), nxt[:, None]]))
        chains = np.vstack(grown)
    return chains


def _tuple_set_hausdorff(d: np.ndarray, t1: np.ndarray, t2: np.ndarray) -> float:
    """Hausdorff between tuple sets under the coordinatewise max metric."""
    m = t1.shape[1]
    block = max(1, 2_000_000 // max(1, t2.shape[0]))
    sup1 = 0.0
    for lo in range(0, t1.shape[0], block):
        part = t1[lo:lo + block]
        cur = d[part[:, 0]][:, t2[:, 0]]
        for kk in range(1, m):
            np.maximum(cur, d[part[:, kk]][:, t2[:, kk]], out=cur)
        sup1 = max(sup1, float(cur.min(axis=1).max()))
    sup2 = 0.0
    block = max(1, 2_000_000 // max(1, t1.shape[0]))
    for lo in range(0, t2.shape[0], block):
        part = t2[lo:lo + block]
        cur = d[t1[:, 0]][:, part[:, 0]]
        for kk in range(1, m):
            np.maximum(cur, d[t1[:, kk]][:, part[:, kk]], out=cur)
        sup2 = max(sup2, float(cur.min(axis=0).max()))
    return max(sup1, sup2)


def tuple_dist(k1: OrderedPointSet, k2: OrderedPointSet, m: int,
               space: MetricSpace | None = None, budget: int | None = None) -> float:
    """Hausdorff distance between the weakly increasing m-tuple sets.

    ``m = 1`` is the plain Hausdorff distance and ignores the orders; larger
    ``m`` sees progressively more of them, nondecreasing in ``m``.
    """
    sp = _space_of(k1, k2, space=space)
    if m == 2 and k1.total and k2.total and len(k1) * len(k2) > 4096:
        return _pair_dist_total(k1, k2, sp)
    d = _cross(k1, k2, sp)
    t1 = increasing_tuples(k1, m, budget)
    t2 = increasing_tuples(k2, m, budget)
    return _tuple_set_hausdorff(d, t1, t2)


def _pair_dist_total(k1: OrderedPointSet, k2: OrderedPointSet,
                     space: MetricSpace) -> float:
    """pair_dist for two total orders without enumerating the pair sets.

    For chains the nearest ordered pair minimises over a suffix, so suffix
    minima of the cross matrix give an O(n^2 m) evaluation that returns the
    same max/min combination as the enumeration.
    """
    o1 = k1.linear_order()
    o2 = k2.linear_order()
    d = _cross(k1, k2, space)[np.ix_(o1, o2)]

    def one_side(dd: np.ndarray) -> float:
        n = dd.shape[0]
        suf = np.flip(np.minimum.accumulate(np.flip(dd, axis=1), axis=1), axis=1)
        best = 0.0
        for i in range(n):
            cand = np.maximum(dd[i][None, :], suf[i:, :])
            best = max(best, float(cand.min(axis=1).max()))
        return best

    return max(one_side(d), one_side(d.T))


def pair_dist(k1: OrderedPointSet, k2: OrderedPointSet,
              space: MetricSpace | None = None) -> float:
    """Distance between partially ordered sets: ``tuple_dist`` at m = 2."""
    if len(k1) == 0 or len(k2) == 0:
        raise ValueError("pair_dist needs nonempty sets")
    return tuple_dist(k1, k2, 2, space=space)


def coupling_dist(k1: OrderedPointSet, k2: OrderedPointSet,
                  space: MetricSpace | None = None) -> tuple[float, Correspondence]:
    """Minimax distortion over monotone correspondences between two chains.

    Coupled-traversal dynamic program: state (i, j), transitions advance i, j
    or both, the value of a traversal is the largest pair distance along it.
    Ties backtrack toward advancing both indices, so the witness is
    deterministic.
    """
    if not (k1.total and k2.total):
        raise ValueError("coupling_dist needs total orders")
    o1 = k1.linear_order()
    o2 = k2.linear_order()
    d = _cross(k1, k2, _space_of(k1, k2, space=space))[np.ix_(o1, o2)]
    n, m = d.shape

    pad = np.full((n + 1, m + 1), np.inf)
    pad[1, 1] = d[0, 0]
    # Antidiagonal sweep keeps the recurrence vectorised.
    for s in range(1, n + m - 1):
        i = np.arange(max(0, s - m + 1), min(n, s + 1))
        j = s - i
        prev = np.minimum(np.minimum(pad[i, j + 1], pad[i + 1, j]), pad[i, j])
        pad[i + 1, j + 1] = np.maximum(d[i, j], prev)
    value = float(pad[n, m])

    pairs = []
    i, j = n - 1, m - 1
    while True:
        pairs.append((o1[i], o2[j]))
        if i == 0 and j == 0:
            break
        steps = [(a, b) for (a, b) in [(i - 1, j - 1), (i - 1, j), (i, j - 1)]
                 if a >= 0 and b >= 0]
        best = min(pad[a + 1, b + 1] for a, b in steps)
        for a, b in steps:  # diagonal first: ties advance both indices
            if pad[a + 1, b + 1] == best:
                i, j = a, b
                break
    return value, Correspondence(tuple(reversed(pairs)), monotone=True)


def coupling_dist_bruteforce(k1: OrderedPointSet, k2: OrderedPointSet,
                             space: MetricSpace | None = None,
                             limit: int = BRUTEFORCE_LIMIT) -> float:
    """Exhaustive oracle for :func:`coupling_dist` on small chains.

    Recursively enumerates every coupled traversal (equivalently, every
    minimal monotone correspondence; enlarging a correspondence can only
    raise its sup, so the minimum over traversals is the full minimum).
    """
    if not (k1.total and k2.total):
        raise ValueError("coupling_dist needs total orders")
    if len(k1) > limit or len(k2) > limit:
        raise BudgetExceededError(f"bruteforce oracle capped at {limit} points per side")
    o1 = k1.linear_order()
    o2 = k2.linear_order()
    d = _cross(k1, k2, _space_of(k1, k2, space=space))[np.ix_(o1, o2)]
    n, m = d.shape
    best = math.inf

    def walk(i: int, j: int, cur: float) -> None:
        nonlocal best
        cur = max(cur, float(d[i, j]))
        if i == n - 1 and j == m - 1:
            best = min(best, cur)
            return
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, cur)
        if i + 1 < n:
            walk(i + 1, j, cur)
        if j + 1 < m:
            walk(i, j + 1, cur)

    walk(0, 0, 0.0)
    return best


def stabilization_gap(k1: OrderedPointSet, k2: OrderedPointSet,
                      space: MetricSpace | None = None) -> tuple[float, float]:
    """The tuple-distance plateau at ``m = |K1| + |K2|`` next to the coupling
    distance.

    For finite chains ``tuple_dist`` stops growing by that ``m``, but the
    plateau can sit strictly below the coupling distance: a coupling must
    pair the two order-minima (and order-maxima) with each other, while a
    matched pair of weakly increasing tuples never has to cover both sides at
    once.  Chains whose first elements are spatially far apart therefore
    have ``plateau < coupling``.  Callers should treat a nonzero gap as a
    property of the metrics, not an error; the one-sided inequality
    ``tuple_dist <= coupling_dist`` always holds.
    """
    plateau = tuple_dist(k1, k2, len(k1) + len(k2), space=space)
    value, _ = coupling_dist(k1, k2, space=space)
    return plateau, value


# ---------------------------------------------------------------------------
# Mismatch moduli
# ---------------------------------------------------------------------------

def _ordered_pairs(k: OrderedPointSet) -> np.ndarray:
    return np.argwhere(k.leq)


def mismatch_modulus(k: OrderedPointSet, eps: float,
                     space: MetricSpace | None = None) -> float:
    """Largest order reversal visible at spatial resolution ``eps``.

    Sup over quadruples ``x1 <= y1`` and ``y2 <= x2`` in ``k`` with
    ``d(x1,x2) v d(y1,y2) <= eps`` of ``d(x1,y1) v d(x2,y2)``.
    """
    return mismatch_modulus_pair(k, k, eps, space=space)


def mismatch_modulus_pair(k1: OrderedPointSet, k2: OrderedPointSet, eps: float,
                          space: MetricSpace | None = None) -> float:
    """Cross-set mismatch modulus: ``x1 <= y1`` in k1, ``y2 <= x2`` in k2."""
    sp = _space_of(k1, k2, space=space)
    d1 = _cross(k1, k1, sp)
    d2 = _cross(k2, k2, sp)
    d12 = _cross(k1, k2, sp)
    p = _ordered_pairs(k1)              # rows (x1, y1)
    q = _ordered_pairs(k2)              # rows (y2, x2)
    val_p = d1[p[:, 0], p[:, 1]]
    val_q = d2[q[:, 1], q[:, 0]]
    best = 0.0
    block = max(1, 2_000_000 // max(1, q.shape[0]))
    for lo in range(0, p.shape[0], block):
        pp = p[lo:lo + block]
        adm = np.maximum(d12[pp[:, 0]][:, q[:, 1]], d12[pp[:, 1]][:, q[:, 0]]) <= eps
        if adm.any():
            vals = np.maximum(val_p[lo:lo + block][:, None], val_q[None, :])
            best = max(best, float(vals[adm].max()))
    return best
