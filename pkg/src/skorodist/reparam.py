"""Time-warping distance between cadlag curves on [0, 1].

A curve is a step path on the unit interval whose traversal visits pairwise
distinct values; its value chain, ordered by traversal, is a totally ordered
point set.  ``reparam_dist`` minimises ``sup_t d(c1(t), c2(lambda(t)))`` over
piecewise-linear increasing bijections with knots at a uniform time grid (the
knot images are free reals, so jumps can align exactly with target piece
boundaries).  It is an upper bound that tightens to the coupling distance of
the value chains as the grid refines; ``free`` mode drops monotonicity and
decouples into the two-sided value-set Hausdorff distance.  Both serve as a
cross-check of the correspondence-based values computed in ``ordered``.
"""

from __future__ import annotations

import math
from typing import Sequence

from .ordered import OrderedPointSet
from .paths import Domain, Jump, Path
from .space import EUCLIDEAN, MetricSpace, Value, as_value

INF = math.inf


def step_curve(initial: Value, changes: Sequence[tuple[float, Value]]) -> Path:
    """A cadlag parametrisation on [0, 1]: value changes at interior times."""
    jumps = []
    running = as_value(initial)
    for t, v in sorted((float(t), as_value(v)) for t, v in changes):
        if not 0.0 < t < 1.0:
            raise ValueError("curve changes must happen strictly inside (0, 1)")
        jumps.append(Jump(t, running, v))
        running = v
    return Path(Domain.of([(0.0, 1.0)]), initial, jumps)


def value_chain(curve: Path, space: MetricSpace = EUCLIDEAN) -> OrderedPointSet:
    """The traversal values of a curve as a totally ordered point set."""
    vals = [curve.initial] + [j.right for j in curve.jumps]
    if len(set(vals)) != len(vals):
        raise ValueError("a cadlag parametrisation must visit distinct values")
    return OrderedPointSet.chain(vals, space=space)


def _cell_values(curve: Path, grid: int) -> list[list[Value]]:
    """Values swept on each grid cell, in traversal order (jumps at a knot
    open the next cell)."""
    cells = []
    for k in range(grid):
        t0, t1 = k / grid, (k + 1) / grid
        vals = [curve.right(t0)]
        for j in curve.jumps:
            if t0 < j.t < t1:
                vals.append(j.right)
        cells.append(vals)
    return cells


def _cell_cost(vals: list, w: list, s0: int, s1: int, dist) -> float:
    """Minimax cost of one cell's sweep from warp position s0 to s1.

    Positions: even ``2q`` means strictly inside target piece q, odd ``2q+1``
    means exactly at the boundary between pieces q and q+1.  Entering a piece
    pays the active value against it; a value change at a boundary position
    is an exact jump alignment, possible for at most one interior point of a
    straight line, so it is budgeted once per cell.  Point pairings at knots
    are absorbed by right-continuity and never charged on their own.
    """
    r = len(vals)
    start_cost = dist(vals[0], w[s0 // 2]) if s0 % 2 == 0 else 0.0
    cur = {(0, s0, False): start_cost}
    best = INF
    while cur:
        nxt: dict[tuple, float] = {}

        def push(state, cost):
            if cost < nxt.get(state, INF):
                nxt[state] = cost

        for (i, s, used), cost in cur.items():
            if i == r - 1 and s == s1:
                best = min(best, cost)
            if s < s1:
                step = 0.0 if (s + 1) % 2 else dist(vals[i], w[(s + 1) // 2])
                push((i, s + 1, used), max(cost, step))
            if i < r - 1:
                if s % 2 == 0:
                    push((i + 1, s, used), max(cost, dist(vals[i + 1], w[s // 2])))
                elif not used:
                    push((i + 1, s, True), cost)
        cur = nxt
    return best


def reparam_dist(c1: Path, c2: Path, mode: str = "monotone", grid: int = 256,
                 space: MetricSpace = EUCLIDEAN) -> float:
    """Minimax warped distance between two step curves on [0, 1].

    ``monotone`` runs a grid dynamic program over the warp's position in the
    target piece structure; ``free`` allows arbitrary bijections, for which
    the optimum decouples into the two-sided value-set Hausdorff distance.
    Monotone mode always dominates free mode.
    """
    dist = space.dist
    v1 = [c1.initial] + [j.right for j in c1.jumps]
    v2 = [c2.initial] + [j.right for j in c2.jumps]
    if mode == "free":
        one = max(min(dist(a, b) for b in v2) for a in v1)
        two = max(min(dist(a, b) for a in v1) for b in v2)
        return max(one, two)
    if mode != "monotone":
        raise ValueError("mode must be 'monotone' or 'free'")

    w = v2
    m = len(w)
    n_states = 2 * m - 1            # inside 0 .. inside m-1, boundaries between
    cells = _cell_values(c1, grid)
    dp = [INF] * n_states
    dp[0] = 0.0
    for vals in cells:
        ndp = [INF] * n_states
        for s0 in range(n_states):
            if dp[s0] == INF:
                continue
            for s1 in range(s0, n_states):
                if s1 == s0 and s0 % 2 == 1:
                    continue        # a strictly increasing warp cannot pause
                c = _cell_cost(vals, w, s0, s1, dist)
                if c == INF:
                    continue
                val = max(dp[s0], c)
                if val < ndp[s1]:
                    ndp[s1] = val
        dp = ndp
    return dp[n_states - 1]
