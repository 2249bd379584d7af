"""Cadlag paths on closed time domains, their moduli, and interpolation.

A path is a closed time domain (finite union of closed intervals, possibly
degenerate or unbounded) plus left/right values at each domain time.  Step
paths are the canonical representation: an initial value and a list of jump
records ``(t, left, right)``; the running value is carried between records
and across domain gaps.  Sampled continuous paths are finite dense domains
whose records all have ``left == right``, flagged ``continuous``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .betweenness import Betweenness
from .space import (DEFAULT_SQUEEZE, EUCLIDEAN, MetricSpace, Value, as_value,
                    distance_matrix, value_dim)
from .splittime import SplitTime


@dataclass(frozen=True)
class Domain:
    """A finite union of disjoint closed intervals (degenerate ones are points)."""

    pieces: tuple[tuple[float, float], ...]

    def __post_init__(self):
        cleaned: list[list[float]] = []
        for lo, hi in sorted((float(a), float(b)) for a, b in self.pieces):
            if math.isnan(lo) or math.isnan(hi) or hi < lo:
                raise ValueError(f"bad interval [{lo}, {hi}]")
            if math.isinf(lo) and lo > 0 or math.isinf(hi) and hi < 0:
                raise ValueError("interval endpoints out of the extended line")
            if cleaned and lo <= cleaned[-1][1]:
                cleaned[-1][1] = max(cleaned[-1][1], hi)
            else:
                cleaned.append([lo, hi])
        object.__setattr__(self, "pieces", tuple((a, b) for a, b in cleaned))

    @classmethod
    def empty(cls) -> "Domain":
        return cls(())

    @classmethod
    def of(cls, intervals: Iterable = (), points: Iterable[float] = ()) -> "Domain":
        pieces = [tuple(iv) for iv in intervals]
        pieces += [(float(t), float(t)) for t in points]
        return cls(tuple(pieces))

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def start(self) -> float:
        return self.pieces[0][0] if self.pieces else math.inf

    @property
    def end(self) -> float:
        return self.pieces[-1][1] if self.pieces else -math.inf

    def contains(self, t: float) -> bool:
        return any(lo <= t <= hi for lo, hi in self.pieces)

    def left_accumulates(self, t: float) -> bool:
        """True if the domain reaches ``t`` from the left (cadlag constraint applies)."""
        return any(lo < t <= hi for lo, hi in self.pieces)

    def gaps(self) -> list[tuple[float, float]]:
        """Open gaps between consecutive pieces (within the convex hull)."""
        return [(self.pieces[i][1], self.pieces[i + 1][0])
                for i in range(len(self.pieces) - 1)]

    def clip(self, lo: float, hi: float) -> "Domain":
        out = []
        for a, b in self.pieces:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 <= b2:
                out.append((a2, b2))
        return Domain(tuple(out))

    def hull(self) -> "Domain":
        if self.is_empty:
            return self
        return Domain(((self.start, self.end),))


@dataclass(frozen=True)
class Jump:
    """One-sided values recorded at a time; ``left == right`` marks no jump."""

    t: float
    left: Value
    right: Value

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "left", as_value(self.left))
        object.__setattr__(self, "right", as_value(self.right))


class Path:
    """A cadlag path: domain, initial value, and jump records.

    The right value at ``t`` is the ``right`` of the last record at or before
    ``t`` (the initial value if none); the left value is the record's ``left``
    at a recorded time and the carried running value otherwise.  Records at
    interior times must have ``left`` equal to the running value; at piece
    starts and isolated points both sides are free.
    """

    __slots__ = ("domain", "initial", "jumps", "continuous")

    def __init__(self, domain: Domain, initial: Value | None,
                 jumps: Sequence[Jump] = (), continuous: bool = False):
        self.domain = domain
        self.continuous = continuous
        if domain.is_empty:
            if initial is not None or jumps:
                raise ValueError("the trivial path has no values")
            self.initial = None
            self.jumps = ()
            return
        if initial is None:
            raise ValueError("a nonempty path needs an initial value")
        self.initial = as_value(initial)
        recs = tuple(j if isinstance(j, Jump) else Jump(*j) for j in jumps)
        recs = tuple(sorted(recs, key=lambda j: j.t))
        dim = value_dim(self.initial)
        running = self.initial
        last_t = None
        for j in recs:
            if last_t is not None and j.t <= last_t:
                raise ValueError(f"duplicate or unsorted record time {j.t}")
            last_t = j.t
            if not domain.contains(j.t):
                raise ValueError(f"record at {j.t} outside the domain")
            if value_dim(j.left) != dim or value_dim(j.right) != dim:
                raise ValueError("record values have inconsistent dimension")
            if domain.left_accumulates(j.t) and j.left != running:
                raise ValueError(
                    f"record at {j.t}: left value {j.left!r} breaks the left limit "
                    f"{running!r} inside an interval piece")
            running = j.right
        self.jumps = recs

    # -- evaluation ---------------------------------------------------------

    def right(self, t: float) -> Value:
        """The value just after ``t`` (cadlag value)."""
        v = self.initial
        for j in self.jumps:
            if j.t <= t:
                v = j.right
            else:
                break
        return v

    def left(self, t: float) -> Value:
        """The value just before ``t``."""
        v = self.initial
        for j in self.jumps:
            if j.t < t:
                v = j.right
            elif j.t == t:
                return j.left
            else:
                break
        return v

    @property
    def is_trivial(self) -> bool:
        return self.domain.is_empty

    def is_jump_free(self) -> bool:
        return all(j.left == j.right for j in self.jumps)

    def record_times(self) -> list[float]:
        return [j.t for j in self.jumps]

    def values(self) -> list[Value]:
        out = [] if self.is_trivial else [self.initial]
        for j in self.jumps:
            out.extend((j.left, j.right))
        return out

    def dim(self) -> int:
        return 0 if self.is_trivial else value_dim(self.initial)

    def space(self) -> MetricSpace:
        return EUCLIDEAN

    def __repr__(self):
        if self.is_trivial:
            return "Path(trivial)"
        return f"Path({len(self.domain.pieces)} pieces, {len(self.jumps)} records)"

    # -- restriction --------------------------------------------------------

    def restrict(self, t: float, lo: float = 0.0) -> "Path":
        """The restriction to ``[lo, t]``; ``t`` must lie in the domain."""
        if not self.domain.contains(t):
            raise ValueError(f"restriction time {t} outside the domain")
        dom = self.domain.clip(lo, t)
        if dom.is_empty:
            return Path(dom, None)
        start = dom.start
        at_start = next((j for j in self.jumps if j.t == start), None)
        initial = at_start.left if at_start is not None else self.right(start)
        recs = [j for j in self.jumps if start <= j.t <= t]
        if at_start is None:
            recs = [j for j in recs if j.t > start]
        return Path(dom, initial, recs, continuous=self.continuous)


def restrict(path: Path, t: float) -> Path:
    """Restrict a path to ``[0, t]``."""
    return path.restrict(t, 0.0)


def step_path(intervals: Iterable = (), points: Iterable[float] = (),
              initial: Value | None = None, jumps: Sequence = (),
              continuous: bool = False) -> Path:
    """Convenience constructor from interval/point domain data."""
    return Path(Domain.of(intervals, points), initial, jumps, continuous=continuous)


def indicator(a: float, b: float, domain: Iterable = ((0.0, 2.0),),
              low: float = 0.0, high: float = 1.0) -> Path:
    """The cadlag indicator path: ``high`` from ``a`` up to ``b``.

    Right-continuity puts the upward jump at ``a`` and, when the domain
    continues past ``b``, the downward one at ``b`` (so the closed-interval
    indicator arises when ``b`` is the domain's end).
    """
    dom = Domain.of(domain)
    jumps = []
    initial = high if a <= dom.start else low
    if a > dom.start and dom.contains(a):
        jumps.append(Jump(a, low, high))
    if b < dom.end and dom.contains(b):
        jumps.append(Jump(b, high, low))
    return Path(dom, initial, jumps)


def sample_continuous(fn: Callable[[float], Value], times: Sequence[float]) -> Path:
    """Sample a continuous function on a finite time set (left == right)."""
    ts = sorted(float(t) for t in set(times))
    if not ts:
        return Path(Domain.empty(), None)
    vals = [as_value(fn(t)) for t in ts]
    recs = []
    running = vals[0]
    for t, v in zip(ts[1:], vals[1:]):
        if v != running:
            recs.append(Jump(t, v, v))
            running = v
    return Path(Domain.of(points=ts), vals[0], recs, continuous=True)


# ---------------------------------------------------------------------------
# Cells: maximal constant stretches (exact evaluation of the moduli)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Cell:
    lo: float
    hi: float
    value: Value


def _cells(path: Path, lo: float, hi: float) -> list[_Cell]:
    """Constant-value cells of the path clipped to ``[lo, hi]``.

    A value is attained at every time of its cell, endpoints included (the
    shared endpoint of two adjacent cells attains both one-sided values).
    """
    out: list[_Cell] = []
    for a, b in path.domain.clip(lo, hi).pieces:
        if a == b:
            lv, rv = path.left(a), path.right(a)
            out.append(_Cell(a, a, lv))
            if rv != lv:
                out.append(_Cell(a, a, rv))
            continue
        lv = path.left(a)
        if lv != path.right(a):
            out.append(_Cell(a, a, lv))
        cuts = sorted({a, b} | {j.t for j in path.jumps if a < j.t <= b})
        for c, d in zip(cuts, cuts[1:]):
            out.append(_Cell(c, d, path.right(c)))
        end_jump = next((j for j in path.jumps if j.t == b), None)
        if end_jump is not None and end_jump.left != end_jump.right:
            out.append(_Cell(b, b, end_jump.right))
    return out


def modulus(path: Path, T: float, delta: float) -> float:
    """Classical modulus of continuity of a jump-free path.

    Exact sup of ``d(value(t1), value(t2))`` over domain times in ``[-T, T]``
    with ``0 < t2 - t1 <= delta``; paths with a jump raise ``ValueError``.
    """
    if not path.is_jump_free():
        raise ValueError("the classical modulus needs a jump-free path")
    if path.is_trivial:
        return 0.0
    cells = _cells(path, -T, T)
    if len(cells) < 2:
        return 0.0
    lo = np.array([c.lo for c in cells])
    hi = np.array([c.hi for c in cells])
    gap = np.maximum(0.0, lo[None, :] - hi[:, None])
    same_instant = (lo[:, None] == hi[:, None]) & (lo[None, :] == hi[None, :]) \
        & (lo[:, None] == lo[None, :])
    feasible = (gap <= delta) & ~same_instant
    feasible &= lo[None, :] >= lo[:, None]  # ordered pairs only
    np.fill_diagonal(feasible, False)
    if not feasible.any():
        return 0.0
    d = distance_matrix(path.space(), [c.value for c in cells], [c.value for c in cells])
    return float(d[feasible].max())


# ---------------------------------------------------------------------------
# Skorohod modulus
# ---------------------------------------------------------------------------

def _split_candidates(path: Path, T: float) -> list[tuple[float, int, Value]]:
    """Split-time evaluation points that dominate the sup for step paths.

    Every achievable (value, feasibility) combination of the continuum of
    split times is realised at an event time: the one-sided copies attain
    their real part exactly, and values are constant between events.
    """
    cands: list[tuple[float, int, Value]] = []
    for a, b in path.domain.clip(-T, T).pieces:
        events = {a, b} | {j.t for j in path.jumps if a <= j.t <= b}
        for t in sorted(events):
            cands.append((t, -1, path.left(t)))
            cands.append((t, +1, path.right(t)))
    cands.sort(key=lambda c: (c[0], c[1]))
    return cands


def skorohod_modulus(path: Path, b: Betweenness, T: float, delta: float) -> float:
    """Sup over ordered split-time triples within a delta window of the
    middle value's distance to the segment spanned by the outer values."""
    return _skorohod_sup(path, b, T, delta)[0]


def skorohod_modulus_witness(path: Path, b: Betweenness, T: float, delta: float
                             ) -> tuple[float, tuple[SplitTime, SplitTime, SplitTime] | None]:
    """The modulus together with an achieving split-time triple (None at 0)."""
    best, arg = _skorohod_sup(path, b, T, delta)
    if arg is None:
        return best, None
    return best, tuple(SplitTime(t, sign) for t, sign, _ in arg)


def _skorohod_sup(path: Path, b: Betweenness, T: float, delta: float):
    if path.is_trivial:
        return 0.0, None
    cands = _split_candidates(path, T)
    n = len(cands)
    seg_cache: dict[tuple, object] = {}
    dist_cache: dict[tuple, float] = {}
    best = 0.0
    arg = None
    for i1 in range(n):
        t1, _, v1 = cands[i1]
        for i3 in range(i1, n):
            t3, _, v3 = cands[i3]
            if t3 - t1 > delta:
                break
            key13 = (v1, v3)
            seg = seg_cache.get(key13)
            if seg is None:
                seg = b.segment(v1, v3)
                seg_cache[key13] = seg
            for i2 in range(i1, i3 + 1):
                v2 = cands[i2][2]
                key = (v1, v3, v2)
                val = dist_cache.get(key)
                if val is None:
                    val = seg.dist_to(v2)
                    dist_cache[key] = val
                if val > best:
                    best = val
                    arg = (cands[i1], cands[i2], cands[i3])
    return best, arg


def boundary_oscillation(path: Path, t: float, delta: float) -> float:
    """Sup of ``d(value(s), value(t))`` over domain times with ``|s - t| <= delta``."""
    if path.is_trivial:
        return 0.0
    anchor = path.right(t)
    cells = _cells(path, t - delta, t + delta)
    space = path.space()
    best = 0.0
    for c in cells:
        best = max(best, space.dist(c.value, anchor))
    return best


# ---------------------------------------------------------------------------
# Interpolation across domain gaps
# ---------------------------------------------------------------------------

def _rebuild(domain: Domain, initial: Value, changes: list[tuple[float, Value]],
             continuous: bool = False) -> Path:
    recs = []
    running = initial
    for t, v in sorted(changes):
        if v != running:
            recs.append(Jump(t, running, v))
            running = v
    return Path(domain, initial, recs, continuous=continuous)


def interpolate(path: Path, mode: str, b: Betweenness | None = None,
                mesh: float = 0.01) -> Path:
    """Fill the gaps in the domain's convex hull.

    ``left`` carries the value across each gap, ``right`` pulls the post-gap
    value back, and ``continuous`` traces the betweenness' interpolation
    function through the gap at resolution ``mesh``.  The path must be
    jump-free; a gapless path is returned unchanged.
    """
    if path.is_trivial:
        return path
    if not path.is_jump_free():
        raise ValueError("interpolation is defined for jump-free paths")
    gaps = path.domain.gaps()
    if not gaps:
        return path
    hull = path.domain.hull()
    if mode == "left":
        changes = [(j.t, j.right) for j in path.jumps]
        return _rebuild(hull, path.initial, changes)
    if mode == "right":
        gap_starts = {a for a, _ in gaps}
        changes = [(a, path.right(bb)) for a, bb in gaps]
        changes += [(j.t, j.right) for j in path.jumps if j.t not in gap_starts]
        return _rebuild(hull, path.initial, changes)
    if mode == "continuous":
        if b is None or not hasattr(b, "interpolate"):
            raise ValueError("continuous interpolation needs an "
                             "interpolation-generated betweenness")
        changes = [(j.t, j.right) for j in path.jumps]
        new_points: list[float] = []
        for a, bb in gaps:
            left_v, right_v = path.right(a), path.right(bb)
            steps = max(1, math.ceil((bb - a) / mesh))
            for k in range(1, steps):
                t = a + (bb - a) * k / steps
                new_points.append(t)
                changes.append((t, b.interpolate(left_v, right_v, k / steps)))
        dom = Domain.of(path.domain.pieces, new_points)
        recs = []
        running = path.initial
        for t, v in sorted(changes):
            if v != running:
                recs.append(Jump(t, v, v))
                running = v
        return Path(dom, path.initial, recs, continuous=True)
    raise ValueError(f"unknown interpolation mode {mode!r}")


def interpolation_distortion(path: Path, cfg=None, gap_mesh: int = 64
                             ) -> tuple[float, float]:
    """Worst time-side cost of snapping gap times to a gap endpoint.

    Returns ``(eps_left, eps_right)``: the sups over gap times of
    ``dbar(t, endpoint) + |phi(t) - phi(endpoint)|`` toward the left and the
    right gap ends.  Evaluated at the gap endpoints, the origin when inside,
    and a mesh (the sup sits at an endpoint whenever phi is one-sided
    monotone on the gap).
    """
    if cfg is None:
        cfg = DEFAULT_SQUEEZE
    eps_l = eps_r = 0.0
    for a, b in path.domain.gaps():
        probes = {a, b}
        if a < 0.0 < b:
            probes.add(0.0)
        probes |= {a + (b - a) * k / gap_mesh for k in range(1, gap_mesh)}
        for t in probes:
            eps_l = max(eps_l, cfg.dbar(t, a) + abs(cfg.phi(t) - cfg.phi(a)))
            eps_r = max(eps_r, cfg.dbar(t, b) + abs(cfg.phi(t) - cfg.phi(b)))
    return eps_l, eps_r
