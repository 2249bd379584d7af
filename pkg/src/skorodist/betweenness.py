"""Segments between points and the axioms they must satisfy.

A betweenness assigns to each pair ``x, z`` a segment: the two-point set
(J1-style), the straight line segment (M1-style), an order interval in a
totally ordered value set, or the trace of a user-supplied interpolation
function.  Segments carry an internal total order from ``x`` to ``z``; filled
path graphs use it to order the points bridging a jump.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .space import EUCLIDEAN, MetricSpace, Value, as_value


def _vec(v: Value) -> np.ndarray:
    return np.asarray(v if isinstance(v, tuple) else (v,), dtype=float)


def _unvec(a: np.ndarray, like: Value) -> Value:
    return tuple(float(c) for c in a) if isinstance(like, tuple) else float(a[0])


def point_segment_dist(p: Value, a: Value, b: Value) -> float:
    """Exact Euclidean distance from ``p`` to the segment ``[a, b]``."""
    pv = p if isinstance(p, tuple) else (p,)
    av = a if isinstance(a, tuple) else (a,)
    bv = b if isinstance(b, tuple) else (b,)
    ab = tuple(y - x for x, y in zip(av, bv))
    denom = sum(c * c for c in ab)
    if denom == 0.0:
        return math.dist(pv, av)
    t = sum((pc - ac) * c for pc, ac, c in zip(pv, av, ab)) / denom
    t = min(1.0, max(0.0, t))
    return math.dist(pv, tuple(ac + t * c for ac, c in zip(av, ab)))


@dataclass(frozen=True)
class Segment:
    """A finite ordered sample of a segment with a distance query.

    ``points`` are listed in the internal order from ``x`` to ``z``.  The
    distance query is exact for the trivial, order and linear kinds and a
    sample minimum otherwise; ``resolution`` bounds how far the sampled
    query can overestimate the true distance (0 when exact).
    """

    x: Value
    z: Value
    points: tuple
    kind: str
    exact: bool
    _dist: Callable[[Value], float] = field(repr=False)
    resolution: float = 0.0

    def dist_to(self, p: Value) -> float:
        return self._dist(as_value(p))

    def contains(self, p: Value, tol: float = 0.0) -> bool:
        return self.dist_to(p) <= tol

    @property
    def degenerate(self) -> bool:
        return len(self.points) == 1


class Betweenness:
    """Base class; concrete kinds construct segments and jump samples."""

    kind = "abstract"

    def __init__(self, space: MetricSpace = EUCLIDEAN):
        self.space = space
        self.default_tol = 0.0

    def segment(self, x: Value, z: Value) -> Segment:
        raise NotImplementedError

    def sample(self, x: Value, z: Value, resolution: float) -> list:
        """Ordered points bridging a jump, spaced at most ``resolution`` apart."""
        return list(self.segment(x, z).points)

    def __repr__(self):
        return f"{type(self).__name__}()"


class TrivialBetweenness(Betweenness):
    """Segment = the endpoint pair.  Gives the J1 flavour of everything."""

    kind = "trivial"

    def segment(self, x: Value, z: Value) -> Segment:
        x, z = as_value(x), as_value(z)
        pts = (x,) if x == z else (x, z)
        dist = self.space.dist

        def d(p):
            return min(dist(p, q) for q in pts)

        return Segment(x, z, pts, self.kind, True, d)


class LinearBetweenness(Betweenness):
    """Straight line segments in R^d.  Gives the M1 flavour."""

    kind = "linear"

    def __init__(self, n_seg: int = 33):
        super().__init__(EUCLIDEAN)
        self.n_seg = n_seg
        self.default_tol = 1e-9

    def interpolate(self, x: Value, z: Value, p: float) -> Value:
        if isinstance(x, tuple):
            return tuple((1.0 - p) * xc + p * zc for xc, zc in zip(x, z))
        return (1.0 - p) * x + p * z

    def segment(self, x: Value, z: Value) -> Segment:
        x, z = as_value(x), as_value(z)
        if isinstance(x, tuple) != isinstance(z, tuple) or (
                isinstance(x, tuple) and len(x) != len(z)):
            raise ValueError("linear segment endpoints must share a dimension")
        if x == z:
            pts = (x,)
        else:
            ps = np.linspace(0.0, 1.0, self.n_seg)
            pts = tuple(self.interpolate(x, z, float(p)) for p in ps)
        return Segment(x, z, pts, self.kind, True,
                       lambda p: point_segment_dist(p, x, z))

    def sample(self, x: Value, z: Value, resolution: float) -> list:
        x, z = as_value(x), as_value(z)
        if x == z:
            return [x]
        n = max(1, math.ceil(self.space.dist(x, z) / resolution))
        return [self.interpolate(x, z, k / n) for k in range(n + 1)]


class OrderBetweenness(Betweenness):
    """Order intervals in a finite totally ordered subset of the reals."""

    kind = "order"

    def __init__(self, values: Sequence[float]):
        super().__init__(EUCLIDEAN)
        self.values = tuple(sorted(float(v) for v in set(values)))

    def segment(self, x: Value, z: Value) -> Segment:
        x, z = float(x), float(z)
        if x not in self.values or z not in self.values:
            raise ValueError("order segment endpoints must belong to the value set")
        lo, hi = min(x, z), max(x, z)
        slice_ = [v for v in self.values if lo <= v <= hi]
        pts = tuple(slice_ if x <= z else reversed(slice_))

        def d(p):
            return min(abs(float(p) - q) for q in pts)

        return Segment(x, z, pts, self.kind, True, d)


class InterpolationBetweenness(Betweenness):
    """Segments traced by a user interpolation function ``fn(x, z, p)``.

    The function must be continuous with ``fn(x,z,0) == x`` and
    ``fn(x,z,1) == z``; the endpoints are verified per call.  Distance
    queries are sample minima at ``n_seg`` parameters.
    """

    kind = "interpolation"

    def __init__(self, fn: Callable[[Value, Value, float], Value],
                 name: str = "custom", n_seg: int = 33,
                 endpoint_tol: float = 1e-9):
        super().__init__(EUCLIDEAN)
        self.fn = fn
        self.name = name
        self.n_seg = n_seg
        self.endpoint_tol = endpoint_tol
        self.default_tol = 1e-9

    def interpolate(self, x: Value, z: Value, p: float) -> Value:
        return as_value(self.fn(x, z, p))

    def _check_endpoints(self, x: Value, z: Value) -> None:
        d0 = self.space.dist(self.interpolate(x, z, 0.0), x)
        d1 = self.space.dist(self.interpolate(x, z, 1.0), z)
        if d0 > self.endpoint_tol or d1 > self.endpoint_tol:
            raise ValueError(
                f"interpolation function misses its endpoints by {max(d0, d1):.3g}")

    def _points(self, x: Value, z: Value, n: int) -> tuple:
        if x == z:
            return (x,)
        return tuple(self.interpolate(x, z, k / n) for k in range(n + 1))

    def segment(self, x: Value, z: Value) -> Segment:
        x, z = as_value(x), as_value(z)
        self._check_endpoints(x, z)
        pts = self._points(x, z, self.n_seg - 1)
        dist = self.space.dist
        res = max((dist(p, q) for p, q in zip(pts, pts[1:])), default=0.0)

        def d(p):
            return min(dist(p, q) for q in pts)

        return Segment(x, z, pts, self.kind, False, d, resolution=res)

    def sample(self, x: Value, z: Value, resolution: float) -> list:
        x, z = as_value(x), as_value(z)
        self._check_endpoints(x, z)
        if x == z:
            return [x]
        n = max(self.n_seg - 1, math.ceil(self.space.dist(x, z) / resolution))
        return list(self._points(x, z, n))


def trivial_segment(x: Value, z: Value, space: MetricSpace = EUCLIDEAN) -> Segment:
    return TrivialBetweenness(space).segment(x, z)


def linear_segment(x: Value, z: Value) -> Segment:
    return LinearBetweenness().segment(x, z)


def order_segment(x: Value, z: Value, values: Sequence[float]) -> Segment:
    return OrderBetweenness(values).segment(x, z)


def interpolation_segment(x: Value, z: Value,
                          fn: Callable[[Value, Value, float], Value],
                          n_seg: int = 33) -> Segment:
    return InterpolationBetweenness(fn, n_seg=n_seg).segment(x, z)


def segment_hausdorff(a: Segment, b: Segment) -> float:
    """Hausdorff distance between two segments.

    Exact for pairs of finite-kind segments and for pairs of linear segments
    (distance to a convex set is convex, so the sup sits at the endpoints);
    a sample bound otherwise.
    """
    if a.kind == "linear" and b.kind == "linear":
        one = max(b.dist_to(a.x), b.dist_to(a.z))
        two = max(a.dist_to(b.x), a.dist_to(b.z))
        return max(one, two)
    one = max(b.dist_to(p) for p in a.points)
    two = max(a.dist_to(p) for p in b.points)
    return max(one, two)


# ---------------------------------------------------------------------------
# Axiom checker
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: tuple
    detail: str


@dataclass
class AxiomReport:
    checked: int = 0
    violations: list[AxiomViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _middle_candidates(b: Betweenness, seg: Segment, y: Value, tol: float) -> list:
    cands = []
    if seg.contains(y, tol):
        cands.append(as_value(y))
    pts = seg.points
    for idx in {len(pts) // 4, len(pts) // 2, (3 * len(pts)) // 4}:
        p = pts[idx]
        if all(b.space.dist(p, q) > 0 for q in cands):
            cands.append(p)
    return cands


def check_axioms(b: Betweenness, triples: Sequence[tuple], tol: float | None = None) -> AxiomReport:
    """Check the betweenness axioms and their consequences on sample triples.

    Conditional axioms are exercised both on the supplied middle point (when
    it lies on the segment) and on points drawn from the segment itself.
    Set comparisons are exact for the trivial and order kinds and use ``tol``
    for the others; segments whose distance query is itself sampled widen
    the comparisons by their sampling resolution (their query can
    overestimate true distances by that much), so violations are only
    reported when they exceed what sampling alone could explain.
    """
    if tol is None:
        tol = b.default_tol
    rep = AxiomReport()
    dist = b.space.dist

    def bad(axiom, witness, detail):
        if len(rep.violations) < 64:
            rep.violations.append(AxiomViolation(axiom, witness, detail))

    def near(value, *segs):
        return value <= tol + sum(s.resolution for s in segs)

    def far(value, *segs):
        return value > 3.0 * tol + 2.0 * sum(s.resolution for s in segs)

    for (x, y, z) in triples:
        x, y, z = as_value(x), as_value(y), as_value(z)
        rep.checked += 1
        sxz = b.segment(x, z)
        szx = b.segment(z, x)

        if far(segment_hausdorff(sxz, szx), sxz, szx):
            bad("i", (x, z), "<x,z> differs from <z,x>")
        if not near(sxz.dist_to(x), sxz) or not near(sxz.dist_to(z), sxz):
            bad("i+ii", (x, z), "an endpoint is missing from its own segment")
        sxx = b.segment(x, x)
        if any(dist(p, x) > tol for p in sxx.points):
            bad("v", (x,), "<x,x> is larger than {x}")

        # the supplied middle joins only under the tight test: a sampled
        # distance query overestimates, so passing it puts the true distance
        # within tol; near-misses would make the conditionals fail by up to
        # the sampling resolution
        for ym in _middle_candidates(b, sxz, y, tol):
            sxy = b.segment(x, ym)
            syz = b.segment(ym, z)
            for p in sxy.points:
                if near(syz.dist_to(p), syz) and far(dist(p, ym), sxy, syz):
                    bad("iii", (x, ym, z, p), "segments overlap away from the middle point")
            for p in syz.points:
                if near(sxy.dist_to(p), sxy) and far(dist(p, ym), sxy, syz):
                    bad("iii", (x, ym, z, p), "segments overlap away from the middle point")
            for p in sxz.points:
                if far(min(sxy.dist_to(p), syz.dist_to(p)), sxy, syz):
                    bad("iv", (x, ym, z, p), "point of <x,z> escapes the two halves")
            for p in sxy.points + syz.points:
                if far(sxz.dist_to(p), sxz):
                    bad("iv/vi", (x, ym, z, p), "half-segment leaves <x,z>")
            if near(syz.dist_to(x), syz) and far(dist(x, ym), syz):
                bad("vii", (x, ym, z), "mutual betweenness of distinct points")
            sub = sxy.points
            if len(sub) >= 2:
                y2 = sub[len(sub) // 2]
                sy2z = b.segment(y2, z)
                if far(sy2z.dist_to(ym), sy2z):
                    bad("viii", (x, ym, y2, z), "order exchange fails")

        # Internal total order along the segment (consecutive sample points).
        pts = sxz.points
        for p, q in zip(pts, pts[1:]):
            sxq = b.segment(x, q)
            if far(sxq.dist_to(p), sxq):
                bad("order", (x, z, p, q), "sample order disagrees with segment order")
            sxp = b.segment(x, p)
            if far(dist(p, q), sxp) and near(sxp.dist_to(q), sxp):
                bad("order", (x, z, p, q), "two distinct points compare both ways")
    return rep


# Registry used by the CLI for interpolation-generated betweennesses.
_INTERPOLATIONS: dict[str, Callable] = {
    "linear_blend": lambda x, z, p: _unvec((1 - p) * _vec(x) + p * _vec(z), as_value(x)),
}


def register_interpolation(name: str, fn: Callable[[Value, Value, float], Value]) -> None:
    _INTERPOLATIONS[name] = fn


def interpolation_by_name(name: str, n_seg: int = 33) -> InterpolationBetweenness:
    if name not in _INTERPOLATIONS:
        raise ValueError(f"unknown interpolation {name!r}; known: {sorted(_INTERPOLATIONS)}")
    return InterpolationBetweenness(_INTERPOLATIONS[name], name=name, n_seg=n_seg)


def betweenness_for_mode(mode: str, values: Sequence[float] | None = None,
                         custom: str | None = None) -> Betweenness:
    """Map a CLI mode name to a betweenness instance.

    ``order`` builds the order betweenness over the supplied value set (for
    paths: the values the two paths actually take); ``custom`` needs a
    registered interpolation function name.
    """
    if mode == "j1":
        return TrivialBetweenness()
    if mode == "m1":
        return LinearBetweenness()
    if mode == "order":
        if not values:
            raise ValueError("order mode needs a value set")
        return OrderBetweenness(values)
    if mode == "custom":
        if not custom:
            raise ValueError("custom mode needs a registered interpolation name")
        return interpolation_by_name(custom)
    raise ValueError(f"unknown mode {mode!r}; expected j1 | m1 | order | custom")
