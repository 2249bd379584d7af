"""Metric spaces, the metric-axiom fuzzer, and squeezed space-time.

Spatial points are floats, tuples of floats, or elements of a user-registered
finite metric space.  The squeezed space glues two star points at time
``-inf`` / ``+inf`` onto space-time and discounts spatial distance at large
times, so graphs of paths on unbounded domains become bounded point sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

Value = Any  # float | tuple[float, ...] | registered point


def as_value(v) -> Value:
    """Normalise a spatial point: sequences become tuples, scalars floats."""
    if isinstance(v, (list, tuple, np.ndarray)):
        return tuple(float(c) for c in v)
    return float(v)


def value_dim(v: Value) -> int:
    return len(v) if isinstance(v, tuple) else 1


@dataclass(frozen=True)
class MetricSpace:
    """A point space with a distance function.

    ``pairwise`` is an optional vectorised form returning the full cross
    distance matrix; ``always_precompact`` is a compactness hint used by the
    family diagnostics (finite spaces set it).
    """

    dist: Callable[[Any, Any], float]
    name: str = "custom"
    pairwise: Callable[[Sequence, Sequence], np.ndarray] | None = None
    always_precompact: bool = False


def _euclid_dist(x, y) -> float:
    # same summation order as the vectorised form, so both routes agree bitwise
    if isinstance(x, tuple) or isinstance(y, tuple):
        return math.sqrt(sum((a - b) * (a - b) for a, b in zip(x, y)))
    return abs(float(x) - float(y))


def _euclid_pairwise(xs: Sequence, ys: Sequence) -> np.ndarray:
    a = np.atleast_2d(np.asarray([x if isinstance(x, tuple) else (x,) for x in xs], dtype=float))
    b = np.atleast_2d(np.asarray([y if isinstance(y, tuple) else (y,) for y in ys], dtype=float))
    diff = a[:, None, :] - b[None, :, :]
    if a.shape[1] == 1:
        return np.abs(diff[:, :, 0])
    return np.sqrt((diff * diff).sum(axis=2))


EUCLIDEAN = MetricSpace(_euclid_dist, "euclidean", pairwise=_euclid_pairwise)


def finite_space(points: Sequence, matrix, name: str = "finite") -> MetricSpace:
    """A user-registered finite metric space given by its distance matrix."""
    pts = [as_value(p) for p in points]
    m = np.asarray(matrix, dtype=float)
    if m.shape != (len(pts), len(pts)):
        raise ValueError("distance matrix shape does not match the point list")
    index = {p: i for i, p in enumerate(pts)}

    def dist(x, y) -> float:
        return float(m[index[as_value(x)], index[as_value(y)]])

    def pairwise(xs, ys):
        ii = [index[as_value(x)] for x in xs]
        jj = [index[as_value(y)] for y in ys]
        return m[np.ix_(ii, jj)]

    return MetricSpace(dist, name, pairwise=pairwise, always_precompact=True)


def distance_matrix(space: MetricSpace, xs: Sequence, ys: Sequence) -> np.ndarray:
    if space.pairwise is not None:
        return np.asarray(space.pairwise(xs, ys), dtype=float)
    out = np.empty((len(xs), len(ys)))
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            out[i, j] = space.dist(x, y)
    return out


# ---------------------------------------------------------------------------
# Metric axiom fuzzer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricViolation:
    axiom: str  # "identity" | "nonnegative" | "symmetry" | "triangle"
    witness: tuple
    detail: str


@dataclass
class MetricReport:
    violations: list[MetricViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_metric(space: MetricSpace, samples: Sequence, tol: float = 1e-12) -> MetricReport:
    """Check the metric axioms on a point sample, reporting witnesses.

    ``tol`` absorbs float round-off; genuine violations (like a squared
    distance breaking the triangle inequality) exceed it by orders of
    magnitude.
    """
    pts = list(samples)
    report = MetricReport()
    n = len(pts)
    if n == 0:
        return report
    d = distance_matrix(space, pts, pts)

    for i in range(n):
        if abs(d[i, i]) > tol:
            report.violations.append(
                MetricViolation("identity", (pts[i],), f"d(x,x) = {d[i, i]!r}"))
    bad = np.argwhere(d < -tol)
    for i, j in bad[:16]:
        report.violations.append(
            MetricViolation("nonnegative", (pts[i], pts[j]), f"d = {d[i, j]!r}"))
    asym = np.argwhere(np.abs(d - d.T) > tol)
    for i, j in asym[:16]:
        if i < j:
            report.violations.append(
                MetricViolation("symmetry", (pts[i], pts[j]),
                                f"d(x,y)={d[i, j]!r} d(y,x)={d[j, i]!r}"))
    if n >= 3:
        # d(i,k) <= d(i,j) + d(j,k) for all triples, via one broadcast.
        lhs = d[:, None, :]
        rhs = d[:, :, None] + d[None, :, :]
        viol = np.argwhere(lhs > rhs + tol)
        for i, j, k in viol[:16]:
            report.violations.append(
                MetricViolation("triangle", (pts[i], pts[j], pts[k]),
                                f"d(x,z)={d[i, k]:.6g} > {d[i, j]:.6g}+{d[j, k]:.6g}"))
    return report


# ---------------------------------------------------------------------------
# Squeezed space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SqueezedPoint:
    """A space-time point ``(x, t)`` or one of the star points at infinity."""

    x: Value | None
    t: float

    def __post_init__(self):
        if math.isinf(self.t):
            if self.x is not None:
                raise ValueError("star points carry no spatial coordinate")
        elif self.x is None:
            raise ValueError("finite-time points need a spatial coordinate")
        object.__setattr__(self, "x", self.x if self.x is None else as_value(self.x))
        object.__setattr__(self, "t", float(self.t))

    @property
    def is_star(self) -> bool:
        return self.x is None


STAR_BOTTOM = SqueezedPoint(None, -math.inf)
STAR_TOP = SqueezedPoint(None, math.inf)


def _phi_exp_neg_abs(t: float) -> float:
    return 0.0 if math.isinf(t) else math.exp(-abs(t))


def _phi_inv_one_plus_sq(t: float) -> float:
    return 0.0 if math.isinf(t) else 1.0 / (1.0 + t * t)


def _dbar_tanh(s: float, t: float) -> float:
    return abs(math.tanh(s) - math.tanh(t))


def _vec_exp_neg_abs(ts: np.ndarray) -> np.ndarray:
    out = np.exp(-np.abs(ts))
    out[np.isinf(ts)] = 0.0
    return out


def _vec_inv_one_plus_sq(ts: np.ndarray) -> np.ndarray:
    out = 1.0 / (1.0 + ts * ts)
    out[np.isinf(ts)] = 0.0
    return out


_PHI: dict[str, tuple[Callable, Callable, float]] = {
    "exp_neg_abs": (_phi_exp_neg_abs, _vec_exp_neg_abs, 1.0),
    "inv_one_plus_sq": (_phi_inv_one_plus_sq, _vec_inv_one_plus_sq, 1.0),
}
_DBAR: dict[str, tuple[Callable, Callable]] = {
    "tanh": (_dbar_tanh, np.tanh),
}


def register_phi(name: str, fn: Callable[[float], float], sup: float,
                 vec: Callable | None = None) -> None:
    """Register a time-discount function: continuous, 0 at +-inf, >0 on reals."""
    if vec is None:
        vec = np.vectorize(fn, otypes=[float])
    _PHI[name] = (fn, vec, float(sup))


def register_dbar(name: str, fn: Callable[[float, float], float],
                  warp: Callable | None = None) -> None:
    """Register an extended-real metric as ``|w(s) - w(t)|`` for a warp ``w``."""
    if warp is None:
        raise ValueError("dbar registration needs the monotone warp function")
    _DBAR[name] = (fn, warp)


@dataclass(frozen=True)
class SqueezeConfig:
    """Names of the time-discount phi and extended-real metric dbar.

    Distances produced under different configs are not comparable; pin the
    config when exchanging numbers between tools.
    """

    phi_name: str = "exp_neg_abs"
    dbar_name: str = "tanh"

    def __post_init__(self):
        if self.phi_name not in _PHI:
            raise ValueError(f"unknown phi {self.phi_name!r}; known: {sorted(_PHI)}")
        if self.dbar_name not in _DBAR:
            raise ValueError(f"unknown dbar {self.dbar_name!r}; known: {sorted(_DBAR)}")

    def phi(self, t: float) -> float:
        return _PHI[self.phi_name][0](t)

    def phi_array(self, ts: np.ndarray) -> np.ndarray:
        return _PHI[self.phi_name][1](np.asarray(ts, dtype=float))

    @property
    def phi_sup(self) -> float:
        return _PHI[self.phi_name][2]

    def dbar(self, s: float, t: float) -> float:
        return _DBAR[self.dbar_name][0](s, t)

    def time_warp(self, ts: np.ndarray) -> np.ndarray:
        return _DBAR[self.dbar_name][1](np.asarray(ts, dtype=float))

    def to_json(self) -> dict:
        return {"phi": self.phi_name, "dbar": self.dbar_name}

    @classmethod
    def from_json(cls, obj: dict) -> "SqueezeConfig":
        if not isinstance(obj, dict):
            raise ValueError("squeeze config must be an object")
        extra = set(obj) - {"phi", "dbar"}
        if extra:
            raise ValueError(f"unknown squeeze config keys: {sorted(extra)}")
        return cls(phi_name=obj.get("phi", "exp_neg_abs"),
                   dbar_name=obj.get("dbar", "tanh"))


DEFAULT_SQUEEZE = SqueezeConfig()


def squeeze_dist(a: SqueezedPoint, b: SqueezedPoint,
                 base: MetricSpace = EUCLIDEAN,
                 cfg: SqueezeConfig = DEFAULT_SQUEEZE) -> float:
    """Distance in squeezed space-time.

    The spatial term is capped at 1 and weighted by the smaller time discount;
    it vanishes at the star points, whose spatial coordinate is undefined.
    """
    ps, pt = cfg.phi(a.t), cfg.phi(b.t)
    spatial = 0.0
    if not (a.is_star or b.is_star):
        spatial = min(ps, pt) * min(base.dist(a.x, b.x), 1.0)
    return spatial + abs(ps - pt) + cfg.dbar(a.t, b.t)


def squeezed_space(base: MetricSpace = EUCLIDEAN,
                   cfg: SqueezeConfig = DEFAULT_SQUEEZE) -> MetricSpace:
    """The squeezed space as a :class:`MetricSpace` over squeezed points."""

    def dist(a, b):
        return squeeze_dist(a, b, base, cfg)

    def pairwise(ps: Sequence[SqueezedPoint], qs: Sequence[SqueezedPoint]) -> np.ndarray:
        t1 = np.array([p.t for p in ps])
        t2 = np.array([q.t for q in qs])
        phi1 = cfg.phi_array(t1)
        phi2 = cfg.phi_array(t2)
        w1 = cfg.time_warp(t1)
        w2 = cfg.time_warp(t2)
        out = np.abs(phi1[:, None] - phi2[None, :]) + np.abs(w1[:, None] - w2[None, :])
        fin1 = [i for i, p in enumerate(ps) if not p.is_star]
        fin2 = [j for j, q in enumerate(qs) if not q.is_star]
        if fin1 and fin2:
            d = distance_matrix(base, [ps[i].x for i in fin1], [qs[j].x for j in fin2])
            minphi = np.minimum(phi1[fin1][:, None], phi2[fin2][None, :])
            out[np.ix_(fin1, fin2)] += minphi * np.minimum(d, 1.0)
        return out

    return MetricSpace(dist, f"squeezed({base.name})", pairwise=pairwise,
                       always_precompact=base.always_precompact)
