"""Path graphs as totally ordered point sets in squeezed space-time.

The closed graph samples a path's one-sided values; the filled graph bridges
every jump with its betweenness segment.  Rows are kept in the chain order
(time first, then position along the jump segment, the left value preceding
the right one), so a graph converts directly into a totally ordered point set
and the ordered-set metrics apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .betweenness import Betweenness, TrivialBetweenness
from .ordered import OrderedPointSet, coupling_dist, hausdorff, tuple_dist
from .paths import Path
from .space import (DEFAULT_SQUEEZE, EUCLIDEAN, MetricSpace, SqueezeConfig,
                    SqueezedPoint, Value, squeezed_space)

STAR = "star"
LEFT = "left"
SEG = "seg"
RIGHT = "right"
INTERIOR = "interior"

DEFAULT_HORIZON = 20.0


@dataclass(frozen=True)
class GraphPoint:
    value: Value | None
    t: float
    tag: str
    piece: int

    def squeezed(self) -> SqueezedPoint:
        return SqueezedPoint(self.value, self.t)


@dataclass(frozen=True)
class Graph:
    """A sampled path graph: rows in chain order, always including the stars."""

    rows: tuple[GraphPoint, ...]
    mesh: float
    sampled: bool          # any mesh sampling happened (time grid or segments)
    truncated: bool        # an unbounded domain was clipped at the horizon
    base: MetricSpace = field(default=EUCLIDEAN, compare=False)
    cfg: SqueezeConfig = field(default=DEFAULT_SQUEEZE, compare=False)
    horizon: float = DEFAULT_HORIZON

    def __len__(self) -> int:
        return len(self.rows)

    def ordered_set(self) -> OrderedPointSet:
        pts = [r.squeezed() for r in self.rows]
        return OrderedPointSet.chain(pts, space=squeezed_space(self.base, self.cfg))


def _piece_times(a: float, b: float, jumps_in: list[float], eta: float) -> list[float]:
    if a == b:
        return [a]
    steps = max(1, math.ceil((b - a) / eta))
    grid = {a + (b - a) * k / steps for k in range(steps + 1)}
    return sorted(grid | set(jumps_in) | {a, b})


def closed_graph(path: Path, cfg: SqueezeConfig = DEFAULT_SQUEEZE,
                 eta: float = 0.01, horizon: float = DEFAULT_HORIZON,
                 base: MetricSpace = EUCLIDEAN) -> Graph:
    """Sample the closed graph (both one-sided values at every domain time)."""
    return filled_graph(path, TrivialBetweenness(base), cfg, eta, horizon, base)


def filled_graph(path: Path, b: Betweenness, cfg: SqueezeConfig = DEFAULT_SQUEEZE,
                 eta: float = 0.01, horizon: float = DEFAULT_HORIZON,
                 base: MetricSpace = EUCLIDEAN) -> Graph:
    """Sample the filled graph: jumps are bridged by the betweenness segment.

    Interval pieces are sampled at time mesh ``eta``; segment samples are
    spaced at most ``eta`` apart, ordered from the left value to the right
    one.  Unbounded pieces are clipped at the horizon.  For the trivial
    betweenness this is the closed graph.
    """
    rows: list[GraphPoint] = [GraphPoint(None, -math.inf, STAR, -1)]
    sampled = False
    truncated = False
    dom = path.domain
    if not dom.is_empty:
        clipped = dom.clip(-horizon, horizon)
        truncated = clipped.pieces != dom.pieces
        record_times = set(path.record_times())
        for piece_id, (a, bb) in enumerate(clipped.pieces):
            inside = [t for t in record_times if a <= t <= bb]
            times = _piece_times(a, bb, inside, eta)
            if a != bb:
                sampled = True
            for t in times:
                lv, rv = path.left(t), path.right(t)
                if t in record_times or t in (a, bb):
                    if lv == rv:
                        rows.append(GraphPoint(lv, t, RIGHT, piece_id))
                    else:
                        bridge = b.sample(lv, rv, eta)
                        if len(bridge) > 2:
                            sampled = True
                        rows.append(GraphPoint(lv, t, LEFT, piece_id))
                        for p in bridge[1:-1]:
                            rows.append(GraphPoint(p, t, SEG, piece_id))
                        rows.append(GraphPoint(rv, t, RIGHT, piece_id))
                else:
                    rows.append(GraphPoint(rv, t, INTERIOR, piece_id))
    rows.append(GraphPoint(None, math.inf, STAR, -1))
    deduped: list[GraphPoint] = []
    for r in rows:
        if deduped and deduped[-1].value == r.value and deduped[-1].t == r.t:
            continue
        deduped.append(r)
    return Graph(tuple(deduped), eta, sampled, truncated, base, cfg, horizon)


# ---------------------------------------------------------------------------
# Graph checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphViolation:
    condition: str
    index: int
    detail: str


@dataclass
class GraphReport:
    violations: list[GraphViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_graph(graph: Graph, b: Betweenness, tol: float = 1e-9) -> GraphReport:
    """Check that a sampled graph could be the filled graph of a path.

    Conditions: the stars are present; time is weakly increasing along the
    chain (the chain order realises the direction of time); at each fixed
    time every middle point lies in the segment spanned by any outer pair;
    and within an interval piece the value carried across consecutive sample
    times does not silently change (a mesh-scale coherence check; it is what
    rules out sets like a vertical segment plus a detached point).
    """
    rep = GraphReport()
    rows = graph.rows

    def bad(cond, idx, detail):
        if len(rep.violations) < 64:
            rep.violations.append(GraphViolation(cond, idx, detail))

    if len(rows) < 2 or not rows[0].t == -math.inf or not rows[-1].t == math.inf:
        bad("stars", 0, "graph must contain both star points at the ends")
        return rep
    for i in range(1, len(rows)):
        if rows[i].t < rows[i - 1].t:
            bad("ii", i, f"time decreases along the chain at row {i}")

    # (i): middles lie between outers at a fixed time.
    i = 1
    while i < len(rows) - 1:
        j = i
        while j + 1 < len(rows) - 1 and rows[j + 1].t == rows[i].t:
            j += 1
        group = rows[i:j + 1]
        if len(group) >= 3:
            seg_tol = max(tol, graph.mesh)
            k = len(group)
            if k <= 12:
                triples = [(lo, mid, hi_) for lo in range(k)
                           for hi_ in range(lo + 2, k) for mid in range(lo + 1, hi_)]
            else:  # large bridges: outermost pair plus consecutive triples
                triples = [(0, mid, k - 1) for mid in range(1, k - 1)]
                triples += [(m - 1, m, m + 1) for m in range(1, k - 1)]
            for lo, mid, hi_ in triples:
                seg = b.segment(group[lo].value, group[hi_].value)
                if seg.dist_to(group[mid].value) > seg_tol:
                    bad("i", i + mid,
                        f"point at t={rows[i].t} outside the spanning segment")
        i = j + 1

    # Within-piece coherence across time steps.
    for i in range(2, len(rows) - 1):
        prev, cur = rows[i - 1], rows[i]
        if cur.piece != prev.piece or cur.t == prev.t:
            continue
        if INTERIOR in (prev.tag, cur.tag):
            d = graph.base.dist(prev.value, cur.value)
            if d > tol:
                bad("coherence", i,
                    f"value changes by {d:.3g} across a sampled step without a jump record")
    return rep


# ---------------------------------------------------------------------------
# Path distances
# ---------------------------------------------------------------------------

VARIANTS = ("part", "tot", "hausdorff")


@dataclass(frozen=True)
class DistResult:
    """A path distance with its sampling error bar and witness summary."""

    value: float
    error: float
    variant: str
    eta: float
    witness_size: int = 0

    def __float__(self) -> float:
        return self.value


def path_dist(p1: Path, p2: Path, b: Betweenness | None = None,
              cfg: SqueezeConfig = DEFAULT_SQUEEZE, eta: float = 0.01,
              variant: str = "tot", horizon: float = DEFAULT_HORIZON,
              base: MetricSpace = EUCLIDEAN) -> DistResult:
    """Distance between two paths through their filled graphs.

    ``variant='tot'`` runs the monotone-coupling dynamic program on the graph
    chains, ``'part'`` compares the ordered-pair sets, ``'hausdorff'`` ignores
    the order.  The error bar covers the time/segment sampling: twice
    ``eta * (1 + sup phi)`` when sampling happened, zero for exact finite
    graphs; horizon truncation adds its own (tiny) tail term.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if b is None:
        b = TrivialBetweenness(base)
    g1 = filled_graph(p1, b, cfg, eta, horizon, base)
    g2 = filled_graph(p2, b, cfg, eta, horizon, base)
    return graph_dist(g1, g2, variant)


def graph_dist(g1: Graph, g2: Graph, variant: str = "tot") -> DistResult:
    cfg, eta = g1.cfg, g1.mesh
    k1 = g1.ordered_set()
    k2 = g2.ordered_set()
    witness = 0
    if variant == "tot":
        value, corr = coupling_dist(k1, k2)
        witness = len(corr.pairs)
    elif variant == "part":
        value = tuple_dist(k1, k2, 2)
    else:
        value = hausdorff(k1, k2)
    err = 0.0
    if g1.sampled or g2.sampled:
        err = 2.0 * eta * (1.0 + cfg.phi_sup)
    for g in (g1, g2):
        if g.truncated:
            err += cfg.phi(g.horizon) + cfg.dbar(g.horizon, math.inf)
    return DistResult(value, err, variant, eta, witness)
