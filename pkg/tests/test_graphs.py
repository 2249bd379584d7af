import math

import numpy as np
import pytest

from skorodist.betweenness import LinearBetweenness, TrivialBetweenness
from skorodist.graphs import (Graph, GraphPoint, check_graph, closed_graph,
                              filled_graph, path_dist)
from skorodist.ordered import coupling_dist_bruteforce
from skorodist.paths import Domain, Path, indicator, sample_continuous, step_path
from skorodist.space import DEFAULT_SQUEEZE, SqueezedPoint, squeeze_dist

TB = TrivialBetweenness()
LB = LinearBetweenness()


def test_trivial_path_graph_is_just_stars():
    g = closed_graph(Path(Domain.empty(), None))
    assert [(r.value, r.t) for r in g.rows] == [(None, -math.inf), (None, math.inf)]


def test_single_point_graph():
    g = closed_graph(step_path(points=[0.0], initial=2.0))
    assert [(r.value, r.t) for r in g.rows] == \
        [(None, -math.inf), (2.0, 0.0), (None, math.inf)]
    assert not g.sampled


def test_closed_graph_contains_both_jump_values():
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    g = closed_graph(f, eta=0.25)
    assert {r.value for r in g.rows if r.t == 1.0} == {0.0, 1.0}
    # left value precedes right value along the chain
    at1 = [r.value for r in g.rows if r.t == 1.0]
    assert at1 == [0.0, 1.0]


def test_filled_graph_trivial_equals_closed():
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    assert filled_graph(f, TB, eta=0.2).rows == closed_graph(f, eta=0.2).rows


def test_filled_graph_linear_bridges_jump():
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    g = filled_graph(f, LB, eta=0.25)
    mids = [r.value for r in g.rows if r.t == 1.0]
    assert 0.5 in mids and mids == sorted(mids)
    assert g.sampled


def test_filled_graph_betweenness_free_for_continuous():
    c = sample_continuous(lambda t: t * t, np.linspace(0, 1, 21))
    assert filled_graph(c, TB).rows == filled_graph(c, LB).rows


def test_graphs_pass_check():
    paths = [
        indicator(1.0, 2.0, [(0.0, 2.0)]),
        step_path([(0, 2)], initial=0.0, jumps=[(1.0, 0.0, 0.5), (1.5, 0.5, 1.0)]),
        sample_continuous(math.sin, np.linspace(0, 2, 31)),
        step_path(points=[0.0, 1.0], initial=0.0, jumps=[(1.0, 0.5, 1.0)]),
    ]
    for b in (TB, LB):
        for p in paths:
            g = filled_graph(p, b, eta=0.05)
            rep = check_graph(g, b)
            assert rep.ok, (p, rep.violations[:3])


def test_check_graph_rejects_vertical_segment_plus_point():
    rows = [GraphPoint(None, -math.inf, "star", -1)]
    for t in np.linspace(-1, 1, 21):
        if t == 0.0:
            rows.append(GraphPoint(0.0, 0.0, "interior", 0))
            rows.append(GraphPoint(5.0, 0.0, "right", 0))
        else:
            rows.append(GraphPoint(0.0, float(t), "interior", 0))
    rows.append(GraphPoint(None, math.inf, "star", -1))
    rep = check_graph(Graph(tuple(rows), 0.1, True, False), TB)
    assert not rep.ok
    assert any(v.condition == "coherence" for v in rep.violations)


def test_check_graph_rejects_time_decreasing_chain():
    rows = (GraphPoint(None, -math.inf, "star", -1),
            GraphPoint(0.0, 1.0, "right", 0),
            GraphPoint(0.0, 0.0, "right", 0),
            GraphPoint(None, math.inf, "star", -1))
    rep = check_graph(Graph(rows, 0.1, False, False), TB)
    assert any(v.condition == "ii" for v in rep.violations)


def test_check_graph_rejects_middle_outside_segment():
    rows = (GraphPoint(None, -math.inf, "star", -1),
            GraphPoint(0.0, 0.0, "left", 0),
            GraphPoint(9.0, 0.0, "seg", 0),
            GraphPoint(1.0, 0.0, "right", 0),
            GraphPoint(None, math.inf, "star", -1))
    rep = check_graph(Graph(rows, 0.01, False, False), LB)
    assert any(v.condition == "i" for v in rep.violations)


def test_path_dist_forced_pairing():
    p1 = step_path(points=[0.0], initial=0.0)
    p2 = step_path(points=[0.0], initial=0.3)
    res = path_dist(p1, p2, TB, variant="tot")
    assert res.value == pytest.approx(0.3, abs=1e-15)
    assert res.error == 0.0
    assert res.witness_size == 3
    # brute force over the 3-point chains agrees
    g1 = closed_graph(p1).ordered_set()
    g2 = closed_graph(p2).ordered_set()
    assert coupling_dist_bruteforce(g1, g2) == res.value
    # star cross-pairings cost >= 2, so they never help
    s = squeeze_dist(SqueezedPoint(0.0, 0.0), SqueezedPoint(None, math.inf))
    assert s >= 2.0


def test_path_dist_identity_zero():
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    for variant in ("part", "tot", "hausdorff"):
        assert path_dist(f, f, LB, variant=variant, eta=0.1).value == 0.0


def test_staircase_m1_never_exceeds_j1():
    # for the half-spaced staircase both metrics are bound by the same pair
    # and agree exactly at 0.5/e; a tighter staircase separates them strictly
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    g = step_path([(0, 2)], initial=0.0, jumps=[(1.0, 0.0, 0.5), (1.5, 0.5, 1.0)])
    dj = path_dist(g, f, TB, eta=0.01, variant="tot").value
    dm = path_dist(g, f, LB, eta=0.01, variant="tot").value
    assert dm <= dj
    assert dj == pytest.approx(0.5 * math.exp(-1.0), abs=1e-12)
    assert dm == pytest.approx(0.5 * math.exp(-1.0), abs=1e-12)
    tight = step_path([(0, 2)], initial=0.0, jumps=[(1.0, 0.0, 0.5), (1.1, 0.5, 1.0)])
    dj2 = path_dist(tight, f, TB, eta=0.01, variant="tot").value
    dm2 = path_dist(tight, f, LB, eta=0.01, variant="tot").value
    assert dm2 < dj2


def test_metric_chain_on_paths():
    rng = np.random.default_rng(31)
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    for _ in range(8):
        ts = sorted(rng.uniform(0.2, 1.8, size=2).tolist())
        g = step_path([(0, 2)], initial=0.0,
                      jumps=[(ts[0], 0.0, 0.5), (ts[1], 0.5, 1.0)])
        h = path_dist(g, f, LB, eta=0.05, variant="hausdorff").value
        p = path_dist(g, f, LB, eta=0.05, variant="part").value
        t = path_dist(g, f, LB, eta=0.05, variant="tot").value
        assert h <= p <= t


def test_sampling_stability():
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    g = step_path([(0, 2)], initial=0.0, jumps=[(0.7, 0.0, 1.0)])
    a = path_dist(g, f, TB, eta=0.01, variant="tot").value
    b = path_dist(g, f, TB, eta=0.005, variant="tot").value
    assert abs(a - b) <= 2 * 0.01 * (1 + DEFAULT_SQUEEZE.phi_sup)


def test_error_bar_semantics():
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    res = path_dist(f, f, TB, eta=0.01)
    assert res.error == pytest.approx(2 * 0.01 * 2, abs=1e-12)
    exact = path_dist(step_path(points=[0.0], initial=0.0),
                      step_path(points=[0.0], initial=1.0), TB)
    assert exact.error == 0.0


def test_horizon_truncation():
    f = indicator(1.0, math.inf, [(0.0, math.inf)])
    g = closed_graph(f, eta=0.5, horizon=20.0)
    assert g.truncated
    assert max(r.t for r in g.rows if not math.isinf(r.t)) == 20.0
    res = path_dist(f, f, TB, eta=0.5)
    assert res.value == 0.0 and res.error > 0.0


def test_continuous_co_convergence():
    # along a continuous family, vanishing plain Hausdorff distance drags the
    # coupling distance down too
    grid = np.linspace(0.0, 1.0, 41)
    limit = sample_continuous(lambda t: t, grid)
    prev_h = prev_t = math.inf
    for n in (4, 16, 64, 256):
        pn = sample_continuous(lambda t: t + 1.0 / n, grid)
        h = path_dist(pn, limit, TB, variant="hausdorff").value
        t = path_dist(pn, limit, TB, variant="tot").value
        assert h <= prev_h + 1e-12 and t <= prev_t + 1e-12
        prev_h, prev_t = h, t
    assert prev_h < 0.01 and prev_t < 0.01


def test_variant_validation():
    f = indicator(1.0, 2.0, [(0.0, 2.0)])
    with pytest.raises(ValueError):
        path_dist(f, f, TB, variant="nope")
