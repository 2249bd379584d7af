"""Skorohod-type distances between cadlag paths on arbitrary closed domains.

The pieces, bottom up: the split real line (`splittime`), metric spaces and
squeezed space-time (`space`), segments between points (`betweenness`),
finite ordered point sets with their Hausdorff-style metrics (`ordered`),
cadlag paths and their moduli (`paths`), path graphs and the path distances
(`graphs`), curve reparametrization (`reparam`), and family compactness
diagnostics (`diagnostics`).
"""

from .betweenness import (AxiomReport, Betweenness, InterpolationBetweenness,
                          LinearBetweenness, OrderBetweenness, Segment,
                          TrivialBetweenness, betweenness_for_mode, check_axioms,
                          interpolation_segment, linear_segment, order_segment,
                          register_interpolation, segment_hausdorff,
                          trivial_segment)
from .counterexamples import (gen_escaping_cauchy, gen_order_gap,
                              gen_partial_order_gap)
from .diagnostics import (FamilyReport, compact_containment, diagnose,
                          diagnose_fixed_domain, equicontinuity_curve)
from .graphs import (DistResult, Graph, check_graph, closed_graph, filled_graph,
                     graph_dist, path_dist)
from .ordered import (BudgetExceededError, Correspondence, OrderedPointSet,
                      coupling_dist, coupling_dist_bruteforce, hausdorff,
                      hausdorff_correspondence, increasing_tuples,
                      mismatch_modulus, mismatch_modulus_pair, pair_dist,
                      stabilization_gap, tuple_dist)
from .paths import (Domain, Jump, Path, boundary_oscillation, indicator,
                    interpolate, interpolation_distortion, modulus, restrict,
                    sample_continuous, skorohod_modulus,
                    skorohod_modulus_witness, step_path)
from .reparam import reparam_dist, step_curve, value_chain
from .space import (DEFAULT_SQUEEZE, EUCLIDEAN, MetricSpace, SqueezeConfig,
                    SqueezedPoint, STAR_BOTTOM, STAR_TOP, finite_space,
                    register_dbar, register_phi, squeeze_dist, squeezed_space,
                    validate_metric)
from .splittime import (NEG_INF, POS_INF, SplitInterval, SplitTime, cmp,
                        format_split, interval_contains, parse_split,
                        split_domain)

__version__ = "0.1.0"
