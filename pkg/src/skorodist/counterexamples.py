"""Constructive instance generators separating the ordered-set metrics.

Three families, all on [0, 1] with orders decoupled from position:

* ``gen_order_gap``          - chain pairs close in the order-m distance but
                               at least 1/2 apart in order m+1;
* ``gen_partial_order_gap``  - a partially ordered perturbation family that
                               converges in order m but stays 1/2 away in
                               order m+1;
* ``gen_escaping_cauchy``    - a coupling-distance Cauchy sequence whose
                               order reversal prevents any limit.
"""

from __future__ import annotations

from typing import Sequence

from .ordered import OrderedPointSet


def gen_order_gap(m: int, eps: float) -> tuple[OrderedPointSet, OrderedPointSet]:
    """Two (m+1)-point chains with tuple_dist <= eps at m and >= 1/2 at m+1.

    Chain k = 1..m+1 alternates between the blocks [1-eps, 1] and [0, eps];
    the second chain alternates the opposite way.  Points within one block
    are spread by eps/(m+1) so each chain is a genuine set.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0.0 < eps <= 0.25:
        raise ValueError("eps must lie in (0, 1/4]")
    step = eps / (m + 1)

    def block_point(k: int, high_when_odd: bool) -> float:
        high = (k % 2 == 1) == high_when_odd
        offset = ((k - 1) // 2) * step
        return 1.0 - offset if high else 0.0 + offset

    k1 = OrderedPointSet.chain([block_point(k, True) for k in range(1, m + 2)])
    k2 = OrderedPointSet.chain([block_point(k, False) for k in range(1, m + 2)])
    return k1, k2


def gen_partial_order_gap(m: int, n: int) -> tuple[OrderedPointSet, OrderedPointSet]:
    """A partial order K_n at distance O(1/n) from a chain K in order m,
    yet >= 1/2 away in order m+1.

    K has m+1 points alternating between [3/4, 1] and [0, 1/4].  K_n consists
    of perturbed copies ``x_k^l`` (k != l), comparable only within a common
    ``l``-column; each column misses one index, so no column carries a full
    (m+1)-chain.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    gamma = 1.0 / (8.0 * (m + 1))

    def base_point(k: int) -> float:
        offset = ((k - 1) // 2) * gamma
        return 1.0 - offset if k % 2 == 1 else 0.0 + offset

    base = [base_point(k) for k in range(1, m + 2)]
    limit = OrderedPointSet.chain(base)

    eta = gamma / (2.0 * (m + 1) * n)
    points = []
    labels = []
    for l in range(1, m + 2):
        for k in range(1, m + 2):
            if k == l:
                continue
            inward = -1.0 if k % 2 == 1 else 1.0
            points.append(base[k - 1] + inward * l * eta)
            labels.append((k, l))
    pairs = [(i, j)
             for i, (ki, li) in enumerate(labels)
             for j, (kj, lj) in enumerate(labels)
             if li == lj and ki <= kj]
    family = OrderedPointSet(points, pairs)
    return family, limit


def gen_escaping_cauchy(eps_sequence: Sequence[float]) -> list[OrderedPointSet]:
    """Chains {0, 1, eps_n} ordered 0 < 1 < eps_n.

    Consecutive members are within |eps_n - eps_m| in coupling distance, but
    the order reversal between 1 and eps_n keeps the mismatch modulus near 1,
    so the sequence escapes the space.
    """
    eps = [float(e) for e in eps_sequence]
    if not eps:
        raise ValueError("need at least one epsilon")
    if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilons must be positive and strictly decreasing")
    if any(e >= 1.0 for e in eps):
        raise ValueError("epsilons must be < 1 so the three points stay distinct")
    return [OrderedPointSet.chain([0.0, 1.0, e]) for e in eps]
