import math

import pytest
from hypothesis import given, strategies as st

from skorodist.splittime import (MINUS, NEG_INF, PLUS, POS_INF, SplitInterval,
                                 SplitTime, cmp, format_split, interval_contains,
                                 parse_split, split_domain)

finite_reals = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
split_times = st.builds(SplitTime, finite_reals, st.sampled_from([MINUS, PLUS]))


def test_cmp_examples():
    assert cmp(SplitTime.minus(1), SplitTime.plus(1)) == -1
    assert cmp(SplitTime.plus(0), SplitTime.minus(1)) == -1
    assert cmp(SplitTime.plus(2), SplitTime.plus(2)) == 0


def test_infinite_signs():
    assert NEG_INF.sign == PLUS and POS_INF.sign == MINUS
    with pytest.raises(ValueError):
        SplitTime(math.inf, PLUS)
    with pytest.raises(ValueError):
        SplitTime(-math.inf, MINUS)
    assert NEG_INF < SplitTime.minus(-1e12) < SplitTime.plus(1e12) < POS_INF


@given(split_times, split_times, split_times)
def test_total_order(a, b, c):
    # trichotomy
    assert (cmp(a, b) == 0) == (a == b)
    assert sum([a < b, b < a, a == b]) == 1
    # transitivity
    if a <= b and b <= c:
        assert a <= c


@given(st.lists(finite_reals, max_size=12))
def test_split_domain_increasing_even(times):
    doubled = split_domain(times)
    assert len(doubled) == 2 * len(set(float(t) for t in times))
    assert all(x < y for x, y in zip(doubled, doubled[1:]))
    assert all(d.real in [float(t) for t in times] for d in doubled)


def test_split_domain_examples():
    assert split_domain([0, 1]) == [SplitTime.minus(0), SplitTime.plus(0),
                                    SplitTime.minus(1), SplitTime.plus(1)]
    assert split_domain([]) == []
    assert split_domain([3]) == [SplitTime.minus(3), SplitTime.plus(3)]


def test_interval_examples():
    iv = SplitInterval(SplitTime.plus(0), SplitTime.minus(1))
    assert interval_contains(iv, SplitTime.minus(0.5))
    assert not interval_contains(iv, SplitTime.plus(1))
    open_iv = SplitInterval(SplitTime.minus(0), SplitTime.plus(1),
                            lo_open=True, hi_open=True)
    assert open_iv.contains(SplitTime.plus(0))


@given(st.floats(min_value=-100, max_value=100, allow_nan=False),
       st.floats(min_value=-100, max_value=100, allow_nan=False),
       split_times)
def test_open_closed_identity(s, t, tau):
    # (s-, t+) and [s+, t-] describe the same set for s < t
    if s >= t:
        return
    open_iv = SplitInterval(SplitTime.minus(s), SplitTime.plus(t),
                            lo_open=True, hi_open=True)
    closed_iv = SplitInterval(SplitTime.plus(s), SplitTime.minus(t))
    assert open_iv.contains(tau) == closed_iv.contains(tau)


def test_parse_format_round_trip():
    for text in ["1.5-", "1.5+", "-inf", "+inf", "-3.25-", "0+"]:
        assert format_split(parse_split(text)) == text.replace("0+", "0+")
    assert parse_split("2-") == SplitTime.minus(2)
    with pytest.raises(ValueError):
        parse_split("oops")
    with pytest.raises(ValueError):
        parse_split("1.5")


def test_interval_order_validation():
    with pytest.raises(ValueError):
        SplitInterval(SplitTime.plus(1), SplitTime.minus(1))
