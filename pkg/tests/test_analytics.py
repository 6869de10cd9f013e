"""Statistics unit tests.

The t-test p-values are cross-checked against a brute-force Simpson
integration of the Student-t density (an oracle implemented independently of
the incomplete-beta path used by the library). Mean/SD are checked against a
direct two-pass computation.
"""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phishrange.analytics import (
    GroupStats,
    awareness_gap,
    confidence_gain,
    group_stats,
    histogram10,
    proportion_at_least,
    student_t_two_tailed_p,
    t_test_pooled,
    t_test_scores,
)
from phishrange.errors import EmptyInput, ScoreOutOfRange, TooFewScores


# --- oracles ---------------------------------------------------------------

def two_pass_stats(values):
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


def t_density(x, df):
    ln_c = math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
    return math.exp(ln_c) * (1 + x * x / df) ** (-(df + 1) / 2)


def p_two_tailed_oracle(t, df, steps=4096):
    # Simpson over [-|t|, |t|]; two-tailed p is the complement. Avoids the
    # infinite tails entirely, which matters for df=1 where moments diverge.
    a, b = -abs(t), abs(t)
    h = (b - a) / steps
    acc = t_density(a, df) + t_density(b, df)
    for i in range(1, steps):
        acc += t_density(a + i * h, df) * (4 if i % 2 else 2)
    return 1 - acc * h / 3


# --- group_stats -----------------------------------------------------------

def test_group_stats_constant():
    g = group_stats([50, 50, 50])
    assert g.n == 3 and g.mean == 50 and g.sd == 0


def test_group_stats_two_values():
    g = group_stats([40, 60])
    assert g.mean == 50
    assert g.sd == pytest.approx(10 * math.sqrt(2), abs=1e-12)


def test_group_stats_rejects_single_value():
    with pytest.raises(TooFewScores):
        group_stats([70])
    with pytest.raises(TooFewScores):
        GroupStats(n=1, mean=70, sd=0)


def test_group_stats_synthetic_control_group():
    rng = random.Random(20260816)
    scores = [min(100, max(0, rng.gauss(62.14, 15))) for _ in range(14)]
    g = group_stats(scores)
    mean, sd = two_pass_stats(scores)
    assert g.mean == pytest.approx(mean, abs=1e-9)
    assert g.sd == pytest.approx(sd, abs=1e-9)


@given(st.lists(st.floats(min_value=0, max_value=100), min_size=2, max_size=50))
def test_group_stats_matches_two_pass_oracle(scores):
    g = group_stats(scores)
    mean, sd = two_pass_stats(scores)
    assert g.mean == pytest.approx(mean, abs=1e-9)
    assert g.sd == pytest.approx(sd, abs=1e-9)


@given(st.lists(st.floats(min_value=0, max_value=100), min_size=2, max_size=30), st.randoms())
def test_group_stats_permutation_invariant(scores, rnd):
    before = group_stats(scores)
    shuffled = list(scores)
    rnd.shuffle(shuffled)
    after = group_stats(shuffled)
    assert after.mean == pytest.approx(before.mean, abs=1e-9)
    assert after.sd == pytest.approx(before.sd, abs=1e-9)


# --- t-test ----------------------------------------------------------------

def test_t_test_published_summary_case():
    # True value of the pooled formula on these rounded summaries, frozen
    # after cross-checking two independent implementations. Note 4.46626 is
    # NOT within 0.001 of the upstream study's published 4.4677, which that
    # study computed from unrounded raw data; see the acceptance suite.
    r = t_test_pooled(GroupStats(14, 62.14, 15.78), GroupStats(14, 85.71, 11.87))
    assert r.t == pytest.approx(4.466260302925258, abs=1e-9)
    assert r.df == 26
    assert r.p_two_tailed == pytest.approx(0.0001375067211850933, abs=1e-9)
    assert 0.00012 <= r.p_two_tailed <= 0.00016
    assert r.method == "PooledStudent"


def test_t_test_hand_example():
    r = t_test_pooled(GroupStats(3, 60, 10), GroupStats(3, 90, 10))
    assert r.t == pytest.approx(3 * math.sqrt(1.5), abs=1e-12)
    assert r.t == pytest.approx(3.674, abs=0.01)
    assert r.df == 4
    assert r.p_two_tailed == pytest.approx(0.021, abs=0.002)


def test_t_test_identical_groups():
    g = GroupStats(10, 70, 12)
    r = t_test_pooled(g, g)
    assert r.t == 0
    assert r.p_two_tailed == 1


def test_t_test_degenerate_variance_sentinel():
    r = t_test_pooled(GroupStats(5, 60, 0), GroupStats(5, 80, 0))
    assert math.isinf(r.t) and r.t > 0
    assert r.p_two_tailed == 0
    flipped = t_test_pooled(GroupStats(5, 80, 0), GroupStats(5, 60, 0))
    assert math.isinf(flipped.t) and flipped.t < 0
    same = t_test_pooled(GroupStats(5, 60, 0), GroupStats(5, 60, 0))
    assert same.t == 0 and same.p_two_tailed == 1


def test_t_test_from_raw_scores_matches_stats_path():
    a = [30, 40, 50, 50, 60, 60, 60, 60, 70, 70, 80, 80, 80, 80]
    b = [60, 80, 80, 80, 80, 80, 80, 80, 90, 90, 100, 100, 100, 100]
    r = t_test_scores(a, b)
    expected = t_test_pooled(group_stats(a), group_stats(b))
    assert r == expected
    # Frozen regression values for the bundled replica fixture groups.
    assert r.t == pytest.approx(4.506809768540655, abs=1e-9)
    assert r.p_two_tailed == pytest.approx(0.00012356089171786493, abs=1e-9)


def test_t_test_welch_equal_n_matches_pooled_t():
    a, b = GroupStats(14, 62.14, 15.78), GroupStats(14, 85.71, 11.87)
    pooled = t_test_pooled(a, b)
    welch = t_test_pooled(a, b, welch=True)
    assert welch.method == "Welch"
    assert welch.t == pytest.approx(pooled.t, abs=1e-12)
    assert welch.df < pooled.df  # Satterthwaite shrinks df under unequal sds


group_stats_strategy = st.builds(
    GroupStats,
    n=st.integers(min_value=2, max_value=200),
    mean=st.floats(min_value=0, max_value=100),
    sd=st.floats(min_value=0.5, max_value=40),
)


@given(group_stats_strategy, group_stats_strategy)
def test_t_antisymmetry(a, b):
    ab = t_test_pooled(a, b)
    ba = t_test_pooled(b, a)
    assert ab.t == pytest.approx(-ba.t, abs=1e-12)
    assert ab.p_two_tailed == pytest.approx(ba.p_two_tailed, abs=1e-12)


@given(
    st.integers(min_value=1, max_value=200),
    st.floats(min_value=0, max_value=8),
    st.floats(min_value=0.01, max_value=8),
)
def test_p_monotone_decreasing_in_abs_t(df, t, bump):
    assert student_t_two_tailed_p(t + bump, df) < student_t_two_tailed_p(t, df) + 1e-15


@pytest.mark.parametrize("df", [1, 4, 26, 100])
@pytest.mark.parametrize("t", [0.5, 1, 2, 3, 4.4677])
def test_p_value_against_integration_oracle(df, t):
    assert student_t_two_tailed_p(t, df) == pytest.approx(
        p_two_tailed_oracle(t, df), abs=1e-5
    )


def test_p_value_symmetric_in_t_sign():
    assert student_t_two_tailed_p(-2.5, 7) == student_t_two_tailed_p(2.5, 7)


# --- histogram -------------------------------------------------------------

def test_histogram_empty():
    assert histogram10([]).bins == (0,) * 10


def test_histogram_top_bin_is_closed():
    h = histogram10([90, 100, 95])
    assert h.bins == (0, 0, 0, 0, 0, 0, 0, 0, 0, 3)


def test_histogram_half_open_boundaries():
    h = histogram10([0, 9.99, 10])
    assert h.bins[0] == 2 and h.bins[1] == 1


def test_histogram_rejects_out_of_range():
    with pytest.raises(ScoreOutOfRange):
        histogram10([101])
    with pytest.raises(ScoreOutOfRange):
        histogram10([-0.01])


@given(st.lists(st.floats(min_value=0, max_value=100), max_size=200))
@settings(max_examples=50)
def test_histogram_conserves_count(scores):
    assert histogram10(scores).total == len(scores)


# --- gap / proportion / confidence ------------------------------------------

def test_awareness_gap_examples():
    assert awareness_gap(
        GroupStats(14, 62.14, 15.78), GroupStats(14, 85.71, 11.87)
    ) == pytest.approx(23.57)
    g = GroupStats(5, 50, 5)
    assert awareness_gap(g, g) == 0
    assert awareness_gap(GroupStats(5, 50, 5), GroupStats(5, 75, 5)) == 25


def test_proportion_at_least():
    scores = [80, 90, 75, 100] + [60] * 10
    assert proportion_at_least(scores, 75) == pytest.approx(4 / 14)
    assert proportion_at_least([80, 90], 75) == 1.0
    with pytest.raises(EmptyInput):
        proportion_at_least([], 75)


def test_confidence_gain_examples():
    assert confidence_gain([1, 1, 1], [5, 5, 5]) == 100
    assert confidence_gain([2, 3, 4], [3, 2, 4]) == 0
    assert confidence_gain([3, 3, 3, 2, 3], [4] * 5) == pytest.approx(30.0)


def test_confidence_gain_validates():
    with pytest.raises(EmptyInput):
        confidence_gain([], [3])
    with pytest.raises(ValueError):
        confidence_gain([3], [6])
