"""Group statistics and the pooled two-sample Student t-test.

All score arguments are percentages in [0, 100]. Standard deviations are
sample SDs (n-1 denominator) throughout; the t-test uses the pooled-variance
Student form by default, with Welch available behind a flag.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from phishrange.errors import EmptyInput, ScoreOutOfRange, TooFewScores

__all__ = [
    "GroupStats",
    "TTestReport",
    "Histogram10",
    "group_stats",
    "t_test_pooled",
    "t_test_scores",
    "student_t_two_tailed_p",
    "histogram10",
    "awareness_gap",
    "proportion_at_least",
    "confidence_gain",
]


@dataclass(frozen=True)
class GroupStats:
    """Summary statistics for one participant group."""

    n: int
    mean: float
    sd: float

    def __post_init__(self) -> None:
        if self.n < 2:
            raise TooFewScores(f"group needs at least 2 scores, got {self.n}")
        if self.sd < 0:
            raise ValueError("sd must be non-negative")


@dataclass(frozen=True)
class TTestReport:
    t: float
    df: float
    p_two_tailed: float
    method: str = "PooledStudent"


@dataclass(frozen=True)
class Histogram10:
    """Counts for the ten intervals [0,10), [10,20), ..., [80,90), [90,100]."""

    bins: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bins) != 10:
            raise ValueError("Histogram10 needs exactly 10 bins")

    @property
    def total(self) -> int:
        return sum(self.bins)


def group_stats(scores: Sequence[float]) -> GroupStats:
    """Arithmetic mean and sample SD (n-1) of a list of percentages."""
    if len(scores) < 2:
        raise TooFewScores(f"need at least 2 scores, got {len(scores)}")
    return GroupStats(
        n=len(scores),
        mean=statistics.fmean(scores),
        sd=statistics.stdev(scores),
    )


def t_test_pooled(a: GroupStats, b: GroupStats, *, welch: bool = False) -> TTestReport:
    """Two-sample t-test of b against a from summary statistics.

    The default is the pooled-variance Student form:

        s2 = ((n_a - 1) sd_a^2 + (n_b - 1) sd_b^2) / (n_a + n_b - 2)
        t  = (mean_b - mean_a) / sqrt(s2 (1/n_a + 1/n_b))
        df = n_a + n_b - 2

    With ``welch=True`` the unpooled form with Welch-Satterthwaite degrees
    of freedom is used instead (df is then fractional).

    When both groups have zero variance the statistic is degenerate: the
    report carries a ``t = +/-inf`` sentinel with ``p = 0`` if the means
    differ, and ``t = 0``, ``p = 1`` if they are identical.
    """
    diff = b.mean - a.mean
    if welch:
        va = a.sd**2 / a.n
        vb = b.sd**2 / b.n
        se2 = va + vb
        if se2 == 0:
            return _degenerate(diff, float(a.n + b.n - 2), "Welch")
        df = se2**2 / (va**2 / (a.n - 1) + vb**2 / (b.n - 1))
        t = diff / math.sqrt(se2)
        return TTestReport(t=t, df=df, p_two_tailed=student_t_two_tailed_p(t, df), method="Welch")

    df = a.n + b.n - 2
    s2 = ((a.n - 1) * a.sd**2 + (b.n - 1) * b.sd**2) / df
    if s2 == 0:
        return _degenerate(diff, float(df), "PooledStudent")
    t = diff / math.sqrt(s2 * (1 / a.n + 1 / b.n))
    return TTestReport(t=t, df=float(df), p_two_tailed=student_t_two_tailed_p(t, df))


def _degenerate(diff: float, df: float, method: str) -> TTestReport:
    if diff == 0:
        return TTestReport(t=0.0, df=df, p_two_tailed=1.0, method=method)
    return TTestReport(t=math.copysign(math.inf, diff), df=df, p_two_tailed=0.0, method=method)


def t_test_scores(
    a_scores: Sequence[float], b_scores: Sequence[float], *, welch: bool = False
) -> TTestReport:
    """Raw-score convenience wrapper: summarises each group first."""
    return t_test_pooled(group_stats(a_scores), group_stats(b_scores), welch=welch)


def student_t_two_tailed_p(t: float, df: float) -> float:
    """Two-tailed tail probability of Student's t at |t| with df > 0.

    Evaluated as the regularized incomplete beta function
    I_x(df/2, 1/2) at x = df/(df + t^2).
    """
    if df <= 0:
        raise ValueError("df must be positive")
    if math.isinf(t):
        return 0.0
    if t == 0:
        return 1.0
    return _betainc(df / 2.0, 0.5, df / (df + t * t))


# Regularized incomplete beta via the standard continued-fraction expansion
# (modified Lentz). Converges in a few dozen iterations for the a, b ranges a
# t-test produces; _EPS bounds the relative error of the fraction itself.

_EPS = 1e-14
_FPMIN = 1e-300
_MAX_ITER = 300


def _betacf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def _betainc(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log(1.0 - x)
    )
    front = math.exp(ln_front)
    # The continued fraction converges fast only for x below the split point.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def histogram10(scores: Iterable[float]) -> Histogram10:
    """Sort percentage scores into ten intervals; 100 lands in the last bin."""
    bins = [0] * 10
    for s in scores:
        if not 0 <= s <= 100:
            raise ScoreOutOfRange(f"score {s!r} outside [0, 100]")
        bins[min(int(s // 10), 9)] += 1
    return Histogram10(bins=tuple(bins))


def awareness_gap(control: GroupStats, experimental: GroupStats) -> float:
    """Mean difference in percentage points, experimental minus control."""
    return experimental.mean - control.mean


def proportion_at_least(scores: Sequence[float], threshold_percent: float) -> float:
    """Fraction of scores at or above the threshold."""
    if not scores:
        raise EmptyInput("proportion over an empty score list")
    return sum(1 for s in scores if s >= threshold_percent) / len(scores)


def confidence_gain(pre: Sequence[int], post: Sequence[int]) -> float:
    """Mean Likert shift from pre to post, as a percentage of the 1..5 span.

    This is a declared definition: the shift in group means divided by the
    traversable span (5 - 1 = 4), times 100. A group moving from all-1 to
    all-5 gains 100; identical distributions gain 0.
    """
    for name, values in (("pre", pre), ("post", post)):
        if not values:
            raise EmptyInput(f"{name} Likert list is empty")
        for v in values:
            if v not in (1, 2, 3, 4, 5):
                raise ValueError(f"{name} contains non-Likert value {v!r}")
    return (statistics.fmean(post) - statistics.fmean(pre)) / 4.0 * 100.0
