"""Welch two-sample t-test with one-sided p-values, in pure Python.

The Student-t upper tail is evaluated through the regularized incomplete
beta function, itself computed with the modified Lentz algorithm on the
standard continued fraction.
"""

import math
from typing import NamedTuple

from .exceptions import DegenerateSampleError, MissingGroupError

MAX_ITER = 300
CF_EPS = 1e-14
_TINY = 1e-300


class SampleSummary(NamedTuple):
    mean: float
    variance: float
    count: int


class DropTestResult(NamedTuple):
    t: float
    df: float
    p: float

    def csv(self, n1, n2):
        return f"{n1},{n2},{self.t:.10g},{self.df:.10g},{self.p:.10g}"


def welch_t(s1, s2):
    """Welch's t statistic and Welch-Satterthwaite degrees of freedom."""
    for s in (s1, s2):
        if s.count < 2:
            raise DegenerateSampleError(f"need at least 2 observations, got {s.count}")
        if s.variance < 0:
            raise ValueError("variance must be non-negative")
    q1 = s1.variance / s1.count
    q2 = s2.variance / s2.count
    se2 = q1 + q2
    if se2 == 0:
        raise DegenerateSampleError("both samples have zero variance")
    t = (s1.mean - s2.mean) / math.sqrt(se2)
    df = se2 * se2 / (q1 * q1 / (s1.count - 1) + q2 * q2 / (s2.count - 1))
    return t, df


def _stirling_tail(x):
    # lgamma(x) - [(x - 0.5) log x - x + 0.5 log(2 pi)], valid for x >= 15
    x2 = x * x
    return (1.0 / 12 - (1.0 / 360 - (1.0 / 1260 - 1.0 / (1680 * x2)) / x2) / x2) / x


def _lbeta(a, b):
    """log B(a, b), avoiding cancellation when one argument is large."""
    lo, hi = (a, b) if a <= b else (b, a)
    if hi < 15:
        return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    # lgamma(hi) - lgamma(lo + hi), expanded via Stirling for both terms
    s = lo + hi
    diff = (
        (hi - 0.5) * -math.log1p(lo / hi)
        - lo * math.log(s)
        + lo
        + _stirling_tail(hi)
        - _stirling_tail(s)
    )
    return math.lgamma(lo) + diff


def _betacf(a, b, x):
    """Continued fraction for I_x(a, b) (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta did not converge (a={a}, b={b}, x={x})")


def betainc(a, b, x, y=None):
    """Regularized incomplete beta I_x(a, b).

    ``y`` may be passed as ``1 - x`` when it is known more accurately than
    the subtraction would give.
    """
    if y is None:
        y = 1.0 - x
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_x = math.log1p(-y) if y < 0.5 else math.log(x)
    log_y = math.log1p(-x) if x < 0.5 else math.log(y)
    log_front = a * log_x + b * log_y - _lbeta(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _betacf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _betacf(b, a, y) / b


def one_sided_p(t, df):
    """P(T > t) for Student's t with ``df`` degrees of freedom."""
    if not (math.isfinite(t) and math.isfinite(df)):
        raise ValueError(f"non-finite input t={t}, df={df}")
    if df <= 0:
        raise ValueError("df must be positive")
    if t == 0:
        return 0.5
    t2 = t * t
    denom = df + t2
    # P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    two_tail = betainc(df / 2.0, 0.5, df / denom, t2 / denom)
    tail = 0.5 * two_tail
    return tail if t > 0 else 1.0 - tail


def summary_from_point(point):
    return SampleSummary(point.mean, point.variance, point.instances)


def test_drop(curve, n1, n2):
    """One-sided Welch test of H1: Pr(n1) > Pr(n2) on a computed curve."""
    by_n = {p.n: p for p in curve}
    for n in (n1, n2):
        if n not in by_n:
            raise MissingGroupError(f"curve has no point for n={n}")
    t, df = welch_t(summary_from_point(by_n[n1]), summary_from_point(by_n[n2]))
    return DropTestResult(t, df, one_sided_p(t, df))


# keep pytest from collecting the public function as a test
test_drop.__test__ = False
