"""scikit-learn style front end for the indirect-influence curve."""

from collections import Counter
from collections.abc import Iterable

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._utils import check_positive_int
from .influence import (
    DEFAULT_MAX_N,
    DEFAULT_MIN_INSTANCES,
    AggregateState,
    accumulate,
    curve,
    merge,
    pattern_instances,
)
from .stats import test_drop


def _as_state(X):
    if isinstance(X, AggregateState):
        return X
    if isinstance(X, (str, bytes)) or not isinstance(X, Iterable):
        raise TypeError(
            "X must be an AggregateState or an iterable of (author, timestamp, text) "
            f"records, got {type(X).__name__}"
        )
    state = accumulate(X)
    skipped = getattr(X, "skipped", 0)
    if skipped:
        state.diagnostics["malformed_skipped"] += skipped
    return state


class IndirectInfluenceCurve(BaseEstimator):
    """Estimate Pr(n), the mean retweet probability across n spreaders.

    Parameters
    ----------
    min_instances : int, default=30
        Smallest number of sender/receiver pairs a group needs to appear
        on the curve.
    max_n : int, default=20
        Largest spreader count reported.

    Attributes
    ----------
    state_ : AggregateState
        Triple and author counts seen so far.
    instances_ : list of PatternInstance
    curve_ : list of CurvePoint
    diagnostics_ : collections.Counter
        Aggregation counters plus ``absent_sender`` and
        ``clamped_instances`` from the last curve computation.

    Examples
    --------
    >>> from rtinfluence import Tweet
    >>> tweets = [Tweet("alice", 0, "m1"), Tweet("carol", 0, "RT @alice: m1"),
    ...           Tweet("bob", 0, "RT @carol: RT @alice: m1")]
    >>> est = IndirectInfluenceCurve(min_instances=1).fit(tweets)
    >>> [(p.n, p.mean) for p in est.curve_]
    [(1, 1.0)]
    """

    def __init__(self, min_instances=DEFAULT_MIN_INSTANCES, max_n=DEFAULT_MAX_N):
        self.min_instances = min_instances
        self.max_n = max_n

    def fit(self, X, y=None):
        """Aggregate a tweet stream (or a precomputed state) from scratch."""
        for attr in ("state_", "instances_", "curve_", "diagnostics_"):
            self.__dict__.pop(attr, None)
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        """Merge another shard into the fitted state and refresh the curve."""
        check_positive_int(self.min_instances, "min_instances")
        check_positive_int(self.max_n, "max_n")
        shard = _as_state(X)
        prior = getattr(self, "state_", None)
        self.state_ = shard if prior is None else merge(prior, shard)
        diag = Counter(self.state_.diagnostics)
        self.instances_ = list(pattern_instances(self.state_, diag))
        self.curve_ = curve(self.instances_, self.min_instances, self.max_n)
        self.diagnostics_ = diag
        return self

    def predict(self, n):
        """Pr(n) for each requested spreader count; NaN where not reported."""
        check_is_fitted(self, "curve_")
        table = {p.n: p.mean for p in self.curve_}
        n = np.asarray(n)
        return np.array([table.get(int(k), np.nan) for k in n.ravel()]).reshape(n.shape)

    def test_drop(self, n1, n2):
        """One-sided Welch test that Pr(n1) > Pr(n2)."""
        check_is_fitted(self, "curve_")
        return test_drop(self.curve_, n1, n2)
