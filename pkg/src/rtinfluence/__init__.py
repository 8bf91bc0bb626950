"""Indirect retweet influence across multiple parallel spreaders.

Extracts following triples from nested ``RT @y: RT @x`` retweets, derives
sender/receiver spreader sets, and reports the mean retweet probability
Pr(n) as a function of the number of spreaders n, together with a
one-sided Welch test for local drops in that curve.
"""

from .corpus_io import CorpusFormat, Tweet, open_corpus, parse_snap_record, parse_tsv_record
from .influence import (
    AggregateState,
    CurvePoint,
    PatternInstance,
    accumulate,
    curve,
    merge,
    pattern_instances,
    read_curve,
    read_state,
    retweet_probability,
    spreader_sets,
    write_curve,
    write_state,
)
from .rt_parser import FollowingTriple, extract_rt_chain, normalize_username, to_following_triple
from .stats import DropTestResult, SampleSummary, one_sided_p, test_drop, welch_t

__version__ = "0.1.0"


def __getattr__(name):
    # scikit-learn is heavy; only pay for it when the estimator is used
    if name == "IndirectInfluenceCurve":
        from .estimator import IndirectInfluenceCurve

        return IndirectInfluenceCurve
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "AggregateState",
    "CorpusFormat",
    "CurvePoint",
    "DropTestResult",
    "FollowingTriple",
    "IndirectInfluenceCurve",
    "PatternInstance",
    "SampleSummary",
    "Tweet",
    "accumulate",
    "curve",
    "extract_rt_chain",
    "merge",
    "normalize_username",
    "one_sided_p",
    "open_corpus",
    "parse_snap_record",
    "parse_tsv_record",
    "pattern_instances",
    "read_curve",
    "read_state",
    "retweet_probability",
    "spreader_sets",
    "test_drop",
    "to_following_triple",
    "welch_t",
    "write_curve",
    "write_state",
]
