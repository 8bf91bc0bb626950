"""Triple aggregation, spreader sets, pattern instances and the Pr(n) curve.

The pipeline is::

    tweets --accumulate--> AggregateState --pattern_instances--> instances
           --curve--> [CurvePoint, ...]

``AggregateState`` is a plain value that merges by pointwise addition, so
shards of a corpus can be aggregated independently and combined.
"""

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, NamedTuple, Tuple

from ._utils import atomic_write
from .exceptions import StateFileError
from .rt_parser import FollowingTriple, USERNAME_RE, triple_from_text

DIAGNOSTIC_KEYS = ("malformed_skipped", "triples_emitted", "tweets_seen")

DEFAULT_MIN_INSTANCES = 30
DEFAULT_MAX_N = 20


@dataclass
class AggregateState:
    """Counts C(T_xyz) per following triple and C(v) per author."""

    triple_counts: Counter = field(default_factory=Counter)
    author_counts: Counter = field(default_factory=Counter)
    diagnostics: Counter = field(default_factory=Counter)

    def update(self, tweets):
        """Fold ``tweets`` into this state in place and return self."""
        authors = self.author_counts
        triples = self.triple_counts
        seen = emitted = 0
        for author, _, text in tweets:
            seen += 1
            authors[author] += 1
            # cheap reject before the regex; most tweets are not retweets
            if text and text[0] in "Rr":
                triple = triple_from_text(author, text)
                if triple is not None:
                    triples[triple] += 1
                    emitted += 1
        self.diagnostics["tweets_seen"] += seen
        self.diagnostics["triples_emitted"] += emitted
        return self

    def absent_users(self):
        """Users named in some triple who authored nothing in the sample."""
        present = self.author_counts
        return {u for t in self.triple_counts for u in t if u not in present}

    def __eq__(self, other):
        if not isinstance(other, AggregateState):
            return NotImplemented
        return (
            +self.triple_counts == +other.triple_counts
            and +self.author_counts == +other.author_counts
            and _diag(self) == _diag(other)
        )


def _diag(state):
    return {k: state.diagnostics.get(k, 0) for k in DIAGNOSTIC_KEYS}


def accumulate(tweets):
    """Aggregate a stream of Tweets into a new AggregateState (single pass)."""
    return AggregateState().update(tweets)


def merge(*states):
    """Pointwise sum of states; associative, commutative, identity = empty."""
    out = AggregateState()
    for s in states:
        out.triple_counts.update(s.triple_counts)
        out.author_counts.update(s.author_counts)
        out.diagnostics.update(s.diagnostics)
    return out


def spreader_sets(state) -> Dict[Tuple[str, str], FrozenSet[str]]:
    """Map (a, b) to S_ab, the users y with at least one triple (a, y, b)."""
    sets = defaultdict(set)
    for (x, y, z), count in state.triple_counts.items():
        if count > 0:
            sets[(x, z)].add(y)
    return {k: frozenset(v) for k, v in sets.items()}


class PatternInstance(NamedTuple):
    a: str
    b: str
    spreaders: FrozenSet[str]
    pr: float
    clamped: bool
    hits: int  # sum of C(T_ayb) over the spreaders
    sender_tweets: int  # C(a)

    @property
    def n(self):
        return len(self.spreaders)


def retweet_probability(a, b, spreaders, state):
    """Return ``(pr, clamped)`` for Pr(b | a; spreaders).

    ``pr = sum(C(a, y, b) for y in spreaders) / C(a)``, capped at 1. The
    division is a single correctly rounded int/int operation.
    """
    if not spreaders:
        raise ValueError("spreaders must be non-empty")
    sent = state.author_counts.get(a, 0)
    if sent < 1:
        raise KeyError(f"sender {a!r} has no tweets in the sample")
    triples = state.triple_counts
    hits = sum(triples.get(FollowingTriple(a, y, b), 0) for y in spreaders)
    if hits > sent:
        return 1.0, True
    return hits / sent, False


def pattern_instances(state, diagnostics=None):
    """Yield one PatternInstance per (a, b) with a non-empty spreader set.

    Instances are yielded sorted by (a, b). Pairs whose sender has no
    authored tweets are skipped; if ``diagnostics`` (a Counter) is given,
    skips are tallied under ``absent_sender`` and capped ratios under
    ``clamped_instances``.
    """
    grouped = defaultdict(dict)
    for (x, y, z), count in state.triple_counts.items():
        if count > 0:
            grouped[(x, z)][y] = count
    authors = state.author_counts
    for (a, b) in sorted(grouped):
        by_spreader = grouped[(a, b)]
        sent = authors.get(a, 0)
        if sent < 1:
            if diagnostics is not None:
                diagnostics["absent_sender"] += 1
            continue
        hits = sum(by_spreader.values())
        clamped = hits > sent
        if clamped:
            if diagnostics is not None:
                diagnostics["clamped_instances"] += 1
            pr = 1.0
        else:
            pr = hits / sent
        yield PatternInstance(a, b, frozenset(by_spreader), pr, clamped, hits, sent)


class CurvePoint(NamedTuple):
    n: int
    mean: float
    variance: float
    instances: int

    @property
    def stderr(self):
        return math.sqrt(self.variance / self.instances)


def summarize(values):
    """(mean, unbiased variance) of a non-empty sequence of floats."""
    k = len(values)
    mean = math.fsum(values) / k
    if k < 2:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (k - 1)
    return mean, var


def curve(instances, min_instances=DEFAULT_MIN_INSTANCES, max_n=DEFAULT_MAX_N) -> List[CurvePoint]:
    """Group instances by spreader count and average their probabilities.

    Every (a, b) pair weighs the same. Only n in ``[1, max_n]`` with at
    least ``min_instances`` instances are reported, sorted by n.
    """
    if min_instances < 1 or max_n < 1:
        raise ValueError("min_instances and max_n must be >= 1")
    groups = defaultdict(list)
    for inst in instances:
        n = len(inst.spreaders)
        if n <= max_n:
            groups[n].append(inst.pr)
    points = []
    for n in sorted(groups):
        prs = groups[n]
        if len(prs) >= min_instances:
            mean, var = summarize(prs)
            points.append(CurvePoint(n, mean, var, len(prs)))
    return points


# -- file formats -----------------------------------------------------------

def state_lines(state):
    """Sorted lines (without newline) of the state file for ``state``."""
    lines = [f"A\t{u}\t{c}" for u, c in state.author_counts.items() if c > 0]
    lines.extend(
        f"T\t{x}\t{y}\t{z}\t{c}" for (x, y, z), c in state.triple_counts.items() if c > 0
    )
    lines.extend(f"D\t{k}\t{v}" for k, v in _diag(state).items())
    lines.sort()
    return lines


def write_state(state, path):
    """Write ``state`` atomically; a failed write leaves no file behind."""
    atomic_write(path, (line + "\n" for line in state_lines(state)))


def _count(value, lineno):
    try:
        c = int(value)
    except ValueError:
        raise StateFileError(f"bad count {value!r}", lineno) from None
    if c < 0:
        raise StateFileError(f"negative count {c}", lineno)
    return c


def _user(value, lineno):
    if USERNAME_RE.fullmatch(value) is None or value != value.lower():
        raise StateFileError(f"bad username {value!r}", lineno)
    return value


def read_state(path):
    state = AggregateState()
    with open(path, encoding="utf-8", newline="\n") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            kind = parts[0]
            if kind == "A" and len(parts) == 3:
                state.author_counts[_user(parts[1], lineno)] += _count(parts[2], lineno)
            elif kind == "T" and len(parts) == 5:
                x, y, z = (_user(p, lineno) for p in parts[1:4])
                state.triple_counts[FollowingTriple(x, y, z)] += _count(parts[4], lineno)
            elif kind == "D" and len(parts) == 3:
                state.diagnostics[parts[1]] += _count(parts[2], lineno)
            else:
                raise StateFileError(f"unrecognized record {line[:40]!r}", lineno)
    return state


CURVE_HEADER = "n,mean_pr,variance,instances"


def format_curve(points):
    rows = [CURVE_HEADER]
    rows.extend(f"{p.n},{p.mean:.10g},{p.variance:.10g},{p.instances}" for p in points)
    return "\n".join(rows) + "\n"


def write_curve(points, path):
    atomic_write(path, [format_curve(points)])


def read_curve(path):
    points = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CURVE_HEADER:
            raise StateFileError(f"unexpected curve header {header!r}", 1)
        for lineno, line in enumerate(fh, 2):
            line = line.strip()
            if not line:
                continue
            try:
                n, mean, var, k = line.split(",")
                points.append(CurvePoint(int(n), float(mean), float(var), int(k)))
            except ValueError:
                raise StateFileError(f"bad curve row {line!r}", lineno) from None
    return points
