"""Synthetic tweet corpora with a known retweet response function.

Every intended group size n gets ``instances_per_n`` independent
sender/spreaders/receiver cliques built from fresh usernames:

* the sender posts ``originals_per_sender`` original tweets;
* each of the n spreaders retweets every original once;
* for each original, the receiver retweets it with probability f(n),
  naming one spreader chosen uniformly at random as its source.

So the receiver's hit count K is Binomial(m, f(n)) with m originals, and
the realized spreader set is the set of distinct spreaders drawn, which
can be smaller than n when K is small. All randomness is drawn up front
into a :class:`SynthPlan`; tweets are then emitted deterministically from
the plan.
"""

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ._utils import atomic_write, check_positive_int, check_probability
from .corpus_io import CorpusFormat, Tweet, format_snap_record, format_tsv_record

# 2009-06-01 00:00:00 UTC
BASE_TIMESTAMP = 1243814400
MAX_USERNAME = 15

MANIFEST_HEADER = "n,intended_instances,realized_instances,expected_conditional_pr"


def parse_response(spec):
    """Parse ``"1:0.1,2:0.15"`` into ``((1, 0.1), (2, 0.15))``."""
    pairs = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            n, p = item.split(":")
            pairs.append((int(n), float(p)))
        except ValueError:
            raise ValueError(f"bad response item {item!r}, expected n:p") from None
    return tuple(sorted(pairs))


def format_response(response):
    return ",".join(f"{n}:{p:g}" for n, p in response)


@dataclass(frozen=True)
class SynthConfig:
    response: Tuple[Tuple[int, float], ...]
    instances_per_n: int = 1000
    originals_per_sender: int = 10
    seed: int = 0
    format: CorpusFormat = CorpusFormat.TSV

    def __post_init__(self):
        response = tuple((int(n), check_probability(p, f"f({n})")) for n, p in self.response)
        response = tuple(sorted(response))
        ns = [n for n, _ in response]
        if not ns or ns != list(range(1, len(ns) + 1)):
            raise ValueError(f"response must cover n = 1..N without gaps, got {ns}")
        object.__setattr__(self, "response", response)
        check_positive_int(self.instances_per_n, "instances_per_n")
        check_positive_int(self.originals_per_sender, "originals_per_sender")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        object.__setattr__(self, "format", CorpusFormat(self.format))
        # longest generated name is the spreader "p<n>_<i>_<j>"
        n_max = ns[-1]
        longest = len(f"p{n_max}_{self.instances_per_n - 1}_{n_max - 1}")
        if longest > MAX_USERNAME:
            raise ValueError("config too large for 15-character usernames")


@dataclass
class GroupPlan:
    n: int
    f: float
    hits: np.ndarray  # (instances, originals) bool: receiver retweets original k
    sources: np.ndarray  # spreader index per hit, row-major over ``hits``
    realized: np.ndarray = field(init=False)  # distinct spreaders per instance

    def __post_init__(self):
        counts = self.hits.sum(axis=1)
        self.realized = np.zeros(len(counts), dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(counts)])
        for i in range(len(counts)):
            self.realized[i] = len(np.unique(self.sources[offsets[i]:offsets[i + 1]]))


@dataclass
class SynthPlan:
    config: SynthConfig
    groups: List[GroupPlan]

    def realized_counts(self):
        """Number of instances per realized spreader-set size (size 0 excluded)."""
        counts = {}
        for g in self.groups:
            sizes, freq = np.unique(g.realized[g.realized > 0], return_counts=True)
            for s, c in zip(sizes.tolist(), freq.tolist()):
                counts[s] = counts.get(s, 0) + c
        return dict(sorted(counts.items()))

    def tweet_count(self):
        m = self.config.originals_per_sender
        return sum(len(g.hits) * m * (1 + g.n) + int(g.hits.sum()) for g in self.groups)


def draw_plan(config):
    rng = np.random.default_rng(config.seed)
    m = config.originals_per_sender
    groups = []
    for n, f in config.response:
        hits = rng.random((config.instances_per_n, m)) < f
        sources = rng.integers(0, n, size=int(hits.sum()))
        groups.append(GroupPlan(n, f, hits, sources))
    return SynthPlan(config, groups)


def iter_tweets(plan):
    """Yield the corpus described by ``plan`` in file order."""
    m = plan.config.originals_per_sender
    ts = BASE_TIMESTAMP
    for g in plan.groups:
        n = g.n
        pos = 0
        sources = g.sources.tolist()
        for i, row in enumerate(g.hits.tolist()):
            sender = f"s{n}_{i}"
            receiver = f"r{n}_{i}"
            spreaders = [f"p{n}_{i}_{j}" for j in range(n)]
            texts = [f"msg {n}.{i}.{k}" for k in range(m)]
            for text in texts:
                yield Tweet(sender, ts, text)
                ts += 1
            for sp in spreaders:
                for text in texts:
                    yield Tweet(sp, ts, f"RT @{sender}: {text}")
                    ts += 1
            for k, hit in enumerate(row):
                if hit:
                    sp = spreaders[sources[pos]]
                    pos += 1
                    yield Tweet(receiver, ts, f"RT @{sp}: RT @{sender}: {texts[k]}")
                    ts += 1


def conditional_mean(f, m):
    """E[K/m | K >= 1] for K ~ Binomial(m, f); NaN when f == 0."""
    if f <= 0.0:
        return math.nan
    if f >= 1.0:
        return 1.0
    p_any = -math.expm1(m * math.log1p(-f))
    return f / p_any


def expected_curve(config):
    """Analytic E[Pr(n)] per intended n, conditioned on at least one hit."""
    m = config.originals_per_sender
    return [(n, conditional_mean(f, m)) for n, f in config.response]


def _binomial_pmf(m, f):
    if f <= 0.0:
        return [1.0] + [0.0] * m
    if f >= 1.0:
        return [0.0] * m + [1.0]
    lf, lq = math.log(f), math.log1p(-f)
    return [
        math.exp(math.lgamma(m + 1) - math.lgamma(k + 1) - math.lgamma(m - k + 1) + k * lf + (m - k) * lq)
        for k in range(m + 1)
    ]


def _occupancy(k_max, n):
    """table[k][d] = P(k uniform draws from n items hit exactly d distinct)."""
    row = [1.0] + [0.0] * n
    table = [row]
    for _ in range(k_max):
        nxt = [0.0] * (n + 1)
        for d, p in enumerate(row):
            if p:
                nxt[d] += p * d / n
                if d < n:
                    nxt[d + 1] += p * (n - d) / n
        row = nxt
        table.append(row)
    return table


def expected_realized_curve(config):
    """Expected pipeline curve grouped by *realized* spreader-set size.

    Returns ``[(d, mean, expected_instances), ...]``, where ``mean`` is the
    ratio E[sum of K/m over instances of size d] / E[number of such
    instances]. Unlike :func:`expected_curve` this accounts for instances
    whose receiver drew fewer distinct spreaders than intended.
    """
    m = config.originals_per_sender
    num = {}
    den = {}
    for n, f in config.response:
        pmf = _binomial_pmf(m, f)
        occ = _occupancy(m, n)
        for k in range(1, m + 1):
            if pmf[k] == 0.0:
                continue
            for d in range(1, min(k, n) + 1):
                w = config.instances_per_n * pmf[k] * occ[k][d]
                if w:
                    den[d] = den.get(d, 0.0) + w
                    num[d] = num.get(d, 0.0) + w * k / m
    return [(d, num[d] / den[d], den[d]) for d in sorted(den)]


def manifest_lines(plan):
    cfg = plan.config
    realized = plan.realized_counts()
    lines = [
        f"# seed={cfg.seed}",
        f"# response={format_response(cfg.response)}",
        f"# instances_per_n={cfg.instances_per_n}",
        f"# originals_per_sender={cfg.originals_per_sender}",
        MANIFEST_HEADER,
    ]
    for n, expected in expected_curve(cfg):
        lines.append(
            f"{n},{cfg.instances_per_n},{realized.get(n, 0)},{expected:.10g}"
        )
    return lines


def read_manifest(path):
    """Parse a manifest into ``{n: (intended, realized, expected)}`` plus comments."""
    rows = {}
    meta = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key] = value
            elif line and line != MANIFEST_HEADER:
                n, intended, realized, expected = line.split(",")
                rows[int(n)] = (int(intended), int(realized), float(expected))
    return rows, meta


def generate(config, out, manifest=None):
    """Write the synthetic corpus to ``out`` and its manifest next to it.

    The manifest goes to ``manifest`` or, by default, ``<out>.manifest.csv``.
    Returns the plan, which carries the exact realized counts.
    """
    plan = draw_plan(config)
    fmt = format_tsv_record if config.format is CorpusFormat.TSV else format_snap_record
    atomic_write(out, (fmt(t) for t in iter_tweets(plan)))
    if manifest is None:
        manifest = f"{out}.manifest.csv"
    atomic_write(manifest, (line + "\n" for line in manifest_lines(plan)))
    return plan
