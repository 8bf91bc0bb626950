import math
from collections import Counter
from fractions import Fraction

import pytest

from rtinfluence import accumulate, curve, open_corpus, pattern_instances
from rtinfluence.synth import (
    SynthConfig,
    conditional_mean,
    draw_plan,
    expected_curve,
    expected_realized_curve,
    generate,
    iter_tweets,
    parse_response,
    read_manifest,
)


def _exhaustive_conditional(f, m):
    """E[K/m | K >= 1] by summing the binomial pmf exactly."""
    f = Fraction(f)
    pmf = [math.comb(m, k) * f**k * (1 - f) ** (m - k) for k in range(m + 1)]
    p_any = 1 - pmf[0]
    return sum(Fraction(k, m) * pmf[k] for k in range(1, m + 1)) / p_any


def _pipeline(config):
    state = accumulate(iter_tweets(draw_plan(config)))
    return state, list(pattern_instances(state))


def test_parse_response():
    assert parse_response("2:0.5, 1:0.25") == ((1, 0.25), (2, 0.5))
    with pytest.raises(ValueError):
        parse_response("1-0.5")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(response=((1, 0.5), (3, 0.5))),
        dict(response=((1, 1.5),)),
        dict(response=()),
        dict(response=((1, 0.5),), instances_per_n=0),
        dict(response=((1, 0.5),), originals_per_sender=0),
        dict(response=((1, 0.5),), seed=-1),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises((ValueError, TypeError)):
        SynthConfig(**kwargs)


def test_degenerate_certain_retweet():
    cfg = SynthConfig(((1, 1.0),), instances_per_n=1, originals_per_sender=1)
    tweets = list(iter_tweets(draw_plan(cfg)))
    receiver = [t for t in tweets if t.author.startswith("r")]
    assert len(receiver) == 1
    _, insts = _pipeline(cfg)
    assert curve(insts, min_instances=1)[0].mean == 1.0


def test_zero_probability_leaves_no_instances():
    cfg = SynthConfig(((1, 0.0),), instances_per_n=20, originals_per_sender=5)
    state, insts = _pipeline(cfg)
    assert insts == []
    assert state.triple_counts == {}


def test_expected_curve_examples():
    assert expected_curve(SynthConfig(((1, 1.0),), originals_per_sender=7)) == [(1, 1.0)]
    assert expected_curve(SynthConfig(((1, 0.5),), originals_per_sender=1)) == [(1, 1.0)]
    (_, v), = expected_curve(SynthConfig(((1, 0.2),), originals_per_sender=10))
    # 0.2 / (1 - 0.8**10) = 0.22406; enumeration is the reference
    assert v == pytest.approx(float(_exhaustive_conditional(Fraction(1, 5), 10)), abs=1e-12)
    assert v == pytest.approx(0.22406, abs=1e-5)
    assert math.isnan(conditional_mean(0.0, 10))


@pytest.mark.parametrize("m", [1, 2, 5, 10, 13, 20])
@pytest.mark.parametrize("f", [0.01, 0.1, 0.25, 0.5, 0.77, 0.99])
def test_expected_curve_matches_enumeration(f, m):
    assert conditional_mean(f, m) == pytest.approx(float(_exhaustive_conditional(f, m)), abs=1e-12)


def test_determinism(tmp_path):
    cfg = SynthConfig(((1, 0.3), (2, 0.4)), instances_per_n=30, originals_per_sender=4, seed=99)
    generate(cfg, tmp_path / "a.tsv")
    generate(cfg, tmp_path / "b.tsv")
    assert (tmp_path / "a.tsv").read_bytes() == (tmp_path / "b.tsv").read_bytes()
    assert (tmp_path / "a.tsv.manifest.csv").read_bytes() == (tmp_path / "b.tsv.manifest.csv").read_bytes()
    other = SynthConfig(cfg.response, 30, 4, seed=100)
    generate(other, tmp_path / "c.tsv")
    assert (tmp_path / "a.tsv").read_bytes() != (tmp_path / "c.tsv").read_bytes()


@pytest.mark.parametrize("fmt", ["tsv", "snap"])
def test_generated_file_parses_back(tmp_path, fmt):
    cfg = SynthConfig(((1, 0.5), (2, 0.5)), instances_per_n=10, originals_per_sender=3, seed=5, format=fmt)
    plan = generate(cfg, tmp_path / "c")
    reader = open_corpus(tmp_path / "c", fmt)
    assert list(reader) == list(iter_tweets(plan))
    assert reader.skipped == 0


def test_manifest_matches_pipeline(tmp_path):
    cfg = SynthConfig(((1, 0.3), (2, 0.2), (3, 0.25)), instances_per_n=300, originals_per_sender=6, seed=11)
    plan = generate(cfg, tmp_path / "c.tsv")
    text = (tmp_path / "c.tsv.manifest.csv").read_text().splitlines()
    assert text[0] == "# seed=11"
    assert "n,intended_instances,realized_instances,expected_conditional_pr" in text
    rows, meta = read_manifest(tmp_path / "c.tsv.manifest.csv")
    assert meta["seed"] == "11"
    _, insts = _pipeline(cfg)
    by_n = Counter(i.n for i in insts)
    for n, (intended, realized, expected) in rows.items():
        assert intended == 300
        assert realized == by_n.get(n, 0) == plan.realized_counts().get(n, 0)
        assert expected == pytest.approx(conditional_mean(dict(cfg.response)[n], 6), rel=1e-9)
    assert sum(by_n.values()) == sum(r for _, r, _ in rows.values())


def test_instance_count_near_binomial_expectation():
    cfg = SynthConfig(((1, 0.1), (2, 0.2)), instances_per_n=2000, originals_per_sender=40, seed=1)
    _, insts = _pipeline(cfg)
    by_n = Counter(i.n for i in insts)
    # intended-group view: I * P(K >= 1), up to leakage of n=2 pairs into n=1
    assert sum(by_n.values()) == pytest.approx(
        sum(2000 * (1 - (1 - f) ** 40) for _, f in cfg.response), rel=0.02
    )
    # realized-group view is exact in expectation
    for d, _, expected in expected_realized_curve(cfg):
        sd = math.sqrt(expected)
        assert abs(by_n[d] - expected) < 4 * sd


def _realized_brute_force(cfg):
    """Exact E[sum K/m], E[count] per realized size by enumerating K and draws."""
    from itertools import product

    m = cfg.originals_per_sender
    num, den = Counter(), Counter()
    for n, f in cfg.response:
        for k in range(1, m + 1):
            pk = math.comb(m, k) * f**k * (1 - f) ** (m - k)
            for draws in product(range(n), repeat=k):
                d = len(set(draws))
                w = cfg.instances_per_n * pk / n**k
                den[d] += w
                num[d] += w * k / m
    return {d: (num[d] / den[d], den[d]) for d in den}


def test_expected_realized_curve_brute_force():
    cfg = SynthConfig(((1, 0.3), (2, 0.5), (3, 0.2)), instances_per_n=100, originals_per_sender=4)
    brute = _realized_brute_force(cfg)
    got = {d: (mean, count) for d, mean, count in expected_realized_curve(cfg)}
    assert got.keys() == brute.keys()
    for d in got:
        assert got[d][0] == pytest.approx(brute[d][0], abs=1e-12)
        assert got[d][1] == pytest.approx(brute[d][1], rel=1e-12)


def test_generated_state_counts(tmp_path):
    cfg = SynthConfig(((1, 0.5), (2, 0.5)), instances_per_n=5, originals_per_sender=2, seed=2)
    plan = draw_plan(cfg)
    state = accumulate(iter_tweets(plan))
    assert state.diagnostics["tweets_seen"] == plan.tweet_count()
    # senders post only originals
    for n in (1, 2):
        for i in range(5):
            assert state.author_counts[f"s{n}_{i}"] == 2


@pytest.mark.slow
def test_recovery_small_response():
    # judged by realized group size; raw f(n) is not what the pipeline measures
    cfg = SynthConfig(((1, 0.2), (2, 0.4), (3, 0.6)), 5000, 10, seed=1)
    pts = curve(pattern_instances(accumulate(iter_tweets(draw_plan(cfg)))))
    oracle = {d: mean for d, mean, _ in expected_realized_curve(cfg)}
    assert [p.n for p in pts] == [1, 2, 3]
    for p in pts:
        assert p.mean == pytest.approx(oracle[p.n], abs=0.02)
