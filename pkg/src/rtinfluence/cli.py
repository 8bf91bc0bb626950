"""Command-line interface: ``rtinfluence {analyze,curve,test,synth,plot}``.

Exit codes: 0 success, 1 domain error (missing group, empty curve,
degenerate sample), 2 I/O or parse error.
"""

import argparse
import logging
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from .corpus_io import CorpusFormat, open_corpus
from .exceptions import DomainError, MalformedRecordError, StateFileError
from .influence import (
    DEFAULT_MAX_N,
    DEFAULT_MIN_INSTANCES,
    accumulate,
    curve,
    merge,
    pattern_instances,
    read_curve,
    read_state,
    write_curve,
    write_state,
)
from .plot import write_svg
from .stats import test_drop

log = logging.getLogger("rtinfluence")

EXIT_DOMAIN = 1
EXIT_IO = 2


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _analyze_one(path, fmt):
    reader = open_corpus(path, fmt)
    state = accumulate(reader)
    state.diagnostics["malformed_skipped"] += reader.skipped
    return state


def cmd_analyze(args):
    for path in args.input:
        if not os.access(path, os.R_OK) or not os.path.isfile(path):
            raise FileNotFoundError(f"cannot read input {path}")
    fmt = CorpusFormat(args.format)
    if args.jobs > 1 and len(args.input) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            states = list(pool.map(_analyze_one, args.input, [fmt] * len(args.input)))
    else:
        states = [_analyze_one(p, fmt) for p in args.input]
    state = merge(*states)
    write_state(state, args.out)
    d = state.diagnostics
    print(
        f"tweets={d['tweets_seen']} triples={d['triples_emitted']} "
        f"malformed={d['malformed_skipped']} authors={len(state.author_counts)} "
        f"distinct_triples={len(state.triple_counts)}",
        file=sys.stderr,
    )
    return 0


def cmd_curve(args):
    state = read_state(args.input)
    diag = Counter()
    points = curve(pattern_instances(state, diag), args.min_instances, args.max_n)
    write_curve(points, args.out)
    for p in points:
        print(f"n={p.n}\tinstances={p.instances}")
    print(
        f"absent_sender={diag['absent_sender']} clamped={diag['clamped_instances']}",
        file=sys.stderr,
    )
    return 0


def cmd_test(args):
    result = test_drop(read_curve(args.input), args.n1, args.n2)
    print(result.csv(args.n1, args.n2))
    return 0


def cmd_synth(args):
    from .synth import SynthConfig, generate, parse_response

    config = SynthConfig(
        response=parse_response(args.response),
        instances_per_n=args.instances_per_n,
        originals_per_sender=args.originals_per_sender,
        seed=args.seed,
        format=args.format,
    )
    plan = generate(config, args.out, args.manifest)
    print(f"tweets={plan.tweet_count()} realized={plan.realized_counts()}", file=sys.stderr)
    return 0


def cmd_plot(args):
    write_svg(read_curve(args.input), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rtinfluence",
        description="Indirect retweet influence across multiple spreaders.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="aggregate corpus files into a state file")
    p.add_argument("--input", action="append", required=True, help="corpus file (repeatable)")
    p.add_argument("--format", choices=[f.value for f in CorpusFormat], default="tsv")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=positive_int, default=1, help="parallel workers over inputs")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("curve", help="compute Pr(n) from a state file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-instances", type=positive_int, default=DEFAULT_MIN_INSTANCES)
    p.add_argument("--max-n", type=positive_int, default=DEFAULT_MAX_N)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("test", help="one-sided Welch test of Pr(n1) > Pr(n2)")
    p.add_argument("--input", required=True)
    p.add_argument("--n1", type=positive_int, required=True)
    p.add_argument("--n2", type=positive_int, required=True)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("synth", help="generate a synthetic corpus and manifest")
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", help="manifest path (default: <out>.manifest.csv)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--response", required=True, help='e.g. "1:0.1,2:0.15,3:0.2"')
    p.add_argument("--instances-per-n", type=positive_int, default=1000)
    p.add_argument("--originals-per-sender", type=positive_int, default=10)
    p.add_argument("--format", choices=[f.value for f in CorpusFormat], default="tsv")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("plot", help="render a curve file as SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"rtinfluence {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, StateFileError, MalformedRecordError, ValueError) as exc:
        print(f"rtinfluence {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
