"""Streaming readers and writers for on-disk tweet corpora.

Two formats are supported:

``snap``
    Blank-line separated blocks of ``T\\t<YYYY-MM-DD HH:MM:SS>``,
    ``U\\thttp://twitter.com/<name>`` and ``W\\t<text>`` lines.
``tsv``
    One tweet per line: ``<author>\\t<epoch-seconds-or-empty>\\t<text>``.

Readers never hold more than one record in memory. Records that cannot be
parsed are skipped and tallied on the reader.
"""

import calendar
import enum
import time
from typing import NamedTuple

from .exceptions import MalformedRecordError
from .rt_parser import USERNAME_RE

SNAP_TIME_FORMAT = "%Y-%m-%d %H:%M:%S"


class Tweet(NamedTuple):
    author: str
    timestamp: int
    text: str


class CorpusFormat(str, enum.Enum):
    SNAP = "snap"
    TSV = "tsv"


def _canonical_author(raw):
    if not raw or USERNAME_RE.fullmatch(raw) is None:
        raise MalformedRecordError(f"bad author {raw!r}")
    return raw.lower()


def _parse_snap_time(value):
    try:
        return calendar.timegm(time.strptime(value.strip(), SNAP_TIME_FORMAT))
    except ValueError:
        return 0


def parse_snap_record(block):
    """Turn one SNAP block (list of lines, no newlines) into a Tweet.

    Lines after the ``W`` line that carry no known prefix are treated as
    continuation of the text and joined with a single space. Other unknown
    lines are ignored. A missing ``U`` or ``W`` line raises
    MalformedRecordError; an unparseable ``T`` line gives timestamp 0.
    """
    timestamp = 0
    author = None
    text_parts = None
    for line in block:
        tag = line[:2]
        if tag == "T\t":
            timestamp = _parse_snap_time(line[2:])
        elif tag == "U\t":
            url = line[2:].strip().rstrip("/")
            author = _canonical_author(url.rsplit("/", 1)[-1])
        elif tag == "W\t":
            text_parts = [line[2:]]
        elif text_parts is not None:
            text_parts.append(line)
    if author is None or text_parts is None:
        raise MalformedRecordError("SNAP record lacks a U or W line")
    return Tweet(author, timestamp, " ".join(text_parts))


def parse_tsv_record(line):
    """Parse ``author<TAB>timestamp<TAB>text``; tabs inside text are kept."""
    line = line.rstrip("\r\n")
    fields = line.split("\t", 2)
    if len(fields) < 3:
        raise MalformedRecordError(f"expected 3 fields, got {len(fields)}")
    author = _canonical_author(fields[0])
    ts = fields[1].strip()
    try:
        timestamp = int(ts) if ts else 0
    except ValueError:
        timestamp = 0
    return Tweet(author, timestamp, fields[2])


class CorpusReader:
    """Iterable over the Tweets of one corpus file.

    After (or during) iteration, ``records`` counts records seen and
    ``skipped`` counts those that were malformed, so that
    ``records == yielded + skipped``. The file is opened lazily and closed
    when iteration ends. A reader can be iterated only once.
    """

    def __init__(self, path, format=CorpusFormat.TSV):
        self.path = path
        self.format = CorpusFormat(format)
        self.records = 0
        self.skipped = 0
        self._used = False

    @property
    def yielded(self):
        return self.records - self.skipped

    def __iter__(self):
        if self._used:
            raise RuntimeError("CorpusReader can only be iterated once")
        self._used = True
        if self.format is CorpusFormat.TSV:
            return self._iter_tsv()
        return self._iter_snap()

    def _open(self):
        return open(self.path, encoding="utf-8", newline="\n", errors="replace")

    def _iter_tsv(self):
        cache = {}
        with self._open() as fh:
            for line in fh:
                if line == "\n" or not line.rstrip("\r\n"):
                    continue
                self.records += 1
                # inlined parse_tsv_record with a username cache
                fields = line.rstrip("\r\n").split("\t", 2)
                if len(fields) < 3:
                    self.skipped += 1
                    continue
                raw = fields[0]
                author = cache.get(raw)
                if author is None:
                    if not raw or USERNAME_RE.fullmatch(raw) is None:
                        self.skipped += 1
                        continue
                    author = cache[raw] = raw.lower()
                ts = fields[1]
                if ts:
                    try:
                        ts = int(ts)
                    except ValueError:
                        ts = 0
                else:
                    ts = 0
                yield Tweet(author, ts, fields[2])

    def _iter_snap(self):
        with self._open() as fh:
            block = []
            seen_w = False
            for line in fh:
                line = line.rstrip("\r\n")
                if not line or (seen_w and line.startswith("T\t")):
                    tweet = self._finish_snap(block)
                    if tweet is not None:
                        yield tweet
                    block = [line] if line else []
                    seen_w = False
                    continue
                block.append(line)
                if line.startswith("W\t"):
                    seen_w = True
            tweet = self._finish_snap(block)
            if tweet is not None:
                yield tweet

    def _finish_snap(self, block):
        # blocks with no T/U/W line at all (file headers, stray text) are not records
        if not any(line[:2] in ("T\t", "U\t", "W\t") for line in block):
            return None
        self.records += 1
        try:
            return parse_snap_record(block)
        except MalformedRecordError:
            self.skipped += 1
            return None


def open_corpus(path, format=CorpusFormat.TSV):
    """Stream the Tweets of ``path``. Raises OSError if it cannot be read."""
    with open(path, "rb"):
        pass
    return CorpusReader(path, format)


def _clean(text):
    return " ".join(text.splitlines()) if ("\n" in text or "\r" in text) else text


def format_tsv_record(tweet):
    ts = str(tweet.timestamp) if tweet.timestamp else ""
    return f"{tweet.author}\t{ts}\t{_clean(tweet.text)}\n"


def format_snap_record(tweet):
    stamp = time.strftime(SNAP_TIME_FORMAT, time.gmtime(tweet.timestamp))
    return (
        f"T\t{stamp}\nU\thttp://twitter.com/{tweet.author}\n"
        f"W\t{_clean(tweet.text)}\n\n"
    )


def write_corpus(tweets, fh, format=CorpusFormat.TSV):
    """Write ``tweets`` to the text stream ``fh``; returns the count written."""
    fmt = format_tsv_record if CorpusFormat(format) is CorpusFormat.TSV else format_snap_record
    n = 0
    for tweet in tweets:
        fh.write(fmt(tweet))
        n += 1
    return n
