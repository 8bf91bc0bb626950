"""Retweet-chain recognition and following-triple extraction.

A retweet chain is the run of ``RT @user`` prefixes at the very start of a
tweet body. Grammar, applied repeatedly from position 0::

    RT @<username> [:] <whitespace>*

``RT`` is matched case-insensitively and must be followed by exactly one
space and ``@``. Usernames are ``[A-Za-z0-9_]{1,15}`` and must not run into
another username character. Matching stops at the first position where the
grammar fails; anything after that is message text.
"""

import re
from typing import NamedTuple, Optional

from .exceptions import InvalidUsernameError

_USER = r"[A-Za-z0-9_]{1,15}(?![A-Za-z0-9_])"
USERNAME_RE = re.compile(r"[A-Za-z0-9_]{1,15}")
_PREFIX_RE = re.compile(r"[Rr][Tt] @(" + _USER + r"):?\s*")
# first two hops only; used on the hot path of aggregation
_TWO_HOP_RE = re.compile(
    r"[Rr][Tt] @(" + _USER + r"):?\s*[Rr][Tt] @(" + _USER + r")"
)


class FollowingTriple(NamedTuple):
    """``x`` wrote the message, ``y`` spread it, ``z`` re-spread it from ``y``."""

    x: str
    y: str
    z: str


def normalize_username(raw):
    """Return the canonical (lowercase) form of ``raw``.

    Raises InvalidUsernameError unless ``raw`` is 1-15 characters from
    ``[A-Za-z0-9_]``.
    """
    if not raw or USERNAME_RE.fullmatch(raw) is None:
        raise InvalidUsernameError(f"invalid username: {raw!r}")
    return raw.lower()


def is_valid_username(raw):
    return bool(raw) and USERNAME_RE.fullmatch(raw) is not None


def extract_rt_chain(text):
    """Usernames of the leading RT prefixes, outermost first.

    >>> extract_rt_chain("RT @carol: RT @alice: hello")
    ['carol', 'alice']
    >>> extract_rt_chain("hello world")
    []
    """
    chain = []
    pos = 0
    match = _PREFIX_RE.match
    while True:
        m = match(text, pos)
        if m is None:
            return chain
        chain.append(m.group(1).lower())
        pos = m.end()


def triple_from_text(author, text) -> Optional[FollowingTriple]:
    """Triple for a tweet by ``author`` (already canonical), or None."""
    m = _TWO_HOP_RE.match(text)
    if m is None:
        return None
    y = m.group(1).lower()
    x = m.group(2).lower()
    if x == y or y == author or x == author:
        return None
    return FollowingTriple(x, y, author)


def to_following_triple(tweet) -> Optional[FollowingTriple]:
    """Build the following triple for ``tweet``.

    The two outermost mentions give the spreader (``y``, first) and the
    origin (``x``, second); the tweet's author is the poster ``z``. Deeper
    hops are ignored. Tweets with fewer than two mentions, or whose three
    users are not pairwise distinct, yield None.
    """
    return triple_from_text(tweet.author, tweet.text)
