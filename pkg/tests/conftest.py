import random

import pytest

from rtinfluence import Tweet

NAMES = ["alice", "bob", "carol", "charlie", "dave", "erin", "frank", "grace",
         "heidi", "ivan", "judy", "mallory"]


def random_corpus(rng, max_tweets=200, n_users=12):
    """Small noisy corpus of (author, text) pairs exercising the RT grammar."""
    users = NAMES[:n_users]

    def mention():
        u = rng.choice(users)
        return u.upper() if rng.random() < 0.2 else u

    def rt():
        return rng.choice(["RT", "rt", "Rt"]) + " @" + mention() + rng.choice([":", ": ", ":  ", " ", ""])

    records = []
    for _ in range(rng.randint(0, max_tweets)):
        author = rng.choice(users)
        r = rng.random()
        if r < 0.3:
            text = f"plain {rng.randint(0, 99)}"
        elif r < 0.5:
            text = rt() + "msg"
        elif r < 0.9:
            text = rt() + rt() + "msg"
        else:
            text = rt() + rt() + rt() + "deep"
        records.append((author, text))
    return records


def to_tweets(records):
    return [Tweet(a, i, t) for i, (a, t) in enumerate(records)]


@pytest.fixture
def figure1_tweets():
    # Alice posts; Carol and Charlie spread; Bob re-spreads through both.
    return [
        Tweet("alice", 1, "m1"),
        Tweet("alice", 2, "m2"),
        Tweet("carol", 3, "RT @alice: m1"),
        Tweet("charlie", 4, "RT @alice: m2"),
        Tweet("bob", 5, "RT @carol: RT @alice: m1"),
        Tweet("bob", 6, "RT @charlie: RT @alice: m2"),
    ]


@pytest.fixture
def rng():
    return random.Random(20120416)


_CRITERIA = []


@pytest.fixture(scope="session")
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, name, passed, detail=""):
        _CRITERIA.append((number, name, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number} {name}: {detail}")
