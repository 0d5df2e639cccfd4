import random

import pytest

from helpers import (
    is_primitive,
    naive_lce,
    naive_lce_rev,
    naive_lcp_periodic,
    naive_matches,
    naive_period,
)
from wildmatch.errors import IpmWindowTooLarge
from wildmatch.pillar import build_index, smallest_period
from wildmatch.wstring import Fragment, parse_solid


def frag(s, a, b):
    return Fragment(s, a, b)


def test_lce_basic():
    s = parse_solid(b"aab")
    idx = build_index([s])
    assert idx.lce(frag(s, 1, 3), frag(s, 2, 3)) == 1


def test_lce_across_strings():
    s1, s2 = parse_solid(b"ab"), parse_solid(b"ab")
    idx = build_index([s1, s2])
    assert idx.lce(frag(s1, 1, 2), frag(s2, 1, 2)) == 2


def test_lce_identity_and_prefix():
    s = parse_solid(b"ababx")
    t = parse_solid(b"abac")
    idx = build_index([s, t])
    assert idx.lce(frag(s, 1, 4), frag(t, 1, 4)) == 3
    assert idx.lce(frag(s, 1, 4), frag(s, 1, 4)) == 4
    assert idx.lce(frag(s, 1, 0), frag(t, 1, 4)) == 0


def test_lce_rev_basic():
    a, b = parse_solid(b"xbab"), parse_solid(b"ybab")
    idx = build_index([a, b])
    assert idx.lce_rev(frag(a, 1, 4), frag(b, 1, 4)) == 3
    assert idx.lce_rev(frag(a, 1, 4), frag(a, 1, 4)) == 4


def test_ipm_examples():
    hay = parse_solid(b"ababa")
    needle = parse_solid(b"aba")
    idx = build_index([hay, needle])
    ap = idx.ipm(frag(needle, 1, 3), frag(hay, 1, 5))
    assert (ap.start, ap.diff, ap.count) == (1, 2, 2)

    n2, h2 = parse_solid(b"ab"), parse_solid(b"ba")
    idx2 = build_index([n2, h2])
    assert idx2.ipm(frag(n2, 1, 2), frag(h2, 1, 2)) is None


def test_ipm_window_too_large():
    n, h = parse_solid(b"ab"), parse_solid(b"abab")
    idx = build_index([n, h])
    with pytest.raises(IpmWindowTooLarge):
        idx.ipm(frag(n, 1, 2), frag(h, 1, 4))


def test_ipm_two_terms_may_exceed_period():
    n = parse_solid(b"aabaa")
    h = parse_solid(b"aabaaabaa")
    idx = build_index([n, h])
    ap = idx.ipm(frag(n, 1, 5), frag(h, 1, 9))
    assert smallest_period(frag(n, 1, 5)) == 3
    assert (ap.start, ap.diff, ap.count) == (1, 4, 2)


def test_lcp_periodic_examples():
    x1, z1 = parse_solid(b"ab"), parse_solid(b"ababac")
    idx = build_index([x1, z1])
    assert idx.lcp_periodic(frag(x1, 1, 2), frag(z1, 1, 6)) == 5
    x2, z2 = parse_solid(b"a"), parse_solid(b"aaab")
    idx2 = build_index([x2, z2])
    assert idx2.lcp_periodic(frag(x2, 1, 1), frag(z2, 1, 4)) == 3


def test_smallest_period_examples():
    assert smallest_period(frag(parse_solid(b"abab"), 1, 4)) == 2
    assert smallest_period(frag(parse_solid(b"abc"), 1, 3)) == 3
    assert smallest_period(frag(parse_solid(b"a"), 1, 1)) == 1


def _random_strings(rng, count, max_len, sigma):
    return [
        parse_solid(bytes(rng.randrange(sigma) for _ in range(rng.randint(1, max_len))))
        for _ in range(count)
    ]


def test_randomized_queries_match_naive_oracles():
    """Mixed randomized queries, every answer checked against a direct scan."""
    rng = random.Random(42)
    total = 0
    for round_ in range(70):
        sigma = rng.choice((2, 3, 26))
        strings = _random_strings(rng, 3, 512, sigma)
        idx = build_index(strings)
        lists = [list(s.chars) for s in strings]
        for _ in range(1300):
            kind = rng.randrange(5)
            si, sj = rng.randrange(3), rng.randrange(3)
            a, b = strings[si], strings[sj]
            ai = rng.randint(1, len(a))
            aj = rng.randint(ai - 1, len(a))
            bi = rng.randint(1, len(b))
            bj = rng.randint(bi - 1, len(b))
            fa, fb = frag(a, ai, aj), frag(b, bi, bj)
            la, lb = lists[si][ai - 1 : aj], lists[sj][bi - 1 : bj]
            total += 1
            if kind == 0:
                assert idx.lce(fa, fb) == naive_lce(la, lb)
            elif kind == 1:
                assert idx.lce_rev(fa, fb) == naive_lce_rev(la, lb)
            elif kind == 2:
                if fa.length >= 1:
                    assert idx.lcp_periodic(fa, fb) == naive_lcp_periodic(la, lb)
                    assert idx.lcp_periodic_rev(fa, fb) == naive_lcp_periodic(
                        la[::-1], lb[::-1]
                    )
                    total += 1
            elif kind == 3:
                if fa.length >= 1:
                    assert smallest_period(fa) == naive_period(la)
            else:
                if fa.length >= 1:
                    hj = min(len(b), bi + 2 * fa.length - 2)
                    ap = idx.ipm(fa, frag(b, bi, hj))
                    expected = naive_matches(la, lists[sj][bi - 1 : hj])
                    got = list(ap.terms()) if ap else []
                    assert got == expected
    assert total >= 100_000


def test_ipm_progressions_step_by_the_period():
    """Three or more terms step by exactly the needle's period, whose prefix
    is primitive."""
    rng = random.Random(7)
    seen = 0
    while seen < 40:
        q = rng.randint(1, 3)
        base = [rng.randrange(2) for _ in range(q)]
        reps = rng.randint(4, 8)
        needle = parse_solid(bytes(base * reps)[: q * reps])
        hay = parse_solid(bytes(base * (2 * reps))[: 2 * q * reps - 1])
        idx = build_index([needle, hay])
        ap = idx.ipm(frag(needle, 1, len(needle)), frag(hay, 1, len(hay)))
        if ap is None or ap.count < 3:
            continue
        per = smallest_period(frag(needle, 1, len(needle)))
        assert ap.diff == per
        assert is_primitive(list(needle.chars)[:per])
        seen += 1


def test_lcp_periodic_two_query_identity():
    rng = random.Random(9)
    for _ in range(400):
        x = [rng.randrange(2) for _ in range(rng.randint(1, 6))]
        z = [rng.randrange(2) for _ in range(rng.randint(0, 40))]
        xs = parse_solid(bytes(x))
        zs = parse_solid(bytes(z) if z else b"\x00")
        idx = build_index([xs, zs])
        zf = frag(zs, 1, len(z))
        assert idx.lcp_periodic(frag(xs, 1, len(x)), zf) == naive_lcp_periodic(x, z)
