"""Shared naive references and checkers for the test suites."""

from __future__ import annotations

import random

from wildmatch.context import MatchContext
from wildmatch.kmismatch import Breaks, DecompParams, Periodic, Regions
from wildmatch.oracle import naive_occurrences
from wildmatch.pillar import smallest_period
from wildmatch.wstring import (
    WILDCARD,
    Fragment,
    SolidString,
    WString,
    hamming_with_wildcards,
    wstring_from_chars,
)


def naive_lce(a, b) -> int:
    n = min(len(a), len(b))
    for i in range(n):
        if a[i] != b[i]:
            return i
    return n


def naive_lce_rev(a, b) -> int:
    n = min(len(a), len(b))
    for i in range(n):
        if a[len(a) - 1 - i] != b[len(b) - 1 - i]:
            return i
    return n


def naive_lcp_periodic(x, z) -> int:
    for i in range(len(z)):
        if z[i] != x[i % len(x)]:
            return i
    return len(z)


def naive_period(chars) -> int:
    n = len(chars)
    for rho in range(1, n + 1):
        if all(chars[i] == chars[i + rho] for i in range(n - rho)):
            return rho
    raise AssertionError


def naive_matches(needle, hay):
    ln = len(needle)
    return [
        i + 1
        for i in range(len(hay) - ln + 1)
        if all(hay[i + j] == needle[j] for j in range(ln))
    ]


def is_primitive(chars) -> bool:
    n = len(chars)
    s = list(chars)
    return all(s != s[r:] + s[:r] for r in range(1, n))


def ones_in_ball(runs, pos: int, radius: int, n: int) -> int:
    lo = max(1, pos - radius)
    hi = min(n, pos + radius)
    total = 0
    for a, b in runs:
        total += max(0, min(b, hi) - max(a, lo) + 1)
    return total


def check_ball_property(marked, runs) -> bool:
    """Every surviving position has at most 8r*M/N ones within any radius."""
    n, m_ones = marked.universe_len, marked.ones
    pref = [0] * (n + 1)
    for a, b in runs:
        for x in range(a, b + 1):
            pref[x] = 1
    for x in range(1, n + 1):
        pref[x] += pref[x - 1]
    for a, b in marked.intervals:
        for pos in range(a, b + 1):
            for r in range(1, n + 1):
                lo = max(1, pos - r)
                hi = min(n, pos + r)
                if (pref[hi] - pref[lo - 1]) * n > 8 * r * m_ones:
                    return False
    return True


def pattern_distance_at(p: WString, t: SolidString, pos: int) -> int:
    return hamming_with_wildcards(p, Fragment(t, pos, pos + len(p) - 1))


def mismatches_vs_tiled(chars, q_chars, groups=None) -> list:
    """Positions (1-based) where solid chars disagree with the tiled period."""
    out = []
    for i, c in enumerate(chars):
        if c != WILDCARD and c != q_chars[i % len(q_chars)]:
            out.append(i + 1)
    return out


def check_decomposition(ctx: MatchContext, outcome, k: int) -> None:
    """Recompute every variant invariant from scratch."""
    p = ctx.pattern
    m = ctx.m
    params = DecompParams.from_pattern(p, k)
    if isinstance(outcome, Breaks):
        assert len(outcome.items) == 2 * params.gamma
        prev_end = 0
        for br in outcome.items:
            assert br.start > prev_end
            prev_end = br.end
            assert br.end - br.start + 1 == params.break_len
            frag = ctx.pat_frag(br.start, br.end)
            assert all(c != WILDCARD for c in p.chars[br.start - 1 : br.end])
            assert smallest_period(frag) * 512 * params.tau > m
    elif isinstance(outcome, Regions):
        total = 0
        prev_end = 0
        for reg in outcome.items:
            assert reg.start > prev_end
            prev_end = reg.end
            ln = reg.end - reg.start + 1
            total += ln
            assert ln >= params.break_len
            q = reg.q0.length
            assert q * 512 * params.tau <= m
            assert is_primitive(reg.q0.slice_chars())
            quota = params.quota(ln)
            mism = mismatches_vs_tiled(
                p.chars[reg.start - 1 : reg.end], list(reg.q0.slice_chars())
            )
            assert len(mism) == quota
            assert [x + reg.start - 1 for x in mism] == list(reg.mismatches)
        assert 8 * total >= m
    else:
        assert isinstance(outcome, Periodic)
        q = outcome.q0.length
        assert q * 512 * params.tau <= m
        assert is_primitive(outcome.q0.slice_chars())
        mism = mismatches_vs_tiled(p.chars, list(outcome.q0.slice_chars()))
        assert len(mism) <= 32 * k
        assert mism == [int(x) for x in outcome.mismatches]


def random_text_with_anchor(rng: random.Random, with_wildcards: bool):
    """Host with an embedded periodic block, for misperiod tests."""
    sigma = rng.choice((2, 3))
    q = rng.randint(1, 4)
    reps = rng.randint(2, 6)
    base = [rng.randrange(sigma) for _ in range(q)]
    left = [rng.randrange(sigma) for _ in range(rng.randint(0, 12))]
    right = [rng.randrange(sigma) for _ in range(rng.randint(0, 12))]
    chars = left + base * reps + right
    i = len(left) + 1
    j = len(left) + q * reps
    if with_wildcards:
        for _ in range(rng.randint(0, 3)):
            pos = rng.randrange(len(chars))
            if pos + 1 < i - 1 or pos + 1 > j + 1:
                if (pos == 0 or chars[pos - 1] != WILDCARD) and (
                    pos + 1 >= len(chars) or chars[pos + 1] != WILDCARD
                ):
                    chars[pos] = WILDCARD
        host = wstring_from_chars(chars)
    else:
        host = SolidString(bytes(chars))
    return host, i, j


def oracle_set(p, t, k):
    return naive_occurrences(p, t, k).occurrences
