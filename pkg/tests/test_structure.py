import random

import pytest

from helpers import (
    check_ball_property,
    naive_matches,
    oracle_set,
    pattern_distance_at,
    random_text_with_anchor,
)
from wildmatch.context import MatchContext
from wildmatch.errors import PositionOutOfRange, SparsifierPreconditionViolated
from wildmatch.oracle import naive_misperiods
from wildmatch.pillar import build_index, smallest_period
from wildmatch.structure import (
    LEFT,
    RIGHT,
    MisperiodCursor,
    kangaroo_verify,
    next_misperiod,
    occurrence_positions,
    occurrence_runs,
    sparsifier_fragment,
    unmarked_zeros,
)
from wildmatch.wstring import (
    WILDCARD,
    Fragment,
    SolidString,
    WString,
    parse_solid,
    parse_wstring,
    substitute_hash,
    wstring_from_chars,
)


# -- unmarked_zeros ----------------------------------------------------------


def test_unmarked_zeros_single_one():
    out = unmarked_zeros([(5, 5)], 9)
    assert out.intervals == ((1, 2), (8, 9))
    assert out.size() == 4
    assert 2 * out.size() >= 9 - 2 * 1  # |U| >= N/2 - M


def test_unmarked_zeros_all_zero():
    out = unmarked_zeros([], 7)
    assert out.intervals == ((1, 7),)


def test_unmarked_zeros_all_ones():
    out = unmarked_zeros([(1, 6)], 6)
    assert out.intervals == ()


def _random_runs(rng, n):
    runs = []
    pos = 1
    while pos <= n:
        if rng.random() < 0.25:
            end = min(n, pos + rng.randint(0, 4))
            runs.append((pos, end))
            pos = end + 2
        else:
            pos += rng.randint(1, 4)
    return runs


def test_unmarked_zeros_invariants_random():
    rng = random.Random(11)
    for _ in range(250):
        n = rng.randint(1, 256)
        runs = _random_runs(rng, n)
        out = unmarked_zeros(runs, n)
        m_ones = sum(b - a + 1 for a, b in runs)
        assert 2 * out.size() >= n - 2 * m_ones
        assert len(out.intervals) <= len(runs) + 1
        assert check_ball_property(out, runs)
        # survivors are zeros
        in_run = set()
        for a, b in runs:
            in_run.update(range(a, b + 1))
        for a, b in out.intervals:
            assert not any(x in in_run for x in range(a, b + 1))


# -- sparsifier fragment -----------------------------------------------------


def test_sparsifier_solid_pattern_is_whole():
    p = parse_wstring(b"abcdefgh")
    f = sparsifier_fragment(p)
    assert (f.start, f.end) == (1, 8)


def test_sparsifier_single_leading_wildcard():
    p = parse_wstring(b"?" + b"a" * 31)
    f = sparsifier_fragment(p)
    assert f.length == 4
    assert f.start >= 10  # far from the wildcard
    runs = list(p.groups)
    for pos in range(f.start, f.end + 1):
        for r in range(1, 33):
            lo, hi = max(1, pos - r), min(32, pos + r)
            ones = sum(max(0, min(b, hi) - max(a, lo) + 1) for a, b in runs)
            assert ones * 32 <= 8 * r * 1


def test_sparsifier_precondition():
    p = parse_wstring(b"a?" * 8)
    with pytest.raises(SparsifierPreconditionViolated):
        sparsifier_fragment(p)


def test_sparsifier_positions_all_survive_marking_random():
    rng = random.Random(13)
    for _ in range(120):
        m = rng.randint(8, 200)
        g = rng.randint(1, 6)
        d_cap = (m - 1) // 4
        if d_cap < g:
            continue
        d = rng.randint(g, d_cap)
        from wildmatch.corpora import random_wstring

        p = random_wstring(rng, m, 2, g, d)
        if 4 * p.d_count >= m:
            continue
        f = sparsifier_fragment(p)
        assert f.length == max(1, m // (8 * p.g_count))
        marked = unmarked_zeros(p.groups, m)
        assert all(marked.contains(pos) for pos in range(f.start, f.end + 1))


# -- misperiod iteration -----------------------------------------------------


def _wildcard_host():
    chars = [ord(c) for c in "cc bdabcabcabcab"]
    chars[2] = WILDCARD
    return wstring_from_chars(chars)


def test_misperiods_worked_example_left():
    host = _wildcard_host()
    hh = substitute_hash(host)
    idx = build_index([hh])
    cur = MisperiodCursor(idx, hh, 6, 13, LEFT, groups=host)
    assert cur.take(2) == [5, 1]
    assert next_misperiod(cur) == 0
    assert next_misperiod(cur) is None


def test_misperiods_worked_example_right():
    host = _wildcard_host()
    hh = substitute_hash(host)
    idx = build_index([hh])
    cur = MisperiodCursor(idx, hh, 6, 13, RIGHT, groups=host)
    assert cur.take(2) == [17]


def test_misperiods_whole_host_sentinels_only():
    s = parse_solid(b"abababab")
    idx = build_index([s])
    assert MisperiodCursor(idx, s, 1, 8, LEFT).take(5) == [0]
    assert MisperiodCursor(idx, s, 1, 8, RIGHT).take(5) == [9]


def test_misperiods_match_naive_random():
    rng = random.Random(17)
    checked = 0
    while checked < 400:
        with_wild = rng.random() < 0.5
        host, i, j = random_text_with_anchor(rng, with_wild)
        chars = host.chars
        anchor = chars[i - 1 : j]
        per = smallest_period(Fragment(host, i, j))
        if 2 * per > j - i + 1:
            continue
        if isinstance(host, WString):
            hh = substitute_hash(host)
            groups = host
        else:
            hh = host
            groups = None
        idx = build_index([hh])
        for direction in (LEFT, RIGHT):
            cur = MisperiodCursor(idx, hh, i, j, direction, groups=groups)
            got = cur.take(len(chars) + 2)
            assert got == naive_misperiods(host, i, j, direction)
        checked += 1


# -- occurrence runs ---------------------------------------------------------


def test_runs_worked_example():
    seed = parse_solid(b"abcab")
    text = parse_solid(b"cababcabcabcabc")
    idx = build_index([seed, text])
    runs = occurrence_runs(idx, Fragment(seed, 1, 5), text)
    assert len(runs) == 1
    run = runs[0]
    assert (run.start, run.end, run.occ_count, run.period) == (4, 14, 3, 3)
    assert list(run.occurrence_positions()) == [4, 7, 10]


def test_runs_no_occurrence():
    seed = parse_solid(b"zz")
    text = parse_solid(b"ababab")
    idx = build_index([seed, text])
    assert occurrence_runs(idx, Fragment(seed, 1, 2), text) == []


def test_runs_agree_with_naive_grouping_and_overlap_bound():
    rng = random.Random(19)
    for _ in range(200):
        q = rng.randint(1, 3)
        base = bytes(rng.randrange(2) for _ in range(q))
        seed = parse_solid((base * 4)[: rng.randint(q + 1, 4 * q)])
        n = rng.randint(len(seed), 6 * len(seed))
        text = parse_solid(bytes(rng.randrange(2) for _ in range(n)))
        idx = build_index([seed, text])
        sf = Fragment(seed, 1, len(seed))
        runs = occurrence_runs(idx, sf, text)
        per = smallest_period(sf)
        naive = naive_matches(list(seed.chars), list(text.chars))
        grouped = []
        for pos in naive:
            if grouped and pos - grouped[-1][-1] == per:
                grouped[-1].append(pos)
            else:
                grouped.append([pos])
        assert [list(r.occurrence_positions()) for r in runs] == grouped
        for r1, r2 in zip(runs, runs[1:]):
            assert r1.end - r2.start + 1 <= per - 1


def test_occurrence_positions_bulk_equals_windowed():
    rng = random.Random(23)
    for _ in range(60):
        ls = rng.randint(1, 6)
        seed = parse_solid(bytes(rng.randrange(2) for _ in range(ls)))
        n = rng.randint(ls, 40)
        text = parse_solid(bytes(rng.randrange(2) for _ in range(n)))
        idx = build_index([seed, text])
        sf = Fragment(seed, 1, ls)
        windowed = occurrence_positions(idx, sf, text)
        from wildmatch.structure import _occurrence_positions_bulk

        assert windowed == _occurrence_positions_bulk(sf, text)
        assert windowed == naive_matches(list(seed.chars), list(text.chars))


# -- kangaroo verification ---------------------------------------------------


def test_kangaroo_examples():
    ctx = MatchContext(parse_wstring(b"a?b"), parse_solid(b"aab"))
    assert kangaroo_verify(ctx, 1, 0) is True
    ctx2 = MatchContext(parse_wstring(b"abc"), parse_solid(b"abd"))
    assert kangaroo_verify(ctx2, 1, 0) is False
    assert kangaroo_verify(ctx2, 1, 1) is True


def test_kangaroo_position_out_of_range():
    ctx = MatchContext(parse_wstring(b"ab"), parse_solid(b"abab"))
    with pytest.raises(PositionOutOfRange):
        kangaroo_verify(ctx, 4, 0)
    with pytest.raises(PositionOutOfRange):
        kangaroo_verify(ctx, 0, 0)


def test_kangaroo_matches_oracle_and_query_budget():
    rng = random.Random(29)
    from wildmatch.corpora import suite_instance

    for _ in range(150):
        k = rng.choice((0, 1, 2, 5))
        p, t = suite_instance(rng, k, m_lo=4, m_hi=64)
        if len(t) < len(p):
            continue
        ctx = MatchContext(p, t)
        for _ in range(10):
            pos = rng.randint(1, len(t) - len(p) + 1)
            before = ctx.counters.kangaroo_lce_calls
            got = kangaroo_verify(ctx, pos, k)
            used = ctx.counters.kangaroo_lce_calls - before
            assert got == (pattern_distance_at(p, t, pos) <= k)
            assert used <= 2 * (p.g_count + k + 1)
