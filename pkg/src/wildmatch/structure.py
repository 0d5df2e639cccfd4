"""Structural primitives on the pattern/text pair.

Contents: selection of positions far from every wildcard run (used to pick
anchor fragments), iteration over period-violating positions around a
periodic anchor, maximal period-spaced chains of seed occurrences in the
text, and kangaroo-style candidate verification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PositionOutOfRange, SparsifierPreconditionViolated
from .pillar import smallest_period
from .wstring import WILDCARD, Fragment, SolidString, WString

LEFT = "left"
RIGHT = "right"


# ---------------------------------------------------------------------------
# Weighted-distance selection of zero positions


@dataclass(frozen=True)
class MarkedIntervals:
    """Unmarked-zero positions left over after the two marking sweeps."""

    intervals: tuple
    universe_len: int
    ones: int
    runs: int

    def size(self) -> int:
        return sum(b - a + 1 for a, b in self.intervals)

    def contains(self, pos: int) -> bool:
        return any(a <= pos <= b for a, b in self.intervals)


def _mark_sweep(runs, n: int, total_ones: int):
    """One left-to-right sweep: each run of 1s claims its cumulative quota of
    the leftmost unmarked 0s to its right. Quotas are tracked exactly with
    integer arithmetic: after j ones, at most floor(j*n/(4*M)) zeros are
    marked in total."""
    marked = []
    m_total = 0
    ones_seen = 0
    front = 0
    run_ptr = 0
    for a, b in runs:
        ones_seen += b - a + 1
        allowance = (ones_seen * n) // (4 * total_ones)
        budget = allowance - m_total
        if front < b:
            front = b
        while budget > 0 and front < n:
            while run_ptr < len(runs) and runs[run_ptr][0] <= front:
                run_ptr += 1
            gap_end = runs[run_ptr][0] - 1 if run_ptr < len(runs) else n
            avail = gap_end - front
            if avail > 0:
                take = min(budget, avail)
                marked.append((front + 1, front + take))
                m_total += take
                budget -= take
                front += take
            if budget > 0 and front < n:
                if run_ptr < len(runs):
                    front = runs[run_ptr][1]
                    run_ptr += 1
                else:
                    front = n
    return marked


def unmarked_zeros(runs_of_ones, universe_len: int) -> MarkedIntervals:
    """Zeros that survive a rightward and a leftward marking sweep.

    Both sweeps together mark at most half of the universe, so at least
    N/2 - M positions survive, arranged in at most R+1 intervals, and every
    survivor has few ones within any centered window (at most 8r*M/N ones
    within radius r).
    """
    n = universe_len
    runs = [tuple(r) for r in runs_of_ones]
    total_ones = sum(b - a + 1 for a, b in runs)
    if total_ones == 0:
        return MarkedIntervals(((1, n),) if n else (), n, 0, 0)
    blocked = list(runs)
    blocked.extend(_mark_sweep(runs, n, total_ones))
    mirrored = [(n + 1 - b, n + 1 - a) for a, b in reversed(runs)]
    for a, b in _mark_sweep(mirrored, n, total_ones):
        blocked.append((n + 1 - b, n + 1 - a))
    blocked.sort()
    free = []
    cur = 1
    for a, b in blocked:
        if a > cur:
            free.append((cur, a - 1))
        if b + 1 > cur:
            cur = b + 1
    if cur <= n:
        free.append((cur, n))
    return MarkedIntervals(tuple(free), n, total_ones, len(runs))


def sparsifier_fragment(p: WString) -> Fragment:
    """A solid fragment of the pattern whose positions all sit in regions of
    typical wildcard density.

    Length is floor(m/(8G)) (the whole pattern when it is solid); requires
    fewer than m/4 wildcards.
    """
    m = len(p)
    d = p.d_count
    g = p.g_count
    if d == 0:
        return Fragment(p, 1, m)
    if 4 * d >= m:
        raise SparsifierPreconditionViolated(
            f"{d} wildcards in a length-{m} pattern (needs D < m/4)"
        )
    length = max(1, m // (8 * g))
    marked = unmarked_zeros(p.groups, m)
    for a, b in marked.intervals:
        if b - a + 1 >= length:
            return Fragment(p, a, a + length - 1)
    raise AssertionError("no interval of the guaranteed length survived marking")


# ---------------------------------------------------------------------------
# Misperiod iteration


class MisperiodCursor:
    """Iterates positions violating the periodic extension of a solid anchor.

    The anchor ``host[i..j]`` must be periodic (its length at least twice its
    period). Misperiods are emitted in order of distance from the anchor;
    wildcard positions of the group owner are skipped and never reported.
    The sentinel (0 on the left, len+1 on the right) is emitted exactly
    once, after which next() returns None.

    ``host`` is the registered solid string used for comparisons (the text,
    or the pattern with wildcards substituted); ``groups`` is the WString
    carrying the wildcard group structure, or None for solid hosts.
    """

    def __init__(self, index, host: SolidString, i: int, j: int, direction,
                 period=None, groups=None):
        q = period if period is not None else smallest_period(Fragment(host, i, j))
        if 2 * q > j - i + 1:
            raise ValueError("anchor must be periodic: length >= twice the period")
        self._index = index
        self._host = host
        self._groups = groups
        self._i = i
        self._j = j
        self._q = q
        self._dir = direction
        self._pos = i - 1 if direction == LEFT else j + 1
        self._done = False
        self.emitted = []

    @property
    def period(self) -> int:
        return self._q

    def next(self):
        if self._done:
            return None
        x = self._next_left() if self._dir == LEFT else self._next_right()
        self.emitted.append(x)
        return x

    def take(self, limit: int):
        """Up to ``limit`` misperiods; stops after the sentinel."""
        out = []
        n = len(self._host)
        while len(out) < limit:
            x = self.next()
            if x is None:
                break
            out.append(x)
            if x == 0 or x == n + 1:
                break
        return out

    def _next_right(self):
        host, q, i = self._host, self._q, self._i
        n = len(host)
        index = self._index
        g_owner = self._groups
        x = self._pos
        while True:
            if x > n:
                self._done = True
                self._pos = x
                return n + 1
            if g_owner is not None:
                grp = g_owner.group_at(x)
                if grp is not None:
                    x = grp[1] + 1
                    continue
                stretch_end = min(n, g_owner.next_group_start(x) - 1)
            else:
                stretch_end = n
            phase = (x - i) % q
            rot = Fragment(host, i + phase, i + phase + q - 1)
            ell = index.lcp_periodic(rot, Fragment(host, x, stretch_end))
            if x + ell <= stretch_end:
                self._pos = x + ell + 1
                return x + ell
            x = stretch_end + 1

    def _next_left(self):
        host, q = self._host, self._q
        i = self._i
        index = self._index
        g_owner = self._groups
        x = self._pos
        while True:
            if x < 1:
                self._done = True
                self._pos = x
                return 0
            if g_owner is not None:
                grp = g_owner.group_at(x)
                if grp is not None:
                    x = grp[0] - 1
                    continue
                stretch_start = max(1, g_owner.prev_group_end(x) + 1)
            else:
                stretch_start = 1
            base = i + q - 1
            e = base + ((x - base) % q)
            rot = Fragment(host, e - q + 1, e)
            ell = index.lcp_periodic_rev(rot, Fragment(host, stretch_start, x))
            if x - ell >= stretch_start:
                self._pos = x - ell - 1
                return x - ell
            x = stretch_start - 1


def next_misperiod(cursor: MisperiodCursor):
    """Advance the cursor; returns the next misperiod position or None."""
    return cursor.next()


# ---------------------------------------------------------------------------
# Seed occurrence runs


@dataclass(frozen=True)
class OccurrenceRun:
    """A maximal chain of seed occurrences spaced by the seed's period."""

    start: int       # first occurrence position in the text
    end: int         # last position covered by the final occurrence
    phase: int       # start mod period
    occ_count: int
    period: int

    def occurrence_positions(self):
        return range(self.start, self.start + self.occ_count * self.period,
                     self.period)


def _chars_array(chars) -> np.ndarray:
    if isinstance(chars, (bytes, bytearray)):
        return np.frombuffer(bytes(chars), dtype=np.uint8).astype(np.int32)
    return np.asarray(chars, dtype=np.int32)


def _occurrence_positions_bulk(needle: Fragment, text: SolidString):
    """Vectorized equality scan; one pass over the text per needle char."""
    nd = _chars_array(needle.slice_chars())
    ta = _chars_array(text.chars)
    ls = int(nd.size)
    n = int(ta.size)
    span = n - ls + 1
    if span <= 0:
        return []
    mask = ta[:span] == nd[0]
    for off in range(1, ls):
        mask &= ta[off : span + off] == nd[off]
    return (np.nonzero(mask)[0] + 1).tolist()


def occurrence_positions(index, needle: Fragment, text: SolidString):
    """All exact occurrence starts of ``needle`` in ``text``, sorted.

    Scans windows of length < 2|needle| stepping by |needle|, so each
    window answers with a single progression. Large texts with short
    needles take a vectorized scan instead: the per-window call overhead
    dominates there, and the result is identical.
    """
    ls = needle.length
    n = len(text)
    if n >= 8192 and n >= 16 * ls:
        return _occurrence_positions_bulk(needle, text)
    out = []
    last_start = n - ls + 1
    ws = 1
    while ws <= last_start:
        we = min(n, ws + 2 * ls - 2)
        ap = index.ipm(needle, Fragment(text, ws, we))
        nxt = ws + ls
        if ap is not None:
            final = nxt > last_start
            for rel in ap.terms():
                g = ws + rel - 1
                if g < nxt or final:
                    out.append(g)
        ws = nxt
    return out


def occurrence_runs(index, seed: Fragment, text: SolidString):
    """All runs of ``seed`` in ``text``: maximal progressions of occurrences
    with difference equal to the seed's smallest period."""
    positions = occurrence_positions(index, seed, text)
    if not positions:
        return []
    per = smallest_period(seed)
    ls = seed.length
    runs = []
    chain_start = positions[0]
    count = 1
    prev = positions[0]
    for pos in positions[1:]:
        if pos - prev == per:
            count += 1
        else:
            runs.append(OccurrenceRun(chain_start, prev + ls - 1,
                                      chain_start % per, count, per))
            chain_start = pos
            count = 1
        prev = pos
    runs.append(OccurrenceRun(chain_start, prev + ls - 1,
                              chain_start % per, count, per))
    return runs


# ---------------------------------------------------------------------------
# Candidate verification


def kangaroo_verify(ctx, pos: int, k: int) -> bool:
    """True iff the pattern occurs at ``pos`` with at most ``k`` mismatches.

    Jumps over agreement stretches with one LCE query each, skips wildcard
    groups for free, and decrements the mismatch budget otherwise, so the
    query count is O(G + k).
    """
    m, n = ctx.m, ctx.n
    if not (1 <= pos <= n - m + 1):
        raise PositionOutOfRange(f"position {pos} not in [1..{n - m + 1}]")
    counters = ctx.counters
    counters.kangaroo_calls += 1
    p = ctx.pattern
    lce = ctx.lce_pattern_text
    chars = p.chars
    group_at = p.group_at
    budget = k
    lce_used = 0
    i = 1
    while i <= m:
        grp = group_at(i)
        if grp is not None:
            i = grp[1] + 1
            continue
        ell = lce(i, pos + i - 1, m - i + 1)
        lce_used += 1
        i += ell
        if i > m:
            break
        if chars[i - 1] == WILDCARD:
            continue
        budget -= 1
        if budget < 0:
            counters.kangaroo_lce_calls += lce_used
            return False
        i += 1
    counters.kangaroo_lce_calls += lce_used
    return True
