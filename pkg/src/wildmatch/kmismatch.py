"""The k-mismatch pipeline: structural decomposition of the pattern, the
two marking schemes, and the top-level chunk matcher.

The decomposition walks the pattern left to right over blocks of typical
wildcard density. Blocks with a long period become breaks; blocks with a
short period are extended while their mismatch count against the tiled
period stays under a length-proportional quota, yielding repetitive
regions; if an extension swallows the whole pattern within the quota, the
pattern is almost periodic. Breaks and regions both turn into candidate
marking schemes verified by kangaroo jumps; the periodic case goes through
the sliding engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .context import MatchContext
from .errors import ChunkTooLong, DecompositionUnavailable
from .exact import _verify_all, _verify_candidates, exact_occurrences_chunk
from .occset import ArithProgression, OccurrenceSet, empty_set, materialize
from .periodic import SpanView, fine_grained_occurrences, occs_periodic
from .pillar import smallest_period
from .structure import (
    LEFT,
    RIGHT,
    MisperiodCursor,
    occurrence_positions,
    unmarked_zeros,
)
from .wstring import Fragment, SolidString, WString


@dataclass(frozen=True)
class DecompParams:
    m: int
    k: int
    gamma: int      # G + k
    tau: int        # D + k
    break_len: int  # m // (16 * gamma)

    @classmethod
    def from_pattern(cls, p: WString, k: int) -> "DecompParams":
        gamma = p.g_count + k
        tau = p.d_count + k
        return cls(len(p), k, gamma, tau, len(p) // (16 * gamma))

    def period_short(self, per: int) -> bool:
        """per <= m/(512*tau), compared exactly."""
        return per * 512 * self.tau <= self.m

    def quota(self, length: int) -> int:
        """ceil(32*k*length/m)."""
        return (32 * self.k * length + self.m - 1) // self.m


@dataclass(frozen=True)
class Break:
    start: int
    end: int


@dataclass(frozen=True)
class Region:
    start: int
    end: int
    q0: Fragment          # primitive period aligned at the region start
    mismatches: tuple     # absolute pattern positions off the tiled period


@dataclass(frozen=True)
class Breaks:
    items: tuple


@dataclass(frozen=True)
class Regions:
    items: tuple


@dataclass(frozen=True)
class Periodic:
    q0: Fragment          # primitive period aligned at pattern position 1
    mismatches: tuple


DecompositionOutcome = Union[Breaks, Regions, Periodic]


def decompose(ctx: MatchContext, k: int) -> DecompositionOutcome:
    """Classify the pattern into breaks, repetitive regions, or periodic."""
    p = ctx.pattern
    m = ctx.m
    if not (1 <= k <= m):
        raise ValueError("decomposition requires 1 <= k <= m")
    if 16 * p.d_count > m:
        raise ValueError("decomposition requires D <= m/16")
    params = DecompParams.from_pattern(p, k)
    blen = params.break_len
    if blen < 1:
        raise DecompositionUnavailable("pattern too short for its group count")
    intervals = unmarked_zeros(p.groups, m).intervals
    breaks = []
    regions = []
    total_region_len = 0
    j = 0
    ii = 0
    while True:
        if len(breaks) == 2 * params.gamma:
            return Breaks(tuple(breaks))
        block = None
        while ii < len(intervals):
            a, b = intervals[ii]
            s = max(a, j + 1)
            if b - s + 1 >= blen:
                block = (s, s + blen - 1)
                break
            ii += 1
        if block is None:
            raise DecompositionUnavailable("no block of typical density remains")
        s0, e0 = block
        q = smallest_period(ctx.pat_frag(s0, e0))
        if not params.period_short(q):
            breaks.append(Break(s0, e0))
            j = e0
            continue

        cursor = MisperiodCursor(ctx.index, ctx.p_hash, s0, e0, RIGHT,
                                 period=q, groups=p)
        count = 0
        right_mis = []
        reached_end = False
        end = e0
        while True:
            x = cursor.next()
            if x == m + 1:
                reached_end = True
                break
            count += 1
            right_mis.append(x)
            target = params.quota(x - s0 + 1)
            if count >= target:
                assert count == target
                end = x
                break
        if not reached_end:
            regions.append(
                Region(s0, end, ctx.pat_frag(s0, s0 + q - 1), tuple(right_mis))
            )
            total_region_len += end - s0 + 1
            j = end
            if 8 * total_region_len >= m:
                return Regions(tuple(regions))
            continue

        # The block's periodicity covers the pattern's tail; extend left.
        lcursor = MisperiodCursor(ctx.index, ctx.p_hash, s0, e0, LEFT,
                                  period=q, groups=p)
        left_mis = []
        while True:
            x = lcursor.next()
            if x == 0:
                e_al = s0 + ((1 - s0) % q)
                return Periodic(
                    ctx.pat_frag(e_al, e_al + q - 1),
                    tuple(sorted(left_mis + right_mis)),
                )
            count += 1
            left_mis.append(x)
            target = params.quota(m - x + 1)
            if count >= target:
                assert count == target
                e_al = s0 + ((x - s0) % q)
                region = Region(
                    x, m, ctx.pat_frag(e_al, e_al + q - 1),
                    tuple(sorted(left_mis + right_mis)),
                )
                return Regions((region,))


def case_breaks_candidates(ctx: MatchContext, k: int, breaks,
                           params: DecompParams):
    """Mark the start implied by each exact break occurrence; keep starts
    with at least 2*gamma - k marks."""
    n, m = ctx.n, ctx.m
    marks = {}
    for br in breaks:
        occs = occurrence_positions(
            ctx.index, ctx.pat_frag(br.start, br.end), ctx.text
        )
        assert len(occs) <= 768 * params.tau
        for gpos in occs:
            c = gpos - br.start + 1
            if 1 <= c <= n - m + 1:
                marks[c] = marks.get(c, 0) + 1
    need = 2 * params.gamma - k
    cands = sorted(c for c, v in marks.items() if v >= need)
    ctx.counters.candidate_count += len(cands)
    return cands


def case_regions_candidates(ctx: MatchContext, k: int, regions,
                            params: DecompParams):
    """Weight-mark starts implied by scaled-threshold occurrences of each
    region; keep starts whose total weight is at least m_R - m/16."""
    n, m = ctx.n, ctx.m
    d_total = ctx.pattern.d_count
    weights = {}
    m_r = sum(r.end - r.start + 1 for r in regions)
    for reg in regions:
        ln = reg.end - reg.start + 1
        k_i = (16 * k * ln) // m
        d_i = (32 * (k + d_total) * ln + m - 1) // m
        span = SpanView(ctx, reg.start, reg.end)
        oset = occs_periodic(ctx, k_i, d_i, reg.q0, span=span)
        for pos in materialize(oset):
            c = pos - reg.start + 1
            if 1 <= c <= n - m + 1:
                weights[c] = weights.get(c, 0) + ln
    cands = sorted(c for c, w in weights.items() if 16 * w >= 16 * m_r - m)
    ctx.counters.candidate_count += len(cands)
    return cands


def _kmismatch_chunk(ctx: MatchContext, k: int) -> OccurrenceSet:
    p = ctx.pattern
    m, n = ctx.m, ctx.n
    if n < m:
        return empty_set(n, m, k)
    if k >= m:
        ap = ArithProgression(1, 1, n - m + 1)
        return OccurrenceSet(1, (ap,), (), n, m, k)
    if 16 * p.d_count > m or m // (16 * (p.g_count + k)) == 0:
        return _verify_all(ctx, k)
    params = DecompParams.from_pattern(p, k)
    try:
        outcome = decompose(ctx, k)
    except DecompositionUnavailable:
        return _verify_all(ctx, k)
    if isinstance(outcome, Breaks):
        cands = case_breaks_candidates(ctx, k, outcome.items, params)
        return _verify_candidates(ctx, cands, k)
    if isinstance(outcome, Regions):
        cands = case_regions_candidates(ctx, k, outcome.items, params)
        return _verify_candidates(ctx, cands, k)
    return fine_grained_occurrences(ctx, k, outcome.q0)


def kmismatch_occurrences_chunk(p: WString, t: SolidString, k: int,
                                counters=None) -> OccurrenceSet:
    """All k-mismatch occurrences of ``p`` in a chunk ``t`` (|t| <= 3m/2)."""
    m, n = len(p), len(t)
    if 2 * n > 3 * m:
        raise ChunkTooLong(f"chunk length {n} exceeds 3*{m}/2")
    if k < 0:
        raise ValueError("negative mismatch threshold")
    if n < m:
        return empty_set(n, m, k)
    if k == 0:
        return exact_occurrences_chunk(p, t, counters)
    return _kmismatch_chunk(MatchContext(p, t, counters), k)
