"""Occurrence computation for patterns close to a short-period string.

The text is restricted to islands anchored at runs of the doubled period
fragment; within an island, candidate starts live on one residue grid and
their distances are maintained by an event sweep (window entry/exit of text
mismatches, wildcard alignment, and alignment of pattern mismatches with
text mismatches). Occurrences come out as arithmetic progressions with the
period as the common difference.

A single island does not always suffice: distinct near-periodic regions of
the text can host occurrences independently, so every sufficiently long run
is processed and the results are unioned (containment between same-residue
islands is deduplicated). Correctness of the run-length filter: any
occurrence window contains an exact periodic stretch of length at least
(len - B)/(B + 1) where B bounds its mismatches against the grid, and the
run containing that stretch is synchronised with the occurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PeriodicPreconditionViolated
from .occset import ArithProgression, OccurrenceSet, normalize
from .pillar import smallest_period
from .structure import LEFT, RIGHT, MisperiodCursor, kangaroo_verify, occurrence_runs
from .wstring import WILDCARD, Fragment


class SpanView:
    """Restriction of the context's pattern to positions [a..b]."""

    def __init__(self, ctx, a: int, b: int):
        self.ctx = ctx
        self.a = a
        self.b = b
        self.length = b - a + 1
        groups = []
        for ga, gb in ctx.pattern.groups:
            lo = max(ga, a)
            hi = min(gb, b)
            if lo <= hi:
                groups.append((lo - a + 1, hi - a + 1))
        self.groups = tuple(groups)
        self.wildcards = sum(hi - lo + 1 for lo, hi in groups)

    def char_rel(self, j: int) -> int:
        return self.ctx.pattern.chars[self.a + j - 2]


@dataclass(frozen=True)
class MismatchList:
    """Sorted mismatch positions of a string against a tiled period."""

    positions: tuple
    q: int

    def count_between(self, lo: int, hi: int) -> int:
        from bisect import bisect_left, bisect_right

        return bisect_right(self.positions, hi) - bisect_left(self.positions, lo)


@dataclass(frozen=True)
class _Island:
    ell: int
    r: int
    anchor: int
    residue: int
    mi_t: tuple


def _mismatch_positions(span: SpanView, q0: Fragment) -> tuple:
    """Relative positions where the span disagrees with q0 tiled from its
    first position (wildcards never disagree)."""
    ctx = span.ctx
    pat = ctx.pattern_array[span.a - 1 : span.b]
    qarr = np.array(q0.slice_chars(), dtype=np.int32)
    reps = -(-span.length // q0.length)
    tiled = np.tile(qarr, reps)[: span.length]
    mism = (pat != tiled) & (pat != WILDCARD)
    return tuple(int(x) for x in np.nonzero(mism)[0] + 1)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PeriodicPreconditionViolated(msg)


def _check_common(span: SpanView, k: int, d: int, q0: Fragment, mi_s) -> None:
    q = q0.length
    _require(d >= 1, "budget must be positive")
    _require(d >= 2 * (span.wildcards + k), f"budget d={d} below 2(D+k)")
    _require(8 * d * q <= span.length, "period too long for the budget")
    _require(smallest_period(q0) == q, "period fragment is not primitive")
    _require(len(mi_s) <= d, "pattern too far from its periodic reference")


def _islands(ctx, span: SpanView, k: int, d: int, q0: Fragment, mi_s):
    """Process every run of the doubled period long enough to host an
    occurrence; each yields a budget-extended island with its text-side
    mismatch list."""
    q = q0.length
    text = ctx.text
    n = len(text)
    index = ctx.index
    if 2 * q > n:
        return []
    if q0.start + 2 * q - 1 > len(q0.parent) or index.lce_abs(
        q0.parent, q0.start, q0.parent, q0.start + q, q
    ) < q:
        raise PeriodicPreconditionViolated(
            "period fragment is not doubled at its position"
        )
    qq = Fragment(q0.parent, q0.start, q0.start + 2 * q - 1)
    runs = occurrence_runs(index, qq, text)
    if not runs:
        return []
    m_s = span.length
    budget = 3 * d
    b_max = k + len(mi_s) + span.wildcards
    min_stretch = max(0, -(-(m_s - b_max) // (b_max + 1)))
    min_len = min_stretch - q + 1 if min_stretch >= 3 * q - 2 else 1
    cands = [r for r in runs if r.end - r.start + 1 >= min_len]
    cands.sort(key=lambda r: (-(r.end - r.start + 1), r.start))
    islands = []
    full_width = set()  # residues whose island already spans the whole text
    for run in cands:
        res = run.start % q
        if res in full_width:
            continue
        left = MisperiodCursor(index, text, run.start, run.end, LEFT, period=q)
        mi_left = []
        ell = 1
        while True:
            x = left.next()
            if x == 0:
                ell = 1
                break
            if len(mi_left) == budget:
                ell = x + 1
                break
            mi_left.append(x)
        right = MisperiodCursor(index, text, run.start, run.end, RIGHT, period=q)
        mi_right = []
        r_edge = n
        while True:
            x = right.next()
            if x == n + 1:
                r_edge = n
                break
            if len(mi_right) == budget:
                r_edge = x - 1
                break
            mi_right.append(x)
        if any(
            isl.residue == res and isl.ell <= ell and r_edge <= isl.r
            for isl in islands
        ):
            continue
        if ell == 1 and r_edge == n:
            full_width.add(res)
        islands.append(
            _Island(ell, r_edge, run.start, res, tuple(sorted(mi_left + mi_right)))
        )
    return islands


def _sweep(ctx, span: SpanView, q: int, island: _Island, mi_s, k: int,
           collect_pairs: bool, collect_values: bool = False):
    """Distance sweep over one island's candidate grid.

    At a grid start pos, the distance equals |mi_s| plus the number of text
    mismatches inside the window, minus hidden ones (aligned with a
    wildcard), minus 2 per matching aligned pair and 1 per non-matching
    aligned pair. In pair-collection mode the pair corrections are not
    applied; aligned-pair positions are returned for explicit verification.
    """
    text = ctx.text
    n = len(text)
    m_s = span.length
    lo = max(island.ell, 1)
    hi = min(island.r - m_s + 1, n - m_s + 1)
    if hi < lo:
        return [], [], None
    c_lo = lo + ((island.anchor - lo) % q)
    if c_lo > hi:
        return [], [], None
    n_idx = (hi - c_lo) // q + 1
    delta = [0] * (n_idx + 1)
    events = 0

    def add_interval(p1: int, p2: int, v: int) -> None:
        nonlocal events
        i1 = (p1 - c_lo + q - 1) // q
        i2 = (p2 - c_lo) // q
        if i1 < 0:
            i1 = 0
        if i2 > n_idx - 1:
            i2 = n_idx - 1
        if i1 <= i2:
            delta[i1] += v
            delta[i2 + 1] -= v
            events += 1

    groups = span.groups
    for x in island.mi_t:
        add_interval(x - m_s + 1, x, 1)
        for ga, gb in groups:
            add_interval(x - gb + 1, x - ga + 1, -1)
    pairs = []
    if mi_s:
        tchars = text.chars
        for x in island.mi_t:
            for j in mi_s:
                pos = x - j + 1
                if pos < c_lo or pos > hi or (pos - c_lo) % q != 0:
                    continue
                if collect_pairs:
                    pairs.append(pos)
                else:
                    w = 2 if span.char_rel(j) == tchars[x - 1] else 1
                    idx = (pos - c_lo) // q
                    delta[idx] -= w
                    delta[idx + 1] += w
                    events += 1
    ctx.counters.event_count += events
    base = len(mi_s)
    progs = []
    values = [] if collect_values else None
    cur = base
    run_start = None
    for idx in range(n_idx):
        cur += delta[idx]
        if collect_values:
            values.append((c_lo + idx * q, cur))
        if cur <= k:
            if run_start is None:
                run_start = idx
        elif run_start is not None:
            progs.append(ArithProgression(c_lo + run_start * q, q, idx - run_start))
            run_start = None
    if run_start is not None:
        progs.append(ArithProgression(c_lo + run_start * q, q, n_idx - run_start))
    return progs, pairs, values


def _whole_span(ctx) -> SpanView:
    return SpanView(ctx, 1, ctx.m)


def relevant_fragment(ctx, k: int, d: int, q0: Fragment, span: SpanView = None):
    """Text restriction around the longest doubled-period run.

    Returns (fragment, residue): every k-mismatch occurrence start inside
    the fragment is congruent to ``residue`` modulo |q0|. Returns None when
    the text contains no exact doubled copy of the period, which rules out
    any occurrence. Matching itself uses the multi-island variant; this is
    the single-fragment view of the same construction.
    """
    span = span if span is not None else _whole_span(ctx)
    mi_s = _mismatch_positions(span, q0)
    _check_common(span, k, d, q0, mi_s)
    islands = _islands(ctx, span, k, d, q0, mi_s)
    if not islands:
        return None
    best = islands[0]
    return Fragment(ctx.text, best.ell, best.r), best.anchor % q0.length


def occs_periodic(ctx, k: int, d: int, q0: Fragment,
                  span: SpanView = None) -> OccurrenceSet:
    """All k-mismatch occurrences of the (sub)pattern, as progressions with
    difference |q0|. Requires the span to be within distance min(d, 32k)
    (d when k = 0) of the tiled period."""
    span = span if span is not None else _whole_span(ctx)
    q = q0.length
    mi_s = _mismatch_positions(span, q0)
    _check_common(span, k, d, q0, mi_s)
    if k >= 1:
        _require(len(mi_s) <= 32 * k, "pattern too far from periodic for this k")
    islands = _islands(ctx, span, k, d, q0, mi_s)
    progs = []
    for isl in islands:
        p_, _, _ = _sweep(ctx, span, q, isl, mi_s, k, collect_pairs=False)
        progs.extend(p_)
    out = OccurrenceSet(q, tuple(progs), (), len(ctx.text), span.length, k)
    return normalize(out)


def fine_grained_occurrences(ctx, k: int, q0: Fragment) -> OccurrenceSet:
    """Occurrences of the whole pattern in the periodic case, split into
    progressions (positions whose over-approximated distance is already
    within k) and explicitly verified extras (positions where a pattern
    mismatch aligns a text mismatch)."""
    span = _whole_span(ctx)
    d = 64 * (ctx.pattern.d_count + k)
    q = q0.length
    mi_s = _mismatch_positions(span, q0)
    _check_common(span, k, d, q0, mi_s)
    if k >= 1:
        _require(len(mi_s) <= 32 * k, "pattern too far from periodic for this k")
    islands = _islands(ctx, span, k, d, q0, mi_s)
    progs = []
    cand = set()
    for isl in islands:
        p_, pairs, _ = _sweep(ctx, span, q, isl, mi_s, k, collect_pairs=True)
        progs.extend(p_)
        cand.update(pairs)
    ctx.counters.candidate_count += len(cand)
    extras = tuple(sorted(pos for pos in cand if kangaroo_verify(ctx, pos, k)))
    out = OccurrenceSet(q, tuple(progs), extras, len(ctx.text), ctx.m, k)
    return normalize(out)


def grid_distance_samples(ctx, k: int, d: int, q0: Fragment,
                          span: SpanView = None) -> dict:
    """Debug view: exact distance value at every candidate grid position.

    Intended for tests that replay the sweep against direct recomputation.
    """
    span = span if span is not None else _whole_span(ctx)
    q = q0.length
    mi_s = _mismatch_positions(span, q0)
    _check_common(span, k, d, q0, mi_s)
    islands = _islands(ctx, span, k, d, q0, mi_s)
    out = {}
    for isl in islands:
        _, _, values = _sweep(
            ctx, span, q, isl, mi_s, k, collect_pairs=False, collect_values=True
        )
        if values:
            out.update(values)
    return out
