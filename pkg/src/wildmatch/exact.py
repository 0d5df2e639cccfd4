"""Exact matching of a wildcard pattern in one text chunk.

Dispatch: wildcard-free patterns go through plain internal matching;
wildcard-heavy patterns (D >= m/4) are verified position by position; the
rest anchor on a solid fragment of typical wildcard density. If that anchor
occurs rarely, each of its occurrences is verified directly. Otherwise the
anchor is periodic, and either the whole pattern follows its period (solved
by the sliding periodic engine) or the pattern breaks the period at a known
offset, which must align with a period break in the text; those breaks are
collected by extending each anchor run leftward under a misperiod budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import MatchContext
from .errors import ChunkTooLong
from .occset import OccurrenceSet, empty_set, from_positions, normalize
from .periodic import occs_periodic
from .pillar import smallest_period
from .structure import (
    LEFT,
    RIGHT,
    MisperiodCursor,
    kangaroo_verify,
    occurrence_runs,
    sparsifier_fragment,
)
from .wstring import Fragment, SolidString, WString


@dataclass(frozen=True)
class RunExtension:
    """One anchor run extended leftward under the misperiod budget."""

    run: object
    extended_start: int
    misperiods: tuple
    stopped_by: str  # "budget" | "text_start"


def _verify_all(ctx, k: int) -> OccurrenceSet:
    n, m = ctx.n, ctx.m
    found = [pos for pos in range(1, n - m + 2) if kangaroo_verify(ctx, pos, k)]
    return from_positions(found, n, m, k)


def _verify_candidates(ctx, candidates, k: int) -> OccurrenceSet:
    found = [pos for pos in candidates if kangaroo_verify(ctx, pos, k)]
    return from_positions(found, ctx.n, ctx.m, k)


def run_extension_candidates(ctx, runs, mu: int, q: int):
    """Candidate start positions for occurrences that break the period at
    pattern offset ``mu``.

    Processes anchor runs right to left; each is extended leftward while the
    ratio of collected misperiods to the extension length stays within
    20*D/m (the first misperiod over budget is retained). Unprocessed runs
    whose start is congruent modulo ``q`` to a processed run and already
    covered by its extension are skipped. Returns (candidates, extensions).
    """
    text = ctx.text
    n, m = ctx.n, ctx.m
    d = ctx.pattern.d_count
    index = ctx.index
    reach = {}
    mis_all = set()
    extensions = []
    for run in sorted(runs, key=lambda r: -r.start):
        phase = run.start % q
        if reach.get(phase, n + 2) <= run.start:
            continue
        cursor = MisperiodCursor(index, text, run.start, run.end, LEFT, period=q)
        mis = []
        ext_start = run.start
        stopped = "text_start"
        count = 0
        while True:
            nu = cursor.next()
            if nu == 0:
                ext_start = 1
                break
            count += 1
            mis.append(nu)
            mis_all.add(nu)
            if count * m > 20 * d * (run.end - nu + 1):
                ext_start = nu
                stopped = "budget"
                break
        if reach.get(phase, n + 2) > ext_start:
            reach[phase] = ext_start
        ctx.counters.extension_total_len += run.end - ext_start + 1
        extensions.append(RunExtension(run, ext_start, tuple(mis), stopped))
    candidates = sorted(
        {nu - mu + 1 for nu in mis_all if 1 <= nu - mu + 1 <= n - m + 1}
    )
    ctx.counters.candidate_count += len(candidates)
    return candidates, extensions


def periodic_slide_exact(ctx, q0: Fragment) -> OccurrenceSet:
    """Exact occurrences when the whole pattern follows the period of q0."""
    d = max(1, 2 * ctx.pattern.d_count)
    return occs_periodic(ctx, 0, d, q0)


def _exact_chunk(ctx) -> OccurrenceSet:
    m, n = ctx.m, ctx.n
    if n < m:
        return empty_set(n, m, 0)
    p = ctx.pattern
    d = p.d_count

    if d == 0:
        ap = ctx.index.ipm(ctx.pat_frag(1, m), ctx.text_frag(1, n))
        if ap is None:
            return empty_set(n, m, 0)
        return normalize(OccurrenceSet(ap.diff, (ap,), (), n, m, 0))

    if 4 * d >= m:
        return _verify_all(ctx, 0)

    anchor = sparsifier_fragment(p)
    x, y = anchor.start, anchor.end
    sfrag = ctx.pat_frag(x, y)
    runs = occurrence_runs(ctx.index, sfrag, ctx.text)
    total_occs = sum(r.occ_count for r in runs)

    if total_occs < 384 * d:
        candidates = sorted(
            {
                pos - x + 1
                for run in runs
                for pos in run.occurrence_positions()
                if 1 <= pos - x + 1 <= n - m + 1
            }
        )
        ctx.counters.case1_verifications += len(candidates)
        return _verify_candidates(ctx, candidates, 0)

    q = smallest_period(sfrag)
    assert 256 * d * q <= m, "dense anchor occurrences force a short period"

    mu = MisperiodCursor(ctx.index, ctx.p_hash, x, y, LEFT, period=q,
                         groups=p).take(1)[0]
    rho = MisperiodCursor(ctx.index, ctx.p_hash, x, y, RIGHT, period=q,
                          groups=p).take(1)[0]

    if mu == 0 and rho == m + 1:
        # The pattern follows the period end to end; align the period with
        # the first pattern position.
        e0 = x + ((1 - x) % q)
        return periodic_slide_exact(ctx, ctx.pat_frag(e0, e0 + q - 1))

    candidates = set()
    if mu >= 1:
        cands, _ = run_extension_candidates(ctx, runs, mu, q)
        candidates.update(cands)
    if rho <= m:
        rctx = ctx.reversed_context()
        xr, yr = m - y + 1, m - x + 1
        runs_r = occurrence_runs(rctx.index, rctx.pat_frag(xr, yr), rctx.text)
        mu_r = m + 1 - rho
        cands_r, _ = run_extension_candidates(rctx, runs_r, mu_r, q)
        candidates.update(n - pos_r - m + 2 for pos_r in cands_r)
    return _verify_candidates(ctx, sorted(candidates), 0)


def exact_occurrences_chunk(p: WString, t: SolidString,
                            counters=None) -> OccurrenceSet:
    """Exact occurrence set of ``p`` in a chunk ``t`` with |t| <= 3m/2."""
    m, n = len(p), len(t)
    if 2 * n > 3 * m:
        raise ChunkTooLong(f"chunk length {n} exceeds 3*{m}/2")
    if n < m:
        return empty_set(n, m, 0)
    ctx = MatchContext(p, t, counters)
    return _exact_chunk(ctx)
