"""Full-text matching: cover the text with overlapping chunks of length
3m/2 (step floor(m/2)+1, overlap m-1), match each chunk, and merge."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .context import MatchContext
from .exact import _exact_chunk
from .instrument import Counters
from .kmismatch import _kmismatch_chunk
from .occset import OccurrenceSet, empty_set, union_shift
from .pillar import PillarIndex
from .wstring import SolidString, WString, subsolid, substitute_hash


@dataclass(frozen=True)
class ChunkPlan:
    chunk_starts: tuple
    chunk_len: int
    step: int
    overlap: int


def plan_chunks(n: int, m: int) -> ChunkPlan:
    """Chunk layout: every length-m window fits in at least one chunk, and
    consecutive chunks overlap on exactly m-1 positions."""
    step = m // 2 + 1
    chunk_len = (3 * m) // 2
    starts = []
    s = 1
    while s + m - 1 <= n:
        starts.append(s)
        s += step
    return ChunkPlan(tuple(starts), chunk_len, step, m - 1)


def match_full(p: WString, t: SolidString, k: int, counters: Counters = None,
               threads: int = 1) -> OccurrenceSet:
    """All k-mismatch occurrences of ``p`` in ``t`` (any text length).

    One query index is built over the pattern and the whole text; the chunk
    texts are registered as offset aliases into it.
    """
    m, n = len(p), len(t)
    if counters is None:
        counters = Counters()
    if n < m:
        return empty_set(n, m, k)
    if k < 0:
        raise ValueError("negative mismatch threshold")
    plan = plan_chunks(n, m)
    p_hash = substitute_hash(p)
    index = PillarIndex([p_hash, t])
    chunks = []
    for start in plan.chunk_starts:
        sub = subsolid(t, start, min(n, start + plan.chunk_len - 1))
        index.register_alias(sub, t, start)
        chunks.append(sub)
    if threads > 1:
        index.ensure_reverse()

    def run_chunk(sub: SolidString):
        local = Counters()
        ctx = MatchContext(p, sub, local, index=index, p_hash=p_hash)
        if k == 0:
            oset = _exact_chunk(ctx)
        else:
            oset = _kmismatch_chunk(ctx, k)
        return oset, local

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_chunk, chunks))
    else:
        results = [run_chunk(s) for s in chunks]

    sets = []
    for start, (oset, local) in zip(plan.chunk_starts, results):
        counters.add(local)
        counters.chunk_records.append((start, local))
        sets.append(oset)
    return union_shift(sets, [s - 1 for s in plan.chunk_starts], text_len=n)
