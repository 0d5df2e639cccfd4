"""Occurrence sets: arithmetic progressions with one shared difference,
plus explicit extra positions. All positions are 1-based."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, replace

from .errors import ContextMismatch


@dataclass(frozen=True)
class ArithProgression:
    start: int
    diff: int
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("progression needs at least one term")
        if self.diff < 1:
            raise ValueError("progression difference must be positive")

    @property
    def last(self) -> int:
        return self.start + (self.count - 1) * self.diff

    def terms(self):
        return range(self.start, self.last + 1, self.diff)


@dataclass(frozen=True)
class OccurrenceSet:
    """Occurrences as progressions sharing difference ``q``, plus extras.

    Every progression with two or more terms steps by ``q``; single-term
    progressions are stored with diff ``q`` as well. ``extras`` is sorted.
    """

    q: int
    progressions: tuple
    extras: tuple
    text_len: int
    pattern_len: int
    k: int

    def validate(self) -> None:
        cap = self.text_len - self.pattern_len + 1
        assert self.q >= 1
        for ap in self.progressions:
            assert ap.diff == self.q
            assert 1 <= ap.start and ap.last <= cap
        for e in self.extras:
            assert 1 <= e <= cap
        assert list(self.extras) == sorted(set(self.extras))

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "progressions": [
                {"start": ap.start, "count": ap.count} for ap in self.progressions
            ],
            "extras": list(self.extras),
            "count": len(materialize(self)),
        }

    def to_tsv(self) -> str:
        return "".join(f"{p}\n" for p in materialize(self))


def from_json(data: dict, text_len: int, pattern_len: int, k: int) -> OccurrenceSet:
    q = int(data["q"])
    progs = tuple(
        ArithProgression(int(p["start"]), q, int(p["count"]))
        for p in data["progressions"]
    )
    return OccurrenceSet(
        q, progs, tuple(int(e) for e in data["extras"]), text_len, pattern_len, k
    )


def empty_set(text_len: int, pattern_len: int, k: int) -> OccurrenceSet:
    return OccurrenceSet(1, (), (), text_len, pattern_len, k)


def from_positions(positions, text_len: int, pattern_len: int, k: int) -> OccurrenceSet:
    """Extras-only set (the representation used by non-periodic branches)."""
    return OccurrenceSet(
        1, (), tuple(sorted(set(positions))), text_len, pattern_len, k
    )


def materialize(s: OccurrenceSet) -> list:
    """Sorted, deduplicated list of all positions in the set."""
    out = set(s.extras)
    for ap in s.progressions:
        out.update(ap.terms())
    return sorted(out)


def normalize(s: OccurrenceSet) -> OccurrenceSet:
    """Merge progressions sharing the difference and drop covered extras.

    Materialization is preserved exactly.
    """
    q = s.q
    by_residue = {}
    for ap in s.progressions:
        res = ap.start % q
        t0 = (ap.start - res) // q
        by_residue.setdefault(res, []).append((t0, t0 + ap.count - 1))
    merged = {}
    progs = []
    for res, ivals in by_residue.items():
        ivals.sort()
        out = []
        for lo, hi in ivals:
            if out and lo <= out[-1][1] + 1:
                out[-1] = (out[-1][0], max(out[-1][1], hi))
            else:
                out.append((lo, hi))
        merged[res] = out
        for lo, hi in out:
            progs.append(ArithProgression(lo * q + res, q, hi - lo + 1))
    progs.sort(key=lambda ap: (ap.start, ap.count))

    def covered(pos: int) -> bool:
        res = pos % q
        ivals = merged.get(res)
        if not ivals:
            return False
        t = (pos - res) // q
        i = bisect_right(ivals, (t, float("inf"))) - 1
        return i >= 0 and ivals[i][0] <= t <= ivals[i][1]

    extras = tuple(sorted({e for e in s.extras if not covered(e)}))
    return replace(s, progressions=tuple(progs), extras=extras)


def union_shift(sets, offsets, text_len=None) -> OccurrenceSet:
    """Union of occurrence sets, each shifted by its chunk offset."""
    sets = list(sets)
    offsets = list(offsets)
    if len(sets) != len(offsets):
        raise ValueError("sets and offsets must have equal length")
    if not sets:
        if text_len is None:
            raise ValueError("text_len required for an empty union")
        return empty_set(text_len, 0, 0)
    plen = sets[0].pattern_len
    k = sets[0].k
    for s in sets:
        if s.pattern_len != plen or s.k != k:
            raise ContextMismatch("occurrence sets disagree on pattern length or k")
    if text_len is None:
        text_len = max(off + s.text_len for s, off in zip(sets, offsets))
    qs = {s.q for s in sets if s.progressions}
    if len(qs) > 1:
        # Mixed differences cannot share one q; fall back to explicit form.
        positions = set()
        for s, off in zip(sets, offsets):
            positions.update(p + off for p in materialize(s))
        return from_positions(positions, text_len, plen, k)
    q = qs.pop() if qs else 1
    progs = []
    extras = set()
    for s, off in zip(sets, offsets):
        for ap in s.progressions:
            progs.append(ArithProgression(ap.start + off, q, ap.count))
        extras.update(e + off for e in s.extras)
    out = OccurrenceSet(q, tuple(progs), tuple(sorted(extras)), text_len, plen, k)
    return normalize(out)
