"""Pattern and text string types.

Patterns may contain wildcard positions that match any character; texts are
plain byte strings. All public positions are 1-based inclusive. Solid
characters are byte values 0..255; the wildcard marker and the substitution
character used for index queries live above 255, so they can never collide
with text bytes.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

from .errors import EmptyPattern, LengthMismatch

WILDCARD = 0x100
HASH = 0x101


@dataclass(frozen=True)
class SolidString:
    """A wildcard-free string; ``chars`` is bytes or a tuple of int codes."""

    chars: Sequence[int]

    def __len__(self) -> int:
        return len(self.chars)


@dataclass(frozen=True)
class WString:
    """A pattern over bytes plus wildcards.

    ``groups`` lists the maximal runs of wildcard positions as 1-based
    inclusive intervals: sorted, disjoint, and separated by at least one
    solid character. A solid pattern has an empty group list.
    """

    chars: tuple[int, ...]
    groups: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.chars)

    @cached_property
    def d_count(self) -> int:
        return sum(b - a + 1 for a, b in self.groups)

    @property
    def g_count(self) -> int:
        return len(self.groups)

    @cached_property
    def _group_starts(self) -> list:
        return [a for a, _ in self.groups]

    @cached_property
    def _group_ends(self) -> list:
        return [b for _, b in self.groups]

    def group_at(self, pos: int):
        """The wildcard group containing ``pos``, or None."""
        i = bisect_right(self._group_starts, pos) - 1
        if i >= 0 and self.groups[i][1] >= pos:
            return self.groups[i]
        return None

    def next_group_start(self, pos: int) -> int:
        """Start of the first group whose start is >= ``pos``; len+1 if none."""
        i = bisect_left(self._group_starts, pos)
        if i < len(self.groups):
            return self.groups[i][0]
        return len(self.chars) + 1

    def prev_group_end(self, pos: int) -> int:
        """End of the last group whose end is <= ``pos``; 0 if none."""
        i = bisect_right(self._group_ends, pos) - 1
        if i >= 0:
            return self.groups[i][1]
        return 0

    def validate(self) -> None:
        """Check the structural invariants; raises AssertionError on failure."""
        prev_end = -1
        total = 0
        for a, b in self.groups:
            assert 1 <= a <= b <= len(self.chars)
            assert a > prev_end + 1, "groups must be separated by a solid char"
            total += b - a + 1
            for i in range(a, b + 1):
                assert self.chars[i - 1] == WILDCARD
            prev_end = b
        assert total == self.d_count
        in_group = set()
        for a, b in self.groups:
            in_group.update(range(a, b + 1))
        for i, c in enumerate(self.chars, start=1):
            if i not in in_group:
                assert c != WILDCARD


@dataclass(frozen=True)
class Fragment:
    """A 1-based inclusive slice [start..end] of a parent string.

    Empty fragments (start == end + 1) are allowed.
    """

    parent: Union[WString, SolidString]
    start: int
    end: int

    def __post_init__(self):
        n = len(self.parent)
        if not (1 <= self.start and self.start <= self.end + 1 and self.end <= n):
            raise ValueError(
                f"fragment [{self.start}..{self.end}] out of bounds for length {n}"
            )

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def slice_chars(self) -> Sequence[int]:
        return self.parent.chars[self.start - 1 : self.end]


def _coerce_wildcard(wildcard_char) -> int:
    if isinstance(wildcard_char, (bytes, bytearray)):
        if len(wildcard_char) != 1:
            raise ValueError("wildcard char must be a single byte")
        return wildcard_char[0]
    if isinstance(wildcard_char, str):
        if len(wildcard_char) != 1:
            raise ValueError("wildcard char must be a single character")
        return ord(wildcard_char)
    return int(wildcard_char)


def _strip_one_newline(data: bytes) -> bytes:
    if data.endswith(b"\n"):
        return data[:-1]
    return data


def wstring_from_chars(chars) -> WString:
    """Build a pattern from int codes (wildcards already marked), scanning
    out the maximal wildcard runs."""
    chars = tuple(chars)
    groups = []
    i = 0
    n = len(chars)
    while i < n:
        if chars[i] == WILDCARD:
            j = i
            while j + 1 < n and chars[j + 1] == WILDCARD:
                j += 1
            groups.append((i + 1, j + 1))
            i = j + 1
        else:
            i += 1
    return WString(chars, tuple(groups))


def parse_wstring(data: bytes, wildcard_char=b"?") -> WString:
    """Parse raw bytes into a pattern, treating ``wildcard_char`` as a wildcard.

    One trailing newline is stripped; every other byte is literal.
    """
    wc = _coerce_wildcard(wildcard_char)
    data = _strip_one_newline(data)
    if not data:
        raise EmptyPattern("pattern is empty")
    return wstring_from_chars(WILDCARD if b == wc else b for b in data)


def parse_solid(data: bytes) -> SolidString:
    """Parse raw bytes into a text string (one trailing newline stripped)."""
    return SolidString(_strip_one_newline(data))


def to_bytes(p: WString, wildcard_char=b"?") -> bytes:
    """Serialize a pattern back to bytes; inverse of parse_wstring."""
    wc = _coerce_wildcard(wildcard_char)
    return bytes(wc if c == WILDCARD else c for c in p.chars)


def solid_to_bytes(s: SolidString) -> bytes:
    return bytes(s.chars)


def substitute_hash(p: WString) -> SolidString:
    """Replace each wildcard by the reserved out-of-alphabet substitute."""
    return SolidString(tuple(HASH if c == WILDCARD else c for c in p.chars))


def hamming_with_wildcards(p: WString, t) -> int:
    """Mismatch count between pattern and an equal-length solid string.

    Wildcard positions match everything. ``t`` may be a SolidString or a
    Fragment of one.
    """
    if isinstance(t, Fragment):
        chars = t.parent.chars
        off = t.start - 1
        tlen = t.length
    else:
        chars = t.chars
        off = 0
        tlen = len(chars)
    if len(p) != tlen:
        raise LengthMismatch(f"pattern length {len(p)} != text length {tlen}")
    count = 0
    pc = p.chars
    for i in range(tlen):
        c = pc[i]
        if c != WILDCARD and c != chars[off + i]:
            count += 1
    return count


def subsolid(s: SolidString, start: int, end: int) -> SolidString:
    """Materialize s[start..end] as its own string (1-based inclusive)."""
    return SolidString(s.chars[start - 1 : end])


def reverse_wstring(p: WString) -> WString:
    m = len(p)
    groups = tuple((m - b + 1, m - a + 1) for a, b in reversed(p.groups))
    return WString(tuple(reversed(p.chars)), groups)


def reverse_solid(s: SolidString) -> SolidString:
    if isinstance(s.chars, (bytes, bytearray)):
        return SolidString(bytes(reversed(s.chars)))
    return SolidString(tuple(reversed(s.chars)))
