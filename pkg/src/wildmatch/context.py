"""Shared preprocessed state for one pattern/text pair."""

from __future__ import annotations

import numpy as np

from .instrument import Counters
from .pillar import PillarIndex
from .wstring import (
    Fragment,
    SolidString,
    WString,
    reverse_solid,
    reverse_wstring,
    substitute_hash,
)


class MatchContext:
    """Pattern, text, the substituted pattern, and their query index.

    Immutable after construction apart from the counters; a reversed twin
    (used by the mirrored orientation of the exact matcher) is built lazily.
    """

    def __init__(self, pattern: WString, text: SolidString, counters=None,
                 index: PillarIndex = None, p_hash: SolidString = None):
        self.pattern = pattern
        self.text = text
        self.p_hash = p_hash if p_hash is not None else substitute_hash(pattern)
        self.index = index if index is not None else PillarIndex(
            [self.p_hash, text]
        )
        self.counters = counters if counters is not None else Counters()
        self._reversed = None
        self._pattern_array = None

    @property
    def pattern_array(self) -> np.ndarray:
        if self._pattern_array is None:
            self._pattern_array = np.array(self.pattern.chars, dtype=np.int32)
        return self._pattern_array

    @property
    def lce_pattern_text(self):
        """Capped LCE between the substituted pattern and the text."""
        fn = self.__dict__.get("_lce_pt")
        if fn is None:
            fn = self.index.lce_pair_fn(self.p_hash, self.text)
            self.__dict__["_lce_pt"] = fn
        return fn

    @property
    def m(self) -> int:
        return len(self.pattern)

    @property
    def n(self) -> int:
        return len(self.text)

    def pat_frag(self, start: int, end: int) -> Fragment:
        return Fragment(self.p_hash, start, end)

    def text_frag(self, start: int, end: int) -> Fragment:
        return Fragment(self.text, start, end)

    def reversed_context(self) -> "MatchContext":
        if self._reversed is None:
            self._reversed = MatchContext(
                reverse_wstring(self.pattern),
                reverse_solid(self.text),
                self.counters,
            )
        return self._reversed
