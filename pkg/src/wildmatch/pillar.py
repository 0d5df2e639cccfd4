"""Constant-time primitive queries over a fixed family of solid strings.

The backend is a shared corpus (registered strings joined by unique
separator codes), a suffix array built by prefix doubling, the adjacent-LCP
array, and sparse-table range minima. The same structures over the reversed
corpus serve suffix-direction queries; they are built on first use since
many call sites never need them.

Supported queries: longest common extension forward and backward, internal
pattern matching of a needle in a window shorter than twice the needle
(returned as one arithmetic progression), and extension against the
infinite repetition of a fragment in either direction.
"""

from __future__ import annotations

import numpy as np

from .errors import IpmWindowTooLarge
from .occset import ArithProgression
from .wstring import Fragment, SolidString

_SEPARATOR_BASE = 0x200
_SMALL_CORPUS = 96


def smallest_period(f: Fragment) -> int:
    """Smallest period of a fragment, via its border (failure) array."""
    s = f.slice_chars()
    n = len(s)
    if n == 0:
        raise ValueError("period of an empty fragment")
    border = [0] * n
    k = 0
    for i in range(1, n):
        c = s[i]
        while k > 0 and s[k] != c:
            k = border[k - 1]
        if s[k] == c:
            k += 1
        border[i] = k
    return n - border[n - 1]


def _suffix_array_small(corpus: list):
    order = sorted(range(len(corpus)), key=lambda i: corpus[i:])
    rank = [0] * len(corpus)
    for r, i in enumerate(order):
        rank[i] = r
    return np.array(order, dtype=np.int64), np.array(rank, dtype=np.int64)


def _suffix_array(arr: np.ndarray):
    """Suffix array and rank array by prefix doubling.

    Each round sorts one combined 64-bit key (rank, rank-at-offset) instead
    of two separate keys; the first round packs up to six characters into
    one key when the alphabet permits, skipping the shallow rounds.
    """
    n = int(arr.size)
    if n == 1:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
    if n <= _SMALL_CORPUS:
        return _suffix_array_small(arr.tolist())
    a = arr.astype(np.int64)
    if int(a.max()) < 1022:
        key = np.zeros(n, dtype=np.int64)
        for off in range(6):
            key <<= 10
            key[: n - off] += a[off:] + 1
        k = 6
    else:
        key = a
        k = 1
    order = np.argsort(key)
    rank = np.empty(n, dtype=np.int64)
    sortedk = key[order]
    rank[order[0]] = 0
    rank[order[1:]] = np.cumsum(sortedk[1:] != sortedk[:-1])
    scratch = np.empty(n, dtype=np.int64)
    while int(rank[order[-1]]) != n - 1:
        key = rank * (n + 1)
        key[: n - k] += rank[k:] + 1
        order = np.argsort(key)
        sortedk = key[order]
        scratch[order[0]] = 0
        scratch[order[1:]] = np.cumsum(sortedk[1:] != sortedk[:-1])
        rank, scratch = scratch, rank
        k *= 2
    return order, rank


def _lcp_array(chars, carr, sa, rank) -> np.ndarray:
    """Kasai's algorithm: lcp[r] = lcp(suffix sa[r], suffix sa[r+1]).

    ``chars``/``sa``/``rank`` should be flat C-backed sequences (bytes,
    array.array); large lists of distinct ints thrash the cache here.
    Agreements longer than a few characters (common in periodic corpora)
    are extended with vectorized block compares on ``carr``.
    """
    n = len(chars)
    lcp = np.zeros(max(n - 1, 1), dtype=np.int32)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == n - 1:
            h = 0
            continue
        j = sa[r + 1]
        cap = n - (i if i > j else j)
        probe = h + 8
        while h < cap and chars[i + h] == chars[j + h]:
            h += 1
            if h >= probe:
                while h < cap:
                    step = 512 if cap - h > 512 else cap - h
                    neq = (
                        carr[i + h : i + h + step] != carr[j + h : j + h + step]
                    ).nonzero()[0]
                    if neq.size:
                        h += int(neq[0])
                        break
                    h += step
                break
        lcp[r] = h
        if h:
            h -= 1
    return lcp


class _LceTable:
    """Rank array plus sparse-table range minima over adjacent LCPs."""

    def __init__(self, corpus: np.ndarray):
        import array

        # Remap to a compact alphabet when possible: the order-preserving
        # uint8 view makes the character scans cache-friendly.
        vals = np.unique(corpus)
        if vals.size <= 256:
            compact = np.searchsorted(vals, corpus).astype(np.uint8)
            sa_np, rank_np = _suffix_array(compact)
            chars = compact.tobytes()
            carr = np.frombuffer(chars, dtype=np.uint8)
        else:
            sa_np, rank_np = _suffix_array(corpus)
            chars = corpus.tolist()
            carr = corpus
        sa = array.array("l", sa_np.astype(np.int64).tobytes())
        rank = array.array("l", rank_np.astype(np.int64).tobytes())
        self.rank = rank
        lcp = _lcp_array(chars, carr, sa, rank)
        levels = [lcp]
        size = lcp.size
        j = 1
        while (1 << j) <= size:
            prev = levels[-1]
            half = 1 << (j - 1)
            levels.append(np.minimum(prev[: prev.size - half], prev[half:]))
            j += 1
        self.levels = levels

    def suffix_lce(self, ga: int, gb: int) -> int:
        """LCE of the corpus suffixes at global 0-based positions ga != gb."""
        ra = self.rank[ga]
        rb = self.rank[gb]
        if ra > rb:
            ra, rb = rb, ra
        j = (rb - ra).bit_length() - 1
        t = self.levels[j]
        a = t[ra]
        b = t[rb - (1 << j)]
        return int(a) if a < b else int(b)


class PillarIndex:
    """Immutable query structure over a list of registered solid strings."""

    def __init__(self, strings):
        strings = list(strings)
        total = sum(len(s) for s in strings)
        if total < 1:
            raise ValueError("total registered length must be at least 1")
        self._offsets = {}
        self._registered = []
        parts = []
        off = 0
        for i, s in enumerate(strings):
            if id(s) in self._offsets:
                continue
            self._offsets[id(s)] = off
            self._registered.append(s)
            if isinstance(s.chars, (bytes, bytearray)):
                arr = np.frombuffer(bytes(s.chars), dtype=np.uint8).astype(np.int32)
            else:
                arr = np.array(s.chars, dtype=np.int32)
            parts.append(arr)
            parts.append(np.array([_SEPARATOR_BASE + i], dtype=np.int32))
            off += len(s) + 1
        self._corpus = np.concatenate(parts)
        self._n = int(self._corpus.size)
        self._fwd = _LceTable(self._corpus)
        self._rev_table = None

    # -- internals -------------------------------------------------------

    def _offset(self, parent) -> int:
        try:
            return self._offsets[id(parent)]
        except KeyError:
            raise ValueError("fragment parent is not registered in this index")

    def register_alias(self, alias, parent, start: int) -> None:
        """Register ``alias`` as a view of parent[start..]; its content must
        equal that region. Lets substrings of a registered string answer
        queries without their own corpus copy."""
        base = self._offset(parent)
        if start < 1 or start - 1 + len(alias) > len(parent):
            raise ValueError("alias exceeds its parent")
        self._offsets[id(alias)] = base + start - 1
        self._registered.append(alias)

    def ensure_reverse(self) -> None:
        """Force the reversed-direction tables (needed before concurrent use)."""
        _ = self._rev

    @property
    def _rev(self) -> _LceTable:
        if self._rev_table is None:
            self._rev_table = _LceTable(self._corpus[::-1].copy())
        return self._rev_table

    def lce_abs(self, parent_a, start_a: int, parent_b, start_b: int, cap: int) -> int:
        """LCE of parent_a[start_a..] and parent_b[start_b..], capped."""
        if cap <= 0:
            return 0
        ga = self._offset(parent_a) + start_a - 1
        gb = self._offset(parent_b) + start_b - 1
        if ga == gb:
            return cap
        ell = self._fwd.suffix_lce(ga, gb)
        return ell if ell < cap else cap

    def lce_pair_fn(self, parent_a, parent_b):
        """A capped LCE callable bound to two registered strings; avoids the
        per-call registry lookups on hot verification paths."""
        oa = self._offset(parent_a) - 1
        ob = self._offset(parent_b) - 1
        suffix_lce = self._fwd.suffix_lce

        def lce(start_a: int, start_b: int, cap: int) -> int:
            if cap <= 0:
                return 0
            ga = oa + start_a
            gb = ob + start_b
            if ga == gb:
                return cap
            ell = suffix_lce(ga, gb)
            return ell if ell < cap else cap

        return lce

    def lce_rev_abs(self, parent_a, end_a: int, parent_b, end_b: int, cap: int) -> int:
        """Longest common suffix of parent_a[..end_a] and parent_b[..end_b]."""
        if cap <= 0:
            return 0
        ga = self._n - 1 - (self._offset(parent_a) + end_a - 1)
        gb = self._n - 1 - (self._offset(parent_b) + end_b - 1)
        if ga == gb:
            return cap
        ell = self._rev.suffix_lce(ga, gb)
        return ell if ell < cap else cap

    # -- public queries ----------------------------------------------------

    def lce(self, a: Fragment, b: Fragment) -> int:
        """Length of the longest common prefix of two fragments."""
        cap = min(a.length, b.length)
        return self.lce_abs(a.parent, a.start, b.parent, b.start, cap)

    def lce_rev(self, a: Fragment, b: Fragment) -> int:
        """Length of the longest common suffix of two fragments."""
        cap = min(a.length, b.length)
        return self.lce_rev_abs(a.parent, a.end, b.parent, b.end, cap)

    def ipm(self, needle: Fragment, haystack: Fragment):
        """Occurrences of ``needle`` in ``haystack`` as one progression.

        Requires ``|haystack| < 2|needle|``. Returns None when there is no
        occurrence. With at least three terms the difference always equals
        the needle's smallest period; with exactly two terms it may be
        larger. Positions are 1-based within the haystack.
        """
        ln, lh = needle.length, haystack.length
        if ln == 0:
            raise ValueError("empty needle")
        if lh >= 2 * ln:
            raise IpmWindowTooLarge(f"haystack {lh} >= 2 * needle {ln}")
        if lh < ln:
            return None
        hoff = self._offset(haystack.parent) + haystack.start - 1
        noff = self._offset(needle.parent) + needle.start - 1
        window = self._corpus[hoff : hoff + (lh - ln + 1)]
        first = self._corpus[noff]
        occs = []
        np_, hp = needle.parent, haystack.parent
        ns, hs = needle.start, haystack.start
        for rel in np.nonzero(window == first)[0]:
            rel = int(rel)
            if self.lce_abs(np_, ns, hp, hs + rel, ln) >= ln:
                occs.append(rel + 1)
        if not occs:
            return None
        per = smallest_period(needle)
        if len(occs) == 1:
            return ArithProgression(occs[0], per, 1)
        diff = occs[1] - occs[0]
        if len(occs) >= 3:
            assert all(occs[i + 1] - occs[i] == per for i in range(len(occs) - 1))
            diff = per
        return ArithProgression(occs[0], diff, len(occs))

    def lcp_periodic(self, x: Fragment, z: Fragment) -> int:
        """Longest prefix of ``z`` matching the infinite repetition of ``x``."""
        lx, lz = x.length, z.length
        if lx < 1:
            raise ValueError("empty period fragment")
        e = self.lce(x, z)
        if e < lx or lz <= lx:
            return e
        # z starts with one full copy of x; the rest must repeat z itself.
        return lx + self.lce_abs(z.parent, z.start + lx, z.parent, z.start, lz - lx)

    def lcp_periodic_rev(self, x: Fragment, z: Fragment) -> int:
        """Longest suffix of ``z`` matching copies of ``x`` stacked leftward."""
        lx, lz = x.length, z.length
        if lx < 1:
            raise ValueError("empty period fragment")
        e = self.lce_rev(x, z)
        if e < lx or lz <= lx:
            return e
        return lx + self.lce_rev_abs(z.parent, z.end - lx, z.parent, z.end, lz - lx)


def build_index(strings) -> PillarIndex:
    """Build a query index over ``strings`` (a list of SolidString)."""
    return PillarIndex(strings)
