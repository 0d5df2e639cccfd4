"""Brute-force reference implementations used by every property suite.

Two independent occurrence oracles are provided: a direct per-window
distance scan, and the reduction that substitutes wildcards and matches
the solid result with an enlarged mismatch budget. Tests require both to
agree before trusting either.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pillar import smallest_period
from .wstring import WILDCARD, Fragment, SolidString, WString, substitute_hash


@dataclass(frozen=True)
class OracleReport:
    occurrences: list
    per_position_distance: object = None


def _as_array(chars) -> np.ndarray:
    if isinstance(chars, (bytes, bytearray)):
        return np.frombuffer(bytes(chars), dtype=np.uint8).astype(np.int32)
    return np.array(chars, dtype=np.int32)


def occurrence_distances(p: WString, t: SolidString) -> np.ndarray:
    """Wildcard-aware Hamming distance at every start position (vectorized,
    processed in row blocks to bound memory)."""
    m, n = len(p), len(t)
    if m > n:
        return np.zeros(0, dtype=np.int64)
    parr = _as_array(p.chars)
    tarr = _as_array(t.chars)
    windows = np.lib.stride_tricks.sliding_window_view(tarr, m)
    solid = parr != WILDCARD
    rows = windows.shape[0]
    block = max(1, 8_000_000 // m)
    out = np.empty(rows, dtype=np.int64)
    for lo in range(0, rows, block):
        hi = min(rows, lo + block)
        out[lo:hi] = ((windows[lo:hi] != parr) & solid).sum(axis=1)
    return out


def naive_occurrences(p: WString, t: SolidString, k: int,
                      with_distances: bool = False) -> OracleReport:
    """All positions where the pattern matches with at most ``k`` mismatches."""
    dist = occurrence_distances(p, t)
    occs = (np.nonzero(dist <= k)[0] + 1).tolist()
    return OracleReport(occs, dist.tolist() if with_distances else None)


def reduction_occurrences(p: WString, t: SolidString, k: int) -> list:
    """Second oracle: match the wildcard-substituted pattern with budget D+k."""
    m, n = len(p), len(t)
    if m > n:
        return []
    parr = _as_array(substitute_hash(p).chars)
    tarr = _as_array(t.chars)
    windows = np.lib.stride_tricks.sliding_window_view(tarr, m)
    dist = (windows != parr).sum(axis=1)
    return (np.nonzero(dist <= p.d_count + k)[0] + 1).tolist()


def naive_misperiods(host, i: int, j: int, direction: str) -> list:
    """Definition-level misperiod scan around the solid anchor host[i..j].

    Returns all misperiods on the requested side in order of distance from
    the anchor, ending with the sentinel (0 on the left, len+1 on the
    right). Wildcard positions are never misperiods.
    """
    chars = host.chars
    n = len(chars)
    q = smallest_period(Fragment(host, i, j))

    def mismatches(x: int) -> bool:
        c = chars[x - 1]
        if c == WILDCARD:
            return False
        ref = chars[(i - 1) + ((x - i) % q)]
        return c != ref

    out = []
    if direction == "left":
        for x in range(i - 1, 0, -1):
            if mismatches(x):
                out.append(x)
        out.append(0)
    elif direction == "right":
        for x in range(j + 1, n + 1):
            if mismatches(x):
                out.append(x)
        out.append(n + 1)
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return out


def ap_free_check(positions) -> bool:
    """True iff no three distinct elements a, b, c satisfy a + b = 2c."""
    elems = sorted(set(positions))
    present = set(elems)
    for ia, a in enumerate(elems):
        for b in elems[ia + 1 :]:
            if (a + b) % 2 == 0:
                c = (a + b) // 2
                if c in present and c != a and c != b:
                    return False
    return True
