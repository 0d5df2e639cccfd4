"""Hard-instance generator: patterns and texts whose occurrence sets are
progression-free, certifying a lower bound on how many arithmetic
progressions any cover needs.

Pattern: a zero run, then a block carrying wildcards and ones at the
positions of a progression-free set, then another zero run. Text: zero
padding around blocks whose rare ones also sit at a progression-free set,
spaced so far apart that any alignment can touch at most one of them. Each
(special pattern position, text one) pair then contributes exactly one
occurrence, and the resulting start set inherits progression-freeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import CertificationFailed, InvalidLowerBoundParams
from .oracle import ap_free_check, naive_occurrences
from .occset import materialize
from .wstring import WILDCARD, SolidString, WString, wstring_from_chars

_ZERO = ord("0")
_ONE = ord("1")


@dataclass(frozen=True)
class ProgressionFreeSet:
    elements: tuple
    universe: int

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class LowerBoundInstance:
    p: WString
    t: SolidString
    k: int
    d: int
    ell: int
    t_block: int
    expected_min_occs: int


@dataclass(frozen=True)
class Certificate:
    occurrence_count: int
    expected_min_occs: int
    cover_lower_bound: int
    ap_free: bool
    algorithm_agrees: bool
    d: int
    k: int
    pattern_len: int
    text_len: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def progression_free_set(m_target: int) -> ProgressionFreeSet:
    """A set of ``m_target`` integers with no 3-term arithmetic progression.

    Digits-on-a-sphere construction: lattice points of a fixed squared norm
    in [0..dmax]^dim, encoded in base 2*dmax+1 so that sums never carry.
    Configurations are tried in order of increasing encoded universe to keep
    the set compact.
    """
    if m_target < 1:
        raise ValueError("set size must be positive")
    if m_target == 1:
        return ProgressionFreeSet((1,), 1)
    configs = []
    for dim in range(2, 9):
        for dmax in range(1, 60):
            points = (dmax + 1) ** dim
            if points > 300000:
                break
            configs.append(((2 * dmax + 1) ** dim, dim, dmax))
    configs.sort()
    for universe, dim, dmax in configs:
        if (dmax + 1) ** dim < m_target:
            continue
        shells = {}
        for vec in product(range(dmax + 1), repeat=dim):
            norm = sum(v * v for v in vec)
            shells.setdefault(norm, []).append(vec)
        best = max(shells.values(), key=len)
        if len(best) < m_target:
            continue
        base = 2 * dmax + 1
        encoded = sorted(
            1 + sum(v * base**i for i, v in enumerate(vec)) for vec in best
        )[:m_target]
        out = ProgressionFreeSet(tuple(encoded), max(encoded))
        if m_target <= 512:
            assert ap_free_check(out.elements)
        return out
    raise ValueError(f"no sphere configuration large enough for {m_target}")


def build_instance(d_wild: int, k: int) -> LowerBoundInstance:
    """Generate the certified-hard (pattern, text, k) triple.

    ``k`` must be even; the pattern carries ``d_wild`` wildcards and k/2
    ones, the text k/2 + 1 ones. Padding is the least value satisfying the
    block-spacing and divisibility constraints.
    """
    if k < 0 or k % 2 != 0:
        raise InvalidLowerBoundParams("k must be even and non-negative")
    if d_wild < 0:
        raise InvalidLowerBoundParams("wildcard count must be non-negative")
    m_specials = d_wild + k // 2
    if m_specials < 1:
        raise InvalidLowerBoundParams("need at least one wildcard or one 1")
    s = progression_free_set(m_specials)
    sp = progression_free_set(k // 2 + 1)
    n_m, n_mp = s.universe, sp.universe
    # The pattern core gets a trailing zero when its length is odd; otherwise
    # m = 2*ell + n_m could never be divisible by 2*n_mp.
    n_m += n_m % 2
    # The last text block must stay all-zero: a one at block index n_mp can
    # align pattern positions past the valid start range.
    if max(sp.elements) == n_mp:
        n_mp += 1

    ell = max(1, (20 * n_m * n_mp - n_m + 1) // 2)
    while True:
        m = 2 * ell + n_m
        if m % (2 * n_mp) == 0 and m // (2 * n_mp) >= 10 * n_m:
            break
        ell += 1
    t_block = m // (2 * n_mp)

    chars = [_ZERO] * m
    for i, pos in enumerate(s.elements):
        chars[ell + pos - 1] = WILDCARD if i < d_wild else _ONE
    pattern = wstring_from_chars(chars)

    in_sp = set(sp.elements)
    blocks = bytearray()
    for i in range(1, n_mp + 1):
        blocks.extend(b"0" * (t_block - 1) + b"1" if i in in_sp else b"0" * t_block)
    pad = b"0" * (m // 2)
    text = SolidString(bytes(pad + blocks + pad))

    return LowerBoundInstance(
        pattern, text, k, d_wild, ell, t_block,
        m_specials * (k // 2 + 1),
    )


def certify_instance(inst: LowerBoundInstance) -> Certificate:
    """Check the counted, progression-free, and differential properties."""
    from .driver import match_full

    report = naive_occurrences(inst.p, inst.t, inst.k)
    occs = report.occurrences
    if len(occs) < inst.expected_min_occs:
        raise CertificationFailed(
            f"oracle found {len(occs)} occurrences; expected at least "
            f"{inst.expected_min_occs}"
        )
    if not ap_free_check(occs):
        raise CertificationFailed("occurrence set contains a 3-term progression")
    algo = materialize(match_full(inst.p, inst.t, inst.k))
    if algo != occs:
        raise CertificationFailed("matcher disagrees with the oracle")
    return Certificate(
        occurrence_count=len(occs),
        expected_min_occs=inst.expected_min_occs,
        cover_lower_bound=(len(occs) + 1) // 2,
        ap_free=True,
        algorithm_agrees=True,
        d=inst.d,
        k=inst.k,
        pattern_len=len(inst.p),
        text_len=len(inst.t),
    )
