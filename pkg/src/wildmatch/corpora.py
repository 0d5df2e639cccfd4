"""Instance generators shared by the randomized test suites, the selftest
subcommand, and the benchmark harness."""

from __future__ import annotations

import math
import random

from .wstring import WILDCARD, SolidString, WString, wstring_from_chars


def random_group_layout(rng: random.Random, m: int, g: int, d: int):
    """``g`` disjoint non-adjacent intervals with total length ``d``."""
    if g == 0 or d == 0:
        return ()
    assert g <= d and d + (g - 1) <= m
    cuts = sorted(rng.sample(range(1, d), g - 1)) if g > 1 else []
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [d])]
    slack = m - d - (g - 1)
    bars = sorted(rng.randint(0, slack) for _ in range(g))
    parts = [b - a for a, b in zip([0] + bars, bars + [slack])]
    groups = []
    pos = 0
    for i in range(g):
        pos += parts[i] + (1 if i > 0 else 0)
        groups.append((pos + 1, pos + sizes[i]))
        pos += sizes[i]
    return tuple(groups)


def random_solid(rng: random.Random, n: int, sigma: int) -> SolidString:
    return SolidString(bytes(rng.randrange(sigma) for _ in range(n)))


def random_wstring(rng: random.Random, m: int, sigma: int, g: int,
                   d: int) -> WString:
    chars = [rng.randrange(sigma) for _ in range(m)]
    for a, b in random_group_layout(rng, m, g, d):
        for i in range(a, b + 1):
            chars[i - 1] = WILDCARD
    return wstring_from_chars(chars)


def plant_copy(rng: random.Random, t: bytearray, p: WString, pos: int,
               sigma: int, errors: int = 0) -> None:
    """Write a realization of ``p`` (wildcards filled randomly, ``errors``
    extra flips) into the text buffer at 0-based offset ``pos``."""
    m = len(p)
    for i, c in enumerate(p.chars):
        t[pos + i] = rng.randrange(sigma) if c == WILDCARD else c
    for _ in range(errors):
        i = rng.randrange(m)
        if p.chars[i] != WILDCARD:
            t[pos + i] = rng.randrange(sigma)


def log_uniform(rng: random.Random, lo: int, hi: int) -> int:
    v = int(round(math.exp(rng.uniform(math.log(lo), math.log(hi)))))
    return min(hi, max(lo, v))


def suite_instance(rng: random.Random, k: int = 0, m_lo: int = 8,
                   m_hi: int = 512, d_cap_div: int = 4):
    """One random (pattern, text) pair for the differential suites.

    ``d_cap_div``: wildcards stay below m/d_cap_div. Occurrences are planted
    with probability roughly 0.7 so the suites exercise non-empty outputs.
    """
    m = log_uniform(rng, m_lo, m_hi)
    sigma = rng.choice((2, 4, 26))
    n = rng.randint(m, 4 * m)
    g = rng.randint(0, 8)
    d_cap = (m - 1) // d_cap_div
    if g > 0:
        d_cap = min(d_cap, m - g + 1 - 1)
    if g == 0 or d_cap < g:
        g, d = 0, 0
    else:
        d = rng.randint(g, d_cap)
    p = random_wstring(rng, m, sigma, g, d)
    buf = bytearray(bytes(random_solid(rng, n, sigma).chars))
    if rng.random() < 0.7 and n >= m:
        for _ in range(rng.randint(1, 3)):
            pos = rng.randrange(n - m + 1)
            plant_copy(rng, buf, p, pos, sigma, errors=rng.randint(0, k))
    return p, SolidString(bytes(buf))


def periodic_instance(rng: random.Random, k: int = 0, m_lo: int = 16,
                      m_hi: int = 512):
    """Near-periodic pattern and text with planted noise and copies."""
    m = log_uniform(rng, m_lo, m_hi)
    sigma = rng.choice((2, 4))
    q = rng.randint(1, 4)
    base = [rng.randrange(sigma) for _ in range(q)]
    chars = [base[i % q] for i in range(m)]
    for _ in range(rng.randint(0, max(1, k))):
        chars[rng.randrange(m)] = rng.randrange(sigma)
    g = rng.randint(0, 4)
    d_cap = min((m - 1) // 8, m - g)
    d = rng.randint(g, d_cap) if g and d_cap >= g else 0
    for a, b in random_group_layout(rng, m, g if d else 0, d):
        for i in range(a, b + 1):
            chars[i - 1] = WILDCARD
    p = wstring_from_chars(chars)
    n = rng.randint(m, 4 * m)
    buf = bytearray(base[i % q] for i in range(n))
    for _ in range(rng.randint(0, 2 * max(1, k))):
        buf[rng.randrange(n)] = rng.randrange(sigma)
    if rng.random() < 0.7:
        for _ in range(rng.randint(1, 3)):
            pos = rng.randrange(n - m + 1)
            plant_copy(rng, buf, p, pos, sigma, errors=rng.randint(0, k))
    return p, SolidString(bytes(buf))


def wildcard_block_instance(rng: random.Random, k: int = 0):
    """Patterns dominated by a few large wildcard blocks."""
    m = log_uniform(rng, 16, 512)
    sigma = rng.choice((2, 4, 26))
    g = rng.randint(1, 3)
    d = min((m - 1) // 5, max(g, (m // 6) * g))
    d = max(d, g)
    p = random_wstring(rng, m, sigma, g, d)
    n = rng.randint(m, 3 * m)
    buf = bytearray(bytes(random_solid(rng, n, sigma).chars))
    if rng.random() < 0.8:
        plant_copy(rng, buf, p, rng.randrange(n - m + 1), sigma,
                   errors=rng.randint(0, k))
    return p, SolidString(bytes(buf))


def sparsifier_edge_instance(rng: random.Random, k: int = 0):
    """Wildcards crowded at one end, total count near the m/4 boundary."""
    m = log_uniform(rng, 32, 512)
    sigma = rng.choice((2, 4))
    d = max(1, (m - 1) // 4 - rng.randint(0, 2))
    left = rng.random() < 0.5
    chars = [rng.randrange(sigma) for _ in range(m)]
    # singleton wildcards packed tightly at one end (alternating positions)
    positions = range(1, 2 * d, 2) if left else range(m, m - 2 * d, -2)
    for i in positions:
        chars[i - 1] = WILDCARD
    p = wstring_from_chars(chars)
    n = rng.randint(m, 3 * m)
    buf = bytearray(bytes(random_solid(rng, n, sigma).chars))
    if rng.random() < 0.8:
        plant_copy(rng, buf, p, rng.randrange(n - m + 1), sigma,
                   errors=rng.randint(0, k))
    return p, SolidString(bytes(buf))


def adversarial_instances(rng: random.Random, count: int, k: int = 0):
    makers = (periodic_instance, wildcard_block_instance,
              sparsifier_edge_instance)
    return [makers[i % 3](rng, k) for i in range(count)]


def region_instance(rng: random.Random, k: int = 2):
    """Pattern built from unit-period cores followed by mismatch bursts sized
    to hit the repetitive-region quota exactly. Requires m >= 512*k for the
    unit period to count as short."""
    m = 2048 if k <= 4 else 4096
    blen = m // (16 * k)

    def quota(length):
        return (32 * k * length + m - 1) // m

    chars = []
    total_regions = 0
    while total_regions * 8 < m + 8 * blen and len(chars) + blen <= m:
        chars.extend([97] * blen)
        i = 1
        while i != quota(blen + i):
            i += 1
        chars.extend([98] * i)
        total_regions += blen + i
    chars = chars[:m]
    chars.extend([97] * (m - len(chars)))
    p = wstring_from_chars(chars)
    n = 3 * m // 2
    buf = bytearray([97]) * n
    for _ in range(rng.randint(0, k)):
        buf[rng.randrange(n)] = rng.choice((98, 99))
    for _ in range(rng.randint(1, 2)):
        plant_copy(rng, buf, p, rng.randrange(n - m + 1), 3,
                   errors=rng.randint(0, k))
    return p, SolidString(bytes(buf))


def periodic_outcome_instance(rng: random.Random, k: int = 2, wild: int = 2):
    """Nearly uniform pattern with sparse noise and singleton wildcards;
    decomposes to the almost-periodic case."""
    m = 4096
    chars = [97] * m
    blen_bound = m // (16 * (wild + k))
    for _ in range(rng.randint(0, max(0, k - 1))):
        chars[rng.randrange(2 * blen_bound, m - 1)] = 98
    placed = 0
    while placed < wild:
        i = rng.randrange(2 * blen_bound, m - 2)
        if WILDCARD not in chars[max(0, i - 1) : i + 2]:
            chars[i] = WILDCARD
            placed += 1
    p = wstring_from_chars(chars)
    n = 3 * m // 2
    buf = bytearray([97]) * n
    for _ in range(rng.randint(0, 2 * k)):
        buf[rng.randrange(n)] = rng.choice((98, 99))
    plant_copy(rng, buf, p, rng.randrange(n - m + 1), 3,
               errors=rng.randint(0, k))
    return p, SolidString(bytes(buf))


def scaling_instance(rng: random.Random, n: int, q: int = 2):
    """Periodic-with-noise corpus for the scaling smoke test:
    m = n/2 and D = G = k = floor(n^(1/3)).

    The period must satisfy q <= m/(512*(D+k)) so the pattern lands in the
    periodic branch; q = 2 holds across the tested sizes.
    """
    c = int(round(n ** (1 / 3)))
    while c * c * c > n:
        c -= 1
    m = n // 2
    sigma = 4
    base = list(range(q)) if q > 1 else [0]
    chars = [base[i % q] for i in range(m)]
    for _ in range(max(1, c // 8)):
        chars[rng.randrange(m)] = rng.randrange(sigma)
    step = m // (c + 1)
    for i in range(1, c + 1):
        chars[i * step] = WILDCARD
    p = wstring_from_chars(chars)
    buf = bytearray(base[i % q] for i in range(n))
    for _ in range(max(1, c // 2)):
        buf[rng.randrange(n)] = rng.randrange(sigma)
    # Plant on the period grid so the copy does not shear the text's phase;
    # its wildcard fills give the corpus its wildcard-aligned mismatches.
    plant_copy(rng, buf, p, q * rng.randrange((n - m) // q), sigma)
    return p, SolidString(bytes(buf)), c
