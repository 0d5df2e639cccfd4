import json
import random

import pytest

from wildmatch.errors import ContextMismatch
from wildmatch.occset import (
    ArithProgression,
    OccurrenceSet,
    empty_set,
    from_json,
    from_positions,
    materialize,
    normalize,
    union_shift,
)


def test_progression_validation():
    with pytest.raises(ValueError):
        ArithProgression(1, 1, 0)
    with pytest.raises(ValueError):
        ArithProgression(1, 0, 2)
    assert list(ArithProgression(1, 3, 3).terms()) == [1, 4, 7]


def test_materialize_example():
    s = OccurrenceSet(3, (ArithProgression(1, 3, 3),), (5,), 20, 3, 0)
    assert materialize(s) == [1, 4, 5, 7]
    assert materialize(empty_set(10, 2, 0)) == []


def test_normalize_merges_adjacent_progressions():
    s = OccurrenceSet(
        3,
        (ArithProgression(1, 3, 2), ArithProgression(7, 3, 2)),
        (),
        20,
        3,
        0,
    )
    out = normalize(s)
    assert out.progressions == (ArithProgression(1, 3, 4),)
    assert materialize(out) == materialize(s)


def test_normalize_drops_covered_extras():
    s = OccurrenceSet(3, (ArithProgression(1, 3, 3),), (4,), 20, 3, 0)
    out = normalize(s)
    assert out.extras == ()
    assert materialize(out) == [1, 4, 7]


def test_union_shift_examples():
    a = from_positions([1], 5, 2, 0)
    b = from_positions([1], 5, 2, 0)
    u = union_shift([a, b], [0, 10], text_len=15)
    assert materialize(u) == [1, 11]
    dup = union_shift([a, a], [0, 0], text_len=5)
    assert materialize(dup) == [1]


def test_union_shift_context_mismatch():
    a = from_positions([1], 5, 2, 0)
    b = from_positions([1], 5, 3, 0)
    with pytest.raises(ContextMismatch):
        union_shift([a, b], [0, 0], text_len=5)


def _random_set(rng, plen=None):
    q = rng.randint(1, 4)
    text_len = rng.randint(20, 60)
    if plen is None:
        plen = rng.randint(1, 5)
    cap = text_len - plen + 1
    progs = []
    for _ in range(rng.randint(0, 4)):
        start = rng.randint(1, cap)
        count = rng.randint(1, 1 + (cap - start) // q)
        progs.append(ArithProgression(start, q, count))
    extras = tuple(sorted({rng.randint(1, cap) for _ in range(rng.randint(0, 5))}))
    return OccurrenceSet(q, tuple(progs), extras, text_len, plen, 0)


def test_normalize_preserves_materialization_random():
    rng = random.Random(5)
    for _ in range(400):
        s = _random_set(rng)
        out = normalize(s)
        out.validate()
        assert materialize(out) == materialize(s)


def test_union_shift_matches_set_union_random():
    rng = random.Random(6)
    for _ in range(200):
        q = rng.randint(1, 4)
        plen = rng.randint(1, 5)
        sets, offsets, expected = [], [], set()
        for j in range(rng.randint(1, 4)):
            s = _random_set(rng, plen)
            off = 15 * j
            sets.append(s)
            offsets.append(off)
            expected.update(p + off for p in materialize(s))
        u = union_shift(sets, offsets)
        u.validate()
        assert materialize(u) == sorted(expected)


def test_json_shape_and_roundtrip():
    s = OccurrenceSet(3, (ArithProgression(1, 3, 3),), (5,), 20, 3, 1)
    payload = s.to_json()
    assert set(payload) == {"q", "progressions", "extras", "count"}
    assert payload["count"] == 4
    assert json.loads(json.dumps(payload)) == payload
    back = from_json(payload, 20, 3, 1)
    assert materialize(back) == materialize(s)


def test_tsv_output():
    s = OccurrenceSet(3, (ArithProgression(1, 3, 2),), (9,), 20, 3, 0)
    assert s.to_tsv() == "1\n4\n9\n"
