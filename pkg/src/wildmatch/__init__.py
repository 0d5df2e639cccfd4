"""Exact and k-mismatch matching of wildcard patterns in solid texts."""

from .context import MatchContext
from .driver import ChunkPlan, match_full, plan_chunks
from .exact import exact_occurrences_chunk, periodic_slide_exact
from .instrument import Counters
from .kmismatch import decompose, kmismatch_occurrences_chunk
from .occset import (
    ArithProgression,
    OccurrenceSet,
    empty_set,
    from_positions,
    materialize,
    normalize,
    union_shift,
)
from .oracle import ap_free_check, naive_occurrences, reduction_occurrences
from .periodic import fine_grained_occurrences, occs_periodic, relevant_fragment
from .pillar import PillarIndex, build_index, smallest_period
from .structure import (
    MisperiodCursor,
    kangaroo_verify,
    next_misperiod,
    occurrence_runs,
    sparsifier_fragment,
    unmarked_zeros,
)
from .lowerbound import build_instance, certify_instance, progression_free_set
from .wstring import (
    HASH,
    WILDCARD,
    Fragment,
    SolidString,
    WString,
    hamming_with_wildcards,
    parse_solid,
    parse_wstring,
    substitute_hash,
    to_bytes,
)

__version__ = "0.1.0"
