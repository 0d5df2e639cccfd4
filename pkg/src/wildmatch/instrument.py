"""Work counters collected while matching; used by tests and the bench CLI."""

from __future__ import annotations

from dataclasses import dataclass, field, fields


@dataclass
class Counters:
    kangaroo_calls: int = 0
    kangaroo_lce_calls: int = 0
    case1_verifications: int = 0
    extension_total_len: int = 0
    candidate_count: int = 0
    event_count: int = 0
    chunk_records: list = field(default_factory=list)

    def add(self, other: "Counters") -> None:
        for f in fields(self):
            if f.name == "chunk_records":
                continue
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def snapshot(self) -> dict:
        return {
            f.name: getattr(self, f.name)
            for f in fields(self)
            if f.name != "chunk_records"
        }
