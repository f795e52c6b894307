"""Deletion channel with full provenance.

A transmitted string keeps its deletion set and the induced source map, so
tests and diagnostics can ask "which source position did trace position q
come from" (:func:`source_of`) and "where does source position i land"
(:func:`image_ceil`).  Positions are 1-based everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .strings import BitString

__all__ = [
    "TraceRecord",
    "transmit",
    "apply_deletions",
    "source_of",
    "image_of",
    "image_ceil",
]


@dataclass(frozen=True, eq=False)
class TraceRecord:
    """One trace together with its deletion provenance.

    ``source_map[q-1]`` is the source index of trace position q; ``deleted``
    is the sorted tuple of deleted source positions.
    """

    source_len: int
    trace: BitString
    deleted: tuple[int, ...]
    source_map: np.ndarray

    def __post_init__(self) -> None:
        if len(self.trace) + len(self.deleted) != self.source_len:
            raise ValueError("trace length plus deletions must equal source length")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TraceRecord):
            return NotImplemented
        # source_map is determined by (source_len, deleted)
        return (
            self.source_len == other.source_len
            and self.trace == other.trace
            and self.deleted == other.deleted
        )

    def __hash__(self) -> int:
        return hash((self.source_len, self.trace, self.deleted))

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.source_len, "trace": str(self.trace), "deleted": list(self.deleted)}
        )

    @classmethod
    def from_json(cls, payload: str) -> "TraceRecord":
        obj = json.loads(payload)
        x_len = int(obj["n"])
        deleted = set(int(d) for d in obj["deleted"])
        keep = np.array([i for i in range(1, x_len + 1) if i not in deleted], dtype=np.int64)
        trace = BitString(obj["trace"])
        if keep.size != len(trace):
            raise ValueError("trace length inconsistent with deletion set")
        return cls(x_len, trace, tuple(sorted(deleted)), keep)


def apply_deletions(x: BitString, deletions: "set[int] | frozenset[int]") -> TraceRecord:
    """Delete the given 1-based source positions from ``x``."""
    n = len(x)
    for d in deletions:
        if not 1 <= d <= n:
            raise ValueError(f"deletion position {d} outside 1..{n}")
    keep = np.ones(n, dtype=bool)
    if deletions:
        keep[np.fromiter(deletions, dtype=np.int64) - 1] = False
    source_map = np.flatnonzero(keep).astype(np.int64) + 1
    trace = BitString(x.array[keep])
    return TraceRecord(n, trace, tuple(sorted(deletions)), source_map)


def transmit(x: BitString, delta: float, rng: np.random.Generator) -> TraceRecord:
    """Send ``x`` through the deletion channel: each bit is deleted
    independently with probability ``delta``.  One uniform draw per source
    bit, in index order, so a given generator state fixes the trace."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must be in [0, 1]")
    n = len(x)
    u = rng.random(n)
    keep = u >= delta
    source_map = np.flatnonzero(keep).astype(np.int64) + 1
    deleted = tuple((np.flatnonzero(~keep) + 1).tolist())
    return TraceRecord(n, BitString(x.array[keep]), deleted, source_map)


def source_of(record: TraceRecord, q: int) -> int:
    """Source index of trace position q.

    Positions past the end of the trace act as virtual padding and map to
    ``source_len + (q - len(trace))``, which keeps the map strictly
    increasing.
    """
    if q < 1:
        raise ValueError("trace position must be >= 1")
    m = len(record.trace)
    if q <= m:
        return int(record.source_map[q - 1])
    return record.source_len + (q - m)


def image_of(record: TraceRecord, i: int) -> int | None:
    """Trace position holding source bit i, or None if it was deleted."""
    if not 1 <= i <= record.source_len:
        raise ValueError(f"source position {i} outside 1..{record.source_len}")
    q = int(np.searchsorted(record.source_map, i, side="left"))
    if q < len(record.source_map) and record.source_map[q] == i:
        return q + 1
    return None


def image_ceil(record: TraceRecord, i: int) -> int:
    """Smallest trace position whose source index is >= i.

    Returns ``len(trace) + 1`` when every surviving bit comes from before i.
    Monotone non-decreasing in i.
    """
    if not 1 <= i <= record.source_len + 1:
        raise ValueError(f"source position {i} outside 1..{record.source_len + 1}")
    return int(np.searchsorted(record.source_map, i, side="left")) + 1
