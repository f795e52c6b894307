"""Binary strings and subsequence-based distance primitives.

Everything downstream (channel records, alignment, reconstruction) works on
immutable binary strings with the 1-based indexing convention used throughout
the package: ``x[1]`` is the first bit and subwords are closed intervals
``x[i : j]``.  Strings are stored as one byte per bit so that exact substring
search runs at C speed via ``bytes.find``; that search underpins the candidate
prefilter in :func:`find_closest_subword`.

The distance here is edit distance with insertions and deletions only
(no substitutions): ``d(a, b) = |a| + |b| - 2 * lcs(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "BitString",
    "Interval",
    "Matching",
    "random_bits",
    "edit_distance",
    "edit_distance_bounded",
    "lcs_matching",
    "find_closest_subword",
    "find_common_word",
]

_INF = np.int32(2**30)


class BitString:
    """Immutable sequence of bits with 1-based accessors."""

    __slots__ = ("_data", "_bytes")

    def __init__(self, bits: "str | bytes | Iterable[int] | np.ndarray" = ()):
        if isinstance(bits, BitString):
            self._data = bits._data
            self._bytes = bits._bytes
            return
        if isinstance(bits, str):
            arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        elif isinstance(bits, (bytes, bytearray)):
            arr = np.frombuffer(bytes(bits), dtype=np.uint8)
        elif isinstance(bits, np.ndarray):
            arr = bits.astype(np.uint8, copy=True)
        else:
            arr = np.fromiter(bits, dtype=np.uint8)
        if arr.size and (arr.max(initial=0) > 1):
            raise ValueError("bits must be 0 or 1")
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        arr.setflags(write=False)
        self._data = arr
        self._bytes: bytes | None = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "BitString":
        out = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        arr.setflags(write=False)
        out._data = arr
        out._bytes = None
        return out

    @property
    def array(self) -> np.ndarray:
        """Read-only uint8 view with values in {0, 1}."""
        return self._data

    def tobytes(self) -> bytes:
        if self._bytes is None:
            self._bytes = self._data.tobytes()
        return self._bytes

    def __len__(self) -> int:
        return int(self._data.size)

    def bit(self, i: int) -> int:
        """Bit at 1-based position ``i``."""
        if not 1 <= i <= self._data.size:
            raise IndexError(f"position {i} out of range 1..{self._data.size}")
        return int(self._data[i - 1])

    def subword(self, i: int, j: int) -> "BitString":
        """Subword at the closed 1-based interval ``[i : j]``; empty if j < i."""
        if i < 1 or j > self._data.size:
            raise IndexError(f"[{i}:{j}] out of range for length {self._data.size}")
        if j < i:
            return BitString._wrap(np.empty(0, dtype=np.uint8))
        return BitString._wrap(self._data[i - 1 : j])

    def concat(self, other: "BitString") -> "BitString":
        return BitString._wrap(np.concatenate([self._data, other._data]))

    def find(self, sub: "BitString", start: int = 1, end: int | None = None) -> int | None:
        """Leftmost 1-based start of ``sub`` inside ``self[start : end]``, or None."""
        hi = self._data.size if end is None else end
        pos = self.tobytes().find(sub.tobytes(), start - 1, hi)
        return None if pos < 0 else pos + 1

    def __iter__(self) -> Iterator[int]:
        return iter(int(b) for b in self._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self.tobytes() == other.tobytes()

    def __hash__(self) -> int:
        return hash(self.tobytes())

    def __str__(self) -> str:
        return (self._data + ord("0")).tobytes().decode("ascii")

    def __repr__(self) -> str:
        s = str(self)
        if len(s) > 64:
            s = s[:61] + "..."
        return f"BitString({s!r}, len={len(self)})"


def random_bits(n: int, rng: np.random.Generator) -> BitString:
    """Uniformly random bit string of length ``n``."""
    return BitString._wrap(rng.integers(0, 2, size=n, dtype=np.uint8))


@dataclass(frozen=True)
class Interval:
    """Closed 1-based index interval ``[lo : hi]``."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 1 or self.hi < self.lo:
            raise ValueError(f"invalid interval [{self.lo}:{self.hi}]")

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class Matching:
    """Non-crossing index pairs witnessing a common subsequence of two strings."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)


# ---------------------------------------------------------------------------
# Banded dynamic programming.
#
# Cells (i, j) hold the insert/delete distance between a[1:i] and b[1:j].
# A band restricted to j - i in [dlo, dhi] is exact for any target cell whose
# true distance fits inside the band: an optimal path to a cell of cost c only
# visits cells with |j - i| <= c.  A "substitution" move costing 2 keeps the
# banded recurrence closed without leaving the band.
# ---------------------------------------------------------------------------


def _banded_final_row(a: np.ndarray, bmat: np.ndarray, dlo: int, dhi: int) -> np.ndarray:
    """Final DP row for one template against many haystack windows.

    ``a`` is the template (length t).  ``bmat`` has one row per candidate
    window, padded on the right with a sentinel value outside {0, 1}.  Returns
    an int32 array of shape (k, dhi - dlo + 1) whose column c is the distance
    between ``a`` and the window prefix of length ``t + dlo + c`` (large values
    mean "greater than the band certifies").
    """
    t = a.size
    k = bmat.shape[0]
    width = dhi - dlo + 1
    pad_left = max(0, -dlo) + 1
    bp = np.full((k, pad_left + bmat.shape[1] + dhi + 1), 2, dtype=np.uint8)
    bp[:, pad_left : pad_left + bmat.shape[1]] = bmat

    offs = np.arange(width, dtype=np.int32)
    js0 = dlo + offs  # j values at row 0
    row = np.where(js0 >= 0, js0, _INF).astype(np.int32)
    row = np.broadcast_to(row, (k, width)).copy()

    up = np.empty_like(row)
    for i in range(1, t + 1):
        ai = a[i - 1]
        # column c corresponds to j = i + dlo + c
        cols = pad_left + i + dlo - 1
        bslice = bp[:, cols : cols + width]
        up[:, :-1] = row[:, 1:]
        up[:, -1] = _INF
        diag_cost = np.where(bslice == ai, 0, 2).astype(np.int32)
        cand = np.minimum(up + 1, row + diag_cost)
        js = i + dlo + offs
        cand[:, js < 0] = _INF
        # resolve the in-row "insert" dependency with a prefix-min scan
        cand -= offs
        np.minimum.accumulate(cand, axis=1, out=cand)
        cand += offs
        row = cand
    return row


def _edit_distance_banded(a: np.ndarray, b: np.ndarray, slack: int) -> int:
    """Distance certified up to ``|len(b)-len(a)| + 2*slack``; larger means fail."""
    if a.size > b.size:
        a, b = b, a
    dlo, dhi = -slack, (b.size - a.size) + slack
    final = _banded_final_row(a, b[np.newaxis, :], dlo, dhi)
    c = b.size - a.size - dlo
    return int(final[0, c])


def _edit_distance_small(a: np.ndarray, b: np.ndarray) -> int:
    # two-row scalar DP, faster than numpy for tiny inputs
    if a.size > b.size:
        a, b = b, a
    la, lb = a.size, b.size
    if la == 0:
        return lb
    av = a.tolist()
    bv = b.tolist()
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        ai = av[i - 1]
        cur = [i] + [0] * lb
        cp = cur
        pp = prev
        for j in range(1, lb + 1):
            if ai == bv[j - 1]:
                cp[j] = pp[j - 1]
            else:
                u = pp[j] + 1
                l = cp[j - 1] + 1
                cp[j] = u if u < l else l
        prev = cur
    return prev[lb]


def edit_distance(a: BitString, b: BitString) -> int:
    """Insert/delete edit distance between two bit strings.

    Runs a banded computation with doubling band width, so the cost is
    O(max(|a|, |b|) * d) for true distance d rather than quadratic.
    """
    aa, bb = a.array, b.array
    if aa.size == 0 or bb.size == 0:
        return aa.size + bb.size
    if a.tobytes() == b.tobytes():
        return 0
    if aa.size * bb.size <= 1024:
        return _edit_distance_small(aa, bb)
    slack = 1
    limit = aa.size + bb.size
    while True:
        bound = abs(aa.size - bb.size) + 2 * slack
        d = _edit_distance_banded(aa, bb, slack)
        if d <= bound:
            return d
        if bound >= limit:  # full band reached, value is exact
            return d
        slack *= 2


def edit_distance_bounded(a: BitString, b: BitString, cap: int) -> int | None:
    """Edit distance if it is <= cap, else None (single banded pass)."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    aa, bb = a.array, b.array
    base = abs(aa.size - bb.size)
    if base > cap:
        return None
    if aa.size == 0 or bb.size == 0:
        return aa.size + bb.size
    if a.tobytes() == b.tobytes():
        return 0
    slack = max(1, (cap - base + 1) // 2 + 1)
    d = _edit_distance_banded(aa, bb, slack)
    return d if d <= cap else None


def _lcs_suffix_table(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Table L[i, j] = lcs(a[i:], b[j:]) for 0-based suffix starts."""
    la, lb = a.size, b.size
    if la * lb > 100_000_000:
        raise ValueError("inputs too large for the quadratic matching table")
    table = np.zeros((la + 1, lb + 1), dtype=np.int32)
    for i in range(la - 1, -1, -1):
        match = b == a[i]
        cand = np.where(match, table[i + 1, 1:] + 1, table[i + 1, :-1])
        table[i, :-1] = np.maximum.accumulate(cand[::-1])[::-1]
    return table


def lcs_matching(a: BitString, b: BitString) -> Matching:
    """A maximum matching between ``a`` and ``b`` (1-based, non-crossing).

    Deterministic: among all maximum matchings, returns the one whose pair
    sequence is lexicographically smallest, built by a greedy forward walk
    over the suffix LCS table.
    """
    aa, bb = a.array, b.array
    table = _lcs_suffix_table(aa, bb)
    pairs: list[tuple[int, int]] = []
    i = j = 0
    la, lb = aa.size, bb.size
    while i < la and j < lb and table[i, j] > 0:
        # match row i at the earliest column that still completes a maximum
        # matching; only if no column works may the row be skipped
        target = table[i, j]
        jj = j
        matched = False
        while jj < lb and table[i, jj] == target:
            if aa[i] == bb[jj] and table[i + 1, jj + 1] + 1 == target:
                pairs.append((i + 1, jj + 1))
                i += 1
                j = jj + 1
                matched = True
                break
            jj += 1
        if not matched:
            i += 1
    return Matching(tuple(pairs))


# ---------------------------------------------------------------------------
# Windowed approximate search.
# ---------------------------------------------------------------------------


def _prefilter_starts(
    template: np.ndarray,
    hay: bytes,
    search: Interval,
    max_dist: int,
    min_len: int,
) -> np.ndarray | None:
    """Candidate window starts via exact-piece matching, or None to scan all.

    Splitting the template into ``max_dist + 1`` contiguous pieces, any window
    within distance ``max_dist`` must contain at least one piece verbatim
    (each edit touches at most one piece), displaced by at most ``max_dist``
    from its template offset.  Exact piece occurrences are found with
    ``bytes.find``, so this prunes long searches to a handful of candidates
    without ever discarding a true match.
    """
    t = template.size
    pieces = max_dist + 1
    if t // pieces < 12:
        return None
    lo0, hi0 = search.lo - 1, search.hi - 1  # 0-based haystack span
    if (hi0 - lo0 + 1) <= 4 * t:
        return None
    starts: set[int] = set()
    first_start = lo0
    last_start = hi0 - min_len + 1
    bounds = np.linspace(0, t, pieces + 1).astype(int)
    tb = template.tobytes()
    for pi in range(pieces):
        a_off, b_off = int(bounds[pi]), int(bounds[pi + 1])
        piece = tb[a_off:b_off]
        pos = hay.find(piece, lo0, hi0 + 1)
        while pos != -1:
            anchor = pos - a_off
            for q in range(anchor - max_dist, anchor + max_dist + 1):
                if first_start <= q <= last_start:
                    starts.add(q)
            pos = hay.find(piece, pos + 1, hi0 + 1)
    return np.array(sorted(starts), dtype=np.int64)


def find_closest_subword(
    template: BitString,
    haystack: BitString,
    search: Interval,
    max_dist: int,
) -> Interval | None:
    """First subword interval of ``haystack`` within ``search`` whose edit
    distance to ``template`` is at most ``max_dist``.

    Deterministic scan order: candidate start ascending, then candidate length
    ascending over ``[|template| - max_dist : |template| + max_dist]``.
    Returns None when no candidate qualifies.
    """
    if max_dist < 0:
        raise ValueError("max_dist must be >= 0")
    n = len(haystack)
    if not (1 <= search.lo and search.hi <= n):
        raise ValueError(f"search interval [{search.lo}:{search.hi}] not inside haystack")
    t = len(template)
    if t == 0:
        raise ValueError("template must be non-empty")
    hay_b = haystack.tobytes()

    if max_dist == 0:
        pos = hay_b.find(template.tobytes(), search.lo - 1, search.hi)
        if pos == -1 or pos + t - 1 > search.hi - 1:
            return None
        return Interval(pos + 1, pos + t)

    min_len = max(1, t - max_dist)
    max_len = t + max_dist
    last_start0 = (search.hi - 1) - min_len + 1
    if last_start0 < search.lo - 1:
        return None

    cand = _prefilter_starts(template.array, hay_b, search, max_dist, min_len)
    if cand is None:
        cand = np.arange(search.lo - 1, last_start0 + 1, dtype=np.int64)
    if cand.size == 0:
        return None

    arr = haystack.array
    ta = template.array
    dlo, dhi = -max_dist, max_dist
    width = dhi - dlo + 1
    lens = t + dlo + np.arange(width)  # candidate lengths per column
    block = 2048
    for base in range(0, cand.size, block):
        qs = cand[base : base + block]
        span = np.arange(max_len)
        idx = qs[:, None] + span[None, :]
        ok = idx <= (search.hi - 1)
        bmat = np.where(ok, arr[np.minimum(idx, n - 1)], 2).astype(np.uint8)
        final = _banded_final_row(ta, bmat, dlo, dhi)
        allowed = (search.hi - 1) - qs + 1  # max window length per start
        length_ok = (lens[None, :] >= 1) & (lens[None, :] <= allowed[:, None])
        hit = (final <= max_dist) & length_ok
        rows = hit.any(axis=1)
        if rows.any():
            r = int(np.argmax(rows))
            c = int(np.argmax(hit[r]))
            q0 = int(qs[r])
            ln = int(lens[c])
            return Interval(q0 + 1, q0 + ln)
    return None


def find_common_word(
    windows: Sequence[BitString],
    word_len: int,
    threshold: int,
) -> tuple[BitString, list[int | None]] | None:
    """First word of length ``word_len`` contained in at least ``threshold``
    of the windows, with the leftmost 1-based start in each containing window.

    Candidates are enumerated from the subwords of ``windows[0]`` by ascending
    start, then ``windows[1]``, and so on; the first qualifying candidate wins.
    """
    if word_len < 1:
        raise ValueError("word_len must be >= 1")
    if not 1 <= threshold <= len(windows):
        raise ValueError("threshold must be in 1..len(windows)")
    wbytes = [w.tobytes() for w in windows]
    seen: set[bytes] = set()
    for src in wbytes:
        for s in range(0, len(src) - word_len + 1):
            cand = src[s : s + word_len]
            if cand in seen:
                continue
            seen.add(cand)
            starts: list[int | None] = []
            count = 0
            for wb in wbytes:
                pos = wb.find(cand)
                if pos >= 0:
                    starts.append(pos + 1)
                    count += 1
                else:
                    starts.append(None)
            if count >= threshold:
                return BitString(np.frombuffer(cand, dtype=np.uint8)), starts
    return None
