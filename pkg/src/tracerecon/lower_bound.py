"""Hardness side: how well can any reconstructor do with few traces?

Three layers, each executable:

1. Atomic problem: distinguish D0 = Bin(M,1-d) x Bin(M+1,1-d) from its
   coordinate swap D1, given M sample pairs.  The optimal (Bayes) failure
   probability is computed exactly by enumeration for small M and estimated
   by Monte Carlo otherwise.
2. Paired run length problem (PRLP): B independent atomic instances, hidden
   vector z in {0,1}^B.  Product structure makes the coordinatewise Bayes
   decoder optimal for exact recovery, with Pr[z_hat = z] <= (1-p)^B.
3. Embedding: the marker words alpha = 0^M 1 0^(M+1) 11 and
   beta = 0^(M+1) 1 0^M 11 encode a PRLP instance inside a uniformly random
   string; composite traces built from PRLP samples are distributed exactly
   like deletion-channel traces of the embedded string, so any trace
   reconstructor induces a PRLP decoder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .strings import BitString, Interval, random_bits

__all__ = [
    "atomic_tables",
    "sample_atomic",
    "bayes_decide_atomic",
    "exact_atomic_failure_prob",
    "exact_atomic_failure_prob_frac",
    "mc_atomic_failure_prob",
    "sample_prlp",
    "decode_prlp_bayes",
    "mc_prlp_exact_match",
    "build_alpha_beta",
    "EmbeddingSpec",
    "find_pattern_occurrences",
    "embed_instance",
    "extract_z",
    "compose_traces",
    "simulate_aprlp",
]


def _binom_row(n: int, p: float, kmax: int) -> np.ndarray:
    """pmf of Bin(n, p) over k = 0..kmax (zero beyond the support)."""
    out = np.zeros(kmax + 1)
    for k in range(min(n, kmax) + 1):
        out[k] = math.comb(n, k) * p**k * (1.0 - p) ** (n - k)
    return out


@lru_cache(maxsize=64)
def atomic_tables(m_pairs: int, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """(p0, p1): pmf grids of shape (M+2, M+2) over the union support.

    p0[a, b] = Pr[Bin(M,1-d)=a] * Pr[Bin(M+1,1-d)=b]; p1 swaps the roles.
    Cells outside a distribution's support are exactly 0.
    """
    if m_pairs < 1:
        raise ValueError("M must be >= 1")
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must be in [0, 1]")
    p = 1.0 - delta
    kmax = m_pairs + 1
    row_m = _binom_row(m_pairs, p, kmax)
    row_m1 = _binom_row(m_pairs + 1, p, kmax)
    p0 = np.outer(row_m, row_m1)
    p1 = np.outer(row_m1, row_m)
    p0.setflags(write=False)
    p1.setflags(write=False)
    return p0, p1


def _validate_pairs(pairs: np.ndarray, m_pairs: int) -> None:
    # union of the two supports: [0:M]x[0:M+1] or [0:M+1]x[0:M]
    a, b = pairs[..., 0], pairs[..., 1]
    bad = (a < 0) | (b < 0) | (a > m_pairs + 1) | (b > m_pairs + 1) | ((a == m_pairs + 1) & (b == m_pairs + 1))
    if bad.any():
        raise ValueError("pair outside the union of the two supports")


def sample_atomic(
    b: int, m_pairs: int, delta: float, count: int, rng: np.random.Generator
) -> np.ndarray:
    """`count` independent pairs from D_b, as an int array of shape (count, 2)."""
    if b not in (0, 1):
        raise ValueError("b must be a bit")
    p = 1.0 - delta
    n1, n2 = (m_pairs, m_pairs + 1) if b == 0 else (m_pairs + 1, m_pairs)
    first = rng.binomial(n1, p, size=count)
    second = rng.binomial(n2, p, size=count)
    return np.stack([first, second], axis=1).astype(np.int64)


def bayes_decide_atomic(pairs: Sequence | np.ndarray, m_pairs: int, delta: float) -> int:
    """0 iff the product likelihood under D0 is >= the one under D1."""
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    _validate_pairs(arr, m_pairs)
    p0, p1 = atomic_tables(m_pairs, delta)
    with np.errstate(divide="ignore"):
        l0 = np.log(p0[arr[:, 0], arr[:, 1]]).sum()
        l1 = np.log(p1[arr[:, 0], arr[:, 1]]).sum()
    return 0 if l0 >= l1 else 1


def exact_atomic_failure_prob(m_pairs: int, delta: float) -> float:
    """Bayes failure probability, by enumerating the full M-fold outcome grid.

    p = (1/2) * sum over outcomes of min(P0, P1).  The grid has
    ((M+2)^2)^M cells, so the enumeration is capped at M = 4.
    """
    if not 1 <= m_pairs <= 4:
        raise ValueError("enumeration supports 1 <= M <= 4; use the Monte Carlo variant")
    p0, p1 = atomic_tables(m_pairs, delta)
    v0, v1 = p0.ravel(), p1.ravel()
    a0, a1 = v0.copy(), v1.copy()
    for _ in range(m_pairs - 1):
        a0 = np.multiply.outer(a0, v0).ravel()
        a1 = np.multiply.outer(a1, v1).ravel()
    return float(0.5 * np.minimum(a0, a1).sum())


def _binom_row_frac(n: int, p: Fraction, kmax: int) -> list[Fraction]:
    out = [Fraction(0)] * (kmax + 1)
    for k in range(min(n, kmax) + 1):
        out[k] = math.comb(n, k) * p**k * (1 - p) ** (n - k)
    return out


def exact_atomic_failure_prob_frac(m_pairs: int, delta: Fraction) -> Fraction:
    """Rational-arithmetic twin of exact_atomic_failure_prob, capped at M = 2."""
    if not 1 <= m_pairs <= 2:
        raise ValueError("rational enumeration supports 1 <= M <= 2")
    p = 1 - delta
    kmax = m_pairs + 1
    row_m = _binom_row_frac(m_pairs, p, kmax)
    row_m1 = _binom_row_frac(m_pairs + 1, p, kmax)
    v0 = [x * y for x in row_m for y in row_m1]
    v1 = [x * y for x in row_m1 for y in row_m]
    a0, a1 = list(v0), list(v1)
    for _ in range(m_pairs - 1):
        a0 = [x * y for x in a0 for y in v0]
        a1 = [x * y for x in a1 for y in v1]
    return Fraction(1, 2) * sum(min(x, y) for x, y in zip(a0, a1))


def mc_atomic_failure_prob(
    m_pairs: int, delta: float, trials: int, rng: np.random.Generator
) -> tuple[float, float]:
    """(estimate, standard error) of the Bayes failure probability.

    Stratified over the hidden bit (half the trials each way; the problem is
    symmetric under the coordinate swap, so this is unbiased).
    """
    if trials < 2:
        raise ValueError("need at least 2 trials")
    half = trials // 2
    p0, p1 = atomic_tables(m_pairs, delta)
    with np.errstate(divide="ignore"):
        l0 = np.log(p0.ravel())
        l1 = np.log(p1.ravel())
    width = m_pairs + 2
    errors = 0
    for b in (0, 1):
        p = 1.0 - delta
        n1, n2 = (m_pairs, m_pairs + 1) if b == 0 else (m_pairs + 1, m_pairs)
        first = rng.binomial(n1, p, size=(half, m_pairs))
        second = rng.binomial(n2, p, size=(half, m_pairs))
        idx = first * width + second
        s0 = l0[idx].sum(axis=1)
        s1 = l1[idx].sum(axis=1)
        decided = np.where(s0 >= s1, 0, 1)
        errors += int((decided != b).sum())
    total = 2 * half
    p_hat = errors / total
    return p_hat, math.sqrt(max(p_hat * (1.0 - p_hat), 1e-12) / total)


def sample_prlp(
    z: BitString, m_pairs: int, delta: float, rng: np.random.Generator
) -> np.ndarray:
    """M draws from D_z, as an int array of shape (M, B, 2); coordinate b of
    every draw follows D_{z_b}."""
    zb = z.array.astype(np.int64)
    b_len = zb.size
    p = 1.0 - delta
    n1 = np.broadcast_to(m_pairs + zb, (m_pairs, b_len))
    n2 = np.broadcast_to(m_pairs + 1 - zb, (m_pairs, b_len))
    first = rng.binomial(n1, p)
    second = rng.binomial(n2, p)
    return np.stack([first, second], axis=2).astype(np.int64)


def decode_prlp_bayes(samples: np.ndarray, m_pairs: int, delta: float) -> BitString:
    """Coordinatewise Bayes decoding: bit b from the M pairs at coordinate b."""
    s = np.asarray(samples, dtype=np.int64)
    if s.ndim != 3 or s.shape[0] != m_pairs or s.shape[2] != 2:
        raise ValueError("samples must have shape (M, B, 2)")
    _validate_pairs(s, m_pairs)
    p0, p1 = atomic_tables(m_pairs, delta)
    with np.errstate(divide="ignore"):
        l0 = np.log(p0.ravel())
        l1 = np.log(p1.ravel())
    width = m_pairs + 2
    idx = s[:, :, 0] * width + s[:, :, 1]
    s0 = l0[idx].sum(axis=0)
    s1 = l1[idx].sum(axis=0)
    return BitString((s0 < s1).astype(np.uint8))


def mc_prlp_exact_match(
    m_pairs: int, delta: float, b_len: int, trials: int, rng: np.random.Generator
) -> float:
    """Empirical Pr[z_hat = z] for the coordinatewise Bayes decoder, with z
    uniform per trial.  Vectorized across trials."""
    p0, p1 = atomic_tables(m_pairs, delta)
    with np.errstate(divide="ignore"):
        l0 = np.log(p0.ravel())
        l1 = np.log(p1.ravel())
    width = m_pairs + 2
    p = 1.0 - delta
    z = rng.integers(0, 2, size=(trials, b_len), dtype=np.int64)
    n1 = np.broadcast_to((m_pairs + z)[:, None, :], (trials, m_pairs, b_len))
    n2 = np.broadcast_to((m_pairs + 1 - z)[:, None, :], (trials, m_pairs, b_len))
    first = rng.binomial(n1, p)
    second = rng.binomial(n2, p)
    idx = first * width + second
    s0 = l0[idx].sum(axis=1)
    s1 = l1[idx].sum(axis=1)
    z_hat = (s0 < s1).astype(np.int64)
    return float((z_hat == z).all(axis=1).mean())


# --- embedding ---------------------------------------------------------


def build_alpha_beta(m_pairs: int) -> tuple[BitString, BitString]:
    """The two marker words 0^M 1 0^(M+1) 11 and 0^(M+1) 1 0^M 11."""
    if m_pairs < 1:
        raise ValueError("M must be >= 1")
    alpha = BitString("0" * m_pairs + "1" + "0" * (m_pairs + 1) + "11")
    beta = BitString("0" * (m_pairs + 1) + "1" + "0" * m_pairs + "11")
    return alpha, beta


@dataclass(frozen=True)
class EmbeddingSpec:
    M: int
    N: int
    B: int
    n: int
    alpha: BitString
    beta: BitString

    @classmethod
    def build(cls, m_pairs: int, b_len: int) -> "EmbeddingSpec":
        if b_len < 1:
            raise ValueError("B must be >= 1")
        alpha, beta = build_alpha_beta(m_pairs)
        n_word = 2 * m_pairs + 4
        return cls(
            M=m_pairs,
            N=n_word,
            B=b_len,
            n=n_word * 2**n_word * b_len,
            alpha=alpha,
            beta=beta,
        )


def find_pattern_occurrences(
    x: BitString, spec: EmbeddingSpec, limit: int | None = None
) -> list[Interval]:
    """Left-to-right scan for occurrences of alpha or beta, up to `limit`.

    Occurrences of the marker words can never overlap, so the greedy scan
    (jump past each hit) finds them all.  Cached find positions keep the
    scan linear even on marker-dense strings.
    """
    hay = x.tobytes()
    pat_a = spec.alpha.tobytes()
    pat_b = spec.beta.tobytes()
    occ: list[Interval] = []
    pos = 0
    next_a = hay.find(pat_a, pos)
    next_b = hay.find(pat_b, pos)
    while limit is None or len(occ) < limit:
        if next_a != -1 and next_a < pos:
            next_a = hay.find(pat_a, pos)
        if next_b != -1 and next_b < pos:
            next_b = hay.find(pat_b, pos)
        cands = [i for i in (next_a, next_b) if i != -1]
        if not cands:
            break
        i = min(cands)
        occ.append(Interval(i + 1, i + spec.N))
        pos = i + spec.N
    return occ


def embed_instance(z: BitString, x_prime: BitString, spec: EmbeddingSpec) -> BitString:
    """Rewrite the first min(B, #occurrences) marker occurrences of x_prime
    to spell out z (alpha for 0, beta for 1)."""
    if len(z) != spec.B:
        raise ValueError("z must have length B")
    occ = find_pattern_occurrences(x_prime, spec, limit=spec.B)
    arr = x_prime.array.copy()
    for k, iv in enumerate(occ):
        arr[iv.lo - 1 : iv.hi] = spec.beta.array if z.bit(k + 1) else spec.alpha.array
    return BitString(arr)


def extract_z(x_hat: BitString, spec: EmbeddingSpec, b_len: int) -> BitString:
    """Read bits back off the first min(B, #occurrences) marker occurrences."""
    occ = find_pattern_occurrences(x_hat, spec, limit=b_len)
    bits = [0 if x_hat.subword(iv.lo, iv.hi) == spec.alpha else 1 for iv in occ]
    return BitString(bits)


def _del_bits(bits: np.ndarray, delta: float, rng: np.random.Generator) -> np.ndarray:
    if bits.size == 0:
        return bits
    return bits[rng.random(bits.size) >= delta]


def compose_traces(
    samples: np.ndarray,
    x_prime: BitString,
    occs: list[Interval],
    spec: EmbeddingSpec,
    delta: float,
    rng: np.random.Generator,
) -> list[BitString]:
    """Assemble M traces distributed exactly as deletion-channel traces of
    the embedded string, without knowing z.

    The marker intervals contribute 0^(s_b1) Del(1) 0^(s_b2) Del(11) from
    the PRLP sample pairs (the pair IS the post-deletion run-length pair);
    everything between markers is deleted literally from x_prime, which the
    embedding leaves untouched.
    """
    s = np.asarray(samples, dtype=np.int64)
    m_count = s.shape[0]
    xarr = x_prime.array
    n = xarr.size
    b_prime = len(occs)
    one = np.ones(1, dtype=np.uint8)
    two = np.ones(2, dtype=np.uint8)
    traces: list[BitString] = []
    for m in range(m_count):
        head_end = occs[0].lo - 1 if b_prime else n
        parts = [_del_bits(xarr[:head_end], delta, rng)]
        for b in range(b_prime):
            s1, s2 = int(s[m, b, 0]), int(s[m, b, 1])
            parts.append(np.zeros(s1, dtype=np.uint8))
            parts.append(_del_bits(one, delta, rng))
            parts.append(np.zeros(s2, dtype=np.uint8))
            parts.append(_del_bits(two, delta, rng))
            gap_hi = occs[b + 1].lo - 1 if b + 1 < b_prime else n
            parts.append(_del_bits(xarr[occs[b].hi : gap_hi], delta, rng))
        traces.append(BitString(np.concatenate(parts)))
    return traces


def simulate_aprlp(
    samples: np.ndarray,
    reconstructor: Callable[[list[BitString]], BitString],
    delta: float,
    b_len: int,
    rng: np.random.Generator,
) -> BitString:
    """Turn a trace reconstructor into a PRLP decoder.

    Draws a fresh uniform carrier string, simulates M traces of the (never
    materialized) embedded string from the PRLP samples, reconstructs, and
    reads the decoded bits off the reconstruction's marker occurrences.
    The reconstructor receives the trace list; callers close over n and
    delta as needed.
    """
    s = np.asarray(samples, dtype=np.int64)
    if s.ndim != 3 or s.shape[2] != 2 or s.shape[1] != b_len:
        raise ValueError("samples must have shape (M, B, 2)")
    spec = EmbeddingSpec.build(s.shape[0], b_len)
    x_prime = random_bits(spec.n, rng)
    occs = find_pattern_occurrences(x_prime, spec, limit=b_len)
    traces = compose_traces(s, x_prime, occs, spec, delta, rng)
    x_hat = reconstructor(traces)
    return extract_z(x_hat, spec, b_len)
