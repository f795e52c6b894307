"""Parameter derivation and regime classification.

All the window sizes the aligner and the majority voter use come from one
entropy-like quantity H = (M/K) * log2(1/(delta*M)).  The derivations here
are pure formula evaluation; the interesting policy choice is the pair of
constants (K, tau).  The analysis wants them "sufficiently large" (tau = 500
in the stated form), which voids every loop below astronomically large n, so
we keep two profiles:

  paper: K=2, tau=500, and callers are expected to reject out-of-regime runs
  desk:  K=2, tau=8, windows clamped where needed so n ~ 2**17 is exercisable

Logs are base 2 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ReconParams",
    "RegimeReport",
    "derive_params",
    "check_regime",
    "reduce_m_traces",
    "DESK_DEFAULTS",
    "PAPER_DEFAULTS",
]

DESK_DEFAULTS = {"k_const": 2.0, "tau": 8.0, "gamma": 0.01}
PAPER_DEFAULTS = {"k_const": 2.0, "tau": 500.0, "gamma": 0.01}


@dataclass(frozen=True)
class ReconParams:
    n: int
    delta: float
    m_traces: int
    k_const: float
    tau: float
    gamma: float
    mode: str
    H: float
    t_ladder: tuple[int, ...]
    S: int
    L: int
    G: int
    R: int
    # quality target 2^(-0.01 H) * n, reported alongside measured distances
    target_distance: float

    @property
    def t1(self) -> int:
        return self.t_ladder[0]

    @property
    def tS(self) -> int:
        return self.t_ladder[-1]


@dataclass(frozen=True)
class RegimeReport:
    delta_below_inv_n2: bool
    M_below_K2: bool
    M_above_inv_Kdelta: bool
    target_distance_below_one: bool
    recommended_action: str  # run_full | output_single_trace | reduce_M


def derive_params(
    n: int,
    delta: float,
    m_traces: int,
    *,
    k_const: float | None = None,
    tau: float | None = None,
    gamma: float = 0.01,
    mode: str = "desk",
) -> ReconParams:
    if mode not in ("desk", "paper"):
        raise ValueError(f"unknown mode {mode!r}")
    defaults = DESK_DEFAULTS if mode == "desk" else PAPER_DEFAULTS
    K = float(defaults["k_const"] if k_const is None else k_const)
    tau_v = float(defaults["tau"] if tau is None else tau)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must be in (0, 1)")
    if m_traces < 1:
        raise ValueError("need at least one trace")
    if delta * m_traces >= 1.0:
        raise ValueError("delta * M must be < 1 for H to be positive")
    if K <= 0 or tau_v <= 0 or gamma <= 0:
        raise ValueError("K, tau, gamma must be positive")

    H = (m_traces / K) * math.log2(1.0 / (delta * m_traces))
    Hc = math.ceil(H)
    t1 = 2 * Hc + 1
    goal = tau_v * math.log2(n) if n > 1 else tau_v
    ladder = [t1]
    while ladder[-1] < goal:
        ladder.append(3 * ladder[-1])
    L = 8 * Hc
    G = L // 2
    R = math.ceil(L * 2.0 ** (0.01 * L))
    return ReconParams(
        n=n,
        delta=delta,
        m_traces=m_traces,
        k_const=K,
        tau=tau_v,
        gamma=gamma,
        mode=mode,
        H=H,
        t_ladder=tuple(ladder),
        S=len(ladder),
        L=L,
        G=G,
        R=R,
        target_distance=2.0 ** (-0.01 * H) * n,
    )


def check_regime(n: int, delta: float, m_traces: int, k_const: float) -> RegimeReport:
    """Classify (n, delta, M, K) against the operating-regime inequalities.

    run_full requires all of: 1/n^2 <= delta < 1/(K*M), K^2 <= M <= 1/(K*delta),
    and (delta*M)^(M/K) >= 1/n^2.  Below the first two cuts a single trace is
    already within target; past the last cut fewer traces do better.
    """
    K = float(k_const)
    inv_n2 = 1.0 / (n * n)
    delta_below = delta < inv_n2
    m_below = m_traces < K * K
    m_above = m_traces > 1.0 / (K * delta) if delta > 0 else False
    # (delta*M)^(M/K) < 1/n^2, compared in log2 space
    if delta > 0:
        target_below = (m_traces / K) * math.log2(delta * m_traces) < -2.0 * math.log2(n)
    else:
        target_below = False

    if delta_below or m_below:
        action = "output_single_trace"
    elif target_below or not delta < 1.0 / (K * m_traces):
        action = "reduce_M"
    else:
        action = "run_full"
    return RegimeReport(
        delta_below_inv_n2=delta_below,
        M_below_K2=m_below,
        M_above_inv_Kdelta=m_above,
        target_distance_below_one=target_below,
        recommended_action=action,
    )


def reduce_m_traces(n: int, delta: float, m_traces: int, k_const: float) -> int | None:
    """Largest M' <= M that puts (n, delta, M', K) back in the full regime.

    Scans downward; requires (delta*M')^(M'/K) >= 1/n^2 together with
    delta < 1/(K*M') and M' >= K^2 so the reduced run does not bounce
    straight back here.  None when no such M' exists.
    """
    K = float(k_const)
    lo = math.ceil(K * K)
    for m in range(m_traces, lo - 1, -1):
        if delta * m >= 1.0:
            continue
        if not delta < 1.0 / (K * m):
            continue
        if (m / K) * math.log2(delta * m) >= -2.0 * math.log2(n):
            return m
    return None
