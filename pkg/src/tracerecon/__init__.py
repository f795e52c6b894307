"""Reconstruction of random binary strings from a few deletion-channel
traces, plus the matching information-theoretic hardness constructions."""

from .strings import (
    BitString,
    Interval,
    Matching,
    edit_distance,
    edit_distance_bounded,
    find_closest_subword,
    find_common_word,
    lcs_matching,
    random_bits,
)
from .channel import TraceRecord, apply_deletions, image_ceil, image_of, source_of, transmit
from .deserts import contains_long_desert, count_windows_with_long_desert, is_k_desert
from .params import (
    DESK_DEFAULTS,
    PAPER_DEFAULTS,
    ReconParams,
    RegimeReport,
    check_regime,
    derive_params,
    reduce_m_traces,
)
from .align import AlignDiagnostics, Configuration, align, consensus_check
from .bma import BmaDiagnostics, bma_run, bma_star, bma_with_provenance
from .reconstruct import ReconResult, reconstruct, reconstruct_with_fallback
from .lower_bound import (
    EmbeddingSpec,
    bayes_decide_atomic,
    build_alpha_beta,
    compose_traces,
    decode_prlp_bayes,
    embed_instance,
    exact_atomic_failure_prob,
    exact_atomic_failure_prob_frac,
    extract_z,
    find_pattern_occurrences,
    mc_atomic_failure_prob,
    mc_prlp_exact_match,
    sample_atomic,
    sample_prlp,
    simulate_aprlp,
)
from .harness import ExperimentConfig, TrialResult, emit_report, run_experiment
from .rng import stream

__version__ = "0.1.0"

__all__ = [
    "BitString",
    "Interval",
    "Matching",
    "edit_distance",
    "edit_distance_bounded",
    "find_closest_subword",
    "find_common_word",
    "lcs_matching",
    "random_bits",
    "TraceRecord",
    "apply_deletions",
    "transmit",
    "source_of",
    "image_of",
    "image_ceil",
    "is_k_desert",
    "contains_long_desert",
    "count_windows_with_long_desert",
    "DESK_DEFAULTS",
    "PAPER_DEFAULTS",
    "ReconParams",
    "RegimeReport",
    "derive_params",
    "check_regime",
    "reduce_m_traces",
    "Configuration",
    "AlignDiagnostics",
    "align",
    "consensus_check",
    "BmaDiagnostics",
    "bma_run",
    "bma_star",
    "bma_with_provenance",
    "ReconResult",
    "reconstruct",
    "reconstruct_with_fallback",
    "EmbeddingSpec",
    "build_alpha_beta",
    "sample_atomic",
    "bayes_decide_atomic",
    "exact_atomic_failure_prob",
    "exact_atomic_failure_prob_frac",
    "mc_atomic_failure_prob",
    "sample_prlp",
    "decode_prlp_bayes",
    "mc_prlp_exact_match",
    "find_pattern_occurrences",
    "embed_instance",
    "extract_z",
    "compose_traces",
    "simulate_aprlp",
    "ExperimentConfig",
    "TrialResult",
    "run_experiment",
    "emit_report",
    "stream",
    "__version__",
]
