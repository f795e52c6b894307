"""Seeded experiment runner.

A config names an experiment kind, a grid of parameter points, and a trial
count; the runner executes every (point, trial) cell on its own random
stream keyed by (master seed, grid index, trial index), so reports are
reproducible bit for bit regardless of worker count or scheduling.  Trial
failures become error-tagged rows instead of aborting the sweep.

Reports: CSV with one row per metric (fixed columns
kind,n,delta,m_traces,k_const,tau,seed,trial,metric,value; gamma, the mode
flag, and any kind-specific knobs travel as metric rows since the column
set is fixed), or JSONL with one trial per line.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .align import align, consensus_check
from .bma import bma_run
from .channel import source_of, transmit
from .deserts import contains_long_desert
from .lower_bound import (
    exact_atomic_failure_prob,
    mc_atomic_failure_prob,
    mc_prlp_exact_match,
    sample_prlp,
    simulate_aprlp,
)
from .params import DESK_DEFAULTS, PAPER_DEFAULTS, derive_params
from .reconstruct import reconstruct_with_fallback
from .rng import stream
from .strings import BitString, edit_distance, edit_distance_bounded, random_bits

__all__ = [
    "ExperimentConfig",
    "TrialResult",
    "run_experiment",
    "emit_report",
    "parse_jsonl",
    "KINDS",
]

CSV_COLUMNS = ("kind", "n", "delta", "m_traces", "k_const", "tau", "seed", "trial", "metric", "value")

_REGIME_CODES = {"run_full": 0, "output_single_trace": 1, "reduce_M": 2}


@dataclass(frozen=True)
class TrialResult:
    kind: str
    point: dict
    seed: int
    trial: int
    metrics: dict
    error: str | None = None


@dataclass
class ExperimentConfig:
    kind: str
    grid: list[dict]
    trials: int = 1
    seed: int = 0
    mode: str = "desk"
    out: str | None = None
    format: str = "csv"
    workers: int = 1

    @classmethod
    def from_json(cls, payload: str) -> "ExperimentConfig":
        obj = json.loads(payload)
        known = {f for f in cls.__dataclass_fields__}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown config fields: {sorted(extra)}")
        return cls(**obj)

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; have {sorted(KINDS)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mode not in ("desk", "paper"):
            raise ValueError("mode must be desk or paper")
        if self.format not in ("csv", "jsonl"):
            raise ValueError("format must be csv or jsonl")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not self.grid:
            raise ValueError("grid must contain at least one point")
        defaults = DESK_DEFAULTS if self.mode == "desk" else PAPER_DEFAULTS
        for point in self.grid:
            point.setdefault("k_const", defaults["k_const"])
            point.setdefault("tau", defaults["tau"])
            point.setdefault("gamma", defaults["gamma"])
            KINDS[self.kind].validate(point, self.mode)


def _require(point: dict, *names: str) -> None:
    missing = [k for k in names if k not in point]
    if missing:
        raise ValueError(f"grid point missing {missing}: {point}")


# --- kind runners -------------------------------------------------------
# Each runner gets (point, rng, mode) and returns a metrics dict; values
# must be plain floats.  Key order is fixed per kind so reports are stable.


def _run_channel_stats(point: dict, rng: np.random.Generator, mode: str) -> dict:
    x = random_bits(point["n"], rng)
    rec = transmit(x, point["delta"], rng)
    roundtrip = np.array_equal(x.array[rec.source_map - 1], rec.trace.array)
    return {
        "trace_len": float(len(rec.trace)),
        "deleted_count": float(len(rec.deleted)),
        "roundtrip_ok": float(roundtrip),
    }


def _validate_channel_stats(point: dict, mode: str) -> None:
    _require(point, "n", "delta")
    if point["n"] < 1 or not 0.0 <= point["delta"] <= 1.0:
        raise ValueError(f"bad channel point {point}")


def _run_bma_bench(point: dict, rng: np.random.Generator, mode: str) -> dict:
    r_rounds = point["n"]
    L = point.get("l_desert", 40)
    G = point.get("g_desert", L // 2)
    m_count = point["m_traces"]
    resamples = 0
    while True:
        word = random_bits(r_rounds, rng)
        if not contains_long_desert(word, L, G):
            break
        resamples += 1
        if resamples > 1000:
            raise RuntimeError("could not draw a desert-free word")
    traces = [transmit(word, point["delta"], rng).trace for _ in range(m_count)]
    out, _, diags = bma_run(traces, [1] * m_count, r_rounds)
    return {
        "bma_success": float(out == word),
        "margin_min": float(min(diags.margins)),
        "resamples": float(resamples),
    }


def _validate_bma_bench(point: dict, mode: str) -> None:
    _require(point, "n", "delta", "m_traces")
    L = point.get("l_desert", 40)
    G = point.get("g_desert", L // 2)
    if not 1 <= G <= L <= point["n"]:
        raise ValueError(f"bad desert window in {point}")
    if not 0.0 <= point["delta"] < 1.0 or point["m_traces"] < 1:
        raise ValueError(f"bad bma point {point}")


def _params_from_point(point: dict, mode: str):
    return derive_params(
        point["n"],
        point["delta"],
        point["m_traces"],
        k_const=point["k_const"],
        tau=point["tau"],
        gamma=point["gamma"],
        mode=mode,
    )


def _run_align_bench(point: dict, rng: np.random.Generator, mode: str) -> dict:
    params = _params_from_point(point, mode)
    x = random_bits(params.n, rng)
    records = [transmit(x, params.delta, rng) for _ in range(params.m_traces)]
    y_star = records[0]
    margin = math.ceil(5 * params.tau * math.log2(params.n))
    lo, hi = margin, len(y_star.trace) - margin
    if lo > hi:
        raise RuntimeError("no valid reference cursor at this n and tau")
    ell_star = int(rng.integers(lo, hi + 1))
    config, diags = align(params, ell_star, y_star.trace, [r.trace for r in records])
    threshold = math.ceil(0.9 * params.m_traces)
    consensus, location = consensus_check(config, records, threshold)
    src = source_of(y_star, ell_star)
    loc_ok = location is not None and src - 2 * math.ceil(params.H) <= location <= src
    return {
        "consensus": float(consensus),
        "location_ok": float(loc_ok),
        "align_success": float(consensus and loc_ok),
        "failure_stage": float(-1 if diags.failure_stage is None else diags.failure_stage),
    }


def _validate_params_point(point: dict, mode: str) -> None:
    _require(point, "n", "delta", "m_traces")
    _params_from_point(point, mode)


def _run_reconstruct_e2e(point: dict, rng: np.random.Generator, mode: str) -> dict:
    n, delta = point["n"], point["delta"]
    x = random_bits(n, rng)
    traces = [transmit(x, delta, rng).trace for _ in range(point["m_traces"])]
    result = reconstruct_with_fallback(
        n, delta, traces,
        k_const=point["k_const"], tau=point["tau"], gamma=point["gamma"], mode=mode,
    )
    cap = max(64, math.ceil(2 * delta * n))
    d = edit_distance_bounded(x, result.hypothesis, cap)
    d_base = edit_distance_bounded(x, traces[0], cap)
    capped = d is None
    d_val = cap if d is None else d
    return {
        "edit_distance": float(d_val),
        "edit_distance_capped": float(capped),
        "normalized_distance": float(d_val / n),
        "baseline_distance": float(cap if d_base is None else d_base),
        "regime_code": float(_REGIME_CODES[result.regime_action]),
        "m_used": float(result.m_used),
        "segments": float(len(result.segments)),
    }


def _run_atomic_exact(point: dict, rng: np.random.Generator, mode: str) -> dict:
    return {"p_exact": exact_atomic_failure_prob(point["m_traces"], point["delta"])}


def _validate_atomic_exact(point: dict, mode: str) -> None:
    _require(point, "delta", "m_traces")
    if not 1 <= point["m_traces"] <= 4 or not 0.0 <= point["delta"] <= 1.0:
        raise ValueError(f"bad atomic point {point}")


def _run_atomic_mc(point: dict, rng: np.random.Generator, mode: str) -> dict:
    samples = point.get("mc_samples", 10**6)
    p_hat, se = mc_atomic_failure_prob(point["m_traces"], point["delta"], samples, rng)
    return {"p_mc": p_hat, "p_mc_stderr": se, "mc_samples": float(samples)}


def _validate_atomic_mc(point: dict, mode: str) -> None:
    _require(point, "delta", "m_traces")
    if point["m_traces"] < 1 or not 0.0 <= point["delta"] <= 1.0:
        raise ValueError(f"bad atomic point {point}")
    if point.get("mc_samples", 10**6) < 2:
        raise ValueError("mc_samples must be >= 2")


def _run_prlp(point: dict, rng: np.random.Generator, mode: str) -> dict:
    m, delta, b_len = point["m_traces"], point["delta"], point["b_len"]
    samples = point.get("mc_samples", 10**5)
    rate = mc_prlp_exact_match(m, delta, b_len, samples, rng)
    out = {"exact_match_rate": rate, "mc_samples": float(samples)}
    if m <= 4:
        p = exact_atomic_failure_prob(m, delta)
        out["ceiling"] = (1.0 - p) ** b_len
    return out


def _validate_prlp(point: dict, mode: str) -> None:
    _require(point, "delta", "m_traces", "b_len")
    if point["m_traces"] < 1 or point["b_len"] < 1 or not 0.0 <= point["delta"] <= 1.0:
        raise ValueError(f"bad prlp point {point}")


def _run_aprlp_embedding(point: dict, rng: np.random.Generator, mode: str) -> dict:
    from .lower_bound import EmbeddingSpec

    m, delta, b_len = point["m_traces"], point["delta"], point["b_len"]
    spec = EmbeddingSpec.build(m, b_len)
    z = BitString(rng.integers(0, 2, size=b_len, dtype=np.int64))
    samples = sample_prlp(z, m, delta, rng)
    which = point.get("reconstructor", "first_trace")
    if which == "first_trace":
        recon = lambda traces: traces[0]  # noqa: E731
    else:
        recon = lambda traces: reconstruct_with_fallback(  # noqa: E731
            spec.n, delta, traces, mode=mode,
            k_const=point["k_const"], tau=point["tau"], gamma=point["gamma"],
        ).hypothesis
    z_hat = simulate_aprlp(samples, recon, delta, b_len, rng)
    return {
        "z_edit_distance": float(edit_distance(z, z_hat)),
        "exact_match": float(z_hat == z),
        "b_hat": float(len(z_hat)),
    }


def _validate_aprlp(point: dict, mode: str) -> None:
    _require(point, "delta", "m_traces", "b_len")
    if point["m_traces"] < 1 or point["b_len"] < 1 or not 0.0 <= point["delta"] <= 1.0:
        raise ValueError(f"bad embedding point {point}")
    if point.get("reconstructor", "first_trace") not in ("first_trace", "full"):
        raise ValueError("reconstructor must be first_trace or full")


@dataclass(frozen=True)
class _Kind:
    run: object
    validate: object


KINDS = {
    "channel_stats": _Kind(_run_channel_stats, _validate_channel_stats),
    "bma_bench": _Kind(_run_bma_bench, _validate_bma_bench),
    "align_bench": _Kind(_run_align_bench, _validate_params_point),
    "reconstruct_e2e": _Kind(_run_reconstruct_e2e, _validate_params_point),
    "atomic_exact": _Kind(_run_atomic_exact, _validate_atomic_exact),
    "atomic_mc": _Kind(_run_atomic_mc, _validate_atomic_mc),
    "prlp": _Kind(_run_prlp, _validate_prlp),
    "aprlp_embedding": _Kind(_run_aprlp_embedding, _validate_aprlp),
}


def _run_cell(args: tuple) -> TrialResult:
    kind, seed, mode, grid_index, point, trial = args
    rng = stream(seed, grid_index, trial)
    t0 = time.perf_counter()
    try:
        metrics = KINDS[kind].run(point, rng, mode)
        error = None
    except Exception as exc:  # error rows must not kill the sweep
        metrics = {"error": 1.0}
        error = f"{type(exc).__name__}: {exc}"
    metrics["gamma"] = float(point["gamma"])
    metrics["mode_desk"] = float(mode == "desk")
    metrics["runtime_ms"] = (time.perf_counter() - t0) * 1000.0
    return TrialResult(kind, dict(point), seed, trial, metrics, error)


def run_experiment(config: ExperimentConfig) -> list[TrialResult]:
    config.validate()
    tasks = [
        (config.kind, config.seed, config.mode, gi, point, trial)
        for gi, point in enumerate(config.grid)
        for trial in range(config.trials)
    ]
    if config.workers == 1:
        return [_run_cell(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(_run_cell, tasks, chunksize=max(1, len(tasks) // (4 * config.workers))))


def emit_report(results: list[TrialResult], fmt: str, path: str) -> None:
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for res in results:
                p = res.point
                base = [
                    res.kind,
                    p.get("n", 0),
                    p.get("delta", 0.0),
                    p.get("m_traces", 0),
                    p.get("k_const", 0.0),
                    p.get("tau", 0.0),
                    res.seed,
                    res.trial,
                ]
                for metric, value in res.metrics.items():
                    writer.writerow(base + [metric, repr(float(value))])
    elif fmt == "jsonl":
        with open(path, "w") as fh:
            for res in results:
                fh.write(json.dumps({
                    "kind": res.kind,
                    "point": res.point,
                    "seed": res.seed,
                    "trial": res.trial,
                    "metrics": res.metrics,
                    "error": res.error,
                }) + "\n")
    else:
        raise ValueError("format must be csv or jsonl")


def parse_jsonl(path: str) -> list[TrialResult]:
    out = []
    with open(path) as fh:
        for line in fh:
            obj = json.loads(line)
            out.append(TrialResult(
                kind=obj["kind"], point=obj["point"], seed=obj["seed"],
                trial=obj["trial"], metrics=obj["metrics"], error=obj["error"],
            ))
    return out
