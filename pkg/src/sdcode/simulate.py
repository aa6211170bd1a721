"""Seeded Monte Carlo harness for decoding-performance tables.

Every trial draws a uniform weight-t error pattern and a uniform random
message from its own counter-based substream (Philox4x64 keyed by
(master_seed, t, trial)), so tallies are identical regardless of
execution order or worker count. A decode that ends on a codeword is
only counted as corrected when it reproduces the transmitted word;
landing on any other codeword is tallied separately as a miscorrection.
"""

from __future__ import annotations

import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .codes import CodeModel
from .engine import DecoderEngine
from .search import DecodingSet

PRNG_NAME = "philox4x64-seedseq(master_seed,t,trial)"

OUTCOME_KEYS = (
    "corrected",
    "miscorrected",
    "failure_stall",
    "failure_cycle",
    "failure_iteration_cap",
)


@dataclass(frozen=True)
class TrialConfig:
    code_name: str
    t_range: tuple[int, ...]
    trials_per_t: int = 2000
    master_seed: int = 0
    flip_rule: str = "single"
    max_iters: Optional[int] = None
    exhaustive_t1: bool = True

    def to_json_dict(self) -> dict:
        return {
            "code_name": self.code_name,
            "t_range": list(self.t_range),
            "trials_per_t": self.trials_per_t,
            "master_seed": self.master_seed,
            "flip_rule": self.flip_rule,
            "max_iters": self.max_iters,
            "exhaustive_t1": self.exhaustive_t1,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrialConfig":
        return cls(
            code_name=data["code_name"],
            t_range=tuple(data["t_range"]),
            trials_per_t=int(data["trials_per_t"]),
            master_seed=int(data["master_seed"]),
            flip_rule=data.get("flip_rule", "single"),
            max_iters=data.get("max_iters"),
            exhaustive_t1=bool(data.get("exhaustive_t1", True)),
        )


@dataclass(frozen=True)
class SimRow:
    t: int
    tested: int
    corrected: int
    percent: float


@dataclass
class SimReport:
    rows: list[SimRow]
    breakdown: dict[int, dict[str, int]]
    config: TrialConfig
    prng: str = PRNG_NAME
    wallclock: float = 0.0

    def row_for(self, t: int) -> SimRow:
        for row in self.rows:
            if row.t == t:
                return row
        raise KeyError(f"no row for t={t}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimReport)
            and self.rows == other.rows
            and self.breakdown == other.breakdown
            and self.config == other.config
            and self.prng == other.prng
            and self.wallclock == other.wallclock
        )


def _trial_rng(master_seed: int, t: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=(int(master_seed), int(t), int(trial)))
    return np.random.Generator(np.random.Philox(key=ss.generate_state(2, np.uint64)))


def _run_one(
    engine: DecoderEngine,
    g_packed: np.ndarray,
    cfg: TrialConfig,
    t: int,
    trial: int,
) -> str:
    n, k = engine.n, g_packed.shape[0]
    rng = _trial_rng(cfg.master_seed, t, trial)
    message = rng.integers(0, 2, size=k, dtype=np.uint8)
    if t == 1 and cfg.exhaustive_t1:
        positions = np.array([trial])
    else:
        positions = rng.choice(n, size=t, replace=False)

    c_words = np.zeros(g_packed.shape[1], dtype=np.uint64)
    sel = message.astype(bool)
    if sel.any():
        c_words = np.bitwise_xor.reduce(g_packed[sel], axis=0)
    r_words = c_words.copy()
    for p in positions:
        r_words[int(p) >> 6] ^= np.uint64(1) << np.uint64(int(p) & 63)

    status, out, _, _ = engine.decode(r_words)
    if status == "success":
        return "corrected" if np.array_equal(out, c_words) else "miscorrected"
    return status


_WORKER: dict = {}


def _worker_init(code_json: dict, set_json: dict, cfg_json: dict) -> None:
    code = CodeModel.from_json_dict(code_json, validate=False)
    dset = DecodingSet.from_json_dict(set_json, code)
    cfg = TrialConfig.from_json_dict(cfg_json)
    engine = DecoderEngine(code, dset, flip_rule=cfg.flip_rule, max_iters=cfg.max_iters)
    _WORKER["engine"] = engine
    _WORKER["cfg"] = cfg


def _worker_chunk(job: tuple[int, int, int]) -> dict[str, int]:
    t, lo, hi = job
    engine, cfg = _WORKER["engine"], _WORKER["cfg"]
    tally = {key: 0 for key in OUTCOME_KEYS}
    for trial in range(lo, hi):
        tally[_run_one(engine, engine.g_packed, cfg, t, trial)] += 1
    return tally


def run_trials(
    code: CodeModel,
    dset: DecodingSet,
    cfg: TrialConfig,
    threads: int = 1,
    progress=None,
) -> SimReport:
    """Run the configured trials and tally outcomes per error weight."""
    if dset.code_name != code.name:
        raise ValueError("decoding set belongs to a different code")
    if cfg.code_name != code.name:
        raise ValueError("config names a different code")
    start = time.monotonic()
    rows: list[SimRow] = []
    breakdown: dict[int, dict[str, int]] = {}

    threads = max(1, threads)
    pool = None
    if threads > 1:
        pool = ProcessPoolExecutor(
            max_workers=threads,
            initializer=_worker_init,
            initargs=(code.to_json_dict(), dset.to_json_dict(), cfg.to_json_dict()),
        )
    engine = None
    if pool is None:
        engine = DecoderEngine(code, dset, flip_rule=cfg.flip_rule, max_iters=cfg.max_iters)

    try:
        for t in cfg.t_range:
            tested = code.n if (t == 1 and cfg.exhaustive_t1) else cfg.trials_per_t
            tally = {key: 0 for key in OUTCOME_KEYS}
            if pool is not None:
                step = max(1, tested // (threads * 8))
                jobs = [(t, lo, min(lo + step, tested)) for lo in range(0, tested, step)]
                for part in pool.map(_worker_chunk, jobs):
                    for key, v in part.items():
                        tally[key] += v
            else:
                for trial in range(tested):
                    tally[_run_one(engine, engine.g_packed, cfg, t, trial)] += 1
            corrected = tally["corrected"]
            rows.append(SimRow(t, tested, corrected, round(100.0 * corrected / tested, 2)))
            breakdown[t] = tally
            if progress is not None:
                progress(f"t={t}: {corrected}/{tested} corrected")
    finally:
        if pool is not None:
            pool.shutdown()

    return SimReport(rows, breakdown, cfg, wallclock=time.monotonic() - start)


# -- persistence ---------------------------------------------------------------


def _sidecar_path(csv_path) -> Path:
    return Path(csv_path).with_suffix(".json")


def emit_report(report: SimReport, csv_path) -> None:
    """Write the t/tested/corrected/percent CSV plus its JSON sidecar."""
    csv_path = Path(csv_path)
    with open(csv_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["t", "tested", "corrected", "percent"])
        for row in report.rows:
            writer.writerow([row.t, row.tested, row.corrected, f"{row.percent:.2f}"])
    sidecar = {
        "config": report.config.to_json_dict(),
        "prng": report.prng,
        "failure_breakdown": {str(t): d for t, d in report.breakdown.items()},
        "wallclock": report.wallclock,
    }
    with open(_sidecar_path(csv_path), "w") as f:
        json.dump(sidecar, f, indent=1)
        f.write("\n")


def load_report(csv_path) -> SimReport:
    csv_path = Path(csv_path)
    with open(csv_path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if header != ["t", "tested", "corrected", "percent"]:
            raise ValueError(f"unexpected CSV header {header}")
        rows = [
            SimRow(int(t), int(tested), int(corrected), float(percent))
            for t, tested, corrected, percent in reader
        ]
    with open(_sidecar_path(csv_path)) as f:
        sidecar = json.load(f)
    breakdown = {
        int(t): {k: int(v) for k, v in d.items()}
        for t, d in sidecar["failure_breakdown"].items()
    }
    return SimReport(
        rows,
        breakdown,
        TrialConfig.from_json_dict(sidecar["config"]),
        prng=sidecar["prng"],
        wallclock=float(sidecar["wallclock"]),
    )
