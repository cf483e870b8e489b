"""
Seeded benchmark harness for the linker.

Trials are independent and isolated by seed, so they may run in worker
processes; records always come back in trial order. With timing
suppressed the report is byte-reproducible, and ``report_digest`` hashes
it for determinism checks.
"""
import hashlib
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .linker import Linker, LinkRequest
from .resources.config import DEFAULT_CONFIG, EventType, LinkerConfig, Stage
from .tournament import sample_min_degree
from .utils.errors import InputError
from .utils.formats import BenchRecord, format_report
from .utils.suite_loader import SuiteLoader, get_suite_loader

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Trial:
    """One benchmark run: a tournament size, pair count, seed and constants."""
    suite: str
    n: int
    k: int
    seed: int
    config: LinkerConfig
    attempts: int = DEFAULT_CONFIG.bench.resample_attempts


def _suite_config(overrides: Optional[Dict[str, Any]]) -> LinkerConfig:
    if not overrides:
        return DEFAULT_CONFIG.linker
    try:
        return replace(DEFAULT_CONFIG.linker, **overrides)
    except (TypeError, ValueError) as e:
        raise InputError(f"invalid linker overrides {overrides}: {e}") from e


def expand_suite(
    name: str, loader: Optional[SuiteLoader] = None, seed_offset: int = 0
) -> List[Trial]:
    """Trials of suite ``name``, seeds counting up from the suite seed plus ``seed_offset``."""
    suite = (loader or get_suite_loader()).get_suite(name)
    config = _suite_config(suite.get("config"))
    base = int(suite["seed"]) + seed_offset
    return [
        Trial(suite=name, n=int(suite["n"]), k=int(suite["k"]), seed=base + t, config=config)
        for t in range(int(suite["trials"]))
    ]


def draw_terminals(n: int, k: int, seed: int) -> LinkRequest:
    """2k distinct terminals drawn from the trial seed."""
    rng = np.random.default_rng(seed)
    terminals = [int(v) for v in rng.choice(n, size=2 * k, replace=False)]
    return LinkRequest(sources=tuple(terminals[:k]), sinks=tuple(terminals[k:]))


def run_trial(trial: Trial) -> BenchRecord:
    """Sample, draw terminals, link, and record how far the pipeline got."""
    start = time.perf_counter()
    outcomes: List[Tuple[str, bool]] = []
    floor = trial.config.required_connectivity(trial.k)
    try:
        tournament, _ = sample_min_degree(trial.n, trial.seed, floor, trial.attempts)
    except InputError as e:
        logger.warning(f"Trial {trial.suite}/{trial.seed}: {e}")
        outcomes.append((Stage.PRECONDITION, False))
    else:
        request = draw_terminals(trial.n, trial.k, trial.seed)
        for event in Linker(trial.config).link_stream(tournament, request):
            if event["type"] == EventType.RESULT:
                outcomes.append((event["stage"], True))
            elif event["type"] == EventType.ERROR:
                outcomes.append((event.get("stage") or Stage.STITCH, False))

    runtime_ms = int(round((time.perf_counter() - start) * 1000))
    record = BenchRecord(
        suite=trial.suite,
        n=trial.n,
        k=trial.k,
        seed=trial.seed,
        stage_outcomes=tuple(outcomes),
        runtime_ms=runtime_ms,
    )
    logger.info(f"Trial {trial.suite}/{trial.seed}: {record.outcome_text()} in {runtime_ms} ms")
    return record


def run_trials(trials: Sequence[Trial], workers: int = 1) -> List[BenchRecord]:
    if workers > 1 and len(trials) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_trial, trials))
    return [run_trial(trial) for trial in trials]


def run_suite(
    name: str,
    workers: Optional[int] = None,
    seed_offset: int = 0,
    loader: Optional[SuiteLoader] = None,
) -> List[BenchRecord]:
    """
    Run every trial of a suite.

    Args:
        name: Suite name in the suites file.
        workers: Worker processes (default from BenchConfig).
        seed_offset: Added to every trial seed.
        loader: Suite source (default loader if None).

    Returns:
        One record per trial, in trial order.
    """
    trials = expand_suite(name, loader, seed_offset)
    workers = workers or DEFAULT_CONFIG.bench.workers
    logger.info(f"Running suite {name}: {len(trials)} trials on {workers} workers")
    return run_trials(trials, workers)


def report_digest(records: Sequence[BenchRecord]) -> str:
    """SHA-256 of the report with timing omitted."""
    return hashlib.sha256(format_report(records, timing=False).encode("utf-8")).hexdigest()
