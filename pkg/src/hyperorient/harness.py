"""Seeded experiment runs: threshold sweeps, susceptibility traces, CSV output.

Every trial draws from its own generator, seeded with a 64-bit sub-seed that
``numpy.random.SeedSequence`` derives from ``(master_seed, point, trial)``.
Trials therefore share no state and give the same rows whether they run
serially or in a process pool.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .curves import critical_theta, susceptibility_bound, x_curve
from .hypergraph import (
    Hypergraph,
    ProcessState,
    as_generator,
    binomial_p_for_density,
    gen_binomial,
    gen_uniform,
    run_process,
)
from .orient import orient_all
from .tracker import ComponentTracker, InvariantViolation

MODELS = ("uniform", "binomial", "process")
DEFAULT_DENSITIES = (0.5, 0.8, 0.9, 0.95, 1.0, 1.05, 1.1, 1.2)

CSV_HEADER = (
    "k,n,m,model,seed,trial,success,while_evals,susceptibility,"
    "max_component,hypertrees,unicyclic,complex,wall_ns"
)


def trial_seed(master_seed: int, point: int, trial: int) -> int:
    """64-bit sub-seed for one trial, hashed from the master seed and its position."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(point, trial))
    return int(ss.generate_state(1, np.uint64)[0])


def edges_for_density(c: float, n: int, k: int) -> int:
    return round(c * n / (k * (k - 1)))


@dataclass
class ExperimentConfig:
    k: int
    n: int
    densities: Sequence[float] | None = None
    ms: Sequence[int] | None = None
    trials: int = 1
    seed: int = 0
    model: str = "uniform"
    out: str | None = None
    verify: bool = False
    timing: bool = True

    def __post_init__(self):
        if self.k < 2 or self.n < self.k:
            raise ValueError(f"need n >= k >= 2, got n={self.n}, k={self.k}")
        if self.trials < 1:
            raise ValueError(f"trials={self.trials} must be at least 1")
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if self.ms is None:
            if self.densities is None:
                self.densities = DEFAULT_DENSITIES
            if any(c <= 0 for c in self.densities):
                raise ValueError("densities must be positive")
        elif any(m < 0 for m in self.ms):
            raise ValueError("edge counts must be non-negative")

    def points(self) -> list[int]:
        """Edge count (or round count for the process model) of each sweep point."""
        if self.ms is not None:
            return [int(m) for m in self.ms]
        return [edges_for_density(c, self.n, self.k) for c in self.densities]


@dataclass
class TrialRecord:
    k: int
    n: int
    m: int
    model: str
    seed: int
    trial: int
    success: bool
    while_evals: int
    susceptibility: float
    max_component: int
    hypertrees: int
    unicyclic: int
    complex: int
    wall_ns: int = 0


def generate(model: str, n: int, m: int, k: int, seed) -> Hypergraph:
    """One random hypergraph with ``m`` edges (expected edges / rounds for the other models)."""
    if model == "uniform":
        return gen_uniform(n, m, k, seed)
    if model == "binomial":
        return gen_binomial(n, m / math.comb(n, k), k, seed)
    if model == "process":
        state = run_process(ProcessState(n, k), m, as_generator(seed))
        return Hypergraph(n, k, state.edges)
    raise ValueError(f"unknown model {model!r}")


def measure(h: Hypergraph, *, m: int, model: str, seed: int, trial: int, verify: bool = False) -> TrialRecord:
    """Orient ``h`` and summarise its component structure in a record.

    Orientation stops at the first infeasible edge; the remaining edges are
    still fed to the tracker so the component statistics cover all of ``h``.
    """
    res = orient_all(h, verify=verify)
    tracker = res.tracker
    if res.failed_edge is not None:
        for e in h.edges[res.failed_edge + 1:]:
            tracker.add_edge(e)
        if verify:
            tracker.check()
    counts = tracker.classify()
    if res.success != (counts.complex == 0):
        raise InvariantViolation(
            f"trial {trial}: success={res.success} but {counts.complex} complex components"
        )
    return TrialRecord(
        k=h.k,
        n=h.n,
        m=m,
        model=model,
        seed=seed,
        trial=trial,
        success=res.success,
        while_evals=res.stats.while_evals,
        susceptibility=tracker.susceptibility,
        max_component=counts.max_size,
        hypertrees=counts.hypertrees,
        unicyclic=counts.unicyclic,
        complex=counts.complex,
    )


def run_trial(k, n, m, model, seed, trial, verify=False, timing=True) -> TrialRecord:
    start = time.monotonic_ns()
    try:
        h = generate(model, n, m, k, seed)
    except ValueError as exc:
        raise ValueError(f"generation failed for k={k} n={n} m={m} model={model} seed={seed}: {exc}") from exc
    rec = measure(h, m=m, model=model, seed=seed, trial=trial, verify=verify)
    if timing:
        rec.wall_ns = time.monotonic_ns() - start
    return rec


def _run_trial_args(args) -> TrialRecord:
    return run_trial(*args)


def run_sweep(config: ExperimentConfig, workers: int = 1) -> list[TrialRecord]:
    """All trials of a sweep, ordered point-major then trial-minor."""
    jobs = [
        (config.k, config.n, m, config.model, trial_seed(config.seed, p, t), t, config.verify, config.timing)
        for p, m in enumerate(config.points())
        for t in range(config.trials)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_run_trial_args, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_run_trial_args(job) for job in jobs]


def run_binomial_trials(k, n, eps, trials, seed, verify=False, timing=True) -> list[TrialRecord]:
    """Trials of H(n, p; k) at p = (1 - 0.8 eps)(k-2)!/n^(k-1); ``m`` is the realised edge count."""
    p = binomial_p_for_density(n, k, eps)
    records = []
    for t in range(trials):
        start = time.monotonic_ns()
        s = trial_seed(seed, 0, t)
        h = gen_binomial(n, p, k, s)
        rec = measure(h, m=h.m, model="binomial", seed=s, trial=t, verify=verify)
        if timing:
            rec.wall_ns = time.monotonic_ns() - start
        records.append(rec)
    return records


@dataclass
class ProcessRecord:
    k: int
    n: int
    seed: int
    trial: int
    rounds: int
    edges: int
    no_adds: int


def run_process_trials(k, n, rounds, trials, seed) -> list[ProcessRecord]:
    out = []
    for t in range(trials):
        s = trial_seed(seed, 0, t)
        state = run_process(ProcessState(n, k), rounds, as_generator(s))
        if len(state.edges) + state.no_adds != state.rounds:
            raise InvariantViolation(f"trial {t}: edges + no-adds != rounds")
        out.append(ProcessRecord(k, n, s, t, state.rounds, len(state.edges), state.no_adds))
    return out


@dataclass
class TracePoint:
    t: int
    theta: float
    chi_mean: float
    chi_min: float
    chi_max: float
    x_theory: float


@dataclass
class TraceResult:
    k: int
    n: int
    eps: float
    rounds: int
    points: list[TracePoint]
    final_chi: list[float]
    bound: float

    @property
    def mean_final_chi(self) -> float:
        return sum(self.final_chi) / len(self.final_chi)


def run_susceptibility_trace(k, n, eps, trials, seed, verify=False) -> TraceResult:
    """Susceptibility along the sequential process up to (1-eps) n/(k(k-1)) rounds.

    Samples every ``n // 100`` rounds and at the final round; each trial
    uses its own sub-seed and tracker.
    """
    if not 0 < eps <= 0.5:
        raise ValueError(f"eps={eps} must lie in (0, 1/2]")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rounds = math.floor((1 - eps) * n * critical_theta(k))
    step = max(1, n // 100)
    checkpoints = list(range(0, rounds, step)) + [rounds]

    per_trial = []
    for t in range(trials):
        rng = as_generator(trial_seed(seed, 0, t))
        state = ProcessState(n, k)
        tracker = ComponentTracker(n, k, verify=verify)
        chis = []
        for cp in checkpoints:
            run_process(state, cp - state.rounds, rng, on_add=tracker.add_edge)
            chis.append(tracker.susceptibility)
        if verify:
            tracker.check()
        per_trial.append(chis)

    cols = list(zip(*per_trial))
    points = [
        TracePoint(cp, cp / n, sum(col) / trials, min(col), max(col), x_curve(cp / n, k))
        for cp, col in zip(checkpoints, cols)
    ]
    return TraceResult(k, n, eps, rounds, points, [c[-1] for c in per_trial], susceptibility_bound(n, k, eps))


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write(fh, header, rows) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])


def write_rows(path, header: Iterable[str], rows: Iterable[Sequence]) -> None:
    """Write a CSV to ``path``, or to ``path`` itself if it is an open text stream."""
    if hasattr(path, "write"):
        _write(path, header, rows)
        return
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            _write(fh, header, rows)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def emit_csv(records: Sequence[TrialRecord], path) -> None:
    write_rows(path, CSV_HEADER.split(","), (astuple(r) for r in records))


def emit_dataclass_csv(records: Sequence, cls, path) -> None:
    write_rows(path, [f.name for f in fields(cls)], (astuple(r) for r in records))


def emit_trace_csv(trace: TraceResult, path) -> None:
    emit_dataclass_csv(trace.points, TracePoint, path)
