"""Seeded disorder ensembles run on a worker pool.

Realization ``i`` draws its disorder from a seed derived from
``(base_seed, i)`` alone, so results do not depend on the number of
workers, on scheduling, or on how many realizations are requested.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import EnsembleError
from .scenarios import CavityScenario, LatticeScenario, parse_observable


def realization_seed(base_seed, index):
    """64-bit seed of realization ``index``, independent of every other index."""
    ss = np.random.SeedSequence(int(base_seed), spawn_key=(int(index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class EnsembleSpec:
    scenario: LatticeScenario | CavityScenario
    n_realizations: int = 20
    base_seed: int = 0
    observables: tuple[str, ...] = ("com_slope", "final_norm")

    def __post_init__(self):
        if self.n_realizations < 1:
            raise ValueError("n_realizations must be >= 1")
        object.__setattr__(self, "observables", tuple(self.observables))
        for name in self.observables:
            parse_observable(name)


@dataclass(frozen=True)
class Statistic:
    mean: float
    std: float
    min: float
    max: float


@dataclass
class EnsembleReport:
    stats: dict[str, Statistic]
    records: list[dict] = field(default_factory=list)

    def values(self, name):
        return np.array([r["observables"][name] for r in self.records])


def _run_one(args):
    scenario, observables, index, seed = args
    try:
        run = scenario.run(seed=seed, snapshots=False)
        return index, seed, {name: run.observable(name) for name in observables}, None
    except Exception as exc:  # reported to the parent with its index
        return index, seed, None, exc


def run_ensemble(spec: EnsembleSpec, workers: int = 1) -> EnsembleReport:
    """Run every realization and aggregate in index order.

    ``workers <= 0`` uses every available CPU.
    """
    tasks = [(spec.scenario, spec.observables, i, realization_seed(spec.base_seed, i))
             for i in range(spec.n_realizations)]
    if workers <= 0:
        workers = os.cpu_count() or 1
    if workers == 1 or len(tasks) == 1:
        results = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            results = list(pool.map(_run_one, tasks))

    results.sort(key=lambda r: r[0])
    for index, _, _, exc in results:
        if exc is not None:
            raise EnsembleError(index, exc) from exc

    records = [{"index": i, "seed": s, "observables": obs} for i, s, obs, _ in results]
    stats = {}
    for name in spec.observables:
        v = np.array([r["observables"][name] for r in records])
        stats[name] = Statistic(float(v.mean()), float(v.std()), float(v.min()), float(v.max()))
    return EnsembleReport(stats, records)
