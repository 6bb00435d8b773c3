"""Runnable lattice and cavity scenarios and the observables extracted from them."""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

import numpy as np

from . import cavity, lattice
from .band import DispersionSpec
from .cavity import CavityConfig, InjectionSpec
from .lattice import PotentialProfile

OBSERVABLES = ("com_slope", "transmission", "reflection", "final_norm")
_OBS_RE = re.compile(r"^(com_slope|transmission|reflection|final_norm)(?:@([-+0-9.eE]+)(?::([-+0-9.eE]+))?)?$")


def parse_observable(name):
    """Split ``"com_slope@20:40"`` into ``("com_slope", (20.0, 40.0))``.

    ``transmission@60`` evaluates at t = 60; a bare name uses the scenario
    defaults (whole run for slopes, the configured ``t_eval`` otherwise).
    """
    m = _OBS_RE.match(name)
    if not m:
        raise ValueError(f"unknown observable {name!r}")
    base, lo, hi = m.groups()
    args = tuple(float(v) for v in (lo, hi) if v is not None)
    if base == "com_slope" and len(args) == 1:
        raise ValueError(f"{name!r}: slope window needs start:end")
    return base, args


@dataclass(frozen=True)
class LatticeScenario:
    band: DispersionSpec
    N: int = 256
    origin: int | None = None
    center: float = -20.0
    sigma_sq: float = 16.0
    k0a: float = 0.5 * np.pi
    potential: dict = field(default_factory=lambda: {"kind": "none"})
    duration: float = 60.0
    dt: float = 0.01
    sample_every: int = 10
    snapshots: bool = False
    propagator: str = "splitstep"
    barrier_site: int = 0
    t_eval: float | None = None
    seed: int = 0

    @property
    def site_origin(self):
        return -(self.N // 2) if self.origin is None else self.origin

    @property
    def is_random(self):
        return self.potential.get("kind") == "uniform_disorder"

    def build_potential(self, seed=None):
        return PotentialProfile.from_descriptor(
            self.N, self.potential, self.site_origin, self.seed if seed is None else seed)

    def run(self, seed=None, snapshots=None):
        pot = self.build_potential(seed)
        state = lattice.gaussian_packet(self.N, self.center, self.sigma_sq, self.k0a, self.site_origin)
        keep = self.snapshots if snapshots is None else snapshots
        if self.propagator == "dense":
            steps = int(round(self.duration / self.dt))
            idx = list(range(0, steps + 1, self.sample_every))
            if idx[-1] != steps:
                idx.append(steps)
            traj = lattice.dense_trajectory(state, self.band, pot, np.array(idx) * self.dt, keep)
        else:
            traj = lattice.propagate_splitstep(state, self.band, pot, self.duration, self.dt,
                                               self.sample_every, keep)
        return LatticeRun(self, pot, traj)


@dataclass
class LatticeRun:
    scenario: LatticeScenario
    potential: PotentialProfile
    trajectory: lattice.Trajectory

    def observable(self, name):
        base, args = parse_observable(name)
        traj, sc = self.trajectory, self.scenario
        if base == "com_slope":
            lo, hi = args if args else (traj.times[0], traj.times[-1])
            return lattice.com_slope(traj, lo, hi)
        if base == "final_norm":
            return float(traj.norms[-1])
        t = args[0] if args else (sc.t_eval if sc.t_eval is not None else traj.times[-1])
        if traj.snapshots:
            snap = traj.snapshot_near(t)
        elif abs(t - traj.times[-1]) <= 1e-9 * max(1.0, t):
            snap = traj.final
        else:
            snap = self._rerun_until(t)
        split = lattice.partition(snap, sc.barrier_site)
        return split.T if base == "transmission" else split.R

    def _rerun_until(self, t):
        sc = self.scenario
        state = lattice.gaussian_packet(sc.N, sc.center, sc.sigma_sq, sc.k0a, sc.site_origin)
        if sc.propagator == "dense":
            return lattice.propagate_dense(state, lattice.ring_hamiltonian(sc.band, self.potential), t)
        return lattice.propagate_splitstep(state, sc.band, self.potential, t, sc.dt,
                                           max(1, int(round(t / sc.dt)))).final


@dataclass(frozen=True)
class CavityScenario:
    config: CavityConfig
    injection: InjectionSpec = field(default_factory=InjectionSpec)
    n_trips: int = 120
    sample_every: int = 1
    snapshots: bool = False
    slope_start: int | None = None
    seed: int = 0

    @property
    def is_random(self):
        return self.config.mask.kind == "piecewise_disorder"

    def configured(self, seed=None):
        s = self.seed if seed is None else seed
        if self.is_random:
            return replace(self.config, mask=self.config.mask.with_seed(s))
        return self.config

    def run(self, seed=None, snapshots=None):
        cfg = self.configured(seed)
        keep = self.snapshots if snapshots is None else snapshots
        res = cavity.run_cavity(cfg, self.injection, self.n_trips,
                                sample_every=self.sample_every, snapshots=keep)
        return CavityRun(self, cfg, res)


@dataclass
class CavityRun:
    scenario: CavityScenario
    config: CavityConfig
    result: cavity.CavityRun

    def observable(self, name):
        """Cavity observables; slopes are in metacrystal periods per round trip.

        ``transmission`` / ``reflection`` are the fractions of the final
        field's power moving forward / backward (sign of dE/dk).
        """
        base, args = parse_observable(name)
        res = self.result
        if base == "com_slope":
            if args:
                lo, hi = args
            else:
                lo = self.scenario.slope_start
                lo = self.scenario.injection.t0 + 2 * self.scenario.injection.tau if lo is None else lo
                hi = res.trips[-1]
            mask = (res.trips >= lo) & (res.trips <= hi)
            if mask.sum() < 2:
                return float("nan")
            return float(np.polyfit(res.trips[mask], res.centroids[mask] / res.a, 1)[0])
        if base == "final_norm":
            return float(res.powers[-1])
        back = cavity.backward_fraction(res.final, self.config)
        return back if base == "reflection" else 1.0 - back
