"""Run a validated scenario and write its result files."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, band, cavity, export, lattice
from .config import (ScenarioConfig, band_spec, cavity_scenario, ensemble_spec,
                     lattice_scenario)
from .ensemble import run_ensemble


@dataclass
class RunReport:
    """Observables of a run and the files written for it."""

    kind: str
    observables: dict
    files: dict[str, Path] = field(default_factory=dict)


def _summary(cfg: ScenarioConfig, observables, seeds, extra=None):
    out = {
        "tool": "metacrystal", "version": __version__, "kind": cfg.kind,
        "config_sha256": cfg.sha256, "parameters": cfg.document,
        "seeds": seeds, "observables": observables,
    }
    if extra:
        out.update(extra)
    return out


def _band_report(cfg, out):
    doc = cfg.document
    spec = band_spec(doc["band"])
    hops = band.hoppings(spec, doc["M"])
    cert = band.one_way_certificate(spec, doc["n_samples"])
    k = np.linspace(-np.pi / spec.a, np.pi / spec.a, doc["k_points"])
    energy = band.evaluate(spec, k)
    recon = band.reconstruct(hops, k)
    v = np.asarray(band.group_velocity(spec, k)) * np.ones_like(k)
    obs = {
        "time_reversal_symmetric": band.time_reversal_symmetric(spec, doc["n_samples"]),
        "hermitian": hops.is_hermitian,
        "one_way": cert.one_way, "v_min": cert.v_min, "v_max": cert.v_max,
        "max_reconstruction_error": float(np.max(np.abs(energy - recon))),
    }
    files = {
        "summary": export.write_json(out / "summary.json", _summary(cfg, obs, {}, {
            "hoppings": [[int(n), c.real, c.imag] for n, c in sorted(hops.entries.items())]})),
        "band": export.write_csv(out / "band.csv", ["k", "energy", "reconstructed", "group_velocity"],
                                 zip(k, energy, recon, v), cfg.sha256),
    }
    return RunReport(cfg.kind, obs, files)


def _lattice_run(cfg, out):
    doc = cfg.document
    sc = lattice_scenario(doc)
    run = sc.run()
    traj = run.trajectory
    obs = {
        "final_norm": float(traj.norms[-1]),
        "max_norm_drift": float(np.max(np.abs(traj.norms - traj.norms[0]))),
        "com_slope": run.observable("com_slope"),
        "final_center_of_mass": float(traj.centers_of_mass[-1]),
        "final_width": lattice.packet_width(traj.final),
    }
    for lo, hi in doc["analysis"]["slope_windows"]:
        name = f"com_slope@{export.fmt(lo)}:{export.fmt(hi)}"
        obs[name] = run.observable(name)
    if doc["analysis"]["t_eval"] is not None:
        obs["transmission"] = run.observable("transmission")
        obs["reflection"] = run.observable("reflection")
    seeds = {"potential": sc.seed} if sc.is_random else {}
    files = {
        "summary": export.write_json(out / "summary.json", _summary(cfg, obs, seeds)),
        "trace": export.write_csv(out / "trace.csv", ["t", "norm", "com"],
                                  zip(traj.times, traj.norms, traj.centers_of_mass), cfg.sha256),
    }
    if traj.snapshots:
        labels = traj.snapshots[0].labels
        files["heatmap"] = export.write_heatmap(out / "heatmap.csv", "t", traj.times, "n", labels,
                                                traj.intensity_grid(), cfg.sha256)
        files["snapshots"] = export.write_snapshots(
            out / "snapshots.bin", [s.amplitudes for s in traj.snapshots],
            {"t0": float(traj.times[0]), "dt": sc.dt * sc.sample_every,
             "origin": sc.site_origin, "axis": "site"}, cfg.sha256)
    return RunReport(cfg.kind, obs, files)


def _cavity_run(cfg, out):
    doc = cfg.document
    sc = cavity_scenario(doc)
    run = sc.run()
    res = run.result
    post = res.trips > sc.injection.t0 + 3 * sc.injection.tau
    ratios = res.powers[1:] / res.powers[:-1]
    obs = {
        "metacrystal_period": run.config.a,
        "peak_power": float(res.powers.max()),
        "final_power": float(res.powers[-1]),
        "com_slope": run.observable("com_slope"),
        "backward_fraction": run.observable("reflection"),
    }
    if sc.sample_every == 1 and post[1:].sum() > 0:
        obs["post_injection_power_ratio"] = float(np.mean(ratios[post[1:]]))
    seeds = {"mask": run.config.mask.seed} if sc.is_random else {}
    files = {
        "summary": export.write_json(out / "summary.json", _summary(cfg, obs, seeds)),
        "trace": export.write_csv(out / "trace.csv", ["m", "power"],
                                  zip(res.trips, res.normalized_power), cfg.sha256),
    }
    if res.snapshots:
        stride = doc["heatmap_x_stride"]
        x = run.config.x
        grid = np.array([np.abs(f.samples[::stride]) ** 2 for f in res.snapshots])
        peak = grid.max()
        files["heatmap"] = export.write_heatmap(out / "heatmap.csv", "m", res.trips, "x",
                                                x[::stride], grid / peak if peak > 0 else grid,
                                                cfg.sha256)
        files["snapshots"] = export.write_snapshots(
            out / "snapshots.bin", [f.samples for f in res.snapshots],
            {"t0": float(res.trips[0]), "dt": float(sc.sample_every), "axis": "x",
             "x0": float(x[0]), "dx": run.config.dx}, cfg.sha256)
    return RunReport(cfg.kind, obs, files)


def _ensemble_run(cfg, out, workers):
    doc = cfg.document
    spec = ensemble_spec(doc)
    report = run_ensemble(spec, doc["workers"] if workers is None else workers)
    stats = {k: vars(v) for k, v in report.stats.items()}
    files = {
        "summary": export.write_json(out / "summary.json", _summary(
            cfg, stats, {"base_seed": spec.base_seed},
            {"realizations": report.records})),
        "realizations": export.write_csv(
            out / "realizations.csv", ["index", "seed", *spec.observables],
            ([r["index"], r["seed"], *(r["observables"][o] for o in spec.observables)]
             for r in report.records), cfg.sha256),
    }
    return RunReport(cfg.kind, stats, files)


def run_scenario(cfg: ScenarioConfig, out_dir=None, workers=None) -> RunReport:
    """Run ``cfg`` and write its outputs into ``out_dir``.

    ``out_dir`` defaults to the document's ``output_dir`` and then to
    ``out/<kind>``.
    """
    out = Path(out_dir or cfg.document.get("output_dir") or f"out/{cfg.kind}")
    out.mkdir(parents=True, exist_ok=True)
    if cfg.kind == "band_report":
        return _band_report(cfg, out)
    if cfg.kind == "lattice_run":
        return _lattice_run(cfg, out)
    if cfg.kind == "cavity_run":
        return _cavity_run(cfg, out)
    return _ensemble_run(cfg, out, workers)
