"""Regenerate fig2a_dense.json: the single-site defect runs propagated with the
dense eigendecomposition oracle.  Run from the repository root:

    python tests/golden/make_golden.py
"""
import json
from pathlib import Path

import numpy as np

from metacrystal import lattice
from metacrystal.band import DispersionSpec

TIMES = [20.0, 40.0, 60.0, 90.0, 120.0]


def main():
    out = {"scenario": {"N": 256, "origin": -128, "center": -20, "sigma_sq": 16,
                        "k0a": "pi/2", "defect_site": 0, "U0": 2.0, "margin": 3},
           "bands": {}}
    for kind in ("sawtooth", "sinusoidal"):
        spec = DispersionSpec(kind)
        pot = lattice.PotentialProfile.site_delta(256, 0, 2.0, origin=-128)
        state = lattice.gaussian_packet(256, -20.0, 16.0, np.pi / 2)
        traj = lattice.dense_trajectory(state, spec, pot, TIMES, snapshots=True)
        rows = {}
        for t, snap in zip(TIMES, traj.snapshots):
            split = lattice.partition(snap, 0)
            rows[repr(t)] = {"T": split.T, "R": split.R, "trapped": split.trapped,
                             "com": lattice.center_of_mass(snap)}
        out["bands"][kind] = rows
    path = Path(__file__).with_name("fig2a_dense.json")
    path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
