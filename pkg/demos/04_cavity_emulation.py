# # Emulating the lattice in a self-imaging ring cavity
#
# A phase grating in the Fourier plane writes the band, a phase mask in the
# image plane writes the potential, and each round trip is one unit of time.
# With A = 30 um, f = 2 cm and 633 nm light the emulated lattice period is
# a = lambda f / A = 422 um.

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from metacrystal import cavity
from metacrystal.band import DispersionSpec
from metacrystal.cavity import CavityConfig, Grating, InjectionSpec, Mask

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

print(f"a = {cavity.metacrystal_period(633e-9, 0.02, 30e-6) * 1e6:.1f} um")

# ## Small gratings reproduce the lattice
#
# For weak gratings the map is the lattice evolution sampled at x = n a.

weak = CavityConfig(grating=Grating("sawtooth", 0.05))
print("overlap with lattice evolution:",
      cavity.correspondence_check(weak, cavity.lattice_band(weak)).overlap)

# ## A beam through a Gaussian defect
#
# Pulsed injection, 2% output coupling, and a Gaussian well 1.6 mm off axis.
# The window is 128 periods wide so the sinusoidal beam does not wrap.

well = Mask("gaussian_well", U0=0.2, d=1600e-6, s=600e-6)
fig, axes = plt.subplots(1, 3, figsize=(13, 4))
for ax, kind in zip(axes, ("sawtooth", "sinusoidal")):
    cfg = CavityConfig(grating=Grating(kind, 0.5), mask=well, n_x=16384, window_periods=128)
    run = cavity.run_cavity(cfg, InjectionSpec(), 100, snapshots=True)
    grid = np.array([np.abs(f.samples) ** 2 for f in run.snapshots])
    ax.imshow(grid.T / grid.max(), origin="lower", aspect="auto", cmap="magma",
              extent=[run.trips[0], run.trips[-1], cfg.x[0] * 1e3, cfg.x[-1] * 1e3])
    ax.set_ylim(-8, 25)
    ax.set_title(f"{kind} grating")
    ax.set_xlabel("round trip")
    ax.set_ylabel("x (mm)")
    print(f"{kind:10s} backward fraction {cavity.backward_fraction(run.final, cfg):.3%}")
    axes[2].plot(run.trips, run.normalized_power, label=kind)
axes[2].set_xlabel("round trip")
axes[2].set_ylabel("normalized power")
axes[2].legend()
fig.tight_layout()
fig.savefig(os.path.join(OUT, "cavity_emulation.png"), dpi=120)
