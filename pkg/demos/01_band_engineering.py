# # Engineering a one-way band
#
# A lattice band E(k) is set entirely by its hopping amplitudes J_n.  Here we
# compare the ordinary cosine band with the sawtooth band E = J a k / pi,
# look at its imaginary long-range hoppings, and watch the partial Fourier
# sums converge.

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from metacrystal import band
from metacrystal.band import DispersionSpec

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

saw = DispersionSpec.sawtooth(J=1.0)
cos = DispersionSpec.sinusoidal(J=1.0)

# ## Hoppings
#
# The sawtooth needs hoppings to every distance, decaying as 1/n and purely
# imaginary.  Imaginary hoppings break time reversal: E(k) != E(-k).

hops = band.hoppings(saw, 8)
for n in range(1, 6):
    print(f"J_{n} = {hops[n]:.4f}")
print("time-reversal symmetric:", band.time_reversal_symmetric(saw), "(sawtooth)",
      band.time_reversal_symmetric(cos), "(cosine)")

# ## One-way certificate
#
# The group velocity of the sawtooth never changes sign.

for spec in (saw, cos):
    cert = band.one_way_certificate(spec)
    print(f"{spec.kind:10s} one_way={cert.one_way}  v in [{cert.v_min:+.3f}, {cert.v_max:+.3f}]")

# ## Truncated tables
#
# Cutting the series at M gives a Gibbs overshoot near the zone edge.

k = np.linspace(-np.pi, np.pi, 801)
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(k, band.evaluate(saw, k), "k", lw=2, label="sawtooth")
ax.plot(k, band.evaluate(cos, k), "k--", label="cosine")
for M in (2, 8, 32):
    ax.plot(k, band.reconstruct(band.hoppings(saw, M), k), lw=1, label=f"M = {M}")
ax.set_xlabel("k a")
ax.set_ylabel("E / J")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(OUT, "band_engineering.png"), dpi=120)

for M in (10, 50, 200):
    print(f"M = {M:3d}: E(pi/2) = {band.reconstruct(band.hoppings(saw, M), np.pi / 2):.5f}")
