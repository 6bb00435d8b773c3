# # Configs, the command line and output files
#
# Every run can be driven from a JSON scenario.  Built-in scenarios ship
# with the package; the same runs are available as
# ``metacrystal lattice --config builtin:fig2a_sawtooth --out <dir>``.

import os

from metacrystal.cli import main
from metacrystal.config import builtin_names
from metacrystal.export import read_snapshots

OUT = os.path.join(os.path.dirname(__file__), "out", "cli")

print("built-in scenarios:", ", ".join(builtin_names()))

main(["band", "--config", "builtin:band_sawtooth", "--out", os.path.join(OUT, "band")])
main(["lattice", "--config", "builtin:fig2a_sawtooth", "--out", os.path.join(OUT, "fig2a")])

# Snapshots are raw complex128 frames with a JSON sidecar.

frames, meta = read_snapshots(os.path.join(OUT, "fig2a", "snapshots.bin"))
print(frames.shape, meta["config_sha256"][:12], meta["dt"])

# A bad config exits with status 2 and a JSON pointer to the offending field.

bad = os.path.join(OUT, "bad.json")
with open(bad, "w") as fh:
    fh.write('{"kind": "lattice_run", "band": {"kind": "sawtooth"}, "dt": -1}')
print("exit status:", main(["lattice", "--config", bad]))
