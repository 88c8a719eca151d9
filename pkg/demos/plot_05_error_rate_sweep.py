"""
Error rates from a sweep configuration
======================================

``cmd_sweep`` runs the same Monte-Carlo machinery from a JSON-style config,
validates it against a schema and writes CSV, JSON, two SVG charts and a
manifest. The manifest records the configuration and output hashes so the
run can be replayed and checked byte for byte.
"""

# %%
import os
from pathlib import Path

from lpdetect.cli import ConfigError, cmd_sweep, replay

out = Path(os.environ.get("LPDETECT_OUT", "demo-out"))
config = {"name": "error_vs_sigma2", "axis": "sigma2", "grid": [0.01, 0.1, 1.0], "n": 30, "m": 300, "trials": 20, "seed": 1}
res = cmd_sweep(config, out)
for s in res.settings:
    print(f"{s:<17} l2 " + " ".join(f"{x:.3f}" for x in res.get(s, "error_l2"))
          + "   linf " + " ".join(f"{x:.3f}" for x in res.get(s, "error_linf")))

# %%
# Replaying the manifest into a fresh directory reproduces the outputs.
print("replay matches:", replay(out / "error_vs_sigma2.manifest.json", out / "replay"))

# %%
# Invalid configurations are rejected with JSON-pointer locations.
try:
    cmd_sweep({"axis": "m", "grid": [10, -5], "trials": 0}, out)
except ConfigError as exc:
    print(exc)
