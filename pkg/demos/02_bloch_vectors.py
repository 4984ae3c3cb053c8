"""Where the fluxon eigenstates sit on the Bloch sphere as the ring state changes."""

# %%
import numpy as np

from fluxring import bloch_sweep

for delta in (0.01, 5.0, 100.0):
    recs = [r for r in bloch_sweep(delta, -5, 5) if r["band"] == "lower"]
    z = np.array([r["z"] for r in recs])
    x = np.array([r["x"] for r in recs])
    print(f"delta = {delta:6g}   mean |z| = {np.abs(z).mean():.4f}   mean |x| = {np.abs(x).mean():.4f}")

# %%
# Small delta pins each eigenstate to a pole. Large delta pulls it onto the x axis.
# All builders are real, so y vanishes identically.
for r in bloch_sweep(5.0, -3, 3):
    print(f"m = {r['m']:2d} {r['band']:5s}  x = {r['x']:+.4f}  y = {r['y']:+.1e}  z = {r['z']:+.4f}")
