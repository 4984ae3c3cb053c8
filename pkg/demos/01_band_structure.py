"""Band structure of a ring particle threaded by one fluxon.

Run with ``python3 demos/01_band_structure.py``.
"""

# %%
import numpy as np

from fluxring import SystemSpec, band_sweep, build_single_fluxon, eig_hermitian

# The fluxon mixes ring states m and m - 1 with strength delta.
print(build_single_fluxon(2, 5.0).real)

# %%
# Sweep m and compare the numeric eigenvalues with the closed form.
table = band_sweep(SystemSpec(m=0, delta=5.0, n_fluxons=1), -7, 8)
print(" m    E_minus      E_plus")
for m, (lo, hi) in zip(table.m_values, table.numeric):
    print(f"{m:2d} {lo:11.5f} {hi:11.5f}")
print("max |numeric - closed| =", np.abs(table.numeric - table.closed).max())

# %%
# The gap at m is sqrt((1 - 2m)^2 + 4 delta^2): smallest where the two parabolas cross.
gaps = table.numeric[:, 1] - table.numeric[:, 0]
print("smallest gap", gaps.min(), "at m =", table.m_values[gaps.argmin()], "and", table.m_values[gaps.argmin() + 1])

# %%
# Weak tunnelling leaves two shifted parabolas m^2 and (m-1)^2.
values = eig_hermitian(build_single_fluxon(3, 0.01)).values
print("delta = 0.01, m = 3:", values, "vs", [4, 9])
