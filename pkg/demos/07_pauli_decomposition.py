"""Reading the models as spin Hamiltonians."""

# %%
import numpy as np

from fluxring import build_chain, build_two_fluxon, pauli_decompose
from fluxring.hamiltonians import chain_decomposition, nominal_two_fluxon_coefficients

# The zz coupling changes sign between m = 0 and m = 1.
for m in range(-3, 4):
    dec = pauli_decompose(build_two_fluxon(m, 1.0), 2)
    print(f"m = {m:2d}  h0 = {dec.h0:6.2f}  J = {dec.zz_couplings[(0, 1)]:+.2f}  "
          f"field z = {dec.fields[0][2]:+.2f}")

# %%
# Reference values from the nominal coefficient formulas, for comparison.
print(nominal_two_fluxon_coefficients(2, 1.0))

# %%
# A chain is a transverse-field Ising model with one coupling per link.
dec = chain_decomposition(4, [1, 0, -1], 1.0)
print("zz:", dec.zz_couplings)
print("x fields:", [f[0] for f in dec.fields])
print("matches build_chain:", np.abs(dec.reconstruct() - build_chain(4, [1, 0, -1], 1.0)).max())
