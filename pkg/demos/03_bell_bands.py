"""Two fluxons on one ring: two of the four bands are Bell states."""

# %%
import numpy as np

from fluxring import StateVector, partial_trace, von_neumann_entropy
from fluxring.spectra import (
    BAND_BELL_LABELS,
    QUOTED_BAND_BELL_LABELS,
    dominant_bell,
    two_fluxon_band_states,
)

m, delta = 1, 3.0
for label, (energy, vec) in two_fluxon_band_states(m, delta).items():
    bell, fid = dominant_bell(vec)
    s = von_neumann_entropy(partial_trace(StateVector((2, 2), vec), 0))
    print(f"{label}: E = {energy:9.4f}  closest Bell state {bell} (F = {fid:.6f})  S = {s:.6f} bits")

# %%
# The pairing read off the matrix, and the swapped pairing that is also in use.
print("matrix pairing: ", BAND_BELL_LABELS)
print("swapped pairing:", QUOTED_BAND_BELL_LABELS)

# %%
# E1 and E2 do not depend on m at all, only their energies do.
for m in (-4, 0, 4):
    bands = two_fluxon_band_states(m, delta)
    print(m, np.round(bands["E1"][1].real, 6), np.round(bands["E2"][1].real, 6))
