"""Moving a flux excitation from one fluxon to the other through the ring."""

# %%
import numpy as np

from fluxring import teleport_experiment

res = teleport_experiment(delta=1.0, m=0, t_max=12.0, dt=0.01)
print(f"peak P_10 = {res.peak_value:.6f} at t = {res.peak_time:.2f}")
print("complete transfer (>= 0.99):", res.metadata["complete_transfer"])

# %%
# Entropy of fluxon 1 vanishes when the excitation is fully on one side.
times = res.series.times
for t in (0.0, 1.5, 3.0, 4.5, 6.1, 9.0, 12.0):
    k = int(np.argmin(np.abs(times - t)))
    print(f"t = {times[k]:5.2f}  P_01 = {res.series['P_01'][k]:.4f}  "
          f"P_10 = {res.series['P_10'][k]:.4f}  S_f1 = {res.series['S_f1'][k]:.4f}")

# %%
# Without tunnelling nothing moves.
frozen = teleport_experiment(delta=0.0, t_max=5.0, dt=0.5)
print("delta = 0:", frozen.series["P_01"])
