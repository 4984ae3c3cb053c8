"""A row of fluxons coupled link by link: an excitation spreads along it."""

# %%
import numpy as np

from fluxring import chain_transport_experiment

n = 6
res = chain_transport_experiment(n, [0] * (n - 1), delta=1.0, excited_site=0, t_max=20.0, dt=0.05)
print(f"largest occupation away from site 0: {res.peak_value:.3f} at t = {res.peak_time:.2f}")

# %%
occ = np.stack([res.series[f"P_{i}"] for i in range(n)], axis=1)
for t in (0.0, 2.0, 5.0, 10.0, 20.0):
    k = int(np.argmin(np.abs(res.series.times - t)))
    print(f"t = {t:5.1f}  " + "  ".join(f"{p:.3f}" for p in occ[k]))

# %%
# Alternating link momenta flip the sign of the zz coupling from link to link.
alt = chain_transport_experiment(n, [1, -1, 1, -1, 1], delta=1.0, t_max=20.0, dt=0.05)
print(f"alternating links: peak {alt.peak_value:.3f} at t = {alt.peak_time:.2f}")
