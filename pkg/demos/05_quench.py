"""Switching on a ring drive entangles the ring with the fluxon."""

# %%
from fluxring import quench_experiment

res = quench_experiment(delta=1.0, g=0.5, t_max=20.0, dt=0.01)
s, ef = res.series["S_f"], res.series["E_f"]
print(f"S_f(0) = {s[0]:.3g}, max S_f = {s.max():.4f} bits at t = {res.peak_time:.2f}")
print(f"E_f(0) = {ef[0]:.4f}, max E_f = {ef.max():.4f}")

# %%
# The total energy does not move; the drive only redistributes it.
et = res.series["E_total"]
print("E_total drift:", et.max() - et.min())

# %%
for g in (0.0, 0.1, 0.5, 1.0):
    r = quench_experiment(delta=1.0, g=g, t_max=20.0, dt=0.05)
    print(f"g = {g:3.1f}  max S_f = {r.peak_value:.4f}")
