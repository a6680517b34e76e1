"""
Rabi oscillations: quantum, Duffing and mean-field
==================================================

A two-level emitter coupled to one optical mode, emitter initially excited.
The quantum answer oscillates at exactly 2g.  A classical mode with
occupancy n0 drives a Duffing-type motion of the excited amplitude whose
frequency depends on n0; around n0 = 0.59 it lands on 2g.
"""

# %%
import numpy as np

from mqcrabi import DuffingParams, ModelParams, MqcState, rabi_spectrum, solve_duffing
from mqcrabi.mqc import focused_initial, integrate_trajectory
from mqcrabi.quantum import propagate_quantum

params = ModelParams.resonant(omega=50.0, g=1.0)
n0 = 0.59

# %%
# Exact quantum populations on the single-excitation subspace.
t = np.arange(20001) * 0.01
quantum = propagate_quantum(params, "excited", t)

# %%
# The reduced amplitude equation, and the full mean-field trajectory
# (no rotating-wave approximation, so it carries a small 2 Omega ripple).
duffing = solve_duffing(DuffingParams(n0), t)
mqc = integrate_trajectory(MqcState.excited(focused_initial(n0, params).z), params, t_final=200.0)

# %%
for name, series in (("quantum", quantum), ("duffing", duffing), ("mqc", mqc)):
    print(f"{name:>8}: dominant frequency {rabi_spectrum(series).dominant_frequency:.4f} g")

# %%
# The Duffing curve spends more time near P_e = 1 than near 0.
print("time-averaged P_e, Duffing:", round(float(duffing["P_e"].mean()), 3))
print("largest |P_e| gap Duffing vs mean-field up to gt = 25:",
      round(float(np.max(np.abs(duffing["P_e"][:2501] - mqc["P_e"][:2501]))), 4))
