"""
Vacuum fluctuations from a Wigner ensemble
==========================================

Instead of fixing n0, draw the mode coordinates from the vacuum Wigner
distribution and average.  The ensemble population damps out and settles
above 1/2 instead of oscillating forever.

1000 trajectories take about half a minute on one core.
"""

# %%
import sys

import numpy as np

from mqcrabi import EnsembleSpec, ModelParams, run_ensemble

count = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
params = ModelParams.resonant(50.0)
spec = EnsembleSpec(sampler="wigner", trajectory_count=count, rng_seed=1, t_final=25.0)
ens = run_ensemble(spec, params)

# %%
print("mean initial occupancy:", round(float(ens["n"][0]), 3))
for t0 in (0, 5, 10, 15, 20, 25):
    print(f"gt = {t0:>2}: <P_e> = {ens['P_e'][int(round(t0 / ens.dt))]:.3f}")
late = ens.t >= 15.0 - 1e-9
print("average over gt in [15, 25]:", round(float(np.mean(ens["P_e"][late])), 3))
