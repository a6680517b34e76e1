"""
Frequency versus initial occupancy
==================================

Scan n0 and compare the dominant population frequency with the
large-occupancy estimate 2 g sqrt(n0 + 1/2).  Small occupancies undershoot
it; the motion freezes entirely at n0 = 0.
"""

# %%
import numpy as np

from mqcrabi import dominant_frequency_scan
from mqcrabi.duffing import DuffingParams, population_frequency

grid = np.array([1e-5, 0.01, 0.1, 0.3, 0.59, 1.0, 2.0, 5.0, 10.0, 20.0])
rows = dominant_frequency_scan(grid)

# %%
print(f"{'n0':>8} {'peak':>8} {'exact':>8} {'asymptote':>10}")
for n0, peak, asym in rows:
    exact = population_frequency(DuffingParams(n0))
    print(f"{n0:8.5g} {peak:8.4f} {exact:8.4f} {asym:10.4f}")

# %%
# At n0 = 0 the emitter never leaves the excited state: no peak at all.
print("n0 = 0 ->", dominant_frequency_scan([0.0])[0, 1])
