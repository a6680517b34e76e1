"""
Emitter starting in its ground state
====================================

Put the emitter in its ground state and the mode at n0 = 1.59, half a
quantum of zero-point occupancy plus one photon.  The Duffing coefficients
change, and the amplitude starts at zero with a finite rate.
"""

# %%
from mqcrabi.experiments import compare

result = compare(initial_tls="ground", trajectories=None)
for name, value in result.summary["dominant_frequency"].items():
    print(f"{name:>12}: {value:.4f} g")
print("max pairwise gaps up to gt = 25:")
for pair, gap in result.summary["max_pairwise_deviation"].items():
    print(f"  {pair}: {gap:.3f}")
