"""
Detuned emitter
===============

Move the transition energy away from the mode frequency.  The quantum beat
speeds up to 2 sqrt(g^2 + Delta^2) with reduced contrast; the mean-field
trajectory follows with a lower frequency.
"""

# %%
from mqcrabi.experiments import offresonant

result = offresonant([0.9, 0.95, 0.98, 1.0, 1.02, 1.05, 1.1], dt=1.25e-3)

# %%
print(f"{'ratio':>6} {'mqc':>7} {'quantum':>8} {'rel diff':>9} {'min P_e':>8}")
for row in zip(result.ratios, result.omega_mqc, result.omega_quantum,
               result.relative_difference, result.quantum_minimum):
    print("{:6.2f} {:7.3f} {:8.3f} {:9.3f} {:8.3f}".format(*row))
