"""Classical fourth-order Runge-Kutta step for tuples of state components.

The components may be Python scalars or numpy arrays of a common shape, which
lets the same step drive a single trajectory (fast scalar arithmetic) and a
batch of trajectories (vectorised arithmetic).
"""


def rk4_step(f, y, h):
    """Advance ``y`` (a tuple) by one step of size ``h`` under ``dy/dt = f(y)``."""
    k1 = f(y)
    k2 = f(tuple(a + 0.5 * h * b for a, b in zip(y, k1)))
    k3 = f(tuple(a + 0.5 * h * b for a, b in zip(y, k2)))
    k4 = f(tuple(a + h * b for a, b in zip(y, k3)))
    h6 = h / 6.0
    return tuple(
        a + h6 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)
    )
