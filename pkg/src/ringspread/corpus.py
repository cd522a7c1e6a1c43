"""Seeded random states for property checks."""

import numpy as np

from .circle_state import CircleState


def random_states(count: int, seed: int = 20030717, mmax: int = 8, width: float = 8.0):
    """``count`` states with Gaussian-decaying random coefficients.

    Complex normal amplitudes over ``|m| <= mmax`` are damped by
    ``exp(-m**2 / width)`` and normalized, so the states have no symmetry
    but stay well inside the range where every measure is cheap.
    """
    rng = np.random.default_rng(seed)
    ms = np.arange(-mmax, mmax + 1)
    env = np.exp(-ms ** 2 / width)
    out = []
    for i in range(count):
        c = (rng.standard_normal(ms.size) + 1j * rng.standard_normal(ms.size)) * env
        c /= np.linalg.norm(c)
        out.append(CircleState(-mmax, c, f"random[{i}]"))
    return out
