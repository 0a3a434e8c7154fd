"""Per-mode radial solver for piecewise-constant radial conductivities.

For the mode ``e^{i n theta}`` the solution is ``R(s) e^{i n theta}`` with
``R = a s^n + b s^{-n}`` on each annulus.  The state ``(R, s gamma R' / n)``
is continuous across interfaces, so only the annulus propagators are needed:
with ``u = a s^n`` and ``w = b s^{-n}`` the state at ``s`` is
``(u + w, g (u - w))`` and going from ``s1`` to ``s2`` multiplies ``u`` by
``t = (s2/s1)^n`` and ``w`` by ``1/t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadialProfile:
    """Conductivity ``values[0]`` on ``B_{r_1}(0)``, ``values[j]`` on ``r_j < s < r_{j+1}``,
    ``values[-1]`` on ``r_m < s < 1``."""

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        b = tuple(float(x) for x in self.breakpoints)
        v = tuple(float(x) for x in self.values)
        if len(v) != len(b) + 1:
            raise ValueError(f"{len(b)} breakpoints need {len(b) + 1} values, got {len(v)}")
        if any(x <= 0.0 for x in v):
            raise ValueError("conductivity values must be positive")
        edges = (0.0, *b, 1.0)
        if any(lo >= hi for lo, hi in zip(edges, edges[1:])):
            raise ValueError(f"breakpoints must be strictly increasing inside (0, 1): {b}")
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", v)

    @classmethod
    def two_phase(cls, c: float, r: float, background: float = 1.0) -> "RadialProfile":
        return cls((r,), (c, background))

    def within(self, K: float) -> bool:
        return all(1.0 / K <= x <= K for x in self.values)


def annulus_transfer(g: float, s1: float, s2: float, n: int) -> np.ndarray:
    """2x2 propagator of ``(R, s g R'/n)`` from radius ``s1`` to ``s2`` in a
    region of constant conductivity ``g``."""
    t = (s2 / s1) ** n
    cosh_like = 0.5 * (t + 1.0 / t)
    sinh_like = 0.5 * (t - 1.0 / t)
    return np.array([[cosh_like, sinh_like / g], [g * sinh_like, cosh_like]])


def radial_multiplier_oracle(profile: RadialProfile, n: int) -> float:
    """D-N multiplier ``gamma(1) R'(1) / R(1)`` of mode ``n`` (``|n| >= 1``)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("mode 0 carries no multiplier")
    radii = (*profile.breakpoints, 1.0)
    # regular solution s^n in the core: state (1, g0) at s = r_1, up to scale
    state = np.array([1.0, profile.values[0]])
    for j in range(1, len(radii)):
        state = annulus_transfer(profile.values[j], radii[j - 1], radii[j], n) @ state
        if not np.all(np.isfinite(state)) or state[0] == 0.0:
            raise ArithmeticError(f"singular transfer at mode {n}, annulus {j}")
        state /= np.abs(state).max()
    return float(n * state[1] / state[0])
