"""Möbius geometry of the unit disk and the upper half plane.

Two families of maps are used:

* disk automorphisms ``f_p(z) = (z - p) / (1 - p z)``, with ``f_p^{-1} = f_{-p}``;
* half-plane maps ``f_a(z) = (z - a) / (z - conj(a))`` sending the closed upper
  half plane onto the closed unit disk, ``a = alpha + i beta``, ``beta > 0``.

Inclusions are canonicalized to centers on the nonnegative real axis (disk)
or to the vertical line through ``alpha`` (half plane); rotations and
horizontal shifts do not change any of the quantities computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

Sampler = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DiskInclusion:
    q: float
    rho: float

    def __post_init__(self):
        if self.q < 0.0 or self.rho <= 0.0 or self.q + self.rho >= 1.0:
            raise ValueError(f"B_{self.rho}({self.q}) is not compactly contained in the unit disk")


@dataclass(frozen=True)
class HalfPlaneInclusion:
    alpha: float
    q: float
    rho: float

    def __post_init__(self):
        if self.q <= 0.0 or self.rho <= 0.0 or self.rho >= self.q:
            raise ValueError(f"B_{self.rho}({self.alpha}+{self.q}i) is not inside the upper half plane")

    @property
    def center(self) -> complex:
        return complex(self.alpha, self.q)


@dataclass(frozen=True)
class MobiusDiskAuto:
    """Disk automorphism ``z -> (z - p)/(1 - p z)``.

    The canonical pole parameter lies in ``[0, 1)``; inverses carry ``-p``.
    """

    p: float

    def __post_init__(self):
        if not (-1.0 < self.p < 1.0):
            raise ValueError(f"pole parameter must satisfy |p| < 1, got {self.p!r}")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[1.0, -self.p], [-self.p, 1.0]], dtype=complex)

    @property
    def pole(self) -> complex:
        return complex(np.inf) if self.p == 0.0 else complex(1.0 / self.p)

    def inverse(self) -> "MobiusDiskAuto":
        return MobiusDiskAuto(-self.p)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return (z - self.p) / (1.0 - self.p * z)


@dataclass(frozen=True)
class MobiusHalfPlane:
    """``z -> (z - a)/(z - conj(a))``, ``a = alpha + i beta``; or its inverse."""

    alpha: float
    beta: float
    inverted: bool = False

    def __post_init__(self):
        if not self.beta > 0.0:
            raise ValueError(f"beta must be positive, got {self.beta!r}")

    @property
    def a(self) -> complex:
        return complex(self.alpha, self.beta)

    @property
    def matrix(self) -> np.ndarray:
        a = self.a
        forward = np.array([[1.0, -a], [1.0, -a.conjugate()]], dtype=complex)
        if not self.inverted:
            return forward
        # adjugate: w -> (a - conj(a) w) / (1 - w)
        return np.array([[-a.conjugate(), a], [-1.0, 1.0]], dtype=complex)

    @property
    def pole(self) -> complex:
        return complex(1.0) if self.inverted else self.a.conjugate()

    def inverse(self) -> "MobiusHalfPlane":
        return MobiusHalfPlane(self.alpha, self.beta, not self.inverted)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        a = self.a
        if self.inverted:
            return (a - a.conjugate() * z) / (1.0 - z)
        return (z - a) / (z - a.conjugate())


MobiusMap = Union[MobiusDiskAuto, MobiusHalfPlane]


def mobius_apply(mobius: MobiusMap, z):
    """Image of ``z`` (scalar or array); raises at the pole."""
    zarr = np.asarray(z, dtype=complex)
    pole = mobius.pole
    if np.isfinite(pole) and np.any(np.isclose(zarr, pole, rtol=0.0, atol=1e-15)):
        raise ZeroDivisionError(f"point coincides with the pole {pole}")
    w = mobius(zarr)
    return complex(w) if np.ndim(z) == 0 else w


def _apply_matrix(m: np.ndarray, z: complex) -> complex:
    if np.isinf(z):
        return m[0, 0] / m[1, 0] if m[1, 0] != 0 else complex(np.inf)
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def image_disk(mobius: MobiusMap, center: complex, radius: float) -> tuple[complex, float]:
    """Exact image of the open disk ``B_radius(center)``.

    The image center is the image of the reflection of the pole across the
    source circle (symmetric points map to symmetric points, and the pole
    goes to infinity).  The pole must lie strictly outside the closed source
    disk, otherwise the image is not a bounded disk.
    """
    if radius <= 0.0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    center = complex(center)
    m = mobius.matrix
    pole = mobius.pole
    if np.isinf(pole):
        scale = m[0, 0] / m[1, 1]
        return complex(_apply_matrix(m, center)), float(abs(scale) * radius)
    offset = pole - center
    if abs(offset) <= radius:
        raise ValueError(f"pole {pole} lies inside or on the circle |z - {center}| = {radius}")
    reflected = center + radius * radius / offset.conjugate()
    new_center = _apply_matrix(m, reflected)
    # the point of the source circle farthest from the pole stays well-conditioned
    far = center - radius * offset / abs(offset)
    new_radius = abs(_apply_matrix(m, far) - new_center)
    return complex(new_center), float(new_radius)


def disk_params_from_p(p: float, r: float) -> tuple[float, float]:
    """Center and radius of ``f_p^{-1}(B_r(0))``."""
    if not (0.0 <= p < 1.0):
        raise ValueError(f"p must lie in [0, 1), got {p!r}")
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    denom = 1.0 - r * r * p * p
    return p * (1.0 - r * r) / denom, r * (1.0 - p * p) / denom


def rho_from_center(q, r):
    """Radius of the inclusion centered at ``q`` that ``f_p`` sends to ``B_r(0)``.

    Evaluates ``(1 + r^2 - sqrt(1 + (4q^2 - 2) r^2 + r^4)) / (2r)`` in the
    rationalized form ``2 r (1 - q^2) / (1 + r^2 + sqrt(...))``, which has no
    cancellation as ``q -> 1``.
    """
    q = np.asarray(q, dtype=float)
    root = np.sqrt(1.0 + (4.0 * q * q - 2.0) * r * r + r ** 4)
    out = 2.0 * r * (1.0 - q * q) / (1.0 + r * r + root)
    return float(out) if out.ndim == 0 else out


def p_from_disk_params(q: float, r: float) -> tuple[float, float]:
    """Pole ``p`` of the automorphism with ``f_p(B_rho(q)) = B_r(0)``, and ``rho``.

    ``p = sqrt(1/r^2 + s^2) - s`` with ``s = (1 - r^2)/(2 r^2 q)``, evaluated as
    ``(1/r^2) / (sqrt(1/r^2 + s^2) + s)``; ``p(0, r) = 0`` by continuity.
    """
    if not (0.0 <= q < 1.0):
        raise ValueError(f"q must lie in [0, 1), got {q!r}")
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    rho = rho_from_center(q, r)
    if q == 0.0:
        return 0.0, rho
    inv_r2 = 1.0 / (r * r)
    s = (1.0 - r * r) / (2.0 * r * r * q)
    p = inv_r2 / (np.hypot(np.sqrt(inv_r2), s) + s)
    return float(p), rho


def halfplane_params(q: float, r: float) -> tuple[float, float]:
    """``beta`` of the map sending ``B_rho(alpha + i q)`` onto ``B_r(0)``, and ``rho``."""
    if not q > 0.0:
        raise ValueError(f"depth q must be positive, got {q!r}")
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    s = 1.0 + r * r
    return q * (1.0 - r * r) / s, 2.0 * q * r / s


def inclusion_sampler(center: complex, radius: float, value: float, background: float = 1.0) -> Sampler:
    """Point sampler of ``background + (value - background) * chi_{B_radius(center)}``."""

    def sample(z):
        z = np.asarray(z, dtype=complex)
        return np.where(np.abs(z - center) < radius, value, background)

    return sample


def pullback_conductivity(gamma: Sampler, omega: Callable) -> Sampler:
    """Sampler ``y -> gamma(omega(y))``."""

    def pulled(y):
        return gamma(omega(np.asarray(y, dtype=complex)))

    return pulled
