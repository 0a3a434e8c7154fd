"""Closed-form resolution limits on the unit disk and the upper half plane.

At error level ``eps`` and ellipticity ``K`` the radius at the disk center is

    ell0 = sqrt((sqrt(4 + eps^2) - 2) / (eps k)),   k = (K-1)/(K+1)

and the limit at other centers follows by Möbius transport of ``B_ell0(0)``.
All square-root differences are evaluated in rationalized form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .conformal import halfplane_params, rho_from_center
from .spectral_dn import Contrast, op_norm_diff_extremes


class Regime(str, enum.Enum):
    DISK_CENTER = "disk-center"
    DISK_DEPTH = "disk-depth"
    HALF_PLANE = "half-plane"


class NotMeaningfulError(ValueError):
    """The center resolution is not below 1, so no inclusion is resolvable."""

    def __init__(self, ell0: float, eps: float, K: float):
        self.ell0, self.eps, self.K = ell0, eps, K
        super().__init__(
            f"ell0={ell0!r} >= 1 for eps={eps!r}, K={K!r}: every inclusion is indistinguishable "
            f"(need eps < eps_max={eps_max(K)!r}, equivalently K > K*={k_threshold(eps)!r})"
        )


@dataclass(frozen=True)
class ResolutionResult:
    ell: float
    meaningful: bool
    regime: Regime
    ell0: float
    eps: float
    K: float
    q: float = 0.0

    @property
    def eps_max(self) -> float:
        return eps_max(self.K)

    @property
    def k_threshold(self) -> float:
        return k_threshold(self.eps)


def _contrast(K) -> Contrast:
    return K if isinstance(K, Contrast) else Contrast(float(K))


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not (eps > 0.0 and np.isfinite(eps)):
        raise ValueError(f"error level must be positive, got {eps!r}")
    return eps


def _strict_k(contrast: Contrast) -> float:
    if contrast.K == 1.0:
        raise ValueError("K = 1: both extreme conductivities coincide and the resolution limit is unbounded")
    return contrast.k


def center_radius(eps, k):
    """``ell0`` from the contrast parameter ``k`` (vectorized, no validation)."""
    eps = np.asarray(eps, dtype=float)
    # sqrt(4 + eps^2) - 2 = eps^2 / (sqrt(4 + eps^2) + 2)
    return np.sqrt(eps / (k * (np.hypot(2.0, eps) + 2.0)))


def depth_radius_disk(ell0, q):
    """Resolution limit at center ``q`` given the center limit ``ell0 < 1``."""
    return rho_from_center(q, ell0)


def depth_radius_halfplane(ell0, q):
    """Resolution limit at depth ``q`` below the line, linear in ``q``."""
    return 2.0 * np.asarray(q, dtype=float) * ell0 / (1.0 + ell0 * ell0)


def tangent_slope(ell0: float) -> float:
    """``2 ell0 / (1 + ell0^2)``: slope of ``ell_q`` at ``q = 1`` and aperture of the half-plane cone."""
    return 2.0 * ell0 / (1.0 + ell0 * ell0)


def resolution_center(eps, K) -> ResolutionResult:
    eps = _check_eps(eps)
    contrast = _contrast(K)
    ell0 = float(center_radius(eps, _strict_k(contrast)))
    # compare error levels, not radii: eps == eps_max must report ell0 = 1 as not meaningful
    meaningful = eps < eps_max(contrast)
    return ResolutionResult(ell0, meaningful, Regime.DISK_CENTER, ell0, eps, contrast.K)


def _meaningful_center(eps, K) -> ResolutionResult:
    center = resolution_center(eps, K)
    if not center.meaningful:
        raise NotMeaningfulError(center.ell0, center.eps, center.K)
    return center


def resolution_disk(eps, K, q: float) -> ResolutionResult:
    if not (0.0 <= q < 1.0):
        raise ValueError(f"center q must lie in [0, 1), got {q!r}")
    center = _meaningful_center(eps, K)
    ell = depth_radius_disk(center.ell0, q)
    return ResolutionResult(ell, True, Regime.DISK_DEPTH, center.ell0, center.eps, center.K, q)


def resolution_halfplane(eps, K, q: float) -> ResolutionResult:
    if not q > 0.0:
        raise ValueError(f"depth q must be positive, got {q!r}")
    center = _meaningful_center(eps, K)
    ell = float(depth_radius_halfplane(center.ell0, q))
    return ResolutionResult(ell, True, Regime.HALF_PLANE, center.ell0, center.eps, center.K, q)


def halfplane_beta(ell0: float, q: float) -> float:
    """Imaginary part of the pole of the map used at depth ``q``."""
    return halfplane_params(q, ell0)[0]


def eps_max(K) -> float:
    """Largest error level for which ``ell0 < 1``: ``4k / (1 - k^2)``."""
    k = _strict_k(_contrast(K))
    return 4.0 * k / ((1.0 - k) * (1.0 + k))


def c_lower_bound(eps) -> float:
    """``C(eps)``, the infimum of ``ell0`` over all contrasts."""
    eps = _check_eps(eps)
    return float(np.sqrt(eps / (np.hypot(2.0, eps) + 2.0)))


def k_threshold(eps) -> float:
    """``K* = (eps + sqrt(4 + eps^2)) / 2``; below it every pair in the class is indistinguishable."""
    eps = float(eps)
    if eps < 0.0:
        raise ValueError(f"error level must be nonnegative, got {eps!r}")
    return float(0.5 * (eps + np.hypot(2.0, eps)))


def indistinguishable(K, r: float, eps) -> bool:
    """Whether every pair in the class on a radius-``r`` disk is ``eps``-indistinguishable."""
    eps = _check_eps(eps)
    return op_norm_diff_extremes(_contrast(K), r) <= eps
