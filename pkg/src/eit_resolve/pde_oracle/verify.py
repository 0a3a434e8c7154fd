"""Cross-checks of the closed forms against the numerical oracles.

Each suite returns a list of :class:`CaseResult` in a fixed order; cases may
run on a thread pool (size from ``EIT_RESOLVE_THREADS``) but aggregation is
by input position, so reports do not depend on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

from ..conformal import MobiusDiskAuto, disk_params_from_p
from ..spectral_dn import (
    ConcentricProfile,
    Contrast,
    FourierBoundaryData,
    dn_map,
    dn_multiplier,
    quadratic_form,
)
from .fem import ConductivityField, fem_quadratic_form, inclusion_mask
from .mesh import TriMesh, mesh_unit_disk
from .radial import RadialProfile, radial_multiplier_oracle

PSI_MODES = 128
SPECTRAL_TOL = 1e-12
CONFORMAL_TOL = 1e-2
MONOTONE_REL_TOL = 1e-3

SPECTRAL_C = (0.1, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0, 10.0)
SPECTRAL_R = (0.05, 0.25, 0.5, 0.75, 0.95)
SPECTRAL_N = tuple(range(1, 33))
CONFORMAL_P = (0.2, 0.4, 0.6)
CONFORMAL_K = (3.0, 10.0)
CONFORMAL_R = (0.2, 0.3)
CONFORMAL_MODES = (1, 2)


@dataclass(frozen=True)
class CaseResult:
    suite: str
    params: dict
    discrepancy: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.discrepancy <= self.tolerance))

    def describe(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}({args}): {self.discrepancy:.3e} <= {self.tolerance:.1e}"


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("EIT_RESOLVE_THREADS", "1")))
    except ValueError:
        return 1


def _run(fn: Callable, cases: Sequence) -> list:
    workers = min(worker_count(), max(1, len(cases)))
    if workers == 1:
        return [fn(c) for c in cases]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cases))


def transformed_boundary_data(phi: FourierBoundaryData, omega: Callable, N: int = PSI_MODES, M: int | None = None) -> FourierBoundaryData:
    """Fourier coefficients of ``theta -> phi(arg omega(e^{i theta}))``.

    ``omega`` must map the unit circle to itself.  ``M`` equispaced samples
    (default ``8N``) feed the trapezoidal rule.
    """
    M = 8 * N if M is None else M
    theta = 2.0 * np.pi * np.arange(M) / M
    image = omega(np.exp(1j * theta))
    samples = phi.evaluate(np.angle(image))
    return FourierBoundaryData.from_samples(samples, N)


def conformal_energies(p: float, K: float, r: float, phi: FourierBoundaryData, h: float,
                       N: int = PSI_MODES, M: int | None = None) -> tuple[float, float]:
    """``(fem_energy, spectral_energy)`` for the two sides of the invariance identity.

    FEM side: value ``K`` on ``B_rho(q)`` with ``(q, rho)`` the image of
    ``B_r(0)`` under ``f_p^{-1}``, data ``phi``.  Spectral side: concentric
    profile ``(K, r)`` with data ``phi o f_p^{-1}``.
    """
    q, rho = disk_params_from_p(p, r)
    mesh = mesh_unit_disk(h, inclusion=(q, rho))
    fem = fem_quadratic_form(mesh, ConductivityField.inclusion(mesh, q, rho, K), phi)
    psi = transformed_boundary_data(phi, MobiusDiskAuto(p).inverse(), N, M)
    spectral = quadratic_form(dn_map(ConcentricProfile(K, r), psi.N), psi)
    return fem, spectral


def verify_conformal_invariance(p: float, K, r: float, phi: FourierBoundaryData, h: float,
                                N: int = PSI_MODES, M: int | None = None) -> float:
    """Relative gap between the FEM energy off-center and the spectral energy after transport."""
    K = K.K if isinstance(K, Contrast) else float(K)
    fem, spectral = conformal_energies(p, K, r, phi, h, N, M)
    return abs(fem - spectral) / abs(spectral)


def verify_monotonicity(mesh: TriMesh, samples: Sequence[ConductivityField], phi, tolerance: float,
                        K: float, mask: np.ndarray) -> bool:
    """Whether every sample's energy lies between those of the two extremes.

    ``mask`` flags the triangles of the inclusion; samples must equal 1
    outside it and lie in ``[1/K, K]`` inside.  The low extreme takes ``1/K``
    on the inclusion, the high extreme ``K``.
    """
    mask = np.asarray(mask, dtype=bool)
    for i, gamma in enumerate(samples):
        inside = gamma.values[mask]
        if np.any(gamma.values[~mask] != 1.0) or np.any(inside < 1.0 / K) or np.any(inside > K):
            raise ValueError(f"sample {i} is not a perturbation in the class for K={K!r}")
    low = fem_quadratic_form(mesh, ConductivityField(np.where(mask, 1.0 / K, 1.0)), phi)
    high = fem_quadratic_form(mesh, ConductivityField(np.where(mask, K, 1.0)), phi)
    energies = _run(lambda g: fem_quadratic_form(mesh, g, phi), list(samples))
    return all(low - tolerance <= e <= high + tolerance for e in energies)


def random_class_samples(mask: np.ndarray, K: float, count: int, rng: np.random.Generator) -> list[ConductivityField]:
    """Per-triangle values log-uniform in ``[1/K, K]`` on the inclusion, 1 outside."""
    out = []
    for _ in range(count):
        values = np.exp(rng.uniform(-np.log(K), np.log(K), size=mask.shape))
        out.append(ConductivityField(np.where(mask, np.clip(values, 1.0 / K, K), 1.0)))
    return out


def spectral_suite() -> list[CaseResult]:
    results = []
    for c, r in product(SPECTRAL_C, SPECTRAL_R):
        oracle = RadialProfile.two_phase(c, r)
        profile = ConcentricProfile(c, r)
        worst, worst_n = 0.0, 0
        for n in SPECTRAL_N:
            ref = radial_multiplier_oracle(oracle, n)
            err = abs(dn_multiplier(profile, n) - ref) / abs(ref)
            if err >= worst:
                worst, worst_n = err, n
        results.append(CaseResult("spectral", {"c": c, "r": r, "worst_n": worst_n}, worst, SPECTRAL_TOL))
    return results


def conformal_suite(h: float) -> list[CaseResult]:
    cases = list(product(CONFORMAL_P, CONFORMAL_K, CONFORMAL_R, CONFORMAL_MODES))

    def one(case):
        p, K, r, m = case
        gap = verify_conformal_invariance(p, K, r, FourierBoundaryData.cos(m), h)
        return CaseResult("conformal", {"p": p, "K": K, "r": r, "phi": f"cos({m}t)", "h": h}, gap, CONFORMAL_TOL)

    return _run(one, cases)


def monotonic_suite(h: float, seed: int = 0, count: int = 10) -> list[CaseResult]:
    """Random class members on ``B_0.3(0.2)`` for ``K in {3, 10}`` and ``cos t``, ``cos 2t``.

    The reported discrepancy is the largest violation of the extreme bounds
    relative to the upper extreme energy (0 when all samples are bracketed).
    """
    rng = np.random.default_rng(seed)
    center, radius = 0.2, 0.3
    mesh = mesh_unit_disk(h, inclusion=(center, radius))
    mask = inclusion_mask(mesh, center, radius)
    results = []
    for K, m in product(CONFORMAL_K, CONFORMAL_MODES):
        phi = FourierBoundaryData.cos(m)
        samples = random_class_samples(mask, K, count, rng)
        low = fem_quadratic_form(mesh, ConductivityField(np.where(mask, 1.0 / K, 1.0)), phi)
        high = fem_quadratic_form(mesh, ConductivityField(np.where(mask, K, 1.0)), phi)
        energies = _run(lambda g: fem_quadratic_form(mesh, g, phi), samples)
        violation = max(max(low - e, e - high, 0.0) for e in energies) / high
        results.append(CaseResult("monotonic", {"K": K, "phi": f"cos({m}t)", "h": h, "seed": seed},
                                  violation, MONOTONE_REL_TOL))
    return results


def conformal_refinement_suite(h_values: Sequence[float] = (0.08, 0.04, 0.02)) -> list[CaseResult]:
    """Conformal suite on the finest mesh; a case also fails when its gap does not
    shrink along ``h_values``."""
    coarse_to_fine = sorted(h_values, reverse=True)
    runs = [conformal_suite(h) for h in coarse_to_fine]
    out = []
    for cases in zip(*runs):
        gaps = [c.discrepancy for c in cases]
        decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
        finest = cases[-1]
        params = dict(finest.params, gaps=tuple(float(g) for g in gaps))
        result = CaseResult("conformal-refine", params, finest.discrepancy if decreasing else np.inf, finest.tolerance)
        out.append(result)
    return out
