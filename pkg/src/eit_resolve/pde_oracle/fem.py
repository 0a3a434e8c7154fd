"""Piecewise-linear Galerkin solver for ``div(gamma grad u) = 0`` on the unit disk.

Conductivities are constant per triangle; Dirichlet data are interpolated at
the boundary vertices.  The reduced interior system is symmetric positive
definite and is solved by Jacobi-preconditioned conjugate gradients from a
zero initial guess.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import cg

from ..spectral_dn import FourierBoundaryData
from .mesh import TriMesh

RTOL = 1e-10


class SolverError(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        self.iterations, self.residual = iterations, residual
        super().__init__(f"CG did not converge: {iterations} iterations, relative residual {residual:.3e}")


@dataclass(frozen=True)
class ConductivityField:
    """Per-triangle conductivity values."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or np.any(values <= 0.0) or not np.all(np.isfinite(values)):
            raise ValueError("conductivity must be a 1-D array of positive finite values")
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, mesh: TriMesh, value: float = 1.0) -> "ConductivityField":
        return cls(np.full(len(mesh.triangles), float(value)))

    @classmethod
    def inclusion(cls, mesh: TriMesh, center: complex, radius: float, value: float) -> "ConductivityField":
        """``value`` on triangles whose centroid lies in ``B_radius(center)``, 1 elsewhere."""
        return cls(np.where(inclusion_mask(mesh, center, radius), float(value), 1.0))

    @classmethod
    def from_sampler(cls, mesh: TriMesh, sampler) -> "ConductivityField":
        c = mesh.centroids()
        return cls(np.asarray(sampler(c[:, 0] + 1j * c[:, 1]), dtype=float))

    def within(self, K: float) -> bool:
        return bool(np.all((self.values >= 1.0 / K) & (self.values <= K)))


def inclusion_mask(mesh: TriMesh, center: complex, radius: float) -> np.ndarray:
    c = mesh.centroids()
    return np.abs(c[:, 0] + 1j * c[:, 1] - complex(center)) < radius


@dataclass(frozen=True)
class FemSolution:
    values: np.ndarray  # per vertex; complex when the boundary data are
    energy: float
    iterations: int


def stiffness_matrix(mesh: TriMesh, gamma: ConductivityField) -> sp.csr_matrix:
    """Assembled P1 stiffness matrix ``int gamma grad phi_i . grad phi_j``."""
    if len(gamma.values) != len(mesh.triangles):
        raise ValueError(f"{len(gamma.values)} conductivity values for {len(mesh.triangles)} triangles")
    tri = mesh.triangles
    p = mesh.vertices[tri]
    # rotated opposite edges give area-scaled barycentric gradients
    e = np.roll(p, -1, axis=1) - np.roll(p, 1, axis=1)
    grads = np.stack([-e[..., 1], e[..., 0]], axis=-1)
    area = mesh.areas()
    local = np.einsum("tid,tjd->tij", grads, grads) * (gamma.values / (4.0 * area))[:, None, None]
    rows = np.repeat(tri, 3, axis=1).ravel()
    cols = np.tile(tri, (1, 3)).ravel()
    n = mesh.n_vertices
    return sp.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()


def element_energy(mesh: TriMesh, gamma: ConductivityField, u: np.ndarray) -> float:
    """``sum_T gamma_T |T| |grad u|_T|^2`` for a real nodal vector ``u``."""
    p = mesh.vertices[mesh.triangles]
    uu = u[mesh.triangles]
    d1, d2 = p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]
    du1, du2 = uu[:, 1] - uu[:, 0], uu[:, 2] - uu[:, 0]
    two_area = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    gx = (du1 * d2[:, 1] - du2 * d1[:, 1]) / two_area
    gy = (du2 * d1[:, 0] - du1 * d2[:, 0]) / two_area
    return float(np.sum(gamma.values * 0.5 * two_area * (gx * gx + gy * gy)))


def _boundary_values(mesh: TriMesh, boundary) -> np.ndarray:
    if isinstance(boundary, FourierBoundaryData):
        return np.asarray(boundary.evaluate(mesh.theta))
    values = np.asarray(boundary)
    if values.shape != mesh.theta.shape:
        raise ValueError(f"expected {mesh.theta.shape[0]} boundary values, got shape {values.shape}")
    return values


def _pcg(A: sp.csr_matrix, b: np.ndarray) -> tuple[np.ndarray, int]:
    if not np.any(b):
        return np.zeros_like(b), 0
    M = sp.diags(1.0 / A.diagonal())
    iterations = 0

    def count(_):
        nonlocal iterations
        iterations += 1

    x, info = cg(A, b, x0=np.zeros_like(b), rtol=RTOL, atol=0.0, M=M, maxiter=10 * len(b), callback=count)
    residual = np.linalg.norm(b - A @ x) / np.linalg.norm(b)
    if info != 0 or residual > 10 * RTOL:
        raise SolverError(iterations, residual)
    return x, iterations


def fem_solve_dirichlet(mesh: TriMesh, gamma: ConductivityField, boundary) -> FemSolution:
    """Discrete solution with nodal boundary data ``boundary``.

    ``boundary`` is a :class:`FourierBoundaryData` evaluated at the boundary
    angles, or an array of values at the boundary vertices.
    """
    A = stiffness_matrix(mesh, gamma)
    g = _boundary_values(mesh, boundary)
    interior = mesh.interior()
    A_ii = A[interior][:, interior]
    A_ib = A[interior][:, mesh.boundary]

    parts = [g.real, g.imag] if np.iscomplexobj(g) else [g]
    solved, energy, iterations = [], 0.0, 0
    for gb in parts:
        u = np.zeros(mesh.n_vertices)
        u[mesh.boundary] = gb
        x, its = _pcg(A_ii, -(A_ib @ gb))
        u[interior] = x
        solved.append(u)
        energy += element_energy(mesh, gamma, u)
        iterations += its
    values = solved[0] + 1j * solved[1] if len(solved) == 2 else solved[0]
    return FemSolution(values, energy, iterations)


def fem_quadratic_form(mesh: TriMesh, gamma: ConductivityField, phi) -> float:
    """Dirichlet energy ``int gamma |grad u_h|^2`` of the discrete solution."""
    return fem_solve_dirichlet(mesh, gamma, phi).energy
