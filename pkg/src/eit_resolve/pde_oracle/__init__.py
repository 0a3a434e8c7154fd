"""Independent numerical oracles: radial transfer matrices and P1 finite elements."""

from .fem import ConductivityField, FemSolution, SolverError, fem_quadratic_form, fem_solve_dirichlet, stiffness_matrix
from .mesh import MeshTooLargeError, TriMesh, mesh_unit_disk, read_mesh, write_mesh
from .radial import RadialProfile, radial_multiplier_oracle
from .verify import verify_conformal_invariance, verify_monotonicity

__all__ = [
    "ConductivityField",
    "FemSolution",
    "MeshTooLargeError",
    "RadialProfile",
    "SolverError",
    "TriMesh",
    "fem_quadratic_form",
    "fem_solve_dirichlet",
    "mesh_unit_disk",
    "radial_multiplier_oracle",
    "read_mesh",
    "stiffness_matrix",
    "verify_conformal_invariance",
    "verify_monotonicity",
    "write_mesh",
]
