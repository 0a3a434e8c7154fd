import numpy as np
import pytest

from eit_resolve.conformal import disk_params_from_p
from eit_resolve.pde_oracle import (
    ConductivityField,
    MeshTooLargeError,
    RadialProfile,
    fem_quadratic_form,
    fem_solve_dirichlet,
    mesh_unit_disk,
    radial_multiplier_oracle,
    read_mesh,
    stiffness_matrix,
    verify_conformal_invariance,
    verify_monotonicity,
    write_mesh,
)
from eit_resolve.pde_oracle.fem import inclusion_mask
from eit_resolve.pde_oracle.verify import (
    random_class_samples,
    spectral_suite,
    transformed_boundary_data,
)
from eit_resolve.conformal import MobiusDiskAuto
from eit_resolve.spectral_dn import FourierBoundaryData


@pytest.fixture(scope="module")
def disk_mesh():
    return mesh_unit_disk(0.04)


# ---- radial transfer matrices -------------------------------------------------


def test_radial_homogeneous():
    for n in [1, 2, 9, -4]:
        assert radial_multiplier_oracle(RadialProfile((), (1.0,)), n) == abs(n)


def test_radial_single_interface_hand_solution():
    # R = A s on s < 1/2, R = B s + C/s outside; continuity of R and gamma R' at s = 1/2:
    # A/2 = B/2 + 2C and 3A = B - 4C, so B = 2A, C = -A/4 and R'(1)/R(1) = (B - C)/(B + C) = 9/7
    A = np.array([[0.5, -0.5, -2.0], [3.0, -1.0, 4.0], [1.0, 0.0, 0.0]])
    a, b, c = np.linalg.solve(A, [0.0, 0.0, 1.0])
    assert (b - c) / (b + c) == pytest.approx(9 / 7, rel=1e-15)
    assert radial_multiplier_oracle(RadialProfile.two_phase(3.0, 0.5), 1) == pytest.approx(9 / 7, rel=1e-14)


def test_radial_degenerate_merge():
    single = RadialProfile.two_phase(4.0, 0.6)
    nested = RadialProfile((0.3, 0.6), (4.0, 4.0, 1.0))
    for n in range(1, 10):
        assert radial_multiplier_oracle(nested, n) == pytest.approx(radial_multiplier_oracle(single, n), rel=1e-13)


def test_radial_profile_validation():
    with pytest.raises(ValueError):
        RadialProfile((0.5,), (1.0,))
    with pytest.raises(ValueError):
        RadialProfile((0.6, 0.5), (1.0, 2.0, 1.0))
    with pytest.raises(ValueError):
        RadialProfile((0.5,), (-1.0, 1.0))
    with pytest.raises(ValueError):
        radial_multiplier_oracle(RadialProfile.two_phase(2.0, 0.5), 0)
    assert RadialProfile.two_phase(2.0, 0.5).within(3.0)


def test_radial_three_layer_monotone_in_values():
    lo = RadialProfile((0.3, 0.7), (0.5, 2.0, 1.0))
    hi = RadialProfile((0.3, 0.7), (0.6, 2.0, 1.0))
    for n in range(1, 6):
        assert radial_multiplier_oracle(lo, n) < radial_multiplier_oracle(hi, n)


# ---- mesh ---------------------------------------------------------------------


def test_mesh_coarse_valid():
    mesh = mesh_unit_disk(0.5)
    assert np.all(mesh.areas() > 0)
    assert np.allclose(np.abs(mesh.vertices[mesh.boundary] @ [1, 1j]), 1.0, atol=1e-12)


def test_mesh_refinement_scaling():
    hs = np.array([0.2, 0.1, 0.05])
    counts = np.array([mesh_unit_disk(h).n_vertices for h in hs])
    slope = np.polyfit(np.log(hs), np.log(counts), 1)[0]
    assert slope == pytest.approx(-2.0, abs=0.15)


def test_mesh_area_converges_quadratically():
    defects = []
    for h in [0.1, 0.05, 0.025]:
        mesh = mesh_unit_disk(h)
        defects.append(np.pi - mesh.areas().sum())
    assert all(d > 0 for d in defects)
    assert np.log2(defects[0] / defects[1]) > 1.8 and np.log2(defects[1] / defects[2]) > 1.8


def test_mesh_edges_bounded_by_h():
    for h in [0.2, 0.05]:
        mesh = mesh_unit_disk(h)
        assert mesh.edge_lengths().max() <= h


def test_mesh_aligns_with_inclusion():
    q, rho = disk_params_from_p(0.6, 0.3)
    mesh = mesh_unit_disk(0.04, inclusion=(q, rho))
    z = mesh.vertices @ np.array([1.0, 1j])
    dist = np.abs(z[mesh.triangles] - q) - rho
    on_circle = np.abs(dist) < 1e-12
    inside = (dist < 0) | on_circle
    outside = (dist > 0) | on_circle
    assert np.all(inside.all(axis=1) | outside.all(axis=1))
    assert np.all(mesh.areas() > 0)


def test_mesh_rejects_bad_input():
    with pytest.raises(ValueError):
        mesh_unit_disk(0.0)
    with pytest.raises(ValueError):
        mesh_unit_disk(0.6)
    with pytest.raises(ValueError):
        mesh_unit_disk(0.1, inclusion=(0.8, 0.3))


def test_mesh_budget(monkeypatch):
    import eit_resolve.pde_oracle.mesh as mesh_module

    monkeypatch.setattr(mesh_module, "MAX_VERTICES", 1000)
    with pytest.raises(MeshTooLargeError) as info:
        mesh_module.mesh_unit_disk(0.01)
    assert info.value.count > 1000


def test_mesh_dump_roundtrip(tmp_path):
    mesh = mesh_unit_disk(0.2, inclusion=(0.3, 0.2))
    path = tmp_path / "disk.mesh"
    write_mesh(mesh, path)
    header = path.read_text().splitlines()[0].split()
    assert [int(x) for x in header] == [mesh.n_vertices, len(mesh.triangles), len(mesh.boundary)]
    back = read_mesh(path)
    assert np.array_equal(back.vertices, mesh.vertices)
    assert np.array_equal(back.triangles, mesh.triangles)
    assert np.array_equal(back.boundary, mesh.boundary)
    assert np.array_equal(back.theta, mesh.theta)


def test_mesh_deterministic():
    a = mesh_unit_disk(0.05, inclusion=(0.2, 0.3))
    b = mesh_unit_disk(0.05, inclusion=(0.2, 0.3))
    assert np.array_equal(a.vertices, b.vertices) and np.array_equal(a.triangles, b.triangles)


# ---- finite elements ------------------------------------------------------------


def test_stiffness_symmetric_and_annihilates_constants(disk_mesh):
    A = stiffness_matrix(disk_mesh, ConductivityField.constant(disk_mesh, 2.5))
    diff = abs(A - A.T).max()
    assert diff <= 1e-14 * abs(A).max()
    assert np.abs(A @ np.ones(disk_mesh.n_vertices)).max() < 1e-12


def test_fem_linear_data_energy_is_polygon_area(disk_mesh):
    # u = x is reproduced exactly by P1 elements, so the energy is the mesh area
    sol = fem_solve_dirichlet(disk_mesh, ConductivityField.constant(disk_mesh), FourierBoundaryData.cos(1))
    assert sol.energy == pytest.approx(disk_mesh.areas().sum(), rel=1e-9)
    x = disk_mesh.vertices[:, 0]
    assert np.abs(sol.values - x).max() < 1e-8


def test_fem_constant_data_zero_energy(disk_mesh):
    sol = fem_solve_dirichlet(disk_mesh, ConductivityField.constant(disk_mesh), FourierBoundaryData.from_modes({0: 2.0}))
    # element energies are squares, so only the CG residual keeps this off zero
    assert 0.0 <= sol.energy <= 1e-14
    assert np.abs(sol.values - 2.0).max() < 1e-8


def test_fem_boundary_values_imposed_exactly(disk_mesh):
    phi = FourierBoundaryData.cos(3)
    sol = fem_solve_dirichlet(disk_mesh, ConductivityField.constant(disk_mesh, 0.7), phi)
    assert np.array_equal(sol.values[disk_mesh.boundary], phi.evaluate(disk_mesh.theta))


def test_fem_scales_with_constant_conductivity(disk_mesh):
    phi = FourierBoundaryData.cos(2)
    e1 = fem_quadratic_form(disk_mesh, ConductivityField.constant(disk_mesh, 1.0), phi)
    e3 = fem_quadratic_form(disk_mesh, ConductivityField.constant(disk_mesh, 3.0), phi)
    assert e3 == pytest.approx(3.0 * e1, rel=1e-9)


def test_fem_complex_data_sums_real_and_imaginary_parts(disk_mesh):
    gamma = ConductivityField.inclusion(disk_mesh, 0.0, 0.5, 3.0)
    e_cos = fem_quadratic_form(disk_mesh, gamma, FourierBoundaryData.cos(1))
    e_sin = fem_quadratic_form(disk_mesh, gamma, FourierBoundaryData.from_modes({1: -0.5j, -1: 0.5j}))
    e_exp = fem_quadratic_form(disk_mesh, gamma, FourierBoundaryData.exp(1))
    assert e_exp == pytest.approx(e_cos + e_sin, rel=1e-12)


def test_fem_accepts_nodal_values(disk_mesh):
    g = np.cos(disk_mesh.theta)
    e_nodal = fem_quadratic_form(disk_mesh, ConductivityField.constant(disk_mesh), g)
    e_fourier = fem_quadratic_form(disk_mesh, ConductivityField.constant(disk_mesh), FourierBoundaryData.cos(1))
    assert e_nodal == pytest.approx(e_fourier, rel=1e-14)
    with pytest.raises(ValueError):
        fem_quadratic_form(disk_mesh, ConductivityField.constant(disk_mesh), g[:-1])


def test_conductivity_field_validation(disk_mesh):
    with pytest.raises(ValueError):
        ConductivityField(np.array([1.0, -1.0]))
    with pytest.raises(ValueError):
        stiffness_matrix(disk_mesh, ConductivityField(np.ones(3)))
    field = ConductivityField.from_sampler(disk_mesh, lambda z: 1.0 + (np.abs(z) < 0.5))
    assert field.within(2.0) and not field.within(1.5)


def test_fem_energy_converges_homogeneous_order_two():
    errors = []
    for h in [0.08, 0.04, 0.02]:
        mesh = mesh_unit_disk(h)
        errors.append(abs(fem_quadratic_form(mesh, ConductivityField.constant(mesh), FourierBoundaryData.cos(2))
                          - 2 * np.pi))
    orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
    assert np.all(orders >= 1.8)


def test_fem_interface_aligned_concentric_converges():
    exact = 2 * np.pi * 9 / 7
    errors = []
    for h in [0.08, 0.04, 0.02]:
        mesh = mesh_unit_disk(h, inclusion=(0.0, 0.5))
        gamma = ConductivityField.inclusion(mesh, 0.0, 0.5, 3.0)
        errors.append(abs(fem_quadratic_form(mesh, gamma, FourierBoundaryData.exp(1)) - exact))
    orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
    assert np.all(orders >= 1.0)
    assert errors[-1] / exact < 0.01


# ---- verification drivers --------------------------------------------------------


def test_transformed_data_identity_and_aliasing():
    phi = FourierBoundaryData.cos(2)
    psi = transformed_boundary_data(phi, MobiusDiskAuto(0.0).inverse(), N=8)
    assert psi.coefficient(2) == pytest.approx(0.5, abs=1e-15)
    assert psi.coefficient(1) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        transformed_boundary_data(phi, MobiusDiskAuto(0.3).inverse(), N=16, M=48)


def test_transformed_data_preserves_dirichlet_norm():
    # the harmonic Dirichlet seminorm is conformally invariant
    from eit_resolve.spectral_dn import h_half_norm

    phi = FourierBoundaryData.cos(2)
    psi = transformed_boundary_data(phi, MobiusDiskAuto(0.6).inverse())
    assert h_half_norm(psi) == pytest.approx(h_half_norm(phi), rel=1e-12)


def test_conformal_identity_case_equals_concentric_error():
    h = 0.04
    gap = verify_conformal_invariance(0.0, 3.0, 0.5, FourierBoundaryData.cos(1), h)
    mesh = mesh_unit_disk(h, inclusion=(0.0, 0.5))
    fem = fem_quadratic_form(mesh, ConductivityField.inclusion(mesh, 0.0, 0.5, 3.0), FourierBoundaryData.cos(1))
    assert gap == pytest.approx(abs(fem - np.pi * 9 / 7) / (np.pi * 9 / 7), rel=1e-10)


def test_conformal_discrepancy_shrinks():
    gaps = [verify_conformal_invariance(0.4, 3.0, 0.3, FourierBoundaryData.cos(1), h) for h in (0.08, 0.04, 0.02)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] <= 1e-2


def test_monotonicity_examples(disk_mesh):
    mask = inclusion_mask(disk_mesh, 0.2, 0.3)
    phi = FourierBoundaryData.cos(1)
    extreme = ConductivityField(np.where(mask, 3.0, 1.0))
    assert verify_monotonicity(disk_mesh, [extreme], phi, 0.0, 3.0, mask)
    samples = random_class_samples(mask, 3.0, 10, np.random.default_rng(7))
    assert verify_monotonicity(disk_mesh, samples, phi, 0.0, 3.0, mask)
    bad = ConductivityField(np.where(mask, 6.0, 1.0))
    with pytest.raises(ValueError):
        verify_monotonicity(disk_mesh, [bad], phi, 0.0, 3.0, mask)


def test_spectral_suite_passes():
    results = spectral_suite()
    assert len(results) == 35 and all(r.passed for r in results)


def test_worker_pool_is_order_independent(monkeypatch):
    from eit_resolve.pde_oracle import verify as v

    serial = v.monotonic_suite(0.1, seed=3)
    monkeypatch.setenv("EIT_RESOLVE_THREADS", "4")
    parallel = v.monotonic_suite(0.1, seed=3)
    assert [r.discrepancy for r in serial] == [r.discrepancy for r in parallel]
