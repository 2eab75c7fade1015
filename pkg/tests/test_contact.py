import numpy as np
import pytest
from scipy.linalg import expm

from symred.contact import (
    ConstantHamiltonian,
    LinearHamiltonian,
    contact_hamiltonian_field,
    embedded_generator_matrix,
    flow,
    g0_generators,
    group_dimension,
    infinitesimal_action,
    level_tangent_basis,
    liouville,
    liouville_flat,
    moment_jacobian,
    omega,
    project_to_sphere,
    reeb,
    reeb_flat,
    reeb_period,
    strictly_coisotropic_check,
)
from symred.errors import OffLevelSet, OffSphere
from symred.moment import (
    AmbientPoint,
    ambient_point,
    in_level_set,
    reduction_spec,
    sample_level,
)
from symred.toric import normalized_polytope_spec, polytope_spec

CP2 = reduction_spec(normalized_polytope_spec([[1, 0], [0, 1], [-1, -1]]), name="cp2")
GR2C4 = reduction_spec(polytope_spec([], []), factors=[(4, 2)], name="gr2c4")
GR2C4XCP2 = reduction_spec(
    normalized_polytope_spec([[1, 0], [0, 1], [-1, -1]]),
    factors=[(4, 2)],
    name="gr2c4xcp2",
)
# nonconstant weight vector (1, 1, 1, 2): exercises genuinely weighted spheres
HIRZEBRUCH1 = reduction_spec(
    normalized_polytope_spec([[1, 0], [0, 1], [-1, 1], [0, -1]]),
    name="hirzebruch1",
)

ALL_SPECS = [CP2, GR2C4, GR2C4XCP2, HIRZEBRUCH1]


def random_sphere_preserving(spec, rng):
    """Random skew-Hermitian matrix commuting with the weight matrix."""
    D = spec.D
    M = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    A = 0.5 * (M - M.conj().T)
    gamma = spec.Gamma
    mask = np.equal.outer(gamma, gamma)
    return A * mask


class TestLiouville:
    def test_radial_null(self):
        pt = sample_level(GR2C4, seed=0)
        assert abs(liouville(pt, pt)) < 1e-14

    def test_explicit_value(self):
        z = np.zeros(8, dtype=complex)
        z[0] = 1.0
        v = np.zeros(8, dtype=complex)
        v[0] = 1j
        assert np.isclose(liouville_flat(z, v), 0.5)

    def test_weighted_rotation_value(self):
        for spec in ALL_SPECS:
            z = sample_level(spec, seed=1).flatten()
            v = 1j * spec.Gamma * z
            assert np.isclose(liouville_flat(z, v), spec.sphere_level / 2.0)

    def test_bilinearity(self):
        rng = np.random.default_rng(3)
        z, u, v = (
            rng.standard_normal(8) + 1j * rng.standard_normal(8) for _ in range(3)
        )
        assert np.isclose(
            liouville_flat(z, 2.0 * u + v),
            2.0 * liouville_flat(z, u) + liouville_flat(z, v),
        )


class TestReeb:
    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_alpha_of_reeb_is_one(self, spec):
        for seed in range(100):
            pt = sample_level(spec, seed=seed)
            assert abs(liouville(pt, reeb(pt, spec)) - 1.0) < 1e-10

    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_omega_contraction_vanishes_on_sphere_tangents(self, spec):
        rng = np.random.default_rng(7)
        z = sample_level(spec, seed=5).flatten()
        r = reeb_flat(z, spec)
        grad = spec.Gamma * z
        for _ in range(20):
            u = rng.standard_normal(spec.D) + 1j * rng.standard_normal(spec.D)
            # project onto the sphere tangent space
            u = u - grad * (np.vdot(grad, u).real / np.vdot(grad, grad).real)
            assert abs(omega(r, u)) < 1e-10

    def test_off_sphere_raises(self):
        pt = sample_level(GR2C4, seed=0)
        bad = ambient_point(GR2C4, 1.5 * pt.flatten())
        with pytest.raises(OffSphere):
            reeb(bad, GR2C4)

    def test_unweighted_reeb_is_scaled_rotation(self):
        z = sample_level(GR2C4, seed=2).flatten()
        assert np.allclose(reeb_flat(z, GR2C4), (2.0 / 8.0) * 1j * z)

    def test_unnormalized_weighted_rotation_closes_at_two_pi(self):
        # exp(i Gamma 2 pi) is the identity for integer weights.
        z = sample_level(CP2, seed=3).flatten()
        assert np.allclose(np.exp(2j * np.pi * CP2.Gamma) * z, z)


class TestInfinitesimalAction:
    def test_zero_element(self):
        pt = sample_level(GR2C4XCP2, seed=0)
        gens = g0_generators(GR2C4XCP2)
        zero = type(gens[0])(
            kernel_coeffs=np.zeros_like(gens[0].kernel_coeffs),
            blocks=tuple(np.zeros_like(b) for b in gens[0].blocks),
        )
        assert np.allclose(infinitesimal_action(pt, zero, GR2C4XCP2).flatten(), 0.0)

    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_alpha_vanishes_on_traceless_orbit_directions(self, spec):
        # alpha(X z) = <p, X> = 0 on the level set for X in the traceless
        # part of the algebra.
        for seed in range(20):
            pt = sample_level(spec, seed=seed)
            z = pt.flatten()
            for elem in g0_generators(spec):
                v = infinitesimal_action(pt, elem, spec).flatten()
                assert abs(liouville_flat(z, v)) < 1e-10

    def test_g0_dimension(self):
        assert len(g0_generators(GR2C4)) == 3  # su(2)
        assert len(g0_generators(GR2C4XCP2)) == 4  # dim G - 1 = 1 + 4 - 1
        assert len(g0_generators(CP2)) == 0

    def test_frame_block_action_matches_quaternion_multiplication(self):
        # Right multiplication by an imaginary quaternion generator equals
        # the frame-block column action of its su(2) matrix.
        from symred.quatgrass import (
            frame_linear,
            quat_mul,
            random_unit_quaternions,
            su2_matrix,
            to_moment_level,
        )

        rng = np.random.default_rng(11)
        q = random_unit_quaternions(2, rng)
        xi = np.array([0.0, *rng.standard_normal(3)])  # imaginary quaternion
        u_eps = xi  # derivative of u_t = exp(t xi) at t = 0
        # d/dt frame(u_t q) = frame(xi q) = frame(q) @ d/dt su2_matrix(u_t)
        lhs = frame_linear(quat_mul(np.broadcast_to(u_eps, q.shape), q))
        a, b, c, d = xi
        dA = np.array([[a + 1j * b, -(c - 1j * d)], [c + 1j * d, a - 1j * b]])
        rhs = frame_linear(q) @ dA
        assert np.abs(lhs - rhs).max() < 1e-12
        # and through the moment-level conventions used by the spec blocks
        W = to_moment_level(frame_linear(q), 4)
        pt = AmbientPoint(toric=np.zeros(0, dtype=complex), frames=(W,))
        elem_blocks = (dA,)
        gen = g0_generators(GR2C4)[0]
        elem = type(gen)(kernel_coeffs=np.zeros(0), blocks=elem_blocks)
        moved = infinitesimal_action(pt, elem, GR2C4)
        assert np.allclose(moved.frames[0], W @ dA)


class TestLevelTangentBasis:
    def test_dimension_gr2c4(self):
        pt = sample_level(GR2C4, seed=1)
        basis = level_tangent_basis(pt, GR2C4)
        assert basis.shape == (16 - 4, 8)

    def test_dimension_gr2c4xcp2(self):
        pt = sample_level(GR2C4XCP2, seed=1)
        basis = level_tangent_basis(pt, GR2C4XCP2)
        assert basis.shape == (22 - 5, 11)

    def test_orthonormal(self):
        pt = sample_level(GR2C4, seed=2)
        basis = level_tangent_basis(pt, GR2C4)
        gram_re = np.real(basis.conj() @ basis.T)
        assert np.abs(gram_re - np.eye(basis.shape[0])).max() < 1e-12

    def test_kills_moment_differential(self):
        pt = sample_level(GR2C4XCP2, seed=3)
        J = moment_jacobian(pt, GR2C4XCP2)
        basis = level_tangent_basis(pt, GR2C4XCP2)
        for row in basis:
            x = np.concatenate([row.real, row.imag])
            assert np.abs(J @ x).max() < 1e-10


class TestContactHamiltonianField:
    def test_constant_one_gives_reeb(self):
        for spec in ALL_SPECS:
            pt = sample_level(spec, seed=4)
            X = contact_hamiltonian_field(ConstantHamiltonian(1.0), pt, spec)
            assert np.abs(X.flatten() - reeb_flat(pt.flatten(), spec)).max() < 1e-9

    def test_zero_gives_zero(self):
        pt = sample_level(GR2C4, seed=5)
        X = contact_hamiltonian_field(ConstantHamiltonian(0.0), pt, GR2C4)
        assert np.abs(X.flatten()).max() < 1e-12

    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_linear_reconstruction_inverse_to_evaluation(self, spec):
        rng = np.random.default_rng(17)
        for trial in range(10):
            A = random_sphere_preserving(spec, rng)
            pt = sample_level(spec, seed=(6, trial))
            X = contact_hamiltonian_field(LinearHamiltonian(A), pt, spec)
            assert np.abs(X.flatten() - A @ pt.flatten()).max() < 1e-10

    def test_off_sphere_refused(self):
        pt = sample_level(GR2C4, seed=0)
        with pytest.raises(OffSphere):
            contact_hamiltonian_field(
                ConstantHamiltonian(1.0),
                ambient_point(GR2C4, 2.0 * pt.flatten()),
                GR2C4,
            )


class TestFlow:
    def test_zero_time_identity(self):
        pt = sample_level(GR2C4, seed=1)
        state = flow(ConstantHamiltonian(1.0), pt, GR2C4, t_final=0.0, step=1e-2)
        assert np.abs(state.point.flatten() - pt.flatten()).max() < 1e-14

    def test_linear_flow_matches_matrix_exponential(self):
        rng = np.random.default_rng(23)
        A = random_sphere_preserving(GR2C4, rng)
        pt = sample_level(GR2C4, seed=7)
        state = flow(LinearHamiltonian(A), pt, GR2C4, t_final=1.0, step=1e-3)
        oracle = expm(A) @ pt.flatten()
        assert np.abs(state.point.flatten() - oracle).max() < 1e-6
        assert state.sphere_drift < 1e-8

    def test_reeb_flow_closes_period(self):
        pt = sample_level(GR2C4, seed=8)
        period = reeb_period(GR2C4)
        assert np.isclose(period, 8 * np.pi)
        state = flow(ConstantHamiltonian(1.0), pt, GR2C4, t_final=period, step=1e-2)
        assert np.abs(state.point.flatten() - pt.flatten()).max() < 1e-9

    def test_level_set_preserved_by_group_hamiltonians(self):
        # Hamiltonians generated by the reducing group preserve the moment
        # level set (equivariance of the moment map).
        for spec in (GR2C4, GR2C4XCP2):
            pt = sample_level(spec, seed=9)
            elem = g0_generators(spec)[-1]
            A = embedded_generator_matrix(elem, spec)
            assert np.allclose(
                A @ pt.flatten(),
                infinitesimal_action(pt, elem, spec).flatten(),
            )
            state = flow(LinearHamiltonian(A), pt, spec, t_final=1.0, step=1e-3)
            ok, residual = in_level_set(state.point, spec, tol=1e-8)
            assert ok, residual

    def test_generic_callable_hamiltonian(self):
        # A plain vectorized callable without the ambient/quadratic flags
        # goes through the projected finite-difference path.
        def h(pts):
            return np.sin(np.abs(pts[..., 0]) ** 2) + 0.25

        pt = sample_level(GR2C4, seed=10)
        X = contact_hamiltonian_field(h, pt, GR2C4)
        z = pt.flatten()
        assert abs(liouville_flat(z, X.flatten()) - h(z[None])[0]) < 1e-8
        grad = GR2C4.Gamma * z
        assert abs(np.vdot(grad, X.flatten()).real) < 1e-8
        state = flow(h, pt, GR2C4, t_final=1.0, step=1e-3)
        assert state.sphere_drift < 1e-8

    def test_weighted_rotation_flow_closes_at_two_pi(self):
        # On a spec with nonconstant weights, the unnormalized weighted
        # rotation i Gamma z has period 2 pi exactly (integer weights).
        spec = HIRZEBRUCH1
        A = 1j * np.diag(spec.Gamma)
        pt = sample_level(spec, seed=11)
        state = flow(LinearHamiltonian(A), pt, spec, t_final=2 * np.pi, step=1e-2)
        assert np.abs(state.point.flatten() - pt.flatten()).max() < 1e-6


class TestCoisotropy:
    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_main_instances(self, spec):
        for seed in range(10):
            pt = sample_level(spec, seed=seed)
            report = strictly_coisotropic_check(pt, spec)
            assert report.max_violation < 1e-8, report

    def test_refuses_off_level_points(self):
        pt = sample_level(GR2C4, seed=1)
        vec = pt.flatten().copy()
        vec[0] += 0.1
        with pytest.raises(OffLevelSet):
            strictly_coisotropic_check(ambient_point(GR2C4, vec), GR2C4)

    def test_toric_only_spec(self):
        for seed in range(10):
            pt = sample_level(CP2, seed=seed)
            report = strictly_coisotropic_check(pt, CP2)
            assert report.max_violation < 1e-8


class TestProjection:
    def test_projection_idempotent_on_sphere(self):
        z = sample_level(GR2C4XCP2, seed=2).flatten()
        assert np.allclose(project_to_sphere(z, GR2C4XCP2), z)

    def test_group_dimension(self):
        assert group_dimension(GR2C4) == 4
        assert group_dimension(GR2C4XCP2) == 5
        assert group_dimension(CP2) == 1
