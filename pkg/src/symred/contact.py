"""The weighted contact sphere: forms, fields, flows, coisotropy.

Everything runs *upstairs*, on the weighted sphere in C^D that contains the
moment level set; statements about the contact quotients are certified
through invariance under the group actions.  The ambient symplectic form is
omega(u, v) = Im <u, v> (Hermitian product antilinear in the first slot of
numpy's vdot), the Liouville form is alpha_z = omega(z, .) / 2, and d(alpha)
is the constant ambient omega, so no curvature corrections appear anywhere.

The contact Hamiltonian vector field of h is reconstructed from the
defining equations alpha(X) = h, iota_X d(alpha) = dh(R) alpha - dh: we
split X = h R + X_xi with X_xi in the contact hyperplane and solve the
nondegenerate linear system omega(X_xi, e_b) = -dh(e_b) on an orthonormal
basis of the hyperplane.  Flows integrate with fixed-step RK4 followed by
radial reprojection to the weighted sphere, which keeps acceptance numbers
reproducible.

Moment-map differentials are exact: every component of the moment map is a
real quadratic form, so its differential is the polarization
Phi(z + u) - Phi(z) - Phi(u), no finite differencing involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import OffLevelSet, OffSphere, RankDeficient, ShapeMismatch
from .moment import (
    AmbientPoint,
    MomentValue,
    ReductionSpec,
    ambient_point,
    in_level_set,
    moment_G,
)


# ---------------------------------------------------------------------------
# forms and the sphere

def omega(u: np.ndarray, v: np.ndarray) -> float:
    """Standard symplectic pairing Im<u, v> of flattened complex vectors."""
    return float(np.imag(np.vdot(u, v)))


def liouville(pt: AmbientPoint, v: AmbientPoint) -> float:
    """Liouville form: half the symplectic pairing of the base point with
    the displacement."""
    return liouville_flat(pt.flatten(), v.flatten())


def liouville_flat(z: np.ndarray, v: np.ndarray) -> float:
    if z.shape != v.shape:
        raise ShapeMismatch(f"point shape {z.shape} vs tangent shape {v.shape}")
    return 0.5 * float(np.imag(np.vdot(z, v)))


def gamma_norm_sq(vec: np.ndarray, spec: ReductionSpec) -> float:
    return float(spec.Gamma @ (np.abs(vec) ** 2))


def sphere_residual(vec: np.ndarray, spec: ReductionSpec) -> float:
    return abs(gamma_norm_sq(vec, spec) - spec.sphere_level)


def project_to_sphere(vec: np.ndarray, spec: ReductionSpec) -> np.ndarray:
    return vec * np.sqrt(spec.sphere_level / gamma_norm_sq(vec, spec))


def _require_on_sphere(vec: np.ndarray, spec: ReductionSpec, tol: float) -> None:
    res = sphere_residual(vec, spec) / spec.sphere_level
    if res > tol:
        raise OffSphere(f"relative weighted-sphere residual {res} exceeds {tol}")


def reeb(pt: AmbientPoint, spec: ReductionSpec, tol: float = 1e-8) -> AmbientPoint:
    """Reeb field at a sphere point: (2 / sphere_level) * i * Gamma * z,
    normalized so alpha(R) = 1 while omega(R, .) kills sphere tangents."""
    z = pt.flatten()
    _require_on_sphere(z, spec, tol)
    return ambient_point(spec, reeb_flat(z, spec))


def reeb_flat(z: np.ndarray, spec: ReductionSpec) -> np.ndarray:
    return (2.0 / spec.sphere_level) * 1j * spec.Gamma * z


def reeb_period(spec: ReductionSpec) -> float:
    """Common period of the weighted rotation: pi * sphere_level (the
    weight vector is primitive, so no smaller time closes every factor)."""
    return float(np.pi) * spec.sphere_level


# ---------------------------------------------------------------------------
# group directions

@dataclass(frozen=True)
class GroupElement:
    """Element of the reducing Lie algebra: coefficients over the kernel
    basis plus one skew-Hermitian k x k block per factor."""

    kernel_coeffs: np.ndarray
    blocks: tuple[np.ndarray, ...]


def unitary_algebra_basis(k: int) -> list[np.ndarray]:
    """Real basis of u(k): imaginary diagonals, then real/imaginary
    antisymmetric pairs."""
    basis = []
    for a in range(k):
        M = np.zeros((k, k), dtype=complex)
        M[a, a] = 1j
        basis.append(M)
    for a in range(k):
        for b in range(a + 1, k):
            M = np.zeros((k, k), dtype=complex)
            M[a, b], M[b, a] = 1.0, -1.0
            basis.append(M)
            M = np.zeros((k, k), dtype=complex)
            M[a, b], M[b, a] = 1j, 1j
            basis.append(M)
    return basis


def group_dimension(spec: ReductionSpec) -> int:
    return spec.delzant.kernel.rank + sum(f.k**2 for f in spec.factors)


def _group_basis(spec: ReductionSpec) -> list[GroupElement]:
    kernel_rank = spec.delzant.kernel.rank
    out = []
    for b in range(kernel_rank):
        coeffs = np.zeros(kernel_rank)
        coeffs[b] = 1.0
        out.append(
            GroupElement(
                kernel_coeffs=coeffs,
                blocks=tuple(
                    np.zeros((f.k, f.k), dtype=complex) for f in spec.factors
                ),
            )
        )
    for i, f in enumerate(spec.factors):
        for X in unitary_algebra_basis(f.k):
            blocks = [np.zeros((g.k, g.k), dtype=complex) for g in spec.factors]
            blocks[i] = X
            out.append(
                GroupElement(
                    kernel_coeffs=np.zeros(kernel_rank), blocks=tuple(blocks)
                )
            )
    return out


def _embedded_trace_coefficients(spec: ReductionSpec) -> np.ndarray:
    """Imaginary part of the trace of the embedded u(D) matrix, as a linear
    functional on the group-basis coordinates."""
    kernel = spec.delzant.kernel
    coeffs = [float(sum(row)) for row in kernel.basis]
    for f in spec.factors:
        for X in unitary_algebra_basis(f.k):
            coeffs.append(float(f.n * np.trace(X).imag))
    return np.array(coeffs)


def g0_generators(spec: ReductionSpec) -> list[GroupElement]:
    """Basis of the traceless part of the reducing algebra (the kernel of
    the level functional p, which is the restriction of -(i/2) tr)."""
    basis = _group_basis(spec)
    if not basis:
        return []
    w = _embedded_trace_coefficients(spec)
    if np.abs(w).max() == 0.0:
        coords = np.eye(len(basis))
    else:
        Q, _ = np.linalg.qr(w[:, None], mode="complete")
        coords = Q[:, 1:].T
    kernel_rank = spec.delzant.kernel.rank
    out = []
    for row in coords:
        blocks = []
        pos = kernel_rank
        for f in spec.factors:
            B = np.zeros((f.k, f.k), dtype=complex)
            for X in unitary_algebra_basis(f.k):
                B = B + row[pos] * X
                pos += 1
            blocks.append(B)
        out.append(GroupElement(kernel_coeffs=row[:kernel_rank], blocks=tuple(blocks)))
    return out


def embedded_generator_matrix(elem: GroupElement, spec: ReductionSpec) -> np.ndarray:
    """Ambient D x D matrix of a Lie-algebra element acting on flattened
    points: i * t on the toric block and, per factor, the right column
    action W -> W X expressed on row-major frame coordinates as the block
    diagonal kron(I_n, X^T).  Satisfies
    embedded_generator_matrix(e, s) @ pt.flatten()
    == infinitesimal_action(pt, e, s).flatten()."""
    kernel = spec.delzant.kernel
    if kernel.rank:
        t = np.array(kernel.basis, dtype=float).T @ np.asarray(
            elem.kernel_coeffs, dtype=float
        )
    else:
        t = np.zeros(spec.d)
    blocks = [np.diag(1j * t)] if spec.d else []
    for X, f in zip(elem.blocks, spec.factors):
        blocks.append(np.kron(np.eye(f.n), X.T))
    if not blocks:
        return np.zeros((0, 0), dtype=complex)
    out = np.zeros((spec.D, spec.D), dtype=complex)
    pos = 0
    for B in blocks:
        size = B.shape[0]
        out[pos : pos + size, pos : pos + size] = B
        pos += size
    return out


def infinitesimal_action(
    pt: AmbientPoint, elem: GroupElement, spec: ReductionSpec
) -> AmbientPoint:
    """Tangent vector of the group action: the toric block turns with the
    kernel direction (componentwise i t_j z_j), each frame block is
    multiplied by its algebra block on the right."""
    pt.check_shapes(spec)
    kernel = spec.delzant.kernel
    if len(elem.kernel_coeffs) != kernel.rank:
        raise ShapeMismatch(
            f"{len(elem.kernel_coeffs)} kernel coefficients for rank {kernel.rank}"
        )
    if kernel.rank:
        t = np.array(kernel.basis, dtype=float).T @ np.asarray(
            elem.kernel_coeffs, dtype=float
        )
    else:
        t = np.zeros(spec.d)
    toric = 1j * t * pt.toric
    frames = []
    for W, X, f in zip(pt.frames, elem.blocks, spec.factors):
        if X.shape != (f.k, f.k):
            raise ShapeMismatch(f"algebra block {X.shape} for factor k = {f.k}")
        frames.append(W @ X)
    return AmbientPoint(toric=toric, frames=tuple(frames))


# ---------------------------------------------------------------------------
# moment differential and level tangents

def _c2r(v: np.ndarray) -> np.ndarray:
    return np.concatenate([v.real, v.imag])


def _r2c(x: np.ndarray) -> np.ndarray:
    n = x.size // 2
    return x[:n] + 1j * x[n:]


def moment_jacobian(pt: AmbientPoint, spec: ReductionSpec) -> np.ndarray:
    """Real Jacobian of the moment map at pt, shape (dim G, 2D).

    Every moment component is a real quadratic form, so the directional
    derivative along u is exactly Phi(z + u) - Phi(z) - Phi(u).
    """
    z = pt.flatten()
    D = spec.D
    base = moment_G(pt, spec).as_real_vector()

    def phi(vec: np.ndarray) -> np.ndarray:
        return moment_G(ambient_point(spec, vec), spec).as_real_vector()

    cols = []
    for idx in range(2 * D):
        e = np.zeros(2 * D)
        e[idx] = 1.0
        u = _r2c(e)
        cols.append(phi(z + u) - base - phi(u))
    return np.stack(cols, axis=1)


def level_tangent_basis(
    pt: AmbientPoint, spec: ReductionSpec, tol: float = 1e-8
) -> np.ndarray:
    """Orthonormal real basis of ker(d Phi) at a level-set point, returned
    as rows of complex vectors, dimension 2D - dim G.

    Raises :class:`RankDeficient` when the moment differential does not
    have rank dim G (a non-regular point).
    """
    dim_g = group_dimension(spec)
    if dim_g == 0:
        # No group: the level set is everything.
        return np.stack([_r2c(e) for e in np.eye(2 * spec.D)])
    J = moment_jacobian(pt, spec)
    u, s, vt = np.linalg.svd(J)
    cutoff = max(tol * (s[0] if s.size else 1.0), 1e-300)
    rank = int((s > cutoff).sum())
    if rank != dim_g:
        raise RankDeficient(
            f"moment differential has rank {rank}, expected {dim_g}"
        )
    null_rows = vt[rank:]
    return np.stack([_r2c(row) for row in null_rows])


# ---------------------------------------------------------------------------
# contact Hamiltonian fields and flows

class LinearHamiltonian:
    """Contact Hamiltonian of a linear ambient field: h(z) = alpha_z(A z).

    A must be skew-Hermitian and commute with the weight matrix so that
    exp(tA) preserves the weighted sphere; then the contact flow of h is
    exactly z -> exp(tA) z.
    """

    ambient = True
    quadratic = True

    def __init__(self, A: np.ndarray):
        self.A = np.asarray(A, dtype=complex)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        Az = pts @ self.A.T
        return 0.5 * np.imag(np.einsum("...i,...i->...", pts.conj(), Az))


class ConstantHamiltonian:
    """h identically constant; value 1 generates the Reeb flow."""

    ambient = True
    quadratic = True

    def __init__(self, value: float = 1.0):
        self.value = float(value)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        return np.full(pts.shape[:-1], self.value)


Hamiltonian = Callable[[np.ndarray], np.ndarray]


def _eval_hamiltonian(h: Hamiltonian, pts: np.ndarray) -> np.ndarray:
    vals = h(pts)
    return np.asarray(vals, dtype=float)


def _contact_frame(z: np.ndarray, spec: ReductionSpec) -> np.ndarray:
    """Orthonormal real basis (rows, as complex vectors) of the contact
    hyperplane xi = ker alpha intersected with the sphere tangent space."""
    normal = _c2r(spec.Gamma * z)      # sphere gradient direction
    alpha_dir = _c2r(1j * z)           # alpha(u) = <i z, u>_R / 2
    M = np.stack([normal, alpha_dir], axis=1)
    Q, _ = np.linalg.qr(M, mode="complete")
    return np.stack([_r2c(Q[:, i]) for i in range(2, Q.shape[1])])


def contact_hamiltonian_field(
    h: Hamiltonian,
    pt: AmbientPoint | np.ndarray,
    spec: ReductionSpec,
    fd_step: float = 1e-5,
    sphere_tol: float = 1e-6,
) -> AmbientPoint:
    """The unique sphere-tangent X with alpha(X) = h and
    d(alpha)(X, u) = dh(R) alpha(u) - dh(u) on sphere tangents u.

    dh is computed by central differences along a contact-hyperplane
    basis; Hamiltonians marked ``ambient`` are differenced on the nose
    (exact for the quadratic Hamiltonians of linear fields), otherwise the
    sample points are reprojected to the sphere first.
    """
    z = pt.flatten() if isinstance(pt, AmbientPoint) else np.asarray(pt)
    _require_on_sphere(z, spec, sphere_tol)
    return ambient_point(spec, _field_flat(h, z, spec, fd_step))


def _field_flat(
    h: Hamiltonian, z: np.ndarray, spec: ReductionSpec, fd_step: float
) -> np.ndarray:
    # Central differences are exact (up to rounding) on quadratic
    # Hamiltonians, so for those a large power-of-two step minimizes the
    # rounding instead of balancing it against truncation.
    if getattr(h, "quadratic", False):
        fd_step = 0.125
    E = _contact_frame(z, spec)
    m = E.shape[0]
    samples = np.empty((2 * m + 1, z.size), dtype=complex)
    samples[0] = z
    samples[1 : m + 1] = z[None, :] + fd_step * E
    samples[m + 1 :] = z[None, :] - fd_step * E
    if not getattr(h, "ambient", False):
        for i in range(1, 2 * m + 1):
            samples[i] = project_to_sphere(samples[i], spec)
    vals = _eval_hamiltonian(h, samples)
    h0 = vals[0]
    dh = (vals[1 : m + 1] - vals[m + 1 :]) / (2.0 * fd_step)
    # omega restricted to the contact hyperplane is nondegenerate; solve
    # omega(X_xi, e_b) = -dh_b, i.e. Omega @ c = dh with Omega_ab the
    # pairing omega(e_a, e_b).
    Omega = np.imag(E.conj() @ E.T)
    coeffs = np.linalg.solve(Omega, dh)
    return h0 * reeb_flat(z, spec) + coeffs @ E


@dataclass(frozen=True)
class FlowState:
    point: AmbientPoint
    time: float
    step: float
    method: str
    sphere_drift: float


def flow(
    h: Hamiltonian,
    start: AmbientPoint,
    spec: ReductionSpec,
    t_final: float,
    step: float,
    fd_step: float = 1e-5,
) -> FlowState:
    """Fixed-step RK4 integration of the contact Hamiltonian field with a
    radial reprojection to the weighted sphere after every step; reports
    the largest pre-projection sphere residual encountered."""
    if step <= 0:
        raise ValueError("step must be positive")
    z = project_to_sphere(start.flatten(), spec)
    steps = int(round(t_final / step))
    remainder = t_final - steps * step
    drift = 0.0

    def rk4(z: np.ndarray, dt: float) -> np.ndarray:
        k1 = _field_flat(h, z, spec, fd_step)
        k2 = _field_flat(h, z + 0.5 * dt * k1, spec, fd_step)
        k3 = _field_flat(h, z + 0.5 * dt * k2, spec, fd_step)
        k4 = _field_flat(h, z + dt * k3, spec, fd_step)
        return z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    for _ in range(steps):
        z = rk4(z, step)
        drift = max(drift, sphere_residual(z, spec))
        z = project_to_sphere(z, spec)
    if abs(remainder) > 1e-15:
        z = rk4(z, remainder)
        drift = max(drift, sphere_residual(z, spec))
        z = project_to_sphere(z, spec)
    return FlowState(
        point=ambient_point(spec, z),
        time=t_final,
        step=step,
        method="rk4-projected",
        sphere_drift=drift,
    )


# ---------------------------------------------------------------------------
# strict coisotropy of the level set

@dataclass(frozen=True)
class CoisotropyReport:
    """Residuals of the three containment conditions at one point:
    the Reeb direction is tangent to the level set, the group-orbit
    directions are tangent and alpha-isotropic, and the orbit directions
    pair to zero with every level tangent under d(alpha)."""

    reeb_tangency: float
    orbit_tangency: float
    orbit_alpha: float
    orbit_isotropy: float
    tangent_dimension: int

    @property
    def max_violation(self) -> float:
        return max(
            self.reeb_tangency,
            self.orbit_tangency,
            self.orbit_alpha,
            self.orbit_isotropy,
        )


def strictly_coisotropic_check(
    pt: AmbientPoint,
    spec: ReductionSpec,
    level_tol: float = 1e-8,
    rank_tol: float = 1e-8,
) -> CoisotropyReport:
    """Verify at a level-set point that the d(alpha)-orthogonal of the
    level tangent space is contained in it.

    The orthogonal complement is spanned by the Reeb direction and the
    orbit directions of the traceless reducing algebra, so the containment
    reduces to: (a) the Reeb vector is tangent to the level set, (b) each
    orbit direction is tangent and lies in ker alpha, (c) orbit directions
    d(alpha)-annihilate all level tangents.  Refuses points off the level
    set.
    """
    on_level, residual = in_level_set(pt, spec, level_tol)
    if not on_level:
        raise OffLevelSet(f"moment residual {residual} exceeds {level_tol}")
    z = pt.flatten()
    J = moment_jacobian(pt, spec)

    def dphi(v: np.ndarray) -> float:
        out = J @ _c2r(v)
        return float(np.abs(out).max(initial=0.0))

    tangents = level_tangent_basis(pt, spec, tol=rank_tol)
    r = reeb_flat(z, spec)
    reeb_tangency = dphi(r)
    orbit_tangency = orbit_alpha = orbit_isotropy = 0.0
    for elem in g0_generators(spec):
        v = infinitesimal_action(pt, elem, spec).flatten()
        orbit_tangency = max(orbit_tangency, dphi(v))
        orbit_alpha = max(orbit_alpha, abs(liouville_flat(z, v)))
        if tangents.size:
            pairings = np.imag(tangents.conj() @ v)
            orbit_isotropy = max(orbit_isotropy, float(np.abs(pairings).max()))
    return CoisotropyReport(
        reeb_tangency=reeb_tangency,
        orbit_tangency=orbit_tangency,
        orbit_alpha=orbit_alpha,
        orbit_isotropy=orbit_isotropy,
        tangent_dimension=int(tangents.shape[0]),
    )
