"""Quaternionic frames, the Stiefel/Grassmann quotients and their invariants.

Quaternion vectors live in arrays of shape (n, 4) holding the components of
q = a + b*i + c*j + d*k.  The complex identification is q = z + w*j with
z = a + b*i, w = c + d*i, and a quaternion vector maps to the orthonormal
2-frame with columns (z, w) and (-conj w, conj z) -- the second column is
the coordinate vector of j*q.  Throughout this module frames follow the
*unit-column* convention (Gram = identity); converters to the moment-level
scaling (columns of norm sqrt(ambient dimension)) sit at the module
boundary.

Quotient bookkeeping: a point of the SU(2)-quotient of the Stiefel variety
is represented by the wedge (Pluecker) vector of its columns, which the
determinant-one column action leaves fixed, while a point of the
Grassmannian is represented by the rank-2 orthogonal projector, fixed by
the full U(2) column action.  Left multiplication by a unit quaternion u on
the quaternion side corresponds to right multiplication of the frame by the
SU(2) matrix [[a+bi, -(c-di)], [c+di, a-bi]]; note the (anti-)ordering
su2_matrix(u*v) = su2_matrix(v) @ su2_matrix(u).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import NonUnit, NotSpecialUnitary

SU2_ALGEBRA_BASIS = (
    np.array([[1j, 0], [0, -1j]]),
    np.array([[0, 1], [-1, 0]], dtype=complex),
    np.array([[0, 1j], [1j, 0]]),
)


# ---------------------------------------------------------------------------
# quaternion arithmetic

def quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Componentwise Hamilton product of (..., 4) arrays."""
    a1, b1, c1, d1 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    a2, b2, c2, d2 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )


def quat_conj(q: np.ndarray) -> np.ndarray:
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def quat_norm(q: np.ndarray) -> float:
    return float(np.linalg.norm(q))


def quat_inner(q: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Quaternion-valued pairing sum_m q_m * conj(p_m) of two (n, 4) arrays."""
    total = np.zeros(4)
    for qm, pm in zip(q, p):
        total = total + quat_mul(qm, quat_conj(pm))
    return total


def random_unit_quaternions(n: int, rng: np.random.Generator) -> np.ndarray:
    q = rng.standard_normal((n, 4))
    return q / np.linalg.norm(q)


def su2_matrix(u: np.ndarray) -> np.ndarray:
    """SU(2) matrix of a unit quaternion u = a + bi + cj + dk.

    Satisfies quat_to_frame_b(quat_mul_left(u, q)) = quat_to_frame_b(q) @
    su2_matrix(u) for every unit q; the map reverses products.
    """
    a, b, c, d = (float(x) for x in u)
    alpha, beta = a + 1j * b, c + 1j * d
    return np.array([[alpha, -np.conj(beta)], [beta, np.conj(alpha)]])


# ---------------------------------------------------------------------------
# the frame map and its complex-linear extension

def quat_to_frame_b(q: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Unit orthonormal 2-frame of a unit quaternion vector.

    Columns are the coordinate vectors of q and j*q; raises NonUnit when
    |q| strays from 1 beyond tol.
    """
    norm = quat_norm(q)
    if abs(norm - 1.0) > tol:
        raise NonUnit(f"|q| = {norm}, expected 1 within {tol}")
    return frame_linear(q)


def frame_linear(q: np.ndarray) -> np.ndarray:
    """The R-linear coordinate formula behind quat_to_frame_b (no norm
    check; used for differentials of the parametrization)."""
    z = q[:, 0] + 1j * q[:, 1]
    w = q[:, 2] + 1j * q[:, 3]
    col1 = np.concatenate([z, w])
    col2 = np.concatenate([-np.conj(w), np.conj(z)])
    return np.stack([col1, col2], axis=1)


def bC_matrix(n: int) -> np.ndarray:
    """Matrix of the complex-linear extension of the frame map.

    Input coordinates: the real standard basis of R^{4n} = H^n, quaternion
    components contiguous per entry; output coordinates: C^{4n} with the two
    frame columns stacked.  The matrix is unitary and sends real unit
    vectors to frames with Gram = I/2 (unit Stiefel frames after the
    canonical sqrt(2) rescale).
    """
    cols = []
    for m in range(n):
        for unit in range(4):
            q = np.zeros((n, 4))
            q[m, unit] = 1.0
            F = frame_linear(q) / np.sqrt(2.0)
            cols.append(np.concatenate([F[:, 0], F[:, 1]]))
    return np.stack(cols, axis=1)


def su2_right_action(Z: np.ndarray, A: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Right column action Z @ A, insisting A is in SU(2)."""
    if A.shape != (2, 2):
        raise NotSpecialUnitary(f"expected a 2x2 matrix, got {A.shape}")
    if np.abs(A.conj().T @ A - np.eye(2)).max() > tol:
        raise NotSpecialUnitary("matrix is not unitary")
    if abs(np.linalg.det(A) - 1.0) > tol:
        raise NotSpecialUnitary(f"det = {np.linalg.det(A)}, expected 1")
    return Z @ A


# ---------------------------------------------------------------------------
# quotient invariants

def wedge(Z: np.ndarray) -> np.ndarray:
    """Pluecker coordinates of the column pair, entries u_a v_b - u_b v_a
    for a < b in lexicographic order.  Transforms by det(A) under Z -> Z@A,
    so it separates SU(2)-orbits; unit frames give unit-norm wedges."""
    u, v = Z[:, 0], Z[:, 1]
    M = np.outer(u, v) - np.outer(v, u)
    rows, cols = np.triu_indices(Z.shape[0], k=1)
    return M[rows, cols]


def wedge_length(two_n: int) -> int:
    return comb(two_n, 2)


def projector(Z: np.ndarray) -> np.ndarray:
    """Rank-2 orthogonal projector Z @ Z* onto the column span of a unit
    frame: the U(2)-invariant representation of the Grassmannian point."""
    return Z @ Z.conj().T


def projector_residuals(P: np.ndarray) -> dict:
    """Hermiticity, idempotency and trace deviations of a projector."""
    return {
        "hermitian": float(np.abs(P - P.conj().T).max()),
        "idempotent": float(np.abs(P @ P - P).max()),
        "trace": float(abs(np.trace(P).real - 2.0) + abs(np.trace(P).imag)),
    }


def stiefel_residual(Z: np.ndarray, scale: float = 1.0) -> float:
    """Max-norm deviation of the column Gram matrix from scale * identity."""
    k = Z.shape[1]
    return float(np.abs(Z.conj().T @ Z - scale * np.eye(k)).max())


def to_moment_level(Z: np.ndarray, ambient: int) -> np.ndarray:
    """Rescale a unit frame to the moment-level convention (Gram = n I)."""
    return np.sqrt(float(ambient)) * Z


def to_unit_frame(W: np.ndarray, ambient: int) -> np.ndarray:
    return W / np.sqrt(float(ambient))


def quaternionic_structure(v: np.ndarray) -> np.ndarray:
    """The antilinear map J(z, w) = (-conj w, conj z) on C^{2n}; J^2 = -1.

    A plane is in the image of the Grassmannian embedding of quaternionic
    lines exactly when it is J-invariant.
    """
    n2 = v.shape[0]
    if n2 % 2:
        raise ValueError("vector length must be even")
    n = n2 // 2
    z, w = v[:n], v[n:]
    return np.concatenate([-np.conj(w), np.conj(z)])


def k1_membership(P: np.ndarray, tol: float = 1e-8) -> bool:
    """Whether the projector is entrywise real: the plane is the
    complexification of a real 2-plane (the Lagrangian Gr_2(R^{2n}))."""
    return float(np.abs(P.imag).max()) <= tol


def k2_membership(P: np.ndarray, tol: float = 1e-8) -> bool:
    """Whether the range of P is invariant under the quaternionic structure
    J: membership in the quaternionic-line Grassmannian."""
    return k2_residual(P) <= tol


def k2_residual(P: np.ndarray) -> float:
    # Orthonormal basis of the range via SVD (P is a rank-2 projector).
    U, s, _ = np.linalg.svd(P)
    basis = U[:, :2]
    res = 0.0
    for a in range(2):
        y = quaternionic_structure(basis[:, a])
        res = max(res, float(np.linalg.norm(y - P @ y)))
    return res


def k1_residual(P: np.ndarray) -> float:
    return float(np.abs(P.imag).max())


# ---------------------------------------------------------------------------
# samples of the two Legendrian families (upstairs, unit-frame convention)

def sample_L1(n: int, seed) -> np.ndarray:
    """Random real orthonormal 2-frame in R^{2n}, viewed complex."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((2 * n, 2))
    Q, _ = np.linalg.qr(X)
    return Q.astype(complex)


def sample_L2(n: int, seed) -> np.ndarray:
    """Frame of a random unit quaternion vector in H^n."""
    rng = np.random.default_rng(seed)
    return quat_to_frame_b(random_unit_quaternions(n, rng))


def sample_L2_quaternion(n: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return random_unit_quaternions(n, rng)


# ---------------------------------------------------------------------------
# contact form upstairs and tangent spaces of the sampled submanifolds

def frame_liouville(Z: np.ndarray, V: np.ndarray) -> float:
    """Liouville form 1/2 * omega(Z, V) on frames viewed as stacked vectors
    of C^{4n}: one half the imaginary part of tr(Z* V)."""
    return 0.5 * float(np.imag(np.trace(Z.conj().T @ V)))


def su2_orbit_directions(Z: np.ndarray) -> list[np.ndarray]:
    """Tangent vectors of the SU(2)-orbit through the frame Z."""
    return [Z @ X for X in SU2_ALGEBRA_BASIS]


def l1_tangent_basis(Z: np.ndarray) -> list[np.ndarray]:
    """Exact tangent basis of the real Stiefel variety at a real frame Z:
    V = Z S (S real skew) plus V = Z_perp B, dimension 4n - 3."""
    Zr = Z.real
    two_n = Zr.shape[0]
    Qfull, _ = np.linalg.qr(Zr, mode="complete")
    Zperp = Qfull[:, 2:]
    basis = [Zr @ np.array([[0.0, 1.0], [-1.0, 0.0]])]
    for a in range(two_n - 2):
        for b in range(2):
            B = np.zeros((two_n - 2, 2))
            B[a, b] = 1.0
            basis.append(Zperp @ B)
    return [V.astype(complex) for V in basis]


def l2_tangent_basis(q: np.ndarray) -> list[np.ndarray]:
    """Exact tangent basis of the b-image of the quaternion unit sphere at
    frame(q): images of an orthonormal basis of the real hyperplane q-perp
    under the linear coordinate formula, dimension 4n - 1."""
    flat = q.reshape(-1)
    Qfull, _ = np.linalg.qr(flat[:, None], mode="complete")
    basis = []
    for col in range(1, flat.size):
        delta = Qfull[:, col].reshape(q.shape)
        basis.append(frame_linear(delta))
    return basis


def _project_out(vectors: list[np.ndarray], directions: list[np.ndarray]) -> np.ndarray:
    """Real-orthogonal projection of flattened tangents off the span of the
    orbit directions; returns the stacked real matrix of projected rows."""

    def real_flat(M: np.ndarray) -> np.ndarray:
        f = M.reshape(-1)
        return np.concatenate([f.real, f.imag])

    D = np.stack([real_flat(d) for d in directions], axis=1)
    Qd, _ = np.linalg.qr(D)
    rows = np.stack([real_flat(v) for v in vectors])
    return rows - (rows @ Qd) @ Qd.T


@dataclass(frozen=True)
class LegendrianReport:
    samples: int
    expected_dimension: int
    dimensions: tuple[int, ...]
    max_alpha: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            all(d == self.expected_dimension for d in self.dimensions)
            and self.max_alpha < self.tol
        )


def legendrian_check(
    sample_kind: str, n: int, count: int = 100, tol: float = 1e-9, seed: int = 0
) -> LegendrianReport:
    """Verify the Legendrian conditions for one of the two families.

    For ``count`` seeded samples, builds the exact tangent basis of the
    sampled submanifold upstairs, projects off the SU(2)-orbit directions,
    and checks that the Liouville form vanishes on all tangents while the
    projected tangent space has dimension 4n - 4 (half of dim V - 1).
    """
    if sample_kind not in ("L1", "L2"):
        raise ValueError("sample_kind must be 'L1' or 'L2'")
    dims = []
    max_alpha = 0.0
    for trial in range(count):
        trial_seed = (seed, trial)
        if sample_kind == "L1":
            Z = sample_L1(n, trial_seed)
            tangents = l1_tangent_basis(Z)
        else:
            q = sample_L2_quaternion(n, trial_seed)
            Z = quat_to_frame_b(q)
            tangents = l2_tangent_basis(q)
        for V in tangents:
            max_alpha = max(max_alpha, abs(frame_liouville(Z, V)))
        projected = _project_out(tangents, su2_orbit_directions(Z))
        svals = np.linalg.svd(projected, compute_uv=False)
        dims.append(int((svals > 1e-6 * max(1.0, svals[0])).sum()))
    return LegendrianReport(
        samples=count,
        expected_dimension=4 * n - 4,
        dimensions=tuple(sorted(set(dims))),
        max_alpha=max_alpha,
        tol=tol,
    )


# ---------------------------------------------------------------------------
# covering and inclusion witnesses

def quotient_dimension_witness(n: int, seed: int = 0) -> dict:
    """Reproduce the dimension bookkeeping at a random frame by numerical
    tangent ranks: the Stiefel variety of 2-frames in C^{2n} has real
    dimension 8n - 4, its SU(2)-quotient 8n - 7, its U(2)-quotient (the
    Grassmannian) 8n - 8, and the Legendrian families 4n - 4."""
    Z = sample_L2(n, seed)
    two_n = 2 * n

    def real_flat(M):
        f = M.reshape(-1)
        return np.concatenate([f.real, f.imag])

    # Tangents of the unit-frame variety: V with Z*V + V*Z = 0, computed as
    # the null space of the real linearization of the Gram condition.
    rows = []
    for idx in range(4 * two_n):
        e = np.zeros(4 * two_n)
        e[idx] = 1.0
        half = e[: 2 * two_n] + 1j * e[2 * two_n :]
        V = half.reshape(two_n, 2)
        G = Z.conj().T @ V + V.conj().T @ Z
        rows.append([G[0, 0].real, G[1, 1].real, G[0, 1].real, G[0, 1].imag])
    J = np.array(rows).T
    svals = np.linalg.svd(J, compute_uv=False)
    stiefel_dim = 4 * two_n - int((svals > 1e-9 * svals[0]).sum())

    _, _, vt = np.linalg.svd(J)
    tangent_rows = vt[int((svals > 1e-9 * svals[0]).sum()) :]

    def quotient_rank(directions):
        D = np.stack([real_flat(d) for d in directions], axis=1)
        Qd, _ = np.linalg.qr(D)
        projected = tangent_rows - (tangent_rows @ Qd) @ Qd.T
        s = np.linalg.svd(projected, compute_uv=False)
        return int((s > 1e-6 * max(1.0, s[0])).sum())

    u2_basis = list(SU2_ALGEBRA_BASIS) + [1j * np.eye(2)]
    return {
        "stiefel": stiefel_dim,
        "su2_quotient": quotient_rank(su2_orbit_directions(Z)),
        "grassmannian": quotient_rank([Z @ X for X in u2_basis]),
        "expected": {
            "stiefel": 8 * n - 4,
            "su2_quotient": 8 * n - 7,
            "grassmannian": 8 * n - 8,
        },
    }


@dataclass(frozen=True)
class DoubleCoverReport:
    seeds: int
    wedge_negation_error: float
    projector_error: float
    wedge_norm_error: float

    @property
    def passed(self) -> bool:
        return max(
            self.wedge_negation_error, self.projector_error, self.wedge_norm_error
        ) < 1e-10


def double_cover_witness(n: int, seed: int = 0, count: int = 100) -> DoubleCoverReport:
    """Exhibit the two-to-one projection on the real family: swapping the
    columns of a real frame negates the wedge (a different point of the
    SU(2)-quotient) while the projector (the Grassmannian point) is
    unchanged."""
    neg_err = proj_err = norm_err = 0.0
    for trial in range(count):
        Z = sample_L1(n, (seed, trial))
        Zswap = Z[:, ::-1]
        neg_err = max(neg_err, float(np.abs(wedge(Z) + wedge(Zswap)).max()))
        proj_err = max(
            proj_err, float(np.abs(projector(Z) - projector(Zswap)).max())
        )
        norm_err = max(norm_err, abs(float(np.linalg.norm(wedge(Z))) - 1.0))
    return DoubleCoverReport(
        seeds=count,
        wedge_negation_error=neg_err,
        projector_error=proj_err,
        wedge_norm_error=norm_err,
    )


@dataclass(frozen=True)
class InclusionReport:
    trials: int
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol


def projective_inclusion_check(
    n: int, count: int = 1000, tol: float = 1e-12, seed: int = 0
) -> InclusionReport:
    """Image of the real sphere under the complexified frame map lies in the
    (projectivized) Stiefel variety: for random real unit vectors v, the
    reshaped image of the unitary matrix, rescaled by sqrt(2), is a unit
    frame within tol.  The statement is scale-free, hence projective."""
    B = bC_matrix(n)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        v = rng.standard_normal(4 * n)
        v /= np.linalg.norm(v)
        img = B @ v
        F = np.sqrt(2.0) * np.stack([img[: 2 * n], img[2 * n :]], axis=1)
        worst = max(worst, stiefel_residual(F))
    return InclusionReport(trials=count, max_residual=worst, tol=tol)
