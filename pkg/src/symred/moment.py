"""Moment maps on the ambient complex vector space and level-set sampling.

The ambient space is C^D = C^d x prod_i C^(n_i x k_i): one toric block of
dimension d (the number of polytope facets) and one n_i x k_i matrix block
per Grassmannian factor Gr_{k_i}(C^{n_i}).  A factor is recorded by the
pair (n_i, k_i) with n_i the complex dimension of the space the k_i-planes
live in, so D = d + sum n_i k_i.

Moment conventions (standard symplectic form, Hermitian product antilinear
in the second slot):

* toric block      Phi(z)_b = sum_j kernel_basis[b][j] * |z_j|^2 / 2,
* frame block      Phi(W)  = (i/2) W* W, a skew-Hermitian k x k matrix,
* target level     p = (c, (i n_1/2) I, ..., (i n_r/2) I),

so the level set consists of frames whose columns are Hermitian-orthogonal
of norm sqrt(n_i) ("moment-level" scaling); converters to unit frames are
in quatgrass.  Samples of the level set combine exact polytope slacks with
seeded random phases and random orthonormal frames, and are reproducible
bit-for-bit per seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ShapeMismatch
from .lattice import KernelLattice
from .toric import (
    DelzantData,
    InteriorPoint,
    PolytopeSpec,
    build_delzant,
    find_interior_point,
    stage_torus_data,
)


@dataclass(frozen=True)
class GrassmannFactor:
    """Gr_k(C^n): frames are n x k complex matrices."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.k > self.n:
            raise ValueError(f"bad Grassmannian factor ({self.n}, {self.k})")

    @property
    def ambient_complex_dim(self) -> int:
        return self.n * self.k


@dataclass(frozen=True)
class ReductionSpec:
    """Full reduction data: toric block plus Grassmannian factors."""

    polytope: PolytopeSpec
    delzant: DelzantData
    factors: tuple[GrassmannFactor, ...]
    name: str = ""
    interior: InteriorPoint | None = field(default=None, compare=False)

    @property
    def d(self) -> int:
        return self.polytope.d

    @property
    def D(self) -> int:
        return self.d + sum(f.ambient_complex_dim for f in self.factors)

    @property
    def gamma(self) -> tuple[int, ...]:
        return self.delzant.gamma

    @property
    def Gamma(self) -> np.ndarray:
        """Weight vector (gamma_1, ..., gamma_d, 1, ..., 1) of length D."""
        return np.concatenate(
            [
                np.asarray(self.gamma, dtype=float),
                np.ones(self.D - self.d),
            ]
        )

    @property
    def sphere_level(self) -> float:
        """Weighted squared radius sum(gamma) + sum(n_i k_i) of the sphere
        containing the level set (normalized monotone offsets assumed)."""
        return float(
            sum(self.gamma) + sum(f.ambient_complex_dim for f in self.factors)
        )

    @property
    def c_tilde(self) -> tuple[Fraction, ...]:
        return stage_torus_data(
            self.delzant, [(f.n, f.k) for f in self.factors]
        ).c_tilde

    def interior_point(self) -> InteriorPoint:
        if self.interior is not None:
            return self.interior
        pt = find_interior_point(self.polytope)
        object.__setattr__(self, "interior", pt)
        return pt


def reduction_spec(
    polytope: PolytopeSpec,
    factors: Sequence[tuple[int, int]] = (),
    name: str = "",
    interior: InteriorPoint | None = None,
) -> ReductionSpec:
    return ReductionSpec(
        polytope=polytope,
        delzant=build_delzant(polytope),
        factors=tuple(GrassmannFactor(n, k) for n, k in factors),
        name=name,
        interior=interior,
    )


@dataclass(frozen=True)
class AmbientPoint:
    """A point (or real-linear tangent displacement) of C^D."""

    toric: np.ndarray
    frames: tuple[np.ndarray, ...]

    def flatten(self) -> np.ndarray:
        parts = [np.asarray(self.toric, dtype=complex).reshape(-1)]
        parts += [np.asarray(W, dtype=complex).reshape(-1) for W in self.frames]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)

    def check_shapes(self, spec: ReductionSpec) -> None:
        if self.toric.shape != (spec.d,):
            raise ShapeMismatch(
                f"toric block has shape {self.toric.shape}, expected ({spec.d},)"
            )
        if len(self.frames) != len(spec.factors):
            raise ShapeMismatch(
                f"{len(self.frames)} frame blocks for {len(spec.factors)} factors"
            )
        for W, f in zip(self.frames, spec.factors):
            if W.shape != (f.n, f.k):
                raise ShapeMismatch(
                    f"frame block has shape {W.shape}, expected ({f.n}, {f.k})"
                )


def ambient_point(spec: ReductionSpec, vector: np.ndarray) -> AmbientPoint:
    """Reassemble an AmbientPoint from its flattened C^D coordinates."""
    vector = np.asarray(vector, dtype=complex).reshape(-1)
    if vector.shape != (spec.D,):
        raise ShapeMismatch(f"vector has length {vector.size}, expected {spec.D}")
    toric = vector[: spec.d]
    frames = []
    pos = spec.d
    for f in spec.factors:
        frames.append(vector[pos : pos + f.ambient_complex_dim].reshape(f.n, f.k))
        pos += f.ambient_complex_dim
    return AmbientPoint(toric=toric, frames=tuple(frames))


def zero_point(spec: ReductionSpec) -> AmbientPoint:
    return ambient_point(spec, np.zeros(spec.D, dtype=complex))


@dataclass(frozen=True)
class MomentValue:
    """Value of the product moment map: toric part in kernel-basis
    coordinates plus one skew-Hermitian k x k block per factor."""

    toric: np.ndarray
    blocks: tuple[np.ndarray, ...]

    def as_real_vector(self) -> np.ndarray:
        """Flatten into R^(rank + sum k_i^2): toric values, then per block
        the imaginary diagonal followed by real/imaginary parts of the
        strict upper triangle."""
        parts = [np.asarray(self.toric, dtype=float).reshape(-1)]
        for M in self.blocks:
            k = M.shape[0]
            parts.append(np.diag(M).imag)
            if k > 1:
                iu = np.triu_indices(k, k=1)
                parts.append(M[iu].real)
                parts.append(M[iu].imag)
        return np.concatenate(parts) if parts else np.zeros(0)

    def max_residual_to(self, other: "MomentValue") -> float:
        res = 0.0
        if self.toric.size or other.toric.size:
            res = float(np.abs(self.toric - other.toric).max(initial=0.0))
        for A, B in zip(self.blocks, other.blocks):
            res = max(res, float(np.abs(A - B).max()))
        return res


def moment_unitary(W: np.ndarray) -> np.ndarray:
    """Moment map of the right unitary column action on frames:
    (i/2) W* W, the skew-Hermitian matrix of halved column products.
    Coadjoint equivariance: moment_unitary(W @ A) = A* moment_unitary(W) A
    for unitary A."""
    W = np.asarray(W, dtype=complex)
    return 0.5j * (W.conj().T @ W)


def moment_toric(z: np.ndarray, kernel: KernelLattice) -> np.ndarray:
    """Restriction of the standard torus moment map (|z_j|^2 / 2 per
    coordinate) to the kernel subtorus, in kernel-basis coordinates."""
    z = np.asarray(z, dtype=complex)
    if z.shape != (kernel.d,):
        raise ShapeMismatch(f"toric block has length {z.size}, expected {kernel.d}")
    half_sq = 0.5 * np.abs(z) ** 2
    if kernel.rank == 0:
        return np.zeros(0)
    basis = np.array(kernel.basis, dtype=float)
    return basis @ half_sq


def moment_G(pt: AmbientPoint, spec: ReductionSpec) -> MomentValue:
    """Product moment map: toric part plus one block per factor."""
    pt.check_shapes(spec)
    return MomentValue(
        toric=moment_toric(pt.toric, spec.delzant.kernel),
        blocks=tuple(moment_unitary(W) for W in pt.frames),
    )


def moment_S1(pt: AmbientPoint, spec: ReductionSpec) -> float:
    """Moment map of the weighted circle: half the Gamma-weighted squared
    norm.  On the level set it equals sphere_level / 2."""
    pt.check_shapes(spec)
    v = pt.flatten()
    return float(0.5 * (spec.Gamma @ (np.abs(v) ** 2)))


def target_level(spec: ReductionSpec) -> MomentValue:
    """The reduction level p: c on the toric part and (i n_i / 2) I per
    factor (the matrix, under the trace pairing, of the functional
    -(i n_i / 2) tr)."""
    return MomentValue(
        toric=np.array([float(x) for x in spec.delzant.c]),
        blocks=tuple(0.5j * f.n * np.eye(f.k) for f in spec.factors),
    )


def in_level_set(
    pt: AmbientPoint, spec: ReductionSpec, tol: float = 1e-10
) -> tuple[bool, float]:
    """Max-norm moment residual against the target level, and whether it is
    below tol."""
    residual = moment_G(pt, spec).max_residual_to(target_level(spec))
    return residual < tol, residual


def sample_level(
    spec: ReductionSpec, seed, interior: InteriorPoint | None = None
) -> AmbientPoint:
    """Seeded random point of the moment level set.

    Toric coordinates have squared modulus twice the facet slack at an
    interior point (exactly on-level by construction, for any interior
    point) and uniform random phases; each frame block is sqrt(n_i) times a
    random orthonormal k_i-frame from a seeded complex Gaussian QR.
    """
    rng = np.random.default_rng(seed)
    if interior is None and spec.d > 0:
        interior = spec.interior_point()
    if spec.d > 0:
        radii = np.sqrt(2.0 * np.array([float(s) for s in interior.slacks]))
        phases = np.exp(2j * np.pi * rng.uniform(size=spec.d))
        toric = radii * phases
    else:
        toric = np.zeros(0, dtype=complex)
    frames = []
    for f in spec.factors:
        X = rng.standard_normal((f.n, f.k)) + 1j * rng.standard_normal((f.n, f.k))
        Q, _ = np.linalg.qr(X)
        frames.append(np.sqrt(float(f.n)) * Q)
    return AmbientPoint(toric=toric, frames=tuple(frames))
