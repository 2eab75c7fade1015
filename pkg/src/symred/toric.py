"""Polytope-level semantics: moment polytopes and their Delzant data.

A polytope is given by facet conormals nu_j and rational offsets a_j through
the inequalities <x, nu_j> + a_j >= 0.  From these we assemble the reduction
data of the toric manifold: the kernel lattice of the conormal map, the
level c = iota*(a), the positive weight vector, the evenness flag and (when
it exists) the monotonicity constant.  Interior points are found by an
exact rational max-min-slack program so that downstream level-set samples
are exact before any floating conversion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyInterior, NoPositiveRelation, NotProportional
from .lattice import (
    DEFAULT_WEIGHT_SEARCH_BOUND,
    IntMatrix,
    KernelLattice,
    conormal_matrix,
    find_weight_vector,
    is_even,
    kernel_lattice,
    matrix_shape,
    monotone_level_check,
)


@dataclass(frozen=True)
class PolytopeSpec:
    """Facet presentation of a moment polytope: <x, nu_j> + a_j >= 0."""

    nu: IntMatrix
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        dim, d = matrix_shape(self.nu)
        if len(self.offsets) != d:
            raise ValueError(f"{len(self.offsets)} offsets for {d} facets")

    @property
    def dim(self) -> int:
        return matrix_shape(self.nu)[0]

    @property
    def d(self) -> int:
        return matrix_shape(self.nu)[1]

    def slacks(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """The facet slacks <x, nu_j> + a_j at a rational point."""
        if len(x) != self.dim:
            raise ValueError(f"point has length {len(x)}, expected {self.dim}")
        return tuple(
            sum((Fraction(x[i]) * self.nu[i][j] for i in range(self.dim)), Fraction(0))
            + self.offsets[j]
            for j in range(self.d)
        )


def polytope_spec(
    conormals: Iterable[Iterable[int]], offsets: Iterable
) -> PolytopeSpec:
    """Convenience constructor taking one conormal vector per facet."""
    return PolytopeSpec(
        nu=conormal_matrix(conormals),
        offsets=tuple(Fraction(a) for a in offsets),
    )


def normalized_polytope_spec(conormals: Iterable[Iterable[int]]) -> PolytopeSpec:
    """Polytope with all offsets 1/2 (the normalized monotone level)."""
    nu = conormal_matrix(conormals)
    d = matrix_shape(nu)[1]
    return PolytopeSpec(nu=nu, offsets=tuple(Fraction(1, 2) for _ in range(d)))


@dataclass(frozen=True)
class InteriorPoint:
    """A rational point of the open polytope together with its slacks."""

    x: tuple[Fraction, ...]
    slacks: tuple[Fraction, ...]
    unbounded: bool = False

    def __post_init__(self):
        if any(s <= 0 for s in self.slacks):
            raise EmptyInterior(f"slacks {self.slacks} are not all positive")


@dataclass(frozen=True)
class DelzantData:
    """Reduction data of the toric manifold attached to a polytope."""

    kernel: KernelLattice
    c: tuple[Fraction, ...]
    gamma: tuple[int, ...]
    even: bool
    lam: Fraction | None


def build_delzant(
    spec: PolytopeSpec, weight_bound: int = DEFAULT_WEIGHT_SEARCH_BOUND
) -> DelzantData:
    """Assemble kernel, level c = iota*(a), weight vector, evenness and the
    monotonicity constant (None when the level is not proportional to the
    anticanonical functional).  Lattice-level errors propagate: a trivial
    kernel has no weight vector and raises NoPositiveRelation."""
    kernel = kernel_lattice(spec.nu)
    c = kernel.iota_star(spec.offsets)
    gamma = find_weight_vector(kernel, bound=weight_bound) if kernel.rank else ()
    if spec.d > 0 and kernel.rank == 0:
        raise NoPositiveRelation("conormal map is injective; no weight vector")
    try:
        lam = monotone_level_check(kernel, spec.offsets) if kernel.rank else None
    except NotProportional:
        lam = None
    return DelzantData(
        kernel=kernel,
        c=c,
        gamma=gamma,
        even=is_even(spec.nu),
        lam=lam,
    )


def _solve_rational(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Solve a square rational system by Gaussian elimination; None if
    singular."""
    n = len(rows)
    A = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def find_interior_point(
    spec: PolytopeSpec, weight_bound: int = DEFAULT_WEIGHT_SEARCH_BOUND
) -> InteriorPoint:
    """Exact rational point maximizing the minimum facet slack.

    Solves max_t { t : <x, nu_j> + a_j >= t } by enumeration of active
    constraint subsets (the optimum of this LP sits where dim+1 constraints
    are active).  When the polytope is unbounded -- detected via the absence
    of a positive relation among the conormals -- a bounding box is added
    and the flag ``unbounded`` is set on the result.

    Raises :class:`EmptyInterior` if the max-min slack is not positive.
    """
    dim, d = matrix_shape(spec.nu)
    if dim == 0:
        return InteriorPoint(x=(), slacks=spec.slacks(()))

    unbounded = False
    try:
        find_weight_vector(kernel_lattice(spec.nu), bound=weight_bound)
    except NoPositiveRelation:
        unbounded = True

    # Constraint rows in the epigraph variables (x, t):
    # sum_i nu[i][j] x_i - t + a_j >= 0.
    rows = [
        [Fraction(spec.nu[i][j]) for i in range(dim)] + [Fraction(-1)]
        for j in range(d)
    ]
    offsets = list(spec.offsets)
    if unbounded:
        box = 1 + sum(abs(a) for a in offsets)
        for i in range(dim):
            e = [Fraction(0)] * (dim + 1)
            e[i] = Fraction(1)
            e[dim] = Fraction(-1)
            rows.append(e)
            offsets.append(Fraction(box))
            e2 = e[:]
            e2[i] = Fraction(-1)
            rows.append(e2)
            offsets.append(Fraction(box))

    best: tuple[Fraction, tuple[Fraction, ...]] | None = None
    for active in itertools.combinations(range(len(rows)), dim + 1):
        sol = _solve_rational(
            [rows[j] for j in active], [-offsets[j] for j in active]
        )
        if sol is None:
            continue
        x, t = sol[:dim], sol[dim]
        if all(
            sum(r * v for r, v in zip(rows[j][: dim + 1], sol)) + offsets[j] >= 0
            for j in range(len(rows))
        ):
            key = (t, tuple(-v for v in x))
            if best is None or key > (best[0], tuple(-v for v in best[1])):
                best = (t, tuple(x))
    if best is None or best[0] <= 0:
        raise EmptyInterior("max-min slack program has no positive solution")
    return InteriorPoint(x=best[1], slacks=spec.slacks(best[1]), unbounded=unbounded)


@dataclass(frozen=True)
class StageTorusData:
    """Level data of the central torus used for reduction in stages."""

    c_tilde: tuple[Fraction, ...]
    gamma_extension: tuple[int, ...]


def stage_torus_data(
    data: DelzantData, factors: Sequence[tuple[int, int]]
) -> StageTorusData:
    """Central-torus level (c, n_1 k_1 / 2, ..., n_r k_r / 2) and the
    circle-embedding weights (gamma, 1, ..., 1) extended over all factor
    coordinates.  ``factors`` lists (n_i, k_i) with n_i the complex dimension
    of the ambient space of the i-th Grassmannian factor."""
    c_tilde = tuple(data.c) + tuple(Fraction(n * k, 2) for n, k in factors)
    gamma_ext = tuple(data.gamma) + tuple(
        1 for n, k in factors for _ in range(n * k)
    )
    return StageTorusData(c_tilde=c_tilde, gamma_extension=gamma_ext)
