"""Exact integer and rational linear algebra for the toric conditions.

Conormal data is a matrix over the integers whose *columns* are the facet
conormals of a moment polytope.  Everything in this module is computed with
Python integers and :class:`fractions.Fraction`; no floating point enters,
so parity (evenness), primitivity and lattice-membership answers are exact.

The central objects are

* ``smith_normal_form`` -- a textbook Smith normal form with unimodular
  transforms, the workhorse behind kernels and integer solvability;
* ``kernel_lattice`` -- a saturated basis of the integer kernel of the
  conormal map, in Hermite normal form so that identical input gives
  identical basis bytes;
* the predicates ``is_even`` / ``minus_identity_in_torus`` and the searches
  ``find_weight_vector`` / ``monotone_level_check`` built on top of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NonPrimitiveColumn, NoPositiveRelation, NotProportional

IntMatrix = tuple[tuple[int, ...], ...]
RationalVector = tuple[Fraction, ...]

DEFAULT_WEIGHT_SEARCH_BOUND = 64


def _as_int_rows(matrix: Iterable[Iterable[int]]) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in matrix]
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError("ragged integer matrix")
    return rows


def conormal_matrix(columns: Iterable[Iterable[int]]) -> IntMatrix:
    """Build the (dim x d) conormal matrix from a list of facet conormals.

    Each element of ``columns`` is one conormal vector.  Raises
    :class:`NonPrimitiveColumn` if a conormal is zero or not primitive.
    """
    cols = _as_int_rows(columns)
    for j, col in enumerate(cols):
        g = 0
        for x in col:
            g = gcd(g, abs(x))
        if g != 1:
            raise NonPrimitiveColumn(
                f"conormal #{j} = {tuple(col)} has gcd {g}, expected 1"
            )
    if not cols:
        return ()
    dim = len(cols[0])
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(dim))


def matrix_shape(matrix: IntMatrix) -> tuple[int, int]:
    rows = len(matrix)
    return rows, (len(matrix[0]) if rows else 0)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def smith_normal_form(
    matrix: Iterable[Iterable[int]],
) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (U, S, V), U*M*V = S.

    S is diagonal with nonnegative entries d_1 | d_2 | ... and U, V are
    unimodular.  Works for any shape, including empty matrices.
    """
    A = _as_int_rows(matrix)
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_addmul(i: int, j: int, q: int) -> None:
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    def row_swap(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_addmul(i: int, j: int, q: int) -> None:
        for row in A:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    def col_swap(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_negate(i: int) -> None:
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    def find_pivot(t: int) -> tuple[int, int] | None:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
        return None if best is None else (best[1], best[2])

    t = 0
    while t < min(m, n):
        piv = find_pivot(t)
        if piv is None:
            break
        if piv != (t, t):
            row_swap(piv[0], t)
            col_swap(piv[1], t)
        while True:
            # Clear column t, then row t; remainders become new, smaller
            # pivots, so this terminates.
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    if A[i][t]:
                        q = A[i][t] // A[t][t]
                        row_addmul(i, t, -q)
                        if A[i][t]:
                            row_swap(i, t)
                            dirty = True
                for j in range(t + 1, n):
                    if A[t][j]:
                        q = A[t][j] // A[t][t]
                        col_addmul(j, t, -q)
                        if A[t][j]:
                            col_swap(j, t)
                            dirty = True
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = (i, j)
                        break
                if bad:
                    break
            if bad is None:
                break
            # Fold the offending row into row t so the pivot shrinks to the
            # gcd on the next pass (divisibility chain).
            row_addmul(t, bad[0], 1)
        if A[t][t] < 0:
            row_negate(t)
        t += 1

    to_tuple = lambda M: tuple(tuple(row) for row in M)
    return to_tuple(U), to_tuple(A), to_tuple(V)


def _hnf_rows(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of a full-rank row list (canonical
    basis of the row lattice: positive pivots, entries above a pivot reduced
    into [0, pivot))."""
    R = [list(r) for r in rows]
    if not R:
        return ()
    n = len(R[0])
    row = 0
    for col in range(n):
        pivot_row = None
        for i in range(row, len(R)):
            if R[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        R[row], R[pivot_row] = R[pivot_row], R[row]
        for i in range(row + 1, len(R)):
            while R[i][col]:
                g, x, y = xgcd(R[row][col], R[i][col])
                a, b = R[row][col] // g, R[i][col] // g
                new_top = [x * p + y * q for p, q in zip(R[row], R[i])]
                new_bot = [a * q - b * p for p, q in zip(R[row], R[i])]
                R[row], R[i] = new_top, new_bot
        if R[row][col] < 0:
            R[row] = [-x for x in R[row]]
        for i in range(row):
            q = R[i][col] // R[row][col]
            if q:
                R[i] = [p - q * r for p, r in zip(R[i], R[row])]
        row += 1
    return tuple(tuple(r) for r in R[:row])


@dataclass(frozen=True)
class KernelLattice:
    """Saturated integer basis of ker(conormal map) inside Z^d.

    ``basis`` rows span the full kernel lattice (any integer kernel vector
    is an integer combination); the inclusion iota is the transpose of the
    basis matrix, and ``iota_star`` realizes the dual projection as plain
    pairings with the basis rows.
    """

    basis: tuple[tuple[int, ...], ...]
    d: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def iota_star(self, functional: Sequence) -> tuple:
        """Pair a functional on Z^d with each basis vector (= restriction
        to the kernel, expressed in basis coordinates)."""
        if len(functional) != self.d:
            raise ValueError(
                f"functional has length {len(functional)}, expected {self.d}"
            )
        return tuple(
            sum(f * v for f, v in zip(functional, row)) for row in self.basis
        )

    def vector_from_coefficients(self, coeffs: Sequence) -> tuple:
        if len(coeffs) != self.rank:
            raise ValueError(f"expected {self.rank} coefficients")
        return tuple(
            sum(c * row[j] for c, row in zip(coeffs, self.basis))
            for j in range(self.d)
        )


def _integer_kernel_rows(matrix: Sequence[Sequence[int]], d: int) -> tuple:
    """Canonical saturated basis (as rows) of the integer kernel of a
    matrix with d columns.  With U*M*V = S, the columns of V past the rank
    span the kernel; V unimodular makes them a direct summand, hence the
    basis is saturated.  Hermite normal form makes it canonical."""
    if d == 0:
        return ()
    if len(matrix) == 0:
        return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    _, S, V = smith_normal_form(matrix)
    rank = sum(1 for i in range(min(len(matrix), d)) if S[i][i] != 0)
    raw = [tuple(V[i][j] for i in range(d)) for j in range(rank, d)]
    return _hnf_rows(raw)


def kernel_lattice(nu: IntMatrix) -> KernelLattice:
    """Saturated integer kernel basis of the conormal matrix.

    Raises :class:`NonPrimitiveColumn` if some conormal is zero or divisible.
    """
    dim, d = matrix_shape(nu)
    for j in range(d):
        g = 0
        for i in range(dim):
            g = gcd(g, abs(nu[i][j]))
        if g != 1:
            raise NonPrimitiveColumn(f"column {j} of the conormal matrix is not primitive")
    return KernelLattice(basis=_integer_kernel_rows(nu, d), d=d)


def is_even(nu: IntMatrix) -> bool:
    """True iff the sum of the conormals lies in twice the integer lattice."""
    dim, d = matrix_shape(nu)
    return all(sum(nu[i][j] for j in range(d)) % 2 == 0 for i in range(dim))


def find_weight_vector(
    kernel: KernelLattice, bound: int = DEFAULT_WEIGHT_SEARCH_BOUND
) -> tuple[int, ...]:
    """Primitive strictly positive integer relation among the conormals.

    Searches integer combinations of the kernel basis by growing sup-norm
    radius up to ``bound``; among hits at the first successful radius the
    lexicographically smallest primitive vector is returned.  Raises
    :class:`NoPositiveRelation` on exhaustion (non-compact polytope, or the
    bound is too small).
    """
    if kernel.rank == 0:
        raise NoPositiveRelation("kernel lattice has rank 0")
    for radius in range(1, bound + 1):
        hits = set()
        for coeffs in itertools.product(range(-radius, radius + 1), repeat=kernel.rank):
            if max(abs(c) for c in coeffs) != radius:
                continue
            v = kernel.vector_from_coefficients(coeffs)
            if all(x >= 1 for x in v):
                g = 0
                for x in v:
                    g = gcd(g, x)
                hits.add(tuple(x // g for x in v))
        if hits:
            return min(hits)
    raise NoPositiveRelation(
        f"no strictly positive kernel vector within coefficient bound {bound}"
    )


def monotone_level_check(
    kernel: KernelLattice, a: Sequence[Fraction]
) -> Fraction:
    """Proportionality constant between iota*(1,...,1) and iota*(a).

    Returns the rational lambda > 0 with iota*(1,...,1) = lambda * iota*(a)
    on the kernel; the normalized level a = (1/2,...,1/2) always yields 2.
    Raises :class:`NotProportional` when the two functionals on the kernel
    are not positively proportional (or the kernel is trivial, leaving the
    constant undefined).
    """
    if kernel.rank == 0:
        raise NotProportional("kernel has rank 0; proportionality constant undefined")
    ones = kernel.iota_star([Fraction(1)] * kernel.d)
    level = kernel.iota_star([Fraction(x) for x in a])
    lam = None
    for u, w in zip(ones, level):
        if w == 0:
            if u != 0:
                raise NotProportional("iota*(1) nonzero where iota*(a) vanishes")
            continue
        candidate = Fraction(u, 1) / w
        if lam is None:
            lam = candidate
        elif lam != candidate:
            raise NotProportional(
                f"iota*(1) = {ones} is not proportional to iota*(a) = {level}"
            )
    if lam is None:
        raise NotProportional("iota*(a) vanishes on the kernel")
    if lam <= 0:
        raise NotProportional(f"proportionality constant {lam} is not positive")
    return lam


def _solve_integer(A: Sequence[Sequence[int]], t: Sequence[int]) -> bool:
    """Whether A*x = t has an integer solution (A integer matrix, t integer)."""
    m = len(A)
    if m == 0:
        return True
    n = len(A[0])
    U, S, _ = smith_normal_form(A)
    Ut = [sum(U[i][j] * t[j] for j in range(m)) for i in range(m)]
    rank = sum(1 for i in range(min(m, n)) if S[i][i] != 0)
    for i in range(rank):
        if Ut[i] % S[i][i]:
            return False
    return all(Ut[i] == 0 for i in range(rank, m))


def minus_identity_in_torus(kernel: KernelLattice) -> bool:
    """Whether -identity lies in the reducing torus.

    Decides, exactly, whether some v in the real span of the kernel is
    congruent to (1/2,...,1/2) mod Z^d.  Equivalently (annihilating the
    kernel by a saturated integer matrix A, so A*v = 0 characterizes the
    span): whether A*m = -A*(1,...,1)/2 has an integer solution m.
    """
    if kernel.d == 0:
        return True
    A = _integer_kernel_rows(kernel.basis, kernel.d)
    if not A:
        return True
    twice_target = [-sum(row) for row in A]
    if any(x % 2 for x in twice_target):
        return False
    return _solve_integer(A, [x // 2 for x in twice_target])


def integer_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    A = [[int(x) for x in row] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]
