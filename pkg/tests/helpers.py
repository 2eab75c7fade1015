"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from symred.lattice import conormal_matrix


def _random_unimodular(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Small-entry unimodular integer matrix (product of shears and swaps)."""
    U = np.eye(dim, dtype=object)
    for _ in range(2 * dim):
        i, j = rng.integers(0, dim, size=2)
        if i == j:
            U[i] = -U[i] if rng.random() < 0.5 else U[i]
            continue
        U[i] = U[i] + int(rng.integers(-1, 2)) * U[j]
    perm = rng.permutation(dim)
    return U[perm]


def random_delzant_fan(rng: np.random.Generator, max_dim: int = 4):
    """Conormal set of a random smooth compact toric manifold.

    Built as a product of projective-space and Hirzebruch fans, then hit
    with a random unimodular change of basis and a column shuffle.  Always
    compact (each block carries a strictly positive relation) and genuinely
    Delzant, which is the regime where evenness and -I-membership are
    equivalent.  Dimension <= max_dim, facet count <= 2*max_dim.
    """
    dim = int(rng.integers(1, max_dim + 1))
    columns: list[list[int]] = []
    offset = 0
    while offset < dim:
        left = dim - offset
        if left >= 2 and rng.random() < 0.4:
            twist = int(rng.integers(0, 3))
            block = [[1, 0], [0, 1], [-1, twist], [0, -1]]
            size = 2
        else:
            size = int(rng.integers(1, left + 1))
            block = [[int(i == j) for i in range(size)] for j in range(size)]
            block.append([-1] * size)
        for col in block:
            full = [0] * dim
            full[offset : offset + size] = col
            columns.append(full)
        offset += size
    U = _random_unimodular(rng, dim)
    cols = np.array(columns, dtype=object).T  # dim x d
    cols = U @ cols
    order = rng.permutation(cols.shape[1])
    return conormal_matrix([list(cols[:, j]) for j in order])
