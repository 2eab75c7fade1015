from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_delzant_fan
from symred.errors import NonPrimitiveColumn, NoPositiveRelation, NotProportional
from symred.lattice import (
    conormal_matrix,
    find_weight_vector,
    integer_determinant,
    is_even,
    kernel_lattice,
    minus_identity_in_torus,
    monotone_level_check,
    smith_normal_form,
)

CP2 = conormal_matrix([[1, 0], [0, 1], [-1, -1]])
CP1 = conormal_matrix([[1], [-1]])
CP1XCP1 = conormal_matrix([[1, 0], [-1, 0], [0, 1], [0, -1]])
HIRZEBRUCH1 = conormal_matrix([[1, 0], [0, 1], [-1, 1], [0, -1]])


def half(n):
    return tuple(Fraction(1, 2) for _ in range(n))


class TestConormalMatrix:
    def test_cp2_shape(self):
        assert CP2 == ((1, 0, -1), (0, 1, -1))

    def test_rejects_divisible_column(self):
        with pytest.raises(NonPrimitiveColumn):
            conormal_matrix([[2, 0], [0, 1]])

    def test_rejects_zero_column(self):
        with pytest.raises(NonPrimitiveColumn):
            conormal_matrix([[0, 0], [0, 1]])


class TestSmithNormalForm:
    def test_identity(self):
        U, S, V = smith_normal_form([[1, 0], [0, 1]])
        assert S == ((1, 0), (0, 1))
        assert U == ((1, 0), (0, 1))
        assert V == ((1, 0), (0, 1))

    def test_textbook_divisibility(self):
        # diag(2,3) has invariant factors 1, 6.
        U, S, V = smith_normal_form([[2, 0], [0, 3]])
        assert (S[0][0], S[1][1]) == (1, 6)

    def test_zero_matrix(self):
        _, S, _ = smith_normal_form([[0, 0, 0], [0, 0, 0]])
        assert all(x == 0 for row in S for x in row)

    @settings(max_examples=200, deadline=None)
    @given(
        st.integers(1, 4),
        st.integers(1, 4),
        st.data(),
    )
    def test_decomposition_properties(self, m, n, data):
        M = [
            [data.draw(st.integers(-30, 30)) for _ in range(n)]
            for _ in range(m)
        ]
        U, S, V = smith_normal_form(M)
        UM = [
            [sum(U[i][k] * M[k][j] for k in range(m)) for j in range(n)]
            for i in range(m)
        ]
        UMV = [
            [sum(UM[i][k] * V[k][j] for k in range(n)) for j in range(n)]
            for i in range(m)
        ]
        assert UMV == [list(row) for row in S]
        assert abs(integer_determinant(U)) == 1
        assert abs(integer_determinant(V)) == 1
        diag = [S[i][i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert S[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and b >= 0
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0


class TestKernelLattice:
    def test_cp2(self):
        K = kernel_lattice(CP2)
        assert K.basis == ((1, 1, 1),)

    def test_circle_pair(self):
        assert kernel_lattice(CP1).basis == ((1, 1),)

    def test_injective_map_has_trivial_kernel(self):
        nu = conormal_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert kernel_lattice(nu).basis == ()

    def test_hirzebruch(self):
        K = kernel_lattice(HIRZEBRUCH1)
        assert K.rank == 2
        for row in K.basis:
            for i in range(2):
                assert sum(HIRZEBRUCH1[i][j] * row[j] for j in range(4)) == 0

    def test_kernel_exact_and_saturated_on_random_fans(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            nu = random_delzant_fan(rng)
            K = kernel_lattice(nu)
            dim = len(nu)
            for row in K.basis:
                for i in range(dim):
                    assert sum(nu[i][j] * row[j] for j in range(K.d)) == 0
            if K.rank:
                _, S, _ = smith_normal_form(K.basis)
                assert all(S[i][i] == 1 for i in range(K.rank))


class TestIsEven:
    def test_fixtures(self):
        assert is_even(CP2)
        assert is_even(CP1)
        assert is_even(CP1XCP1)
        assert not is_even(HIRZEBRUCH1)


class TestFindWeightVector:
    def test_cp_n(self):
        for n in (1, 2, 3):
            cols = [[int(i == j) for i in range(n)] for j in range(n)]
            cols.append([-1] * n)
            gamma = find_weight_vector(kernel_lattice(conormal_matrix(cols)))
            assert gamma == tuple([1] * (n + 1))

    def test_product_of_spheres(self):
        gamma = find_weight_vector(kernel_lattice(CP1XCP1))
        assert gamma == (1, 1, 1, 1)

    def test_hirzebruch(self):
        gamma = find_weight_vector(kernel_lattice(HIRZEBRUCH1))
        assert gamma == (1, 1, 1, 2)

    def test_trivial_kernel_raises(self):
        nu = conormal_matrix([[1, 0], [0, 1]])
        with pytest.raises(NoPositiveRelation):
            find_weight_vector(kernel_lattice(nu))

    def test_relation_and_primitivity_on_random_fans(self):
        from math import gcd

        rng = np.random.default_rng(11)
        for _ in range(40):
            nu = random_delzant_fan(rng, max_dim=3)
            K = kernel_lattice(nu)
            gamma = find_weight_vector(K)
            assert all(g >= 1 for g in gamma)
            g = 0
            for x in gamma:
                g = gcd(g, x)
            assert g == 1
            dim = len(nu)
            for i in range(dim):
                assert sum(nu[i][j] * gamma[j] for j in range(K.d)) == 0


class TestMonotoneLevelCheck:
    def test_normalized_level_gives_two(self):
        for nu in (CP2, CP1, CP1XCP1, HIRZEBRUCH1):
            K = kernel_lattice(nu)
            assert monotone_level_check(K, half(K.d)) == 2

    def test_cp2_shifted_offsets(self):
        K = kernel_lattice(CP2)
        lam = monotone_level_check(K, (Fraction(0), Fraction(0), Fraction(1)))
        assert lam == 3

    def test_not_proportional(self):
        K = kernel_lattice(CP1XCP1)
        a = (Fraction(1), Fraction(1), Fraction(2), Fraction(2))
        assert K.iota_star(a) == (2, 4)
        assert K.iota_star((1, 1, 1, 1)) == (2, 2)
        with pytest.raises(NotProportional):
            monotone_level_check(K, a)

    def test_rank_zero_raises(self):
        K = kernel_lattice(conormal_matrix([[1, 0], [0, 1]]))
        with pytest.raises(NotProportional):
            monotone_level_check(K, half(2))


class TestMinusIdentityInTorus:
    def test_cp2_true(self):
        # (1/2,1/2,1/2) spans the kernel direction itself.
        assert minus_identity_in_torus(kernel_lattice(CP2))

    def test_hirzebruch_false(self):
        assert not minus_identity_in_torus(kernel_lattice(HIRZEBRUCH1))

    def test_trivial_kernel_false(self):
        assert not minus_identity_in_torus(
            kernel_lattice(conormal_matrix([[1, 0], [0, 1]]))
        )

    def test_agrees_with_evenness_on_random_fans(self):
        rng = np.random.default_rng(2024)
        for _ in range(120):
            nu = random_delzant_fan(rng)
            assert minus_identity_in_torus(kernel_lattice(nu)) == is_even(nu)
