import itertools
import random

import pytest

from coxsagbi import exact, presets
from coxsagbi.apolarity import DegreeVector, psi_direct
from coxsagbi.cox import nagata_invariance
from coxsagbi.errors import RankDeficient
from coxsagbi.zonotopal import (arrangement_from_C, independent_set_polynomial, phi_coeff,
                                psi_zonotopal, psi_zonotopal_sum, zonotopal_generators)


def _same_matroid(A, B):
    def pattern(M):
        return tuple(exact.determinant([[M[i][j] for j in c] for i in range(3)]) == 0
                     for c in itertools.combinations(range(len(M[0])), 3))
    return pattern(A) == pattern(B)


def test_example_arrangement():
    z = arrangement_from_C(presets.ZONO_EX_C)
    assert z.n == 6 and z.m == 4 and z.d == 3
    cay = [[exact.as_scalar(x) for x in r] for r in presets.CAYLEY_A]
    assert _same_matroid(z.A, cay)
    for j in range(6):
        col, ref = [z.A[i][j] for i in range(3)], [cay[i][j] for i in range(3)]
        assert col == ref or col == [-x for x in ref]
    gs = zonotopal_generators(z)
    assert len(gs) == 8
    G = [list(v) for v in exact.kernel_basis([list(r) for r in z.A], z.n)]
    assert all(nagata_invariance(f, G) for f in gs.polys)


def test_identity_gives_coordinate_hyperplanes():
    z = arrangement_from_C([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert z.n == 3
    assert sorted(map(tuple, z.flats)) == [(0, 1), (0, 2), (1, 2)]


def test_phi_coefficients():
    assert phi_coeff([], 0) == 1 and phi_coeff([], 1) == 0
    assert [phi_coeff([2, 3], s) for s in range(5)] == [1, 2, 2, 1, 0]
    assert phi_coeff([1, 0], 0) == 0
    assert phi_coeff([4], -1) == 0


def test_zero_vector():
    z = arrangement_from_C(presets.ZONO_EX_C)
    assert psi_zonotopal(z, 0, (0,) * 4) == 1
    assert all(psi_zonotopal(z, r, (0,) * 4) == 0 for r in range(1, 4))


def test_rank_deficient():
    with pytest.raises(RankDeficient):
        arrangement_from_C([[1, 2, 3], [2, 4, 6], [0, 0, 0]])


def test_example_against_the_oracle():
    z = arrangement_from_C(presets.ZONO_EX_C)
    for v in itertools.product(range(3), repeat=4):
        assert psi_zonotopal_sum(z, v) == independent_set_polynomial(z, v)
        for r in range(sum(v) + 1):
            assert psi_zonotopal(z, r, v) == psi_direct(z.config, DegreeVector(r, z.degree(v)))


def test_random_arrangements_against_the_oracle():
    rng = random.Random(7)
    done = 0
    while done < 4:
        C = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
        try:
            z = arrangement_from_C(C)
        except RankDeficient:
            continue
        if any(not any(C[i][k] for i in range(3)) for k in range(4)):
            continue
        done += 1
        for v in itertools.product(range(2), repeat=4):
            for r in range(sum(v) + 1):
                assert psi_zonotopal(z, r, v) == psi_direct(z.config, DegreeVector(r, z.degree(v))), (C, v, r)
