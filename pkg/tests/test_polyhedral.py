import pytest

from coxsagbi import presets
from coxsagbi.apolarity import DegreeVector, degree_grid, psi_direct, random_generic_config
from coxsagbi.errors import NotPointed
from coxsagbi.formulas import six_points_inequalities
from coxsagbi.polyhedral import (DegreeMap, FiberCounter, PolyCone, cone_of_monomials,
                                 dd_facets, euler_characteristic, f_vector, facets_to_rays,
                                 lineality_dim, psi_via_cone, support_polytope)


def test_standard_basis_cone():
    cone = dd_facets([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert sorted(cone.facets) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert f_vector(cone) == [3, 3]
    assert euler_characteristic([3, 3]) == 0


def test_redundant_generators_are_dropped():
    cone = dd_facets([(1, 0), (0, 1), (1, 1), (2, 2), (1, 0)])
    assert cone.rays == [(0, 1), (1, 0)]


def test_lower_dimensional_cone_has_equations():
    cone = dd_facets([(1, 0, 1), (0, 1, 1)])
    assert cone.dim == 2 and len(cone.equations) == 1
    assert cone.contains((2, 3, 5)) and not cone.contains((1, 1, 1))


def test_facets_to_rays_needs_a_pointed_cone():
    with pytest.raises(NotPointed):
        facets_to_rays([(1, 0)], [], 2)
    assert lineality_dim(PolyCone(2, facets=[(1, 0)])) == 1


def test_type6_cone_matches_the_printed_data():
    mons, dmap = presets.sagbi_table("type6")
    cone = cone_of_monomials(mons, dmap)
    assert len(cone.facets) == 12
    assert f_vector(cone) == [16, 80, 180, 216, 148, 58, 12]
    # one of the displayed inequalities: y - x <= u4 + u5 - r with x = b1, y = b4
    h = [-1, 0, 0, 0, 1, 1, 1, -1]
    assert tuple(h) in set(cone.facets)


def test_facet_matrix_orientation():
    mons, dmap = presets.sagbi_table("type6")
    cone = cone_of_monomials(mons, dmap)
    M = cone.facet_matrix()
    assert len(M) == cone.ambient_dim and len(M[0]) == len(cone.facets)
    for m in mons:
        v = dmap.embed(m)
        assert all(sum(v[i] * M[i][j] for i in range(len(v))) >= 0 for j in range(len(M[0])))


def test_type6_lattice_counts_match_the_oracle():
    mons, dmap = presets.sagbi_table("type6")
    cone = cone_of_monomials(mons, dmap)
    cfg = random_generic_config(3, 5, seed=10)
    counter = FiberCounter(cone, dmap)
    degs = list(degree_grid(5, 3, 2))
    for g, c in zip(degs, counter.count(degs)):
        assert int(c) == psi_direct(cfg, g)
    assert psi_via_cone(cone, dmap, DegreeVector(1, (1, 1, 0, 0, 0))) == \
        psi_direct(cfg, DegreeVector(1, (1, 1, 0, 0, 0)))


def test_outside_the_support_gives_zero():
    mons, dmap = presets.sagbi_table("cubic-sagbi")
    cone = cone_of_monomials(mons, dmap)
    assert psi_via_cone(cone, dmap, DegreeVector(5, (0, 0, 0, 0, 0, 0))) == 0
    assert psi_via_cone(cone, dmap, DegreeVector(3, (2,) * 6)) == 4


def test_degree_map_rule():
    mons = presets.type_monomials(1)
    dmap = DegreeMap.for_monomials(mons, 5)
    assert dmap.free == (2, 3) and dmap.ambient_dim == 8
    m = mons[-1]
    assert dmap.project(dmap.embed(m)) == m.degree().as_tuple()


def test_second_hypersimplex_and_demicube():
    # n = d + 1 = 4: the generator degrees x_i, M_ij give the second hypersimplex
    degs = [(0,) + tuple(int(i == k) for i in range(4)) for k in range(4)]
    degs += [(1,) + tuple(0 if i in (a, b) else 1 for i in range(4))
             for a in range(4) for b in range(a + 1, 4)]
    assert len(support_polytope(degs).rays) == 10
    mons = presets.type_monomials(6)
    poly = support_polytope(sorted({m.degree().as_tuple() for m in mons}))
    assert f_vector(poly) == [16, 80, 160, 120, 26]
    assert len(support_polytope([(1, 2, 3)]).rays) == 1


def test_cayley_support_polytope():
    mons, _ = presets.sagbi_table("cayley")
    assert f_vector(support_polytope([m.degree() for m in mons])) == [13, 69, 186, 260, 168, 38]


def test_six_point_inequality_cone_has_the_printed_f_vector():
    # the cone cut out by the 21-inequality formula, as opposed to the cone
    # over the 27 tabulated initial monomials (24 facets)
    cone = PolyCone(9, facets=[list(h) for h in six_points_inequalities()])
    assert f_vector(cone) == [27, 216, 747, 1287, 1191, 603, 162, 21]
    mons, dmap = presets.sagbi_table("cubic-sagbi")
    table_cone = cone_of_monomials(mons, dmap)
    assert f_vector(table_cone) == [27, 216, 747, 1299, 1229, 646, 182, 24]
