import itertools

import pytest

from coxsagbi import exact, presets
from coxsagbi.apolarity import DegreeVector, LinearFormConfig, psi_direct
from coxsagbi.cox import (NotMoneric, XYPolynomial, castravet_tevelev_generators,
                          determinant_sign, format_monomial, generator_from_degree,
                          grassmann5_generators, initial_monomial, invariants_in_degree,
                          kernel_of, minors_generators, nagata_invariance, parse_monomial,
                          q_sigma, q_sigma_determinant)
from coxsagbi.errors import (DegeneratePlucker, NotInKernel, NotUnique, ParseError,
                             ZeroPolynomial, ZeroScalar)
from coxsagbi.exact import TScalar
from coxsagbi.sagbi import caterpillar_matrix

t = TScalar.t()


def poly(n, terms):
    return XYPolynomial(n, {parse_monomial(m, n): exact.as_scalar(c) for m, c in terms.items()})


def test_monomial_parse_and_format():
    m = parse_monomial("x1^2y2y3x4", 4)
    assert format_monomial(m) == "x1^2 y2 y3 x4"
    assert m.degree() == DegreeVector(2, (2, 1, 1, 1))
    with pytest.raises(ParseError):
        parse_monomial("x9", 4)


def test_cayley_line_is_invariant():
    A = presets.CAYLEY_A
    G = kernel_of(LinearFormConfig(A))
    L124 = poly(6, {"y3x5x6": 1, "x3y5x6": 1, "x3x5y6": -1})
    assert nagata_invariance(L124, G, A=[[exact.as_scalar(x) for x in r] for r in A])
    assert nagata_invariance(poly(6, {"x1": 1}), G)
    assert not nagata_invariance(poly(6, {"y1": 1}), G)
    with pytest.raises(NotInKernel):
        nagata_invariance(L124, [[1, 0, 0, 0, 0, 0]], A=[[exact.as_scalar(x) for x in r] for r in A])


def test_generator_from_degree_recovers_the_line():
    cfg = presets.config("cayley")
    f = generator_from_degree(cfg, DegreeVector(1, (0, 0, 1, 0, 1, 1)))
    L124 = poly(6, {"y3x5x6": 1, "x3y5x6": 1, "x3x5y6": -1})
    ratio = [f.terms[m] / L124.terms[m] for m in L124.terms]
    assert set(f.terms) == set(L124.terms) and len(set(ratio)) == 1
    assert generator_from_degree(cfg, DegreeVector(0, (0, 1, 0, 0, 0, 0))) == poly(6, {"x2": 1})
    with pytest.raises(NotUnique):
        generator_from_degree(cfg, DegreeVector(2, (2,) * 6))


def test_cubic_f12_has_four_terms():
    cfg = presets.config("cubic-sagbi")
    f = generator_from_degree(cfg, DegreeVector(1, (0, 0, 1, 1, 1, 1)))
    assert len(f) == 4
    assert {format_monomial(m) for m in f.terms} == {"y3 x4 x5 x6", "x3 y4 x5 x6",
                                                     "x3 x4 y5 x6", "x3 x4 x5 y6"}


def test_minors_generators():
    gs = minors_generators([t, 1])
    assert gs.labels == ["x_1", "x_2", "M_12"]
    assert gs.by_label("M_12") == poly(2, {"x1y2": "t", "x2y1": "-1"})
    distinct = minors_generators([1, t, t**2, t**3])
    assert not any(isinstance(m, NotMoneric) for m in distinct.initial_monomials())
    equal = minors_generators([1, 1, 1])
    assert any(isinstance(m, NotMoneric) for m in equal.initial_monomials())
    with pytest.raises(ZeroScalar):
        minors_generators([1, 0])


def test_initial_monomial_of_rational_polynomial_ties():
    f = poly(2, {"x1y2": 1, "x2y1": -1})
    assert isinstance(initial_monomial(f), NotMoneric)
    with pytest.raises(ZeroPolynomial):
        initial_monomial(XYPolynomial(2))


def test_grassmann_generators_are_invariant_and_degenerate_input_fails():
    B = caterpillar_matrix(5)
    gs = grassmann5_generators(B)
    assert len(gs) == 16
    assert all(nagata_invariance(f, B) for f in gs.polys)
    with pytest.raises(DegeneratePlucker):
        grassmann5_generators([[1, 1, 0, 0, 1], [0, 0, 1, 1, 1]])


@pytest.mark.parametrize("n", [3, 5, 6])
def test_q_sigma_expansion_matches_determinant(n):
    B = caterpillar_matrix(n)
    Bs = [[exact.as_scalar(x) for x in row] for row in B]
    for size in range(1, n + 1, 2):
        k = size // 2
        for sigma in itertools.combinations(range(n), size):
            assert q_sigma_determinant(Bs, sigma) == q_sigma(Bs, sigma) * determinant_sign(k)


def test_castravet_tevelev_count_and_psi():
    B = caterpillar_matrix(6)
    gs = castravet_tevelev_generators(B)
    assert len(gs) == 2 ** 5
    cfg = LinearFormConfig(presets.kernel_rows_of_B(B))
    # every generator spans its own degree when psi = 1
    for lab, f in gs:
        if psi_direct(cfg, f.degree()) == 1:
            (g,) = invariants_in_degree(cfg, f.degree())
            assert set(g.terms) == set(f.terms), lab
