import pytest

from coxsagbi.apolarity import DegreeVector, degree_grid, psi_direct, random_generic_config
from coxsagbi.cox import parse_monomial
from coxsagbi.errors import (IncompatibleSplits, InfeasibleDegree, NotMonericError, ParityViolation,
                             ParseError, SplitNotInTree)
from coxsagbi.exact import TScalar
from coxsagbi.phylo import (caterpillar, count_q_monomials, decoration_count, flattening_matrices,
                            parse_tree, realized_splits, snowflake, split_sides,
                            tree_from_splits, verify_tree_realization, verlinde)
from coxsagbi.sagbi import caterpillar_matrix

t = TScalar.t()


def test_caterpillar_splits():
    T = caterpillar(5)
    assert sorted(split_sides(s) for s in T.splits) == [((1, 2), (3, 4, 5)), ((1, 2, 3), (4, 5))]
    assert len(snowflake().splits) == 3


def test_bad_trees_are_rejected():
    with pytest.raises(IncompatibleSplits):
        tree_from_splits(6, [(1, 2), (1, 3), (5, 6)])
    with pytest.raises(IncompatibleSplits):
        tree_from_splits(5, [(1,)])
    with pytest.raises(ParseError):
        parse_tree("not a tree")


def test_parse_tree_formats():
    assert parse_tree("caterpillar:6") == caterpillar(6)
    assert parse_tree("snowflake") == snowflake()
    js = '{"n": 6, "splits": [[[1,2],[3,4,5,6]], [[3,4],[1,2,5,6]], [5,6]]}'
    assert parse_tree(js) == snowflake()


def test_decoration_examples():
    assert decoration_count(caterpillar(4), DegreeVector(1, (1, 1, 1, 1))) == 2
    assert decoration_count(caterpillar(5), DegreeVector(2, (1,) * 5)) == 1
    assert decoration_count(caterpillar(5), DegreeVector(0, (0,) * 5)) == 1
    assert decoration_count(caterpillar(4), DegreeVector(3, (1, 1, 1, 1))) == 0
    with pytest.raises(InfeasibleDegree):
        decoration_count(caterpillar(4), DegreeVector(3, (1, 1, 1, 1)), strict=True)


def test_decorations_match_the_oracle_for_five_points():
    cfg = random_generic_config(3, 5, seed=2)
    for g in degree_grid(5, 3, 2):
        assert decoration_count(caterpillar(5), g) == psi_direct(cfg, g)


def test_decorations_do_not_depend_on_the_tree():
    for g in degree_grid(6, 2, 2):
        assert decoration_count(caterpillar(6), g) == decoration_count(snowflake(), g)
        assert count_q_monomials(6, g) >= 0


def test_verlinde_values():
    assert verlinde(2, 1) == 3
    assert verlinde(2, 0) == 1
    for k in range(1, 5):
        assert verlinde(2 * k, "1/2") == 2 ** k
    with pytest.raises(ParityViolation):
        verlinde(3, "1/2")
    with pytest.raises(ParityViolation):
        verlinde(2, "1/3")


def test_verlinde_counts_decorations():
    for d in range(1, 5):
        for l in range(0, 3):
            deg = DegreeVector(d * l, (2 * l,) * (d + 2))
            assert verlinde(d, l) == decoration_count(caterpillar(d + 2), deg)


def test_flattening_shapes():
    T = caterpillar(6)
    M, N = flattening_matrices(T, (1, 2, 3))
    assert M.shape == (4, 4) and N.shape == (4, 4)
    assert M.labels()[0][0] == "q_4"
    with pytest.raises(SplitNotInTree):
        flattening_matrices(T, (1, 3))


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_caterpillar_matrix_realizes_the_caterpillar(n):
    assert verify_tree_realization(caterpillar(n), caterpillar_matrix(n))


def test_caterpillar_matrix_does_not_realize_the_snowflake():
    B = caterpillar_matrix(6)
    assert not verify_tree_realization(snowflake(), B)
    assert sorted(realized_splits(B)) == sorted(split_sides(s) for s in caterpillar(6).splits)


def test_four_point_examples():
    # p = (t^2-t^4, t-t^5, 1-t^6, ...) is the caterpillar matrix, realizing 12|34
    assert realized_splits(caterpillar_matrix(4)) == [((1, 2), (3, 4))]
    # p = (1, 2, t, 1, t, t) ties in the t-adic order; its term-order initial
    # monomials chain x1E1 = x2E2 = x3E3 and realize no quartet
    with pytest.raises(NotMonericError):
        realized_splits([[1, 0, -1, -t], [0, 1, 2, t]])
    inm = {(i,): parse_monomial(f"x{i}", 4) for i in range(1, 5)}
    for sigma, m in {(2, 3, 4): "x2x3y4", (1, 3, 4): "x1x3y4", (1, 2, 4): "x1x2y4",
                     (1, 2, 3): "x1x2y3"}.items():
        inm[sigma] = parse_monomial(m, 4)
    assert realized_splits(inm=inm) == []
