import itertools

import pytest

from coxsagbi import presets
from coxsagbi.apolarity import (DegreeVector, LinearFormConfig, cremona, degree_grid,
                                psi_direct, random_generic_config)
from coxsagbi.errors import InfeasibleSums, NoApplicableFormula
from coxsagbi.formulas import (applicable, gt_count, is_generic, psi_binary, psi_cayley,
                               psi_five_points, psi_formula, psi_independent, psi_six_points)


def test_independent_forms():
    assert psi_independent((2,), 2, 1) == 1
    assert psi_independent((2,), 3, 1) == 0
    assert psi_independent((1, 1), 1, 2) == 2
    assert psi_independent((0, 3, 1), 0, 3) == 1
    cfg = LinearFormConfig([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    for g in degree_grid(3, 5, 3):
        assert psi_independent(g.u, g.r, 3) == psi_direct(cfg, g)


def test_binary_examples():
    assert psi_binary((2, 2, 2, 2), 2) == 3
    assert psi_binary((1, 1, 1, 1), 1) == 2
    assert psi_binary((1, 1, 1), 5) == 0


def test_binary_agrees_with_gelfand_tsetlin_for_three_forms():
    for r in range(6):
        for u in itertools.product(range(5), repeat=3):
            g = DegreeVector(r, u)
            try:
                gt = gt_count(g)
            except InfeasibleSums:
                continue
            assert gt == psi_binary(u, r), g


def test_gelfand_tsetlin_examples():
    assert gt_count(DegreeVector(1, (1, 1, 1))) == 2
    assert gt_count(DegreeVector(0, (3, 2, 1))) == 1
    assert gt_count(DegreeVector(4, (1, 1, 1))) == 0


def test_five_points_examples():
    assert psi_five_points(0, (0,) * 5) == 1
    g = DegreeVector(3, (2,) * 5)
    h = cremona(g, 3)
    assert psi_five_points(g.r, g.u) == psi_five_points(h.r, h.u)


def test_cayley_examples():
    assert psi_cayley(1, (1, 1, 1, 0, 0, 0)) >= 1
    assert psi_cayley(4, (1, 1, 0, 0, 0, 1)) == 0
    cfg = presets.config("cayley")
    assert psi_cayley(1, (1, 1, 1, 0, 0, 0)) == psi_direct(cfg, DegreeVector(1, (1, 1, 1, 0, 0, 0)))


def test_six_points_examples():
    assert psi_six_points(3, (2,) * 6) == 4
    assert psi_six_points(1, (0, 0, 1, 1, 1, 1)) == 1


@pytest.mark.parametrize("d,n,formula", [(3, 5, psi_five_points), (3, 6, psi_six_points)])
def test_formulas_are_symmetric_and_cremona_invariant(d, n, formula):
    for g in degree_grid(n, 4, 2):
        val = formula(g.r, g.u)
        for perm in [(1, 0) + tuple(range(2, n)), tuple(range(n - 1, -1, -1))]:
            assert formula(g.r, tuple(g.u[p] for p in perm)) == val
        try:
            h = cremona(g, d)
        except Exception:
            continue
        assert formula(h.r, h.u) == val, g


def test_registry_dispatch():
    gen6 = random_generic_config(3, 6, seed=3)
    ids = [f.identifier for f in applicable(gen6)]
    assert ids == ["six-points"]
    assert psi_formula(gen6, "3,2,2,2,2,2,2") == 4
    cay = presets.config("cayley")
    assert not is_generic(cay)
    assert [f.identifier for f in applicable(cay)] == ["cayley"]
    five = random_generic_config(3, 5, seed=4)
    assert {"five-points", "tree-decorations"} <= {f.identifier for f in applicable(five)}
    assert psi_formula(five, "2,1,1,1,1,1", which="tree-decorations") == \
        psi_formula(five, "2,1,1,1,1,1", which="five-points")
    with pytest.raises(NoApplicableFormula):
        psi_formula(random_generic_config(3, 7, seed=5), "1,1,1,1,1,1,1,1")
