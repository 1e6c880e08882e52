import pytest

from coxsagbi import presets
from coxsagbi.apolarity import DegreeVector
from coxsagbi.errors import InstanceTooLarge, NotTreeMetric
from coxsagbi.sagbi import (binomial_degrees, classify_moneric, enumerate_moneric_classes,
                            initial_set, lifting_report, markov_basis, match_type,
                            plucker_metric, realize_metric, sagbi_check,
                            total_quadratic_binomials, tropical_plucker_check, type_orbit_sizes)


def test_four_point_condition():
    assert tropical_plucker_check(presets.TYPE_METRICS[6])
    assert tropical_plucker_check((0,) * 10)
    assert not tropical_plucker_check((5,) + (0,) * 9)
    with pytest.raises(NotTreeMetric):
        realize_metric((5,) + (0,) * 9)


@pytest.mark.parametrize("k", sorted(presets.TYPE_METRICS))
def test_realization_round_trip_and_classification(k):
    m = presets.TYPE_METRICS[k]
    B = realize_metric(m, seed=k)
    assert plucker_metric(B) == m
    cls = classify_moneric(m)
    assert cls.type_id == k and cls.sagbi == (k != 7)
    assert set(initial_set(B)) == set(presets.type_monomials(k))


def test_orbit_sizes_match_the_tallies():
    assert type_orbit_sizes() == presets.TYPE_TALLIES
    assert sum(type_orbit_sizes().values()) == 600
    hit = match_type(presets.type_monomials(4))
    assert hit is not None and hit[0] == 4


def test_small_sweep():
    rep = enumerate_moneric_classes(bound=3)
    assert rep.classes and rep.types <= set(range(1, 8))
    assert all(c.type_id == classify_moneric(c.metric).type_id for c in rep.classes[:5])


def test_type6_binomials():
    degs = binomial_degrees(presets.type_monomials(6))
    assert degs[DegreeVector(1, (1, 1, 1, 1, 0))] == 2
    assert len(degs) == 10 and set(degs.values()) == {2}


def test_type7_fails_to_lift():
    in_F = presets.type_monomials(7)
    assert total_quadratic_binomials(in_F) == 21
    rows = lifting_report(presets.config("type7"), in_F)
    bad = [r.degree for r in rows if not r.lifts]
    assert bad == [DegreeVector(2, (1, 2, 1, 1, 1))]


def test_sagbi_check_on_a_matrix():
    rep = sagbi_check(realize_metric(presets.TYPE_METRICS[1]))
    assert rep["generators"] == 16 and rep["all_lift"]


def test_markov_basis():
    res = markov_basis(presets.type_monomials(1))
    assert len(res) == 20 and res.status == "complete-below-cap"
    assert set(res.degrees()) == {2}
    with pytest.raises(InstanceTooLarge):
        markov_basis(presets.monomials_of(presets.DP2_TABLE, 7))
