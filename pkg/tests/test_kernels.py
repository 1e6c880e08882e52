"""The numba kernels and their numpy fallbacks must agree bit for bit."""

import numpy as np
import pytest

from coxsagbi import _accel, kernels, presets
from coxsagbi.apolarity import degree_grid
from coxsagbi.polyhedral import FiberCounter, _ray_masks, cone_of_monomials

pytestmark = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def _type1_facet_masks():
    mons, dmap = presets.sagbi_table("type1")
    cone = cone_of_monomials(mons, dmap)
    cone.ensure_rays()
    return np.array(sorted(set(_ray_masks(cone.rays, cone.facets))), dtype=np.uint64)


def test_face_step_backends_agree():
    facets = _type1_facet_masks()
    faces = facets
    for _ in range(4):
        a = kernels.face_step_numba(faces, facets)
        b = kernels.face_step_numpy(faces, facets)
        assert np.array_equal(a, b)
        faces = a


def test_count_fibers_backends_agree():
    mons, dmap = presets.sagbi_table("cubic-sagbi")
    counter = FiberCounter(cone_of_monomials(mons, dmap), dmap)
    degs = np.array([g.as_tuple() for g in degree_grid(6, 3, 2)], dtype=np.int64)
    rhs = degs @ counter.H_deg.T
    lo = np.zeros((len(degs), 2), dtype=np.int64)
    hi = np.full((len(degs), 2), 4, dtype=np.int64)
    a = kernels.count_fibers_numba(counter.H_w, rhs, lo, hi)
    b = kernels.count_fibers_numpy(counter.H_w, rhs, lo, hi)
    assert np.array_equal(a, b)


def test_gr25_sweep_backends_agree():
    a = kernels.gr25_sweep_numba(4)
    b = kernels.gr25_sweep_numpy(4)
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


def test_backend_selection(monkeypatch):
    monkeypatch.setenv("COXSAGBI_KERNELS", "numpy")
    assert _accel.backend() == "numpy"
    monkeypatch.setenv("COXSAGBI_KERNELS", "numba")
    assert _accel.backend() == "numba"
    monkeypatch.setenv("COXSAGBI_KERNELS", "cuda")
    with pytest.raises(ValueError):
        _accel.backend()


def test_dispatch_results_do_not_depend_on_backend(monkeypatch):
    mons, dmap = presets.sagbi_table("type6")
    out = {}
    for name in ("numba", "numpy"):
        monkeypatch.setenv("COXSAGBI_KERNELS", name)
        counter = FiberCounter(cone_of_monomials(mons, dmap), dmap)
        out[name] = counter.count(list(degree_grid(5, 3, 2)))
    assert np.array_equal(out["numba"], out["numpy"])
