"""Wall-clock comparison of the numba kernels and their numpy fallbacks.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Each kernel is
called once before timing so numba compilation is excluded.
"""

import argparse
import time

import numpy as np

from coxsagbi import kernels, presets
from coxsagbi.apolarity import degree_grid
from coxsagbi.polyhedral import FiberCounter, _ray_masks, cone_of_monomials


def _best(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.time()
        fn()
        best = min(best, time.time() - t0)
    return best


def face_step_case():
    mons, dmap = presets.sagbi_table("cubic-sagbi")
    cone = cone_of_monomials(mons, dmap)
    cone.ensure_rays()
    facets = np.array(sorted(set(_ray_masks(cone.rays, cone.facets))), dtype=np.uint64)
    faces = kernels.face_step_numpy(kernels.face_step_numpy(facets, facets), facets)
    return (lambda: kernels.face_step_numba(faces, facets),
            lambda: kernels.face_step_numpy(faces, facets))


def count_fibers_case():
    mons, dmap = presets.sagbi_table("cubic-sagbi")
    counter = FiberCounter(cone_of_monomials(mons, dmap), dmap)
    degs = np.array([g.as_tuple() for g in degree_grid(6, 4, 3)], dtype=np.int64)
    rhs = degs @ counter.H_deg.T
    lo = np.zeros((len(degs), 2), dtype=np.int64)
    hi = np.full((len(degs), 2), 6, dtype=np.int64)
    return (lambda: kernels.count_fibers_numba(counter.H_w, rhs, lo, hi),
            lambda: kernels.count_fibers_numpy(counter.H_w, rhs, lo, hi))


def gr25_case():
    return (lambda: kernels.gr25_sweep_numba(6), lambda: kernels.gr25_sweep_numpy(6))


CASES = {"face_step": face_step_case, "count_fibers": count_fibers_case, "gr25_sweep": gr25_case}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"{'kernel':<14}{'numba s':>10}{'numpy s':>10}{'ratio':>8}")
    for name, make in CASES.items():
        nb, npy = make()
        a, b = _best(nb, args.repeat), _best(npy, args.repeat)
        print(f"{name:<14}{a:>10.4f}{b:>10.4f}{b / max(a, 1e-9):>8.1f}")


if __name__ == "__main__":
    main()
