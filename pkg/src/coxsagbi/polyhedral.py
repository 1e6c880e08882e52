"""Rational polyhedral cones: facets, face lattices and fiber lattice points.

Cones are given by integer generators and/or facet inequalities h.v >= 0.
Facets are computed by the double description method on the dual cone
with a combinatorial adjacency test; face lattices are walked level by
level on bitmasks of extreme rays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact, kernels
from .apolarity import as_degree
from .errors import DimensionMismatch, NotPointed, UnboundedFiber


def primitive(v) -> tuple:
    g = 0
    for x in v:
        g = math.gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _integral(v) -> tuple:
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // math.gcd(den, x.denominator)
    return primitive([Fraction(x) * den for x in v])


@dataclass
class PolyCone:
    """Cone {v : h.v >= 0 for h in facets, e.v = 0 for e in equations}.

    ``generators`` may list redundant or repeated vectors; ``rays`` holds the
    extreme rays once known.
    """

    ambient_dim: int
    generators: list | None = None
    facets: list | None = None
    equations: list = field(default_factory=list)
    rays: list | None = None

    def __post_init__(self):
        if self.generators is None and self.facets is None:
            raise ValueError("a cone needs generators or facets")
        for vecs in (self.generators, self.facets):
            if vecs is not None and any(len(v) != self.ambient_dim for v in vecs):
                raise DimensionMismatch("vector length differs from the ambient dimension")

    @property
    def dim(self):
        return self.ambient_dim - len(self.equations)

    def contains(self, v) -> bool:
        self.ensure_facets()
        return all(_dot(h, v) >= 0 for h in self.facets) and all(_dot(e, v) == 0 for e in self.equations)

    def ensure_facets(self):
        if self.facets is None:
            c = dd_facets(self.generators)
            self.facets, self.equations, self.rays = c.facets, c.equations, c.rays
        return self

    def ensure_rays(self):
        if self.rays is None:
            if self.generators is None:
                self.generators = facets_to_rays(self.facets, self.equations, self.ambient_dim)
            self.ensure_facets()
            self.rays = extreme_rays(self.generators, self.facets, self.equations)
        return self

    def facet_matrix(self):
        """Columns are the facet normals, so v . M >= 0 on the cone."""
        self.ensure_facets()
        return [list(c) for c in zip(*self.facets)] if self.facets else []


# ---------------------------------------------------------------------------
# double description


def _insertion_order(G):
    return sorted(range(len(G)), key=lambda i: (sum(G[i]), tuple(G[i])))


def _dual_extreme_rays(G: list, D: int) -> list:
    """Extreme rays of {h : g.h >= 0 for all g in G}; G must have rank D."""
    order = _insertion_order(G)
    init = []
    for i in order:
        trial = init + [i]
        if exact.rank([list(G[j]) for j in trial], D) == len(trial):
            init = trial
            if len(init) == D:
                break
    if len(init) != D:
        raise ValueError("generators do not span the space")
    G0 = [list(G[i]) for i in init]
    eye = [[1 if a == b else 0 for a in range(D)] for b in range(D)]
    cols = exact.solve_square(G0, eye)
    rays = []
    zeros = []
    for j, col in enumerate(cols):
        rays.append(_integral(col))
        zeros.append(sum(1 << init[k] for k in range(D) if k != j))
    done = set(init)
    for gi in order:
        if gi in done:
            continue
        done.add(gi)
        g = G[gi]
        bit = 1 << gi
        vals = [_dot(g, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        if not neg:
            for k in zer:
                zeros[k] |= bit
            continue
        new_rays, new_zeros = [], []
        for p in pos:
            zp = zeros[p]
            for q in neg:
                Z = zp & zeros[q]
                if bin(Z).count("1") < D - 2:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != q and zeros[k] & Z == Z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                new = primitive([vp * b - vq * a for a, b in zip(rays[p], rays[q])])
                new_rays.append(new)
                new_zeros.append(Z | bit)
        keep = pos + zer
        rays = [rays[k] for k in keep] + new_rays
        zeros = [zeros[k] | (bit if vals[k] == 0 else 0) for k in keep] + new_zeros
    return rays


def _span_frame(vectors, D):
    """(basis of the orthogonal complement, coordinate subset J) for the span.

    Projection to the coordinates J is injective on the span.
    """
    rows = [list(v) for v in vectors]
    eqs = [primitive(e) for e in exact.kernel_basis(rows, D)] if rows else \
        [tuple(1 if i == j else 0 for i in range(D)) for j in range(D)]
    J = []
    for c in range(D):
        trial = J + [c]
        if exact.rank([[v[j] for j in trial] for v in rows], len(trial)) == len(trial):
            J = trial
    return eqs, J


def dd_facets(gens: Sequence[Sequence[int]]) -> PolyCone:
    """Irredundant facets of cone(gens) by incremental double description.

    Lower-dimensional cones are handled in a coordinate frame of their
    span; the implicit equations are returned alongside.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    D = len(gens[0])
    eqs, J = _span_frame(gens, D)
    k = len(J)
    proj = [tuple(g[j] for j in J) for g in gens]
    nonzero = [p for p in proj if any(p)]
    if k == 0:
        return PolyCone(D, generators=gens, facets=[], equations=eqs, rays=[])
    facets_k = _dual_extreme_rays(nonzero, k) if k > 1 else \
        [(1,)] if all(p[0] >= 0 for p in nonzero) else ([(-1,)] if all(p[0] <= 0 for p in nonzero) else [])
    facets = []
    for h in facets_k:
        full = [0] * D
        for j, c in zip(J, h):
            full[j] = c
        facets.append(tuple(full))
    facets = sorted(set(facets))
    cone = PolyCone(D, generators=gens, facets=facets, equations=eqs)
    cone.rays = extreme_rays(gens, facets, eqs)
    return cone


def facets_to_rays(facets, equations, D) -> list:
    """Extreme rays of {h.v >= 0, e.v = 0}; requires a pointed cone."""
    rows = [list(h) for h in facets] + [list(e) for e in equations] + [[-x for x in e] for e in equations]
    if not rows:
        raise NotPointed(D)
    if exact.rank(rows, D) < D:
        raise NotPointed(D - exact.rank(rows, D))
    rays = _dual_extreme_rays([tuple(r) for r in rows], D)
    return sorted(set(primitive(r) for r in rays))


def extreme_rays(gens, facets, equations=()) -> list:
    """Generators that span extreme rays, primitive and deduplicated."""
    if not gens:
        return []
    D = len(gens[0])
    k = D - len(equations)
    out = set()
    for g in gens:
        if not any(g):
            continue
        tight = [list(h) for h in facets if _dot(h, g) == 0]
        if len(tight) >= k - 1 and exact.rank(tight + [list(e) for e in equations], D) == D - 1:
            out.add(primitive(g))
    return sorted(out)


def lineality_dim(cone: PolyCone) -> int:
    cone.ensure_facets()
    D = cone.ambient_dim
    rows = [list(h) for h in cone.facets] + [list(e) for e in cone.equations]
    return D - (exact.rank(rows, D) if rows else 0)


# ---------------------------------------------------------------------------
# face lattice


def _ray_masks(rays, facets):
    return [sum(1 << i for i, r in enumerate(rays) if _dot(h, r) == 0) for h in facets]


def _face_step_python(faces, facets):
    out = set()
    for f in faces:
        cand = {f & h for h in facets} - {f}
        for c in cand:
            if not any(c != o and c & o == c for o in cand):
                out.add(c)
    return sorted(out)


def face_levels(cone: PolyCone) -> list:
    """Face masks (sets of extreme rays) per dimension 1..dim-1."""
    cone.ensure_facets()
    if lineality_dim(cone):
        raise NotPointed(lineality_dim(cone))
    cone.ensure_rays()
    rays = cone.rays
    dim = cone.dim
    masks = _ray_masks(rays, cone.facets)
    levels = {dim - 1: sorted(set(masks))}
    current = levels[dim - 1]
    use_np = len(rays) <= 64
    facet_arr = np.array(masks, dtype=np.uint64) if use_np else None
    for lev in range(dim - 2, 0, -1):
        if use_np:
            current = [int(x) for x in kernels.face_step(np.array(current, dtype=np.uint64), facet_arr)]
        else:
            current = _face_step_python(current, masks)
        levels[lev] = current
    return [levels[k] for k in range(1, dim)]


def f_vector(cone: PolyCone) -> list:
    """Face counts from extreme rays (first entry) up to facets (last)."""
    levels = face_levels(cone)
    f = [len(x) for x in levels]
    if f and f[0] != len(cone.rays):
        raise ArithmeticError("face lattice walk disagrees with the extreme ray count")
    return f


def euler_characteristic(f: Sequence[int]) -> int:
    """Alternating sum including the apex and the cone itself (zero when valid)."""
    full = [1] + list(f) + [1]
    return sum((-1) ** i * x for i, x in enumerate(full))


# ---------------------------------------------------------------------------
# degree maps and fiber counts


@dataclass(frozen=True)
class DegreeMap:
    """Coordinates (r, u_1..u_n, w) with w = b-exponents of the listed y's.

    A monomial x^a y^b maps to (sum b, a + b, b[free]); projecting to the
    first n+1 coordinates gives its multidegree.
    """

    n: int
    free: tuple

    @property
    def fiber_dim(self):
        return len(self.free)

    @property
    def ambient_dim(self):
        return self.n + 1 + len(self.free)

    def embed(self, monomial) -> tuple:
        n = self.n
        a, b = monomial[:n], monomial[n:]
        return (sum(b),) + tuple(x + y for x, y in zip(a, b)) + tuple(b[i] for i in self.free)

    def project(self, v) -> tuple:
        return tuple(v[: self.n + 1])

    def matrix(self):
        """The (n+1) x ambient projection matrix."""
        return [[1 if i == j else 0 for j in range(self.ambient_dim)] for i in range(self.n + 1)]

    @classmethod
    def for_monomials(cls, monomials, n, drop=None):
        """Free coordinates = occurring y's minus one (the first, or ``drop``)."""
        occ = sorted({i for m in monomials for i in range(n) if m[n + i]})
        if not occ:
            return cls(n, ())
        drop = occ[0] if drop is None else drop
        return cls(n, tuple(i for i in occ if i != drop))


class FiberCounter:
    """Lattice points in fibers of a cone over degrees, batched."""

    def __init__(self, cone: PolyCone, dmap: DegreeMap):
        cone.ensure_facets()
        if cone.ambient_dim != dmap.ambient_dim:
            raise DimensionMismatch("cone and degree map have different ambient dimensions")
        self.cone = cone
        self.dmap = dmap
        nd = dmap.n + 1
        k = dmap.fiber_dim
        rows = [list(h) for h in cone.facets]
        for e in cone.equations:
            rows.append(list(e))
            rows.append([-x for x in e])
        H = np.array(rows, dtype=np.int64).reshape(len(rows), cone.ambient_dim)
        self.H_deg = H[:, :nd]
        self.H_w = np.ascontiguousarray(H[:, nd:])
        # exact bounds per free coordinate from the projected cone
        self.bounds = []
        cone.ensure_rays()
        gens = cone.rays if cone.rays else cone.generators
        for c in range(k):
            pg = [tuple(g[:nd]) + (g[nd + c],) for g in gens]
            pc = dd_facets(pg)
            ineq = [list(h) for h in pc.facets]
            for e in pc.equations:
                ineq.append(list(e))
                ineq.append([-x for x in e])
            self.bounds.append(np.array(ineq, dtype=np.int64).reshape(len(ineq), nd + 1))

    def count(self, degrees) -> np.ndarray:
        degs = np.array([as_degree(d).as_tuple() for d in degrees], dtype=np.int64)
        degs = degs.reshape(-1, self.dmap.n + 1)
        N = degs.shape[0]
        k = self.dmap.fiber_dim
        lo = np.zeros((N, k), dtype=np.int64)
        hi = np.zeros((N, k), dtype=np.int64)
        feasible = np.ones(N, dtype=bool)
        big = np.iinfo(np.int64).max // 4
        for c, P in enumerate(self.bounds):
            alpha = degs @ P[:, :-1].T  # (N, rows)
            beta = P[:, -1]
            l = np.full(N, -big, dtype=np.int64)
            h = np.full(N, big, dtype=np.int64)
            for j in range(P.shape[0]):
                b = beta[j]
                a = alpha[:, j]
                if b > 0:
                    l = np.maximum(l, -(a // b))
                elif b < 0:
                    h = np.minimum(h, a // (-b))
                else:
                    feasible &= a >= 0
            lo[:, c] = l
            hi[:, c] = h
        if k:
            unb = feasible & (((lo == -big) | (hi == big)).any(axis=1)) & (lo <= hi).all(axis=1)
            if unb.any():
                raise UnboundedFiber(f"fiber over {tuple(degs[np.argmax(unb)])} is unbounded")
        empty = ~feasible | (lo > hi).any(axis=1) if k else ~feasible
        lo[empty] = 1
        hi[empty] = 0
        rhs = degs @ self.H_deg.T
        if k == 0:
            out = ((rhs >= 0).all(axis=1) & ~empty).astype(np.int64)
            return out
        return kernels.count_fibers(self.H_w, rhs, lo, hi)


def psi_via_cone(cone: PolyCone, dmap: DegreeMap, deg, counter: FiberCounter | None = None) -> int:
    """Number of lattice points w with (deg, w) in the cone."""
    deg = as_degree(deg)
    counter = counter or FiberCounter(cone, dmap)
    return int(counter.count([deg.as_tuple()])[0])


def support_polytope(gens_degrees) -> PolyCone:
    """Cone over the given degree vectors, with facets computed."""
    vecs = [tuple(d.as_tuple()) if hasattr(d, "as_tuple") else tuple(d) for d in gens_degrees]
    return dd_facets(vecs)


def cone_of_monomials(monomials, dmap: DegreeMap) -> PolyCone:
    return dd_facets([dmap.embed(m) for m in monomials])
