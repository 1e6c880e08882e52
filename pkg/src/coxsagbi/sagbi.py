"""Sagbi verification: quadratic binomials, the lifting count, and the
classification of moneric initial algebras over the tropical Grassmannian
Trop Gr(2,5).

Metrics on five points are 10-tuples ordered d12 d13 d14 d15 d23 d24 d25 d34
d35 d45.  A metric d is realized by a 2 x 5 matrix B over Q(t) with
-ord(p_ij) = d_ij.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import exact, kernels
from .apolarity import DegreeVector, LinearFormConfig, as_degree, psi_direct
from .cox import (GeneratorSet, NotMoneric, XYMonomial, _mono, format_monomial,
                  grassmann5_generators, plucker)
from .errors import DimensionMismatch, InstanceTooLarge, NotMonericError, NotTreeMetric, UnknownType
from .exact import TScalar

PAIRS = kernels.PAIRS
TRIPLES = kernels.TRIPLES


def _metric(m) -> tuple:
    m = tuple(int(x) for x in m)
    if len(m) != 10:
        raise DimensionMismatch("a metric on five points has ten entries")
    return m


def _dist(m, i, j):
    if i == j:
        return 0
    return m[kernels.PAIR_INDEX[(min(i, j), max(i, j))]]


def tropical_plucker_check(m) -> bool:
    """Four-point condition: on every 4-subset the largest of the three
    pairings is attained at least twice."""
    m = _metric(m)
    for a, b, c, e in itertools.combinations(range(5), 4):
        s = (_dist(m, a, b) + _dist(m, c, e), _dist(m, a, c) + _dist(m, b, e),
             _dist(m, a, e) + _dist(m, b, c))
        if s.count(max(s)) < 2:
            return False
    return True


# ---------------------------------------------------------------------------
# realization


def _realize_once(m, rng):
    # Leaf 0 goes to the point (0 : 1).  The other columns are s_j (1, z_j) with
    # ord(s_j) = -d_0j, so p_0j = -s_0 s_j and p_ij = s_i s_j (z_j - z_i).  The
    # Gromov products g_ij = d_0i + d_0j - d_ij form an ultrametric and z_j is
    # built greedily so that ord(z_i - z_j) = g_ij.
    def g(i, j):
        return _dist(m, 0, i) + _dist(m, 0, j) - _dist(m, i, j)

    z = {1: exact.as_scalar(0)}
    for i in range(2, 5):
        jstar = max(range(1, i), key=lambda j: (g(i, j), -j))
        coeff = rng.randint(1, 97)
        z[i] = z[jstar] + TScalar.t(g(i, jstar)) * coeff
    B = [[exact.as_scalar(0)], [exact.as_scalar(1)]]
    for j in range(1, 5):
        s = TScalar.t(-_dist(m, 0, j))
        B[0].append(s)
        B[1].append(s * z[j])
    return B


def plucker_metric(B) -> tuple:
    """(-ord(p_ij)) for a 2 x 5 matrix."""
    p = plucker([[exact.as_scalar(x) for x in row] for row in B])
    out = []
    for key in PAIRS:
        if not p[key]:
            raise NotTreeMetric(f"p_{key[0] + 1}{key[1] + 1} vanishes")
        out.append(-exact.order(p[key]))
    return tuple(out)


def realize_metric(m, seed: int = 0, attempts: int = 20):
    """2 x 5 matrix over Q(t) whose Plucker orders realize m, verified."""
    m = _metric(m)
    if not tropical_plucker_check(m):
        raise NotTreeMetric(f"{m} violates the four-point condition")
    rng = random.Random(seed)
    for _ in range(attempts):
        B = _realize_once(m, rng)
        try:
            if plucker_metric(B) == m:
                return B
        except NotTreeMetric:
            pass
    raise NotTreeMetric(f"no verified realization of {m} after {attempts} attempts")


def caterpillar_matrix(n: int):
    """Rows (1, t, ..., t^(n-1)) and (t^(n-1), ..., 1)."""
    return [[TScalar.t(i) for i in range(n)], [TScalar.t(n - 1 - i) for i in range(n)]]


# ---------------------------------------------------------------------------
# classification up to S5


def permute_monomial(mono: XYMonomial, perm: Sequence[int]) -> XYMonomial:
    """Relabel index i as perm[i] in both the x and the y block."""
    n = mono.n
    e = [0] * (2 * n)
    for i in range(n):
        e[perm[i]] = mono[i]
        e[n + perm[i]] = mono[n + i]
    return XYMonomial(tuple(e))


def permute_metric(m, perm: Sequence[int]) -> tuple:
    """The metric d' with d'_{perm(i) perm(j)} = d_ij."""
    m = _metric(m)
    out = [0] * 10
    for (i, j), v in zip(PAIRS, m):
        a, b = sorted((perm[i], perm[j]))
        out[kernels.PAIR_INDEX[(a, b)]] = v
    return tuple(out)


@lru_cache(maxsize=None)
def _template_index():
    from .presets import type_monomials

    index = {}
    for k in range(1, 8):
        base = type_monomials(k)
        for perm in itertools.permutations(range(5)):
            key = frozenset(permute_monomial(x, perm) for x in base)
            index.setdefault(key, (k, perm))
    return index


def match_type(in_F: Iterable[XYMonomial]):
    """(type id, permutation) with in_F = perm(template), or None."""
    return _template_index().get(frozenset(in_F))


def type_orbit_sizes() -> dict:
    return dict(Counter(k for k, _ in _template_index().values()))


@dataclass(frozen=True)
class MonericClass:
    in_F: frozenset
    metric: tuple
    type_id: int
    perm: tuple = ()

    @property
    def sagbi(self) -> bool:
        return self.type_id != 7

    def sorted_monomials(self):
        return sorted(self.in_F, key=lambda x: (sum(x), tuple(-e for e in x)))

    def to_json(self):
        return {"type": self.type_id, "sagbi": self.sagbi, "metric": list(self.metric),
                "in_F": [format_monomial(x) for x in self.sorted_monomials()]}


def initial_set(B) -> list:
    """The 16 initial monomials of the Gr(2,5) generators, or raise NotMonericError."""
    gs = grassmann5_generators(B)
    out = []
    for lab, inm in zip(gs.labels, gs.initial_monomials()):
        if isinstance(inm, NotMoneric):
            raise NotMonericError(f"{lab} has {len(inm.terms)} terms of lowest order {inm.order}")
        out.append(inm)
    return out


def classify_moneric(m, seed: int = 0) -> MonericClass:
    """Moneric class of the initial algebra for any matrix realizing m."""
    m = _metric(m)
    B = realize_metric(m, seed=seed)
    in_F = initial_set(B)
    hit = match_type(in_F)
    if hit is None:
        raise UnknownType("initial monomials match none of the seven templates")
    return MonericClass(frozenset(in_F), m, hit[0], tuple(hit[1]))


def code_monomials(code: int) -> list:
    """Initial monomials encoded by a sweep class code."""
    choices, q = kernels.decode_code(code)
    out = [_mono(5, [i]) for i in range(5)]
    for (i, j, k), c in zip(TRIPLES, choices):
        if c == 0:
            out.append(_mono(5, [i, j], [k]))
        elif c == 1:
            out.append(_mono(5, [i, k], [j]))
        else:
            out.append(_mono(5, [j, k], [i]))
    ys = PAIRS[q]
    out.append(_mono(5, [s for s in range(5) if s not in ys], ys))
    return out


def classify_code(code: int, metric) -> MonericClass:
    in_F = code_monomials(code)
    hit = match_type(in_F)
    if hit is None:
        raise UnknownType(f"class code {code} matches none of the seven templates")
    return MonericClass(frozenset(in_F), tuple(int(x) for x in metric), hit[0], tuple(hit[1]))


@dataclass
class SweepReport:
    bound: int
    classes: list
    metrics_inside: int
    non_moneric: int
    metric_counts: dict = field(default_factory=dict)
    symbolic_checked: int = 0

    @property
    def tallies(self) -> dict:
        return dict(sorted(Counter(c.type_id for c in self.classes).items()))

    @property
    def types(self) -> set:
        return {c.type_id for c in self.classes}

    def to_json(self):
        return {"bound": self.bound, "classes": len(self.classes),
                "types": len(self.types), "tallies": {str(k): v for k, v in self.tallies.items()},
                "sagbi_classes": sum(1 for c in self.classes if c.sagbi),
                "tropical_metrics": self.metrics_inside, "non_moneric_metrics": self.non_moneric,
                "symbolic_checked": self.symbolic_checked}


def _symbolic_agrees(cls: MonericClass) -> bool:
    return classify_moneric(cls.metric).in_F == cls.in_F


def enumerate_moneric_classes(bound: int = 8, verify_symbolic: bool = False,
                              workers: int = 1) -> SweepReport:
    """Sweep integer metrics in [0, bound]^10 satisfying the four-point
    condition and collect the distinct initial monomial sets.

    With ``verify_symbolic`` one representative per class is re-classified
    through an exact realization and the Gr(2,5) generators.
    """
    codes, counts, reps, inside, nonmon = kernels.gr25_sweep(bound)
    classes = [classify_code(int(c), r) for c, r in zip(codes, reps)]
    report = SweepReport(bound, classes, inside, nonmon,
                         {int(c): int(k) for c, k in zip(codes, counts)})
    if verify_symbolic:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                ok = list(pool.map(_symbolic_agrees, classes, chunksize=8))
        else:
            ok = [_symbolic_agrees(c) for c in classes]
        if not all(ok):
            bad = classes[ok.index(False)]
            raise UnknownType(f"symbolic classification disagrees for metric {bad.metric}")
        report.symbolic_checked = len(classes)
    return report


# ---------------------------------------------------------------------------
# binomials and the lifting count


def _image_degree(mono: XYMonomial) -> DegreeVector:
    return mono.degree()


def quadratic_binomials(in_F: Sequence[XYMonomial]) -> dict:
    """Map each degree of a pairwise product to (products, distinct images).

    Products of a generator with itself count.  Each image shared by s
    products contributes s - 1 independent quadratic binomials.
    """
    by_degree = defaultdict(list)
    for i, j in itertools.combinations_with_replacement(range(len(in_F)), 2):
        prod = in_F[i] * in_F[j]
        by_degree[_image_degree(prod)].append(prod)
    return {deg: (len(ps), len(set(ps))) for deg, ps in by_degree.items()}


def binomial_degrees(in_F: Sequence[XYMonomial]) -> dict:
    """Degrees carrying quadratic binomials, with their number."""
    return {deg: p - s for deg, (p, s) in quadratic_binomials(in_F).items() if p > s}


def total_quadratic_binomials(in_F: Sequence[XYMonomial]) -> int:
    return sum(binomial_degrees(in_F).values())


def semigroup_monomials(in_F: Sequence[XYMonomial], deg) -> set:
    """All monomials of the given degree in the semigroup generated by in_F."""
    deg = as_degree(deg)
    target = deg.as_tuple()
    gdeg = [x.degree().as_tuple() for x in in_F]
    if any(not any(g) for g in gdeg):
        raise ValueError("generators must have nonzero degree")
    width = len(in_F[0])
    out = set()

    def go(start, rem, acc):
        if not any(rem):
            out.add(XYMonomial(tuple(acc)))
            return
        for g in range(start, len(in_F)):
            d = gdeg[g]
            if all(a >= b for a, b in zip(rem, d)):
                go(g, tuple(a - b for a, b in zip(rem, d)),
                   [a + b for a, b in zip(acc, in_F[g])])

    go(0, target, [0] * width)
    return out


def lifting_check(cfg: LinearFormConfig, in_F: Sequence[XYMonomial], deg) -> bool:
    """psi(deg) equals the number of degree-deg monomials generated by in_F."""
    return psi_direct(cfg, deg) == len(semigroup_monomials(in_F, deg))


@dataclass
class LiftingRow:
    degree: DegreeVector
    products: int
    images: int
    psi: int

    @property
    def binomials(self):
        return self.products - self.images

    @property
    def lifts(self):
        return self.psi == self.images

    def to_json(self):
        return {"degree": str(self.degree), "products": self.products, "images": self.images,
                "binomials": self.binomials, "psi": self.psi, "lifts": self.lifts}


def lifting_report(cfg: LinearFormConfig, in_F: Sequence[XYMonomial]) -> list:
    """One row per degree that carries quadratic binomials.

    ``images`` counts every degree-deg monomial of the semigroup, which for
    these degrees are all products of at most two generators or of more
    generators of lower degree.
    """
    rows = []
    for deg, b in sorted(binomial_degrees(in_F).items(), key=lambda kv: kv[0].as_tuple()):
        p, _ = quadratic_binomials(in_F)[deg]
        rows.append(LiftingRow(deg, p, len(semigroup_monomials(in_F, deg)), psi_direct(cfg, deg)))
    return rows


def sagbi_check(B_or_cfg, generators: GeneratorSet | None = None, in_F=None) -> dict:
    """Quadratic lifting report for a configuration; Gr(2,5) generators when B is 2 x 5."""
    if isinstance(B_or_cfg, LinearFormConfig):
        cfg = B_or_cfg
    else:
        from .presets import kernel_rows_of_B

        B = [[exact.as_scalar(x) for x in row] for row in B_or_cfg]
        cfg = LinearFormConfig(kernel_rows_of_B(B))
        if in_F is None and generators is None and len(B[0]) == 5:
            in_F = initial_set(B)
    if in_F is None:
        if generators is None:
            raise ValueError("need generators or initial monomials")
        in_F = []
        for lab, inm in zip(generators.labels, generators.initial_monomials()):
            if isinstance(inm, NotMoneric):
                raise NotMonericError(f"{lab} is not moneric")
            in_F.append(inm)
    rows = lifting_report(cfg, in_F)
    return {"generators": len(in_F), "binomials": sum(r.binomials for r in rows),
            "degrees": [r.to_json() for r in rows], "all_lift": all(r.lifts for r in rows)}


# ---------------------------------------------------------------------------
# Markov bases (minimal generators of the toric ideal)


@dataclass
class MarkovResult:
    binomials: list
    cap: int
    status: str

    def __len__(self):
        return len(self.binomials)

    def degrees(self) -> Counter:
        return Counter(sum(a) for a, _ in self.binomials)


def _fiber(in_F, image, cache):
    """All exponent vectors c with prod in_F^c = image."""
    key = image
    if key in cache:
        return cache[key]
    out = []

    def go(start, rem, c):
        if not any(rem):
            out.append(tuple(c))
            return
        for g in range(start, len(in_F)):
            if all(a >= b for a, b in zip(rem, in_F[g])):
                c[g] += 1
                go(g, tuple(a - b for a, b in zip(rem, in_F[g])), c)
                c[g] -= 1

    go(0, tuple(image), [0] * len(in_F))
    cache[key] = out
    return out


def _components(fiber):
    parent = list(range(len(fiber)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in itertools.combinations(range(len(fiber)), 2):
        if any(a and b for a, b in zip(fiber[i], fiber[j])):
            parent[find(i)] = find(j)
    groups = defaultdict(list)
    for i in range(len(fiber)):
        groups[find(i)].append(fiber[i])
    return [sorted(g) for g in groups.values()]


def markov_basis(in_F: Sequence[XYMonomial], cap: int = 3, max_generators: int = 30,
                 force: bool = False) -> MarkovResult:
    """Minimal binomial generators of the toric ideal of in_F up to ``cap`` factors.

    In each fine degree b the minimal generators correspond to the connected
    components of the fiber graph (edges join factorizations that share a
    generator): one binomial links consecutive components.  Status is
    ``"inconclusive"`` when a minimal generator appears at the cap itself.
    """
    in_F = list(in_F)
    n = in_F[0].n if in_F else 0
    if not force and (n >= 7 or len(in_F) > max_generators):
        raise InstanceTooLarge(f"{len(in_F)} generators on n = {n}; pass force=True to try anyway")
    cache = {}
    seen = set()
    binomials = []
    top = 0
    for k in range(2, cap + 1):
        for combo in itertools.combinations_with_replacement(range(len(in_F)), k):
            img = [0] * len(in_F[0])
            for g in combo:
                img = [a + b for a, b in zip(img, in_F[g])]
            img = tuple(img)
            if img in seen:
                continue
            seen.add(img)
            fib = _fiber(in_F, img, cache)
            if len(fib) < 2:
                continue
            comps = _components(fib)
            for a, b in zip(comps, comps[1:]):
                binomials.append((a[0], b[0]))
                top = max(top, sum(a[0]), sum(b[0]))
    status = "inconclusive" if top >= cap else "complete-below-cap"
    return MarkovResult(binomials, cap, status)


def format_binomial(in_F_labels: Sequence[str], pair) -> str:
    def side(c):
        parts = []
        for lab, e in zip(in_F_labels, c):
            if e:
                parts.append(lab + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)

    return f"{side(pair[0])} - {side(pair[1])}"
