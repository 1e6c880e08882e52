"""Hyperplane arrangements spanned by the columns of a d x m matrix C, the
zonotopal generators E_k, F_k and the matroid formula for psi(r, C^T v)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import exact
from .apolarity import LinearFormConfig
from .cox import GeneratorSet, XYMonomial, XYPolynomial
from .errors import DimensionMismatch, RankDeficient
from .exact import TScalar


def _det(rows):
    return exact.determinant([list(r) for r in rows])


def _cofactor_normal(cols, d):
    """Coefficients of z -> det[c_1, ..., c_(d-1), z] (columns)."""
    out = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        M = [[c[r] for c in cols] + [e[r]] for r in range(d)]
        out.append(_det(M))
    return out


def _primitive_rational(v):
    """Integer primitive multiple with positive leading entry."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = math.gcd(g, x)
    w = [x // g for x in w]
    lead = next(x for x in w if x)
    return [x if lead > 0 else -x for x in w]


def _projective_key(v):
    lead = next(x for x in v if x)
    return tuple(x / lead if isinstance(x, TScalar) else Fraction(x) / Fraction(lead) for x in v)


def _is_rational(v):
    return all(isinstance(x, (int, Fraction)) for x in v)


def _colex(tup):
    return tuple(sorted(tup, reverse=True))


class LinearMatroid:
    """Column matroid of a matrix, with memoized exact rank queries."""

    def __init__(self, C: Sequence[Sequence]):
        self.C = [[exact.as_scalar(x) for x in row] for row in C]
        self.d = len(self.C)
        self.m = len(self.C[0])

    def column(self, k):
        return [self.C[i][k] for i in range(self.d)]

    @lru_cache(maxsize=None)
    def rank(self, J: frozenset) -> int:
        J = sorted(J)
        if not J:
            return 0
        rows = [self.column(k) for k in J]
        return exact.rank(rows, self.d)

    def rank_of(self, J) -> int:
        return self.rank(frozenset(J))

    def span(self, J) -> frozenset:
        J = frozenset(J)
        r = self.rank(J)
        return frozenset(k for k in range(self.m) if self.rank(J | {k}) == r)

    def is_independent(self, J) -> bool:
        return self.rank(frozenset(J)) == len(J)

    @cached_property
    def independent_sets(self) -> tuple:
        """All independent sets (including the empty set), by depth-first search."""
        out = []

        def go(start, cur):
            out.append(frozenset(cur))
            for k in range(start, self.m):
                nxt = cur + [k]
                if self.rank(frozenset(nxt)) == len(nxt):
                    go(k + 1, nxt)

        go(0, [])
        return tuple(out)

    @property
    def full_rank(self) -> int:
        return self.rank(frozenset(range(self.m)))


@dataclass
class ZonotopalConfig:
    C: list
    flats: list  # columns of C lying on each hyperplane (0-based)
    spanning: list  # the (d-1)-subset that defines each normal
    A: list
    bigC: list  # m x n, bigC[k][j] = 0 iff column k lies on H_j

    @property
    def d(self):
        return len(self.C)

    @property
    def m(self):
        return len(self.C[0])

    @property
    def n(self):
        return len(self.A[0])

    @cached_property
    def config(self) -> LinearFormConfig:
        return LinearFormConfig(self.A)

    @cached_property
    def matroid(self) -> LinearMatroid:
        return LinearMatroid(self.C)

    def degree(self, v) -> tuple:
        """u = sum_k v_k c_k, the image of v under the 0/1 matrix."""
        if len(v) != self.m:
            raise DimensionMismatch(f"v needs {self.m} entries")
        return tuple(sum(self.bigC[k][j] * v[k] for k in range(self.m)) for j in range(self.n))

    def hyperplane_labels(self):
        return ["".join(str(k + 1) for k in s) for s in self.spanning]


def arrangement_from_C(C, order=None) -> ZonotopalConfig:
    """All hyperplanes spanned by columns of C, in colex order of their
    spanning (d-1)-subsets unless ``order`` lists those subsets (1-based)."""
    mat = LinearMatroid(C)
    d, m = mat.d, mat.m
    if mat.full_rank != d:
        raise RankDeficient(f"C has rank {mat.full_rank} < d = {d}")
    found = {}
    for S in itertools.combinations(range(m), d - 1):
        if mat.rank(frozenset(S)) != d - 1:
            continue
        normal = _cofactor_normal([mat.column(k) for k in S], d)
        key = _projective_key(normal)
        if key in found:
            continue
        flat = tuple(sorted(mat.span(S)))
        found[key] = (S, flat, normal)
    entries = list(found.values())
    if order is not None:
        want = [tuple(k - 1 for k in sorted(s)) for s in order]
        by_span = {}
        for S, flat, normal in entries:
            for T in itertools.combinations(flat, d - 1):
                by_span[T] = (S, flat, normal)
        if len(want) != len(entries) or any(w not in by_span for w in want):
            raise DimensionMismatch("order does not list every hyperplane exactly once")
        entries = [(w,) + by_span[w][1:] for w in want]
    else:
        entries.sort(key=lambda e: _colex(e[0]))
    cols = []
    for S, flat, normal in entries:
        cols.append(_primitive_rational(normal) if _is_rational(normal) else normal)
    A = [[cols[j][i] for j in range(len(cols))] for i in range(d)]
    flat_sets = [set(e[1]) for e in entries]
    bigC = [[0 if k in flat_sets[j] else 1 for j in range(len(entries))] for k in range(m)]
    return ZonotopalConfig([list(r) for r in mat.C], [e[1] for e in entries],
                           [e[0] for e in entries], A, bigC)


# ---------------------------------------------------------------------------
# the matroid formula


def phi_coeff(mu: Sequence[int], s: int) -> int:
    """Coefficient of q^s in prod_{l in mu} (1 + q + ... + q^(l-1))."""
    if s < 0:
        return 0
    poly = [1]
    for l in mu:
        if l <= 0:
            return 0
        top = min(len(poly) - 1 + l - 1, s)
        new = [0] * (top + 1)
        # running window sum of width l
        acc = 0
        for k in range(top + 1):
            if k < len(poly):
                acc += poly[k]
            if k - l >= 0 and k - l < len(poly):
                acc -= poly[k - l]
            new[k] = acc
        poly = new
    return poly[s] if s < len(poly) else 0


def external_shift(mat: LinearMatroid, I, v) -> int:
    """sum of v_j over j outside span(I intersected with {1, ..., j})."""
    I = frozenset(I)
    return sum(v[j] for j in range(mat.m) if j not in mat.span(frozenset(i for i in I if i <= j)))


def psi_zonotopal(cfg: ZonotopalConfig, r: int, v: Sequence[int]) -> int:
    """sum over independent I of Phi({v_i}_{i in I}, r - external_shift(I, v))."""
    if len(v) != cfg.m:
        raise DimensionMismatch(f"v needs {cfg.m} entries")
    if any(x < 0 for x in v):
        raise ValueError("v must be non-negative")
    mat = cfg.matroid
    total = 0
    for I in mat.independent_sets:
        total += phi_coeff([v[i] for i in sorted(I)], r - external_shift(mat, I, v))
    return total


def independent_set_polynomial(cfg: ZonotopalConfig, v: Sequence[int]) -> int:
    """sum_I prod_{i in I} v_i, which equals sum_r psi(r, C^T v)."""
    return sum(math.prod(v[i] for i in I) for I in cfg.matroid.independent_sets)


def psi_zonotopal_sum(cfg: ZonotopalConfig, v: Sequence[int]) -> int:
    return sum(psi_zonotopal(cfg, r, v) for r in range(sum(v) + 1))


# ---------------------------------------------------------------------------
# generators


def zonotopal_generators(cfg: ZonotopalConfig) -> GeneratorSet:
    """E_k = x^(c_k) and F_k = sum_j f_k(a_j) y_j x^(c_k - e_j)."""
    n, m, d = cfg.n, cfg.m, cfg.d
    labels, polys = [], []
    for k in range(m):
        e = [0] * (2 * n)
        for j in range(n):
            e[j] = cfg.bigC[k][j]
        labels.append(f"E_{k + 1}")
        polys.append(XYPolynomial(n, {XYMonomial(tuple(e)): 1}))
    for k in range(m):
        ck = [cfg.C[i][k] for i in range(d)]
        terms = {}
        for j in range(n):
            if not cfg.bigC[k][j]:
                continue
            val = sum((ck[i] * cfg.A[i][j] for i in range(d)), 0)
            e = [0] * (2 * n)
            for jj in range(n):
                e[jj] = cfg.bigC[k][jj]
            e[j] -= 1
            e[n + j] += 1
            terms[XYMonomial(tuple(e))] = val
        labels.append(f"F_{k + 1}")
        polys.append(XYPolynomial(n, terms))
    return GeneratorSet(labels, polys)
