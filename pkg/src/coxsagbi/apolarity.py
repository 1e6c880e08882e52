"""The counting function psi(r, u) evaluated from its definition.

psi(r, u) is the dimension of the space of degree-r forms in z_1..z_d killed
by every operator l_j^(u_j + 1), where l_j = sum_i a_ij d/dz_i is column j of
the configuration matrix.  The oracle stacks the operator matrices in
monomial bases and takes a kernel dimension.

Monomial bases are listed in graded lexicographic order with z_1 largest,
so ``(r,0,...,0)`` comes first.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .errors import DimensionMismatch, NegativeDegree, ParseError, RankDeficient
from .exact import TPoly, TScalar


@dataclass(frozen=True)
class DegreeVector:
    r: int
    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        if self.r < 0 or any(x < 0 for x in self.u):
            raise NegativeDegree(f"degree entries must be non-negative: {self}")

    @property
    def n(self):
        return len(self.u)

    def as_tuple(self):
        return (self.r,) + self.u

    @classmethod
    def parse(cls, text: str) -> "DegreeVector":
        try:
            parts = [int(p) for p in text.replace(" ", "").split(",") if p != ""]
        except ValueError as exc:
            raise ParseError(f"bad degree literal {text!r}") from exc
        if not parts:
            raise ParseError("empty degree literal")
        return cls(parts[0], tuple(parts[1:]))

    def __str__(self):
        return ",".join(str(x) for x in self.as_tuple())


def as_degree(deg) -> DegreeVector:
    if isinstance(deg, DegreeVector):
        return deg
    if isinstance(deg, str):
        return DegreeVector.parse(deg)
    if len(deg) == 2 and not isinstance(deg[1], int):
        return DegreeVector(deg[0], tuple(deg[1]))
    deg = tuple(deg)
    return DegreeVector(deg[0], deg[1:])


class LinearFormConfig:
    """n linear forms in d variables; column j of ``A`` holds the form l_j."""

    def __init__(self, A: Sequence[Sequence], check_rank: bool = True):
        rows = [[exact.as_scalar(x) for x in row] for row in A]
        if not rows or not rows[0]:
            raise DimensionMismatch("configuration matrix is empty")
        n = len(rows[0])
        if any(len(row) != n for row in rows):
            raise DimensionMismatch("ragged configuration matrix")
        self.A = tuple(tuple(row) for row in rows)
        self.d = len(rows)
        self.n = n
        self.is_t = any(isinstance(x, TScalar) for row in rows for x in row)
        if self.d > self.n:
            raise DimensionMismatch("need d <= n")
        if check_rank and exact.rank([list(r) for r in self.A]) != self.d:
            raise RankDeficient("the forms do not span the space of linear forms")
        self._hash = hash((self.d, self.n, self.A))

    def __eq__(self, other):
        return isinstance(other, LinearFormConfig) and self.A == other.A

    def __hash__(self):
        return self._hash

    def column(self, j):
        return [self.A[i][j] for i in range(self.d)]

    def __repr__(self):
        return f"LinearFormConfig(d={self.d}, n={self.n})"

    def to_json(self):
        return {"d": self.d, "n": self.n,
                "A": [[exact.format_scalar(x) for x in row] for row in self.A]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        if "A" not in data:
            raise ParseError("configuration JSON needs an 'A' matrix")
        cfg = cls(data["A"])
        if "d" in data and data["d"] != cfg.d or "n" in data and data["n"] != cfg.n:
            raise DimensionMismatch("declared d/n do not match the matrix")
        return cfg

    def permuted(self, perm):
        """Configuration with columns reordered; new column k is old perm[k]."""
        return LinearFormConfig([[row[p] for p in perm] for row in self.A], check_rank=False)

    def specialize(self, value):
        """Substitute t = value (rational) everywhere."""
        return LinearFormConfig([[x.evaluate(value) if isinstance(x, TScalar) else x
                                  for x in row] for row in self.A])


def maximal_minors_nonzero(A) -> bool:
    d, n = len(A), len(A[0])
    for cols in itertools.combinations(range(n), d):
        if exact.determinant([[A[i][j] for j in cols] for i in range(d)]) == 0:
            return False
    return True


def random_generic_config(d: int, n: int, seed: int | None = None, bound: int = 100,
                          rng: random.Random | None = None) -> LinearFormConfig:
    """Random integer d x n matrix with entries in [-bound, bound] and all
    maximal minors nonzero."""
    rng = rng or random.Random(seed)
    while True:
        A = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(d)]
        if maximal_minors_nonzero(A):
            return LinearFormConfig(A)


# ---------------------------------------------------------------------------
# monomials and operators


@functools.lru_cache(maxsize=None)
def monomials(d: int, r: int, caps: tuple | None = None) -> tuple:
    """Exponent vectors of degree r in d variables, graded-lex descending.

    ``caps`` bounds each exponent from above.
    """
    if caps is None:
        caps = (r,) * d
    out = []

    def rec(i, left, acc):
        if i == d - 1:
            if left <= caps[i]:
                out.append(tuple(acc) + (left,))
            return
        for v in range(min(left, caps[i]), -1, -1):
            acc.append(v)
            rec(i + 1, left - v, acc)
            acc.pop()

    if d == 0:
        return ((),) if r == 0 else ()
    rec(0, r, [])
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _multinomial(alpha: tuple) -> int:
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


def _column_powers(col, top, poly):
    """pw[i][k] = col[i]**k for k <= top, as ints or integer poly lists."""
    pw = []
    for c in col:
        row = [[1] if poly else 1]
        for _ in range(top):
            row.append(exact._pmul(row[-1], c) if poly else row[-1] * c)
        pw.append(row)
    return pw


def _operator_rows(col, m, basis, d, poly):
    """Rows of l^m : S_r -> S_{r-m} in the scaled bases.

    Columns are scaled by 1/v! and rows by w!, which turns the entry at
    (w, v) into multinomial(m; v - w) * a^(v - w).  Rows with no nonzero
    entry are dropped.
    """
    index = {}
    rows = []
    pw = _column_powers(col, m, poly)
    zero = [] if poly else 0
    for k, v in enumerate(basis):
        # every alpha <= v with |alpha| = m
        for alpha in monomials(d, m, v):
            coeff = _multinomial(alpha)
            if poly:
                e = [coeff]
                for i in range(d):
                    if alpha[i]:
                        e = exact._pmul(e, pw[i][alpha[i]])
                if not e:
                    continue
            else:
                e = coeff
                for i in range(d):
                    if alpha[i]:
                        e *= pw[i][alpha[i]]
                if not e:
                    continue
            w = tuple(a - b for a, b in zip(v, alpha))
            idx = index.get(w)
            if idx is None:
                idx = index[w] = len(rows)
                rows.append([zero] * len(basis))
            rows[idx][k] = e
    return rows


def _integral_column(col, poly):
    """Scale a column of rationals (or TScalars) to a primitive integral one."""
    if poly:
        sc = [TScalar.coerce(x) for x in col]
        row = exact._poly_rows([sc])[0]
        return [list(x) for x in row]
    den = 1
    for x in col:
        x = Fraction(x)
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in col]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


@functools.lru_cache(maxsize=4096)
def _frame(cfg: LinearFormConfig, S: tuple):
    """Columns of A_S^{-1} A made integral, for the coordinate frame S."""
    A = [list(r) for r in cfg.A]
    AS = [[A[i][j] for j in S] for i in range(cfg.d)]
    cols = exact.solve_square(AS, [cfg.column(j) for j in range(cfg.n)])
    return tuple(tuple(map(tuple, _integral_column(c, cfg.is_t))) if cfg.is_t
                 else tuple(_integral_column(c, False)) for c in cols)


@functools.lru_cache(maxsize=4096)
def _independent_prefix(cfg: LinearFormConfig, order: tuple) -> tuple:
    chosen = []
    for j in order:
        trial = chosen + [j]
        if exact.rank([[cfg.A[i][k] for k in trial] for i in range(cfg.d)]) == len(trial):
            chosen = trial
            if len(chosen) == cfg.d:
                break
    return tuple(chosen)


def _check(cfg, deg):
    deg = as_degree(deg)
    if len(deg.u) != cfg.n:
        raise DimensionMismatch(f"degree has {len(deg.u)} u-entries, configuration has {cfg.n} forms")
    return deg


def psi_direct(cfg: LinearFormConfig, deg, method: str = "frame") -> int:
    """dim of degree-r forms annihilated by every l_j^(u_j+1).

    ``method="frame"`` first changes coordinates so that d independent forms
    with the smallest u become coordinate derivatives; their constraints
    then just cap exponents, shrinking the basis.  ``method="full"`` stacks
    every active operator on the full monomial basis.
    """
    deg = _check(cfg, deg)
    r, u = deg.r, deg.u
    d = cfg.d
    poly = cfg.is_t
    if method == "full":
        basis = monomials(d, r)
        rows = []
        for j in range(cfg.n):
            if u[j] < r:
                col = _integral_column(cfg.column(j), poly)
                rows.extend(_operator_rows(col, u[j] + 1, basis, d, poly))
    elif method == "frame":
        order = tuple(sorted(range(cfg.n), key=lambda j: (u[j], j)))
        S = _independent_prefix(cfg, order)
        caps = tuple(min(u[j], r) for j in S)
        basis = monomials(d, r, caps)
        if not basis:
            return 0
        frame = _frame(cfg, S)
        Sset = set(S)
        rows = []
        for j in range(cfg.n):
            if j in Sset or u[j] >= r:
                continue
            col = [list(x) for x in frame[j]] if poly else list(frame[j])
            rows.extend(_operator_rows(col, u[j] + 1, basis, d, poly))
    else:
        raise ValueError(f"unknown method {method!r}")
    if not rows:
        return len(basis)
    rk = exact.poly_rank(rows, len(basis)) if poly else exact.int_rank(rows, len(basis))
    return len(basis) - rk


def _factorial_vec(v):
    out = 1
    for x in v:
        out *= math.factorial(x)
    return out


def solution_basis(cfg: LinearFormConfig, deg) -> list[dict]:
    """Exact basis of the solution space; each polynomial is a dict
    exponent-tuple -> coefficient in z_1..z_d."""
    deg = _check(cfg, deg)
    r, u = deg.r, deg.u
    d = cfg.d
    basis = monomials(d, r)
    poly = cfg.is_t
    rows = []
    for j in range(cfg.n):
        if u[j] < r:
            col = _integral_column(cfg.column(j), poly)
            rows.extend(_operator_rows(col, u[j] + 1, basis, d, poly))
    if poly:
        rows = [[TScalar(TPoly(e)) if e else TScalar() for e in row] for row in rows]
    kern = exact.kernel_basis(rows, len(basis)) if rows else \
        [[1 if i == k else 0 for i in range(len(basis))] for k in range(len(basis))]
    out = []
    for vec in kern:
        f = {}
        for v, y in zip(basis, vec):
            if y:
                f[v] = (y * Fraction(1, _factorial_vec(v))) if not poly else y * TScalar(Fraction(1, _factorial_vec(v)))
                if not poly:
                    f[v] = exact._simplify(f[v])
        out.append(f)
    return out


def apply_operator(col, m, f: dict) -> dict:
    """(sum_i col_i d/dz_i)^m applied to the polynomial f."""
    for _ in range(m):
        g = {}
        for v, c in f.items():
            for i, a in enumerate(col):
                if v[i] and a:
                    w = v[:i] + (v[i] - 1,) + v[i + 1:]
                    g[w] = g.get(w, 0) + c * a * v[i]
        f = {w: c for w, c in g.items() if c}
    return f


def varphi_uniform(cfg: LinearFormConfig, j: int) -> int:
    """sum over r of psi(r, (j,...,j))."""
    total = 0
    for r in range(cfg.n * j + 1):
        total += psi_direct(cfg, DegreeVector(r, (j,) * cfg.n))
    return total


def cremona(deg, d: int) -> DegreeVector:
    """Degree transformation of the standard Cremona map on the first d points."""
    deg = as_degree(deg)
    r, u = deg.r, deg.u
    s = sum(u[:d])
    r2 = s - r
    u2 = tuple(u[j] if j < d else s - 2 * r + u[j] for j in range(len(u)))
    if r2 < 0 or any(x < 0 for x in u2):
        raise NegativeDegree(f"Cremona image of {deg} leaves the non-negative orthant")
    return DegreeVector(r2, u2)


def weyl_orbit(deg, d: int, cap: int = 10000):
    """Orbit under permutations of u and Cremona on the first d points.

    Returns ``(orbit, truncated)``.
    """
    deg = as_degree(deg)
    start = DegreeVector(deg.r, tuple(sorted(deg.u, reverse=True)))
    seen_sorted = {start}
    frontier = [start]
    truncated = False
    n = deg.n
    while frontier:
        nxt = []
        for g in frontier:
            # every choice of d points for the Cremona map, up to reordering
            for S in itertools.combinations(range(n), d):
                rest = [j for j in range(n) if j not in S]
                perm = list(S) + rest
                h = DegreeVector(g.r, tuple(g.u[p] for p in perm))
                try:
                    c = cremona(h, d)
                except NegativeDegree:
                    continue
                key = DegreeVector(c.r, tuple(sorted(c.u, reverse=True)))
                if key not in seen_sorted:
                    seen_sorted.add(key)
                    nxt.append(key)
        frontier = nxt
    orbit = set()
    for g in seen_sorted:
        for p in set(itertools.permutations(g.u)):
            orbit.add(DegreeVector(g.r, p))
            if len(orbit) >= cap:
                truncated = True
                return orbit, truncated
    return orbit, truncated


def degree_grid(n: int, rmax: int, umax: int) -> Iterable[DegreeVector]:
    for r in range(rmax + 1):
        for u in itertools.product(range(umax + 1), repeat=n):
            yield DegreeVector(r, u)
