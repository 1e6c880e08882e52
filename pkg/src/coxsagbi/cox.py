"""Nagata invariants in K[x_1..x_n, y_1..y_n] and their initial monomials.

The grading is deg(x_i) = e_i and deg(y_i) = e_0 + e_i.  A vector lambda in
G = ker(A) acts by y_i -> y_i + lambda_i x_i.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .apolarity import DegreeVector, LinearFormConfig, as_degree, solution_basis
from .errors import (DegeneratePlucker, DimensionMismatch, NotInKernel, NotUnique, ParseError,
                     ZeroPolynomial, ZeroScalar)
from .exact import TScalar


class XYMonomial(tuple):
    """Exponent vector (a_1..a_n, b_1..b_n) of x^a y^b."""

    __slots__ = ()

    def __new__(cls, a, b=None):
        if b is None:
            return super().__new__(cls, a)
        if len(a) != len(b):
            raise DimensionMismatch("x and y exponent vectors differ in length")
        return super().__new__(cls, tuple(a) + tuple(b))

    @property
    def n(self):
        return len(self) // 2

    @property
    def a(self):
        return tuple(self[: self.n])

    @property
    def b(self):
        return tuple(self[self.n:])

    def __mul__(self, other):
        return XYMonomial(tuple(p + q for p, q in zip(self, other)))

    def divides(self, other):
        return all(p <= q for p, q in zip(self, other))

    def degree(self) -> DegreeVector:
        n = self.n
        return DegreeVector(sum(self[n:]), tuple(self[i] + self[n + i] for i in range(n)))

    def __str__(self):
        return format_monomial(self)

    def __repr__(self):
        return f"XYMonomial({format_monomial(self)!r})"


def format_monomial(m: XYMonomial) -> str:
    """Space separated factors by index, x before y: ``x1 y2 y3 x6^2``."""
    n = len(m) // 2
    parts = []
    for i in range(n):
        for name, e in (("x", m[i]), ("y", m[n + i])):
            if e:
                parts.append(f"{name}{i + 1}" + (f"^{e}" if e > 1 else ""))
    return " ".join(parts) if parts else "1"


_FACTOR = re.compile(r"([xy])(\d+)(?:\^(\d+))?")
_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


def parse_monomial(text: str, n: int) -> XYMonomial:
    """Parse ``"y3 x4 x5 x6"``, ``"x1y2y3x4x5x6^2"`` or ``x6²``-style input."""
    s = text.replace(" ", "").replace("*", "")
    s = re.sub(r"([⁰¹²³⁴⁵⁶⁷⁸⁹]+)", lambda m: "^" + m.group(1).translate(_SUPERSCRIPTS), s)
    exps = [0] * (2 * n)
    pos = 0
    if s == "1":
        return XYMonomial(tuple(exps))
    while pos < len(s):
        m = _FACTOR.match(s, pos)
        if not m:
            raise ParseError(f"cannot parse monomial {text!r}")
        i = int(m.group(2)) - 1
        if not 0 <= i < n:
            raise ParseError(f"variable index out of range in {text!r}")
        e = int(m.group(3) or 1)
        exps[i + (n if m.group(1) == "y" else 0)] += e
        pos = m.end()
    return XYMonomial(tuple(exps))


class XYPolynomial:
    """Polynomial in x, y with exact coefficients (int, Fraction or TScalar)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(m, XYMonomial):
                    m = XYMonomial(m)
                if len(m) != 2 * n:
                    raise DimensionMismatch("monomial length does not match n")
                if c:
                    self.terms[m] = c

    @classmethod
    def variable(cls, n, i, kind="x"):
        e = [0] * (2 * n)
        e[i + (n if kind == "y" else 0)] = 1
        return cls(n, {XYMonomial(tuple(e)): 1})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return XYPolynomial(self.n, out)

    def __neg__(self):
        return XYPolynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, XYPolynomial):
            return XYPolynomial(self.n, {m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return XYPolynomial(self.n, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, XYPolynomial):
            return NotImplemented
        return (self - other).terms == {}

    def degrees(self) -> set:
        return {m.degree() for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self) -> DegreeVector:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("polynomial is not homogeneous")
        return next(iter(ds))

    def normalized(self):
        return XYPolynomial(self.n, {m: c.normalized() if isinstance(c, TScalar) else c
                                     for m, c in self.terms.items()})

    def scaled_by(self, c):
        return XYPolynomial(self.n, {m: v / c if isinstance(v, TScalar) or isinstance(c, TScalar)
                                     else exact._simplify(Fraction(v) / c)
                                     for m, v in self.terms.items()})

    def to_json(self, label=None):
        data = {}
        if label is not None:
            data["label"] = label
        if self.terms:
            data["degree"] = str(self.degree())
        data["terms"] = [{"m": format_monomial(m), "c": exact.format_scalar(c)}
                         for m, c in sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)]
        return data

    @classmethod
    def from_json(cls, data, n):
        terms = {}
        for t in data["terms"]:
            m = parse_monomial(t["m"], n)
            terms[m] = terms.get(m, 0) + exact.as_scalar(t["c"])
        return cls(n, terms)

    def __repr__(self):
        body = " + ".join(f"({exact.format_scalar(c)})*{format_monomial(m)}"
                          for m, c in sorted(self.terms.items(), reverse=True))
        return f"XYPolynomial({body or '0'})"


@dataclass
class NotMoneric:
    """Returned (not raised) when the lowest t-order is attained more than once."""

    terms: list
    order: int

    def __bool__(self):
        return False


@dataclass
class GeneratorSet:
    labels: list
    polys: list
    degrees: list = field(default_factory=list)

    def __post_init__(self):
        if not self.degrees:
            self.degrees = [p.degree() for p in self.polys]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(zip(self.labels, self.polys))

    def by_label(self, label):
        return self.polys[self.labels.index(label)]

    def to_json(self):
        return [p.to_json(lab) for lab, p in zip(self.labels, self.polys)]

    def initial_monomials(self):
        return [initial_monomial(p) for p in self.polys]


def initial_monomial(f: XYPolynomial):
    """Unique lowest-order term of f, or a NotMoneric value listing the ties."""
    if not f.terms:
        raise ZeroPolynomial("initial monomial of the zero polynomial")
    orders = {m: exact.order(c) for m, c in f.terms.items()}
    low = min(orders.values())
    tied = [m for m, o in orders.items() if o == low]
    if len(tied) == 1:
        return tied[0]
    return NotMoneric(sorted(tied, reverse=True), low)


def initial_form(f: XYPolynomial) -> XYPolynomial:
    orders = {m: exact.order(c) for m, c in f.terms.items()}
    low = min(orders.values())
    return XYPolynomial(f.n, {m: exact.initial_coefficient(c) for m, c in f.terms.items()
                              if orders[m] == low})


# ---------------------------------------------------------------------------
# invariance


def _binomial_shift(f: XYPolynomial, lam: Sequence) -> dict:
    """Terms of f(x, y + s*lam*x) of positive degree in s, keyed by (power, monomial)."""
    n = f.n
    out = {}
    for m, c in f.terms.items():
        b = m[n:]
        ranges = [range(bi + 1) if lam[i] else range(1) for i, bi in enumerate(b)]
        for ks in itertools.product(*ranges):
            K = sum(ks)
            if K == 0:
                continue
            coeff = c
            e = list(m)
            for i, k in enumerate(ks):
                if k:
                    coeff = coeff * (math.comb(b[i], k) * lam[i] ** k)
                    e[n + i] -= k
                    e[i] += k
            key = (K, tuple(e))
            out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}


def nagata_invariance(f: XYPolynomial, G_basis: Iterable[Sequence], A=None) -> bool:
    """True iff f is fixed by y -> y + lambda*x for every lambda in the span.

    Each basis vector gets its own formal parameter s; invariance means every
    coefficient of a positive power of s vanishes.  When ``A`` is given the
    basis vectors are checked to lie in ker(A).
    """
    for lam in G_basis:
        lam = list(lam)
        if len(lam) != f.n:
            raise DimensionMismatch("group vector length does not match n")
        if A is not None and any(exact.mat_vec([list(r) for r in A], lam)):
            raise NotInKernel("vector is not in the kernel of A")
        if _binomial_shift(f, lam):
            return False
    return True


def kernel_of(cfg_or_A) -> list:
    A = cfg_or_A.A if isinstance(cfg_or_A, LinearFormConfig) else cfg_or_A
    return exact.kernel_basis([list(r) for r in A])


# ---------------------------------------------------------------------------
# explicit families


def _label(prefix, idx):
    return prefix + "_" + "".join(str(i + 1) for i in idx)


def _mono(n, xs=(), ys=()):
    e = [0] * (2 * n)
    for i in xs:
        e[i] += 1
    for i in ys:
        e[n + i] += 1
    return XYMonomial(tuple(e))


def minors_generators(alpha: Sequence) -> GeneratorSet:
    """x_1..x_n and the minors alpha_i x_i y_j - alpha_j x_j y_i (n = d + 1)."""
    alpha = [exact.as_scalar(a) for a in alpha]
    if any(not a for a in alpha):
        raise ZeroScalar("all alpha_i must be nonzero")
    n = len(alpha)
    labels, polys = [], []
    for i in range(n):
        labels.append(f"x_{i + 1}")
        polys.append(XYPolynomial(n, {_mono(n, [i]): 1}))
    for i, j in itertools.combinations(range(n), 2):
        labels.append(_label("M", (i, j)))
        polys.append(XYPolynomial(n, {_mono(n, [i], [j]): alpha[i], _mono(n, [j], [i]): -alpha[j]}))
    return GeneratorSet(labels, polys)


def plucker(B) -> dict:
    """p_ij = b_1i b_2j - b_1j b_2i for i < j (0-based keys)."""
    n = len(B[0])
    return {(i, j): B[0][i] * B[1][j] - B[0][j] * B[1][i]
            for i, j in itertools.combinations(range(n), 2)}


def _pl(p, i, j):
    return p[(i, j)] if i < j else -p[(j, i)]


def partition_sign(sigma: Sequence[int], a: Sequence[int]) -> int:
    """Sign of the term x_a y_b in Q_sigma.

    (-1)^(sum of 1-based positions of a inside sigma - (k+1)(k+2)/2); this
    reproduces L_ijk and the leading signs of Q_12345, and agrees with the
    determinant definition up to a factor depending only on k.
    """
    pos = {s: idx + 1 for idx, s in enumerate(sigma)}
    k1 = len(a)
    e = sum(pos[i] for i in a) - k1 * (k1 + 1) // 2
    return -1 if e % 2 else 1


def q_sigma(B, sigma: Sequence[int], p=None) -> XYPolynomial:
    """Invariant Q_sigma by the signed partition expansion (sigma odd, 0-based)."""
    n = len(B[0])
    p = p or plucker(B)
    sigma = sorted(sigma)
    if len(sigma) % 2 != 1:
        raise ValueError("sigma must have odd cardinality")
    k = len(sigma) // 2
    terms = {}
    for a in itertools.combinations(sigma, k + 1):
        b = [s for s in sigma if s not in a]
        c = partition_sign(sigma, a)
        for i, j in itertools.combinations(a, 2):
            c = c * p[(i, j)]
        for i, j in itertools.combinations(b, 2):
            c = c * p[(i, j)]
        terms[_mono(n, a, b)] = c
    return XYPolynomial(n, terms)


def q_sigma_determinant(B, sigma: Sequence[int]) -> XYPolynomial:
    """Q_sigma as the determinant of alternating x-rows and y-rows.

    Expanded by the generalized Laplace rule along the k+1 x-rows: each
    choice of columns a contributes the product of the two minors times
    x_a y_b.
    """
    n = len(B[0])
    sigma = sorted(sigma)
    k = len(sigma) // 2
    size = 2 * k + 1
    x_rows = [[B[0][s] ** (k - m) * B[1][s] ** m for s in sigma] for m in range(k + 1)]
    y_rows = [[B[0][s] ** (k - 1 - m) * B[1][s] ** m for s in sigma] for m in range(k)]
    x_row_pos = [2 * m for m in range(k + 1)]  # 0-based rows of the full matrix
    terms = {}
    for cols in itertools.combinations(range(size), k + 1):
        rest = [c for c in range(size) if c not in cols]
        mx = exact.determinant([[row[c] for c in cols] for row in x_rows])
        my = exact.determinant([[row[c] for c in rest] for row in y_rows]) if k else 1
        sign = -1 if (sum(x_row_pos) + sum(cols)) % 2 else 1
        c = sign * mx * my
        if c:
            terms[_mono(n, [sigma[c] for c in cols], [sigma[c] for c in rest])] = c
    return XYPolynomial(n, terms)


def determinant_sign(k: int) -> int:
    """Factor relating the determinant to the partition expansion."""
    return -1 if ((k + 1) ** 2 + (k + 1) * (k + 2) // 2) % 2 else 1


def _check_plucker(B):
    B = [[exact.as_scalar(x) for x in row] for row in B]
    if len(B) != 2:
        raise DimensionMismatch("expected a 2 x n matrix")
    p = plucker(B)
    for key, v in p.items():
        if not v:
            raise DegeneratePlucker(f"Plucker coordinate p_{key[0] + 1}{key[1] + 1} vanishes")
    return B, p


def grassmann5_generators(B) -> GeneratorSet:
    """The 16 generators x_i, L_ijk, Q_12345 for G = rowspan(B), B of size 2 x 5."""
    B, p = _check_plucker(B)
    n = len(B[0])
    if n != 5:
        raise DimensionMismatch("grassmann5_generators expects 5 columns")
    labels, polys = [], []
    for i in range(n):
        labels.append(f"x_{i + 1}")
        polys.append(XYPolynomial(n, {_mono(n, [i]): 1}))
    for i, j, k in itertools.combinations(range(n), 3):
        labels.append(_label("L", (i, j, k)))
        polys.append(XYPolynomial(n, {
            _mono(n, [i, j], [k]): p[(i, j)],
            _mono(n, [i, k], [j]): -p[(i, k)],
            _mono(n, [j, k], [i]): p[(j, k)],
        }))
    labels.append("Q_12345")
    polys.append(q_sigma(B, range(5), p))
    gs = GeneratorSet(labels, polys)
    for f in gs.polys:
        if not nagata_invariance(f, B):
            raise ArithmeticError("constructed generator is not invariant")
    return gs


def castravet_tevelev_generators(B, verify: bool = True) -> GeneratorSet:
    """All 2^(n-1) invariants Q_sigma, sigma an odd subset, G = rowspan(B)."""
    B, p = _check_plucker(B)
    n = len(B[0])
    labels, polys = [], []
    for size in range(1, n + 1, 2):
        for sigma in itertools.combinations(range(n), size):
            labels.append(_label("Q", sigma))
            polys.append(q_sigma(B, sigma, p))
    gs = GeneratorSet(labels, polys)
    if verify:
        for f in gs.polys:
            if not nagata_invariance(f, B):
                raise ArithmeticError("constructed generator is not invariant")
    return gs


# ---------------------------------------------------------------------------
# generators from the solution space


def _expand_linear_power(cols_by_var, v, n):
    """prod_i (sum_j a_ij w_j)^(v_i) as a dict over exponent tuples of w."""
    poly = {(0,) * n: 1}
    for i, e in enumerate(v):
        form = cols_by_var[i]
        for _ in range(e):
            nxt = {}
            for mono, c in poly.items():
                for j, a in form:
                    m = mono[:j] + (mono[j] + 1,) + mono[j + 1:]
                    nxt[m] = nxt.get(m, 0) + c * a
            poly = {m: c for m, c in nxt.items() if c}
    return poly


def solution_to_invariant(cfg: LinearFormConfig, h: dict, u: Sequence[int]) -> XYPolynomial:
    """Apply z_i -> sum_j a_ij y_j / x_j and multiply by x^u."""
    n = cfg.n
    forms = [[(j, cfg.A[i][j]) for j in range(n) if cfg.A[i][j]] for i in range(cfg.d)]
    total = {}
    for v, c in h.items():
        for beta, a in _expand_linear_power(forms, v, n).items():
            total[beta] = total.get(beta, 0) + c * a
    terms = {}
    for beta, c in total.items():
        if not c:
            continue
        if any(bj > uj for bj, uj in zip(beta, u)):
            raise ArithmeticError("solution does not clear to a polynomial")
        terms[XYMonomial(tuple(uj - bj for bj, uj in zip(beta, u)) + tuple(beta))] = c
    return XYPolynomial(n, terms)


def generator_from_degree(cfg: LinearFormConfig, deg) -> XYPolynomial:
    """The unique (up to scale) invariant in a degree with psi = 1.

    Scaled so the lexicographically smallest monomial has coefficient 1.
    """
    deg = as_degree(deg)
    basis = solution_basis(cfg, deg)
    if len(basis) != 1:
        raise NotUnique(f"psi{deg} = {len(basis)}, expected 1")
    f = solution_to_invariant(cfg, basis[0], deg.u)
    lead = f.terms[min(f.terms)]
    return f.scaled_by(lead).normalized()


def invariants_in_degree(cfg: LinearFormConfig, deg) -> list:
    """Images of a solution basis; spans the graded piece of the invariant ring."""
    deg = as_degree(deg)
    return [solution_to_invariant(cfg, h, deg.u) for h in solution_basis(cfg, deg)]
