"""Closed-form and lattice-count evaluators for psi on special configurations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import exact
from .apolarity import LinearFormConfig, as_degree
from .errors import DimensionMismatch, InfeasibleSums, NoApplicableFormula


def _pos(x):
    return x if x > 0 else 0


def psi_independent(u, r: int, d: int) -> int:
    """Coefficient of q^r in prod (1 - q^(u_i+1)) / (1 - q)^d."""
    if len(u) != d:
        raise DimensionMismatch("independent forms need n = d")
    if r < 0:
        return 0
    num = [1] + [0] * r
    for ui in u:
        step = ui + 1
        if step <= r:
            for k in range(r, step - 1, -1):
                num[k] -= num[k - step]
    return sum(num[k] * math.comb(r - k + d - 1, d - 1) for k in range(r + 1))


def psi_binary(u, r: int) -> int:
    """(r + 1 - sum (r - u_i)_+)_+ for pairwise independent binary forms."""
    return _pos(r + 1 - sum(_pos(r - ui) for ui in u))


def psi_five_points(r: int, u) -> int:
    u1, u2, u3, u4, u5 = u
    xlo, xhi = max(0, 2 * r - u1 - u2 - u3), min(u4, u5)
    ylo, yhi = max(0, 2 * r - u3 - u4 - u5), min(u1, u2)
    count = 0
    for x in range(xlo, xhi + 1):
        # the difference constraint is r - u1 - u2 <= x - y <= u4 + u5 - r
        lo = max(ylo, r - u3 - x, x - (u4 + u5 - r))
        hi = min(yhi, r - x, x - (r - u1 - u2))
        count += _pos(hi - lo + 1)
    return count


def psi_cayley(r: int, u) -> int:
    """Lattice count for the six intersection points of four lines."""
    u1, u2, u3, u4, u5, u6 = u
    count = 0
    for x in range(0, min(u3, u5, u6) + 1):
        lo = max(0, x - (u3 + u5 - r), r - u1 - x)
        hi = min(u2, u4, x - (r - u2 - u4), min(u3 + u6, u5 + u6) - 2 * x,
                 u3 + u5 + 2 * u6 - r - 3 * x, min(r, u3 + u4 + u6 - r, u2 + u5 + u6 - r) - x)
        count += _pos(hi - lo + 1)
    return count


def psi_six_points(r: int, u) -> int:
    """Lattice count from the 21-inequality system for six generic points."""
    u1, u2, u3, u4, u5, u6 = u
    xlo = max(0, 2 * r - u2 - u3 - u4, 2 * r - u2 - u3 - u6)
    xhi = min(u1, u5, u1 + u4 + u5 + u6 - 2 * r)
    ylo = max(0, 2 * r - u1 - u4 - u6, 2 * r - u4 - u5 - u6)
    yhi = min(u2, u3, u1 + u2 + u3 + u5 - 2 * r)
    slo = max(r - u4, r - u6, 3 * r - u2 - u3 - u4 - u6)
    shi = min(r, u1 + u3 + u5 - r, u1 + u2 + u5 - r)
    count = 0
    for x in range(xlo, xhi + 1):
        lo = max(ylo, slo - x, -(-(2 * r - u4 - u6 - x) // 2))
        hi = min(yhi, shi - x, x - (r - u2 - u3), u1 + u5 - 2 * x)
        count += _pos(hi - lo + 1)
    return count


def gt_count(deg) -> int:
    """Two-row Gelfand-Tsetlin patterns with lambda_21 = r and column sums
    lambda_1j + lambda_2j = u_j + ... + u_n."""
    deg = as_degree(deg)
    u, r = deg.u, deg.r
    n = len(u)
    s = [sum(u[j:]) for j in range(n)]
    if any(s[j] < s[j + 1] for j in range(n - 1)):
        raise InfeasibleSums("suffix sums of u must be weakly decreasing")
    top = s[0] - r
    if r < 0 or top < 0 or top < r:
        return 0
    if n == 1:
        return 1 if r == 0 else 0

    @lru_cache(maxsize=None)
    def go(j, lam2, lam1):
        # lam1, lam2 are the entries in column j-1 (0-based j)
        if j == n:
            return 1
        hi = lam2 if j < n - 1 else 0
        total = 0
        for b in range(0, hi + 1):
            a = s[j] - b
            if a < 0 or a > lam1 or a < lam2 or a < b:
                continue
            total += go(j + 1, b, a)
        return total

    return go(1, r, top)


# ---------------------------------------------------------------------------
# registry


def _conic_condition(cfg: LinearFormConfig) -> bool:
    """True when six planar points do not lie on a common conic."""
    rows = []
    for j in range(6):
        a, b, c = cfg.column(j)
        rows.append([a * a, b * b, c * c, a * b, a * c, b * c])
    return exact.determinant(rows) != 0


def is_generic(cfg: LinearFormConfig) -> bool:
    """Sufficient test for the closed formulas below to apply."""
    from .apolarity import maximal_minors_nonzero

    if not maximal_minors_nonzero(cfg.A):
        return False
    if cfg.d == 2:
        return True
    if (cfg.d, cfg.n) == (3, 6):
        return _conic_condition(cfg)
    return cfg.n <= cfg.d + 2 or (cfg.d, cfg.n) == (3, 5)


def _is_cayley(cfg: LinearFormConfig) -> bool:
    from .presets import CAYLEY_A

    if (cfg.d, cfg.n) != (3, 6):
        return False
    ref = [[exact.as_scalar(x) for x in row] for row in CAYLEY_A]
    # equal up to a change of coordinates and column scaling: compare the
    # vanishing pattern of all 3x3 minors
    import itertools

    def pattern(M):
        return tuple(exact.determinant([[M[i][j] for j in c] for i in range(3)]) == 0
                     for c in itertools.combinations(range(6), 3))

    return pattern([list(r) for r in cfg.A]) == pattern(ref)


@dataclass(frozen=True)
class PiecewiseFormula:
    identifier: str
    applies: Callable[[LinearFormConfig], bool]
    evaluate: Callable[[LinearFormConfig, object], int]


def _tree_formula(cfg, deg):
    from .phylo import caterpillar, decoration_count

    return decoration_count(caterpillar(cfg.n), deg)


REGISTRY = [
    PiecewiseFormula("independent", lambda c: c.n == c.d,
                     lambda c, g: psi_independent(g.u, g.r, c.d)),
    PiecewiseFormula("binary", lambda c: c.d == 2 and is_generic(c),
                     lambda c, g: psi_binary(g.u, g.r)),
    PiecewiseFormula("gelfand-tsetlin", lambda c: c.n == c.d + 1 and is_generic(c),
                     lambda c, g: gt_count(g)),
    PiecewiseFormula("five-points", lambda c: (c.d, c.n) == (3, 5) and is_generic(c),
                     lambda c, g: psi_five_points(g.r, g.u)),
    PiecewiseFormula("six-points", lambda c: (c.d, c.n) == (3, 6) and is_generic(c),
                     lambda c, g: psi_six_points(g.r, g.u)),
    PiecewiseFormula("cayley", _is_cayley, lambda c, g: psi_cayley(g.r, g.u)),
    PiecewiseFormula("tree-decorations", lambda c: c.n == c.d + 2 and c.d >= 2 and is_generic(c),
                     _tree_formula),
]


def applicable(cfg: LinearFormConfig) -> list:
    return [f for f in REGISTRY if f.applies(cfg)]


def psi_formula(cfg: LinearFormConfig, deg, which: str | None = None) -> int:
    """Evaluate psi by the first applicable closed formula (or the named one)."""
    deg = as_degree(deg)
    if len(deg.u) != cfg.n:
        raise DimensionMismatch(f"degree has {len(deg.u)} entries in u, config has n = {cfg.n}")
    cands = applicable(cfg)
    if which is not None:
        cands = [f for f in cands if f.identifier == which]
    if not cands:
        raise NoApplicableFormula(f"no closed formula covers d={cfg.d}, n={cfg.n} for this configuration")
    return cands[0].evaluate(cfg, deg)


def six_points_inequalities() -> list:
    """The 21 rows h of the six-point system, h . (r, u1..u6, x, y) >= 0."""

    def row(r=0, u=(0,) * 6, x=0, y=0):
        return (r,) + tuple(u) + (x, y)

    def U(*pairs):
        u = [0] * 6
        for i, c in pairs:
            u[i - 1] += c
        return tuple(u)

    return [
        row(x=1),
        row(r=-2, u=U((2, 1), (3, 1), (4, 1)), x=1),
        row(r=-2, u=U((2, 1), (3, 1), (6, 1)), x=1),
        row(u=U((1, 1)), x=-1),
        row(u=U((5, 1)), x=-1),
        row(r=-2, u=U((1, 1), (4, 1), (5, 1), (6, 1)), x=-1),
        row(y=1),
        row(r=-2, u=U((1, 1), (4, 1), (6, 1)), y=1),
        row(r=-2, u=U((4, 1), (5, 1), (6, 1)), y=1),
        row(u=U((2, 1)), y=-1),
        row(u=U((3, 1)), y=-1),
        row(r=-2, u=U((1, 1), (2, 1), (3, 1), (5, 1)), y=-1),
        row(r=-1, u=U((4, 1)), x=1, y=1),
        row(r=-1, u=U((6, 1)), x=1, y=1),
        row(r=-3, u=U((2, 1), (3, 1), (4, 1), (6, 1)), x=1, y=1),
        row(r=1, x=-1, y=-1),
        row(r=-1, u=U((1, 1), (3, 1), (5, 1)), x=-1, y=-1),
        row(r=-1, u=U((1, 1), (2, 1), (5, 1)), x=-1, y=-1),
        row(r=-2, u=U((4, 1), (6, 1)), x=1, y=2),
        row(r=-1, u=U((2, 1), (3, 1)), x=1, y=-1),
        row(u=U((1, 1), (5, 1)), x=-2, y=-1),
    ]
