"""Trivalent trees, T-decorations and the Verlinde sum for n = d + 2.

Leaves are labelled 1..n.  A split is a pair {A, B} of complementary leaf
sets with at least two leaves on each side.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .apolarity import as_degree
from .cox import NotMoneric, castravet_tevelev_generators
from .errors import (IncompatibleSplits, InfeasibleDegree, NotMonericError, ParityViolation,
                     ParseError, PrecisionFailure, SplitNotInTree)


def _split(A, n):
    A = frozenset(int(a) for a in A)
    full = frozenset(range(1, n + 1))
    if not A <= full:
        raise IncompatibleSplits(f"split side {sorted(A)} leaves the range 1..{n}")
    B = full - A
    if len(A) < 2 or len(B) < 2:
        raise IncompatibleSplits(f"split {sorted(A)}|{sorted(B)} has a side with fewer than 2 leaves")
    return frozenset((A, B))


def _compatible(s, t) -> bool:
    A, B = tuple(s)
    C, D = tuple(t)
    return not (A & C) or not (A & D) or not (B & C) or not (B & D)


def split_sides(split, leaf: int = 1):
    """(side containing ``leaf``, the other side), as sorted tuples."""
    A, B = tuple(split)
    if leaf in B:
        A, B = B, A
    return tuple(sorted(A)), tuple(sorted(B))


@dataclass(frozen=True)
class TrivalentTree:
    n: int
    splits: frozenset

    def __post_init__(self):
        if self.n < 3:
            raise IncompatibleSplits("a trivalent tree needs at least 3 leaves")
        if len(self.splits) != self.n - 3:
            raise IncompatibleSplits(f"need {self.n - 3} splits for a trivalent tree on "
                                     f"{self.n} leaves, got {len(self.splits)}")
        for s, t in itertools.combinations(self.splits, 2):
            if not _compatible(s, t):
                raise IncompatibleSplits(f"splits {self._fmt(s)} and {self._fmt(t)} cross")
        self.adjacency  # builds and checks the tree

    @staticmethod
    def _fmt(s):
        A, B = split_sides(s)
        return "".join(map(str, A)) + "|" + "".join(map(str, B))

    def __str__(self):
        return "{" + ", ".join(sorted(self._fmt(s) for s in self.splits)) + "}"

    @cached_property
    def adjacency(self) -> dict:
        """Undirected adjacency; leaves are 1..n, interior nodes are n+1, n+2, ..."""
        n = self.n
        adj = {i: {n + 1} for i in range(1, n + 1)}
        adj[n + 1] = set(range(1, n + 1))
        nxt = n + 2
        for s in sorted(self.splits, key=lambda s: sorted(min(s, key=len))):
            A, B = tuple(s)
            for v in [v for v in adj if v > n]:
                sides = {w: self._leaves_behind(adj, v, w, n) for w in adj[v]}
                if not all(L <= A or L <= B for L in sides.values()):
                    continue
                to_a = [w for w, L in sides.items() if L <= A]
                if len(to_a) < 2 or len(adj[v]) - len(to_a) < 2:
                    continue
                new = nxt
                nxt += 1
                adj[new] = set()
                for w in to_a:
                    adj[v].discard(w)
                    adj[w].discard(v)
                    adj[w].add(new)
                    adj[new].add(w)
                adj[v].add(new)
                adj[new].add(v)
                break
            else:
                raise IncompatibleSplits(f"cannot place split {self._fmt(s)}")
        if any(len(adj[v]) != 3 for v in adj if v > n):
            raise IncompatibleSplits("resulting tree is not trivalent")
        return adj

    @staticmethod
    def _leaves_behind(adj, v, w, n):
        """Leaves reachable from w without passing through v."""
        seen = {v, w}
        stack = [w]
        out = set()
        while stack:
            x = stack.pop()
            if x <= n:
                out.add(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(out)

    @property
    def interior_nodes(self):
        return sorted(v for v in self.adjacency if v > self.n)

    @property
    def edges(self):
        adj = self.adjacency
        return sorted((a, b) for a in adj for b in adj[a] if a < b)

    def has_split(self, side) -> bool:
        """``side`` is one side of the split, as an iterable of leaves."""
        return _split(side, self.n) in self.splits

    def to_json(self):
        return {"n": self.n, "splits": [list(map(list, split_sides(s))) for s in sorted(
            self.splits, key=lambda s: split_sides(s))]}


def tree_from_splits(n: int, splits) -> TrivalentTree:
    """Tree from an iterable of splits, each given as one side or as (A, B)."""
    out = set()
    full = set(range(1, n + 1))
    for s in splits:
        if len(s) == 2 and not isinstance(next(iter(s)), int):
            A, B = (set(x) for x in s)
            if A | B != full or A & B:
                raise IncompatibleSplits(f"{sorted(A)}|{sorted(B)} is not a partition of 1..{n}")
        else:
            A = set(s)
        out.add(_split(A, n))
    return TrivalentTree(n, frozenset(out))


def caterpillar(n: int) -> TrivalentTree:
    """Splits {A, B} with max(A) < min(B)."""
    return tree_from_splits(n, [range(1, k + 1) for k in range(2, n - 1)])


def snowflake() -> TrivalentTree:
    return tree_from_splits(6, [(1, 2), (3, 4), (5, 6)])


def parse_tree(text: str) -> TrivalentTree:
    """``caterpillar:N`` or JSON ``{"n": 6, "splits": [[[1,2],[3,4,5,6]], ...]}``."""
    text = text.strip()
    if text.startswith("caterpillar:"):
        return caterpillar(int(text.split(":", 1)[1]))
    if text == "snowflake":
        return snowflake()
    try:
        obj = json.loads(text)
        return tree_from_splits(int(obj["n"]), [tuple(map(tuple, s)) if isinstance(s[0], list)
                                                else tuple(s) for s in obj["splits"]])
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"cannot parse tree {text!r}") from exc


# ---------------------------------------------------------------------------
# decorations


def decoration_order(deg) -> int:
    deg = as_degree(deg)
    return sum(deg.u) - 2 * deg.r


def _node_ok(a, b, c, rho):
    s = a + b + c
    if s % 2:
        return False
    h = s // 2
    return h <= rho and h >= a and h >= b and h >= c


def decoration_count(T: TrivalentTree, deg, strict: bool = False) -> int:
    """Number of T-decorations of order rho = |u| - 2r with pendant weights
    u_1, ..., u_(n-1) and rho - u_n, by message passing towards leaf n.

    Infeasible degrees (rho < 0 or rho < u_n) give 0, or raise
    InfeasibleDegree when ``strict``.
    """
    deg = as_degree(deg)
    n = T.n
    if len(deg.u) != n:
        raise InfeasibleDegree(f"degree has {len(deg.u)} entries, tree has {n} leaves")
    rho = decoration_order(deg)
    if rho < 0 or rho < deg.u[-1]:
        if strict:
            raise InfeasibleDegree(f"rho = {rho} with u_n = {deg.u[-1]}")
        return 0
    pendant = {i: deg.u[i - 1] for i in range(1, n)}
    pendant[n] = rho - deg.u[-1]
    if any(w > rho for w in pendant.values()):
        return 0
    adj = T.adjacency

    def message(v, parent):
        # counts indexed by the weight of edge (parent, v)
        if v <= n:
            out = [0] * (rho + 1)
            out[pendant[v]] = 1
            return out
        c1, c2 = [w for w in adj[v] if w != parent]
        m1, m2 = message(c1, v), message(c2, v)
        out = [0] * (rho + 1)
        for a, fa in enumerate(m1):
            if not fa:
                continue
            for b, fb in enumerate(m2):
                if not fb:
                    continue
                for c in range(abs(a - b), min(a + b, rho) + 1, 2):
                    if _node_ok(a, b, c, rho):
                        out[c] += fa * fb
        return out

    (root_nb,) = adj[n]
    return message(root_nb, n)[pendant[n]]


def q_variable_degree(sigma) -> tuple:
    """(r, u) for q_sigma: r = (|sigma| - 1) / 2 and u the indicator of sigma."""
    return (len(sigma) - 1) // 2, frozenset(sigma)


def count_q_monomials(n: int, deg) -> int:
    """Monomials in the 2^(n-1) odd-subset variables q_sigma of degree deg."""
    deg = as_degree(deg)
    odd = [s for k in range(1, n + 1, 2) for s in itertools.combinations(range(n), k)]
    target = (deg.r,) + deg.u

    def vec(s):
        u = [0] * n
        for i in s:
            u[i] = 1
        return ((len(s) - 1) // 2,) + tuple(u)

    vecs = [vec(s) for s in odd]
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def go(start, rem):
        if not any(rem):
            return 1
        total = 0
        for g in range(start, len(vecs)):
            v = vecs[g]
            if all(a >= b for a, b in zip(rem, v)):
                total += go(g, tuple(a - b for a, b in zip(rem, v)))
        return total

    return go(0, target)


# ---------------------------------------------------------------------------
# Verlinde


def _as_level(l) -> Fraction:
    l = Fraction(l)
    if l < 0 or l.denominator > 2:
        raise ParityViolation(f"level {l} must be a non-negative integer or half-integer")
    return l


def verlinde(d: int, l, start_prec: int = 64, max_prec: int = 4096) -> int:
    """(1/(2l+1)) sum_{j=0}^{2l} (-1)^(dj) sin((2j+1) pi / (4l+2))^(-d),
    evaluated in interval arithmetic and rounded with a certified enclosure."""
    import mpmath
    from mpmath import iv

    l = _as_level(l)
    if l.denominator == 2 and d % 2:
        raise ParityViolation("a half-integer level needs d even")
    m = int(2 * l)
    prec = start_prec
    while prec <= max_prec:
        iv.prec = prec
        total = iv.mpf(0)
        for j in range(m + 1):
            term = 1 / iv.sin(iv.mpf(2 * j + 1) * iv.pi / (2 * m + 2)) ** d
            total += -term if (d * j) % 2 else term
        val = total / (m + 1)
        a, b = (mpmath.mpf(e) for e in val._mpi_)
        lo, hi = int(mpmath.ceil(a)), int(mpmath.floor(b))
        # the enclosure must contain exactly one integer and be narrower than 1
        if lo == hi and b - a < 1:
            return lo
        prec *= 2
    raise PrecisionFailure(f"could not isolate an integer for d={d}, l={l}")


# ---------------------------------------------------------------------------
# flattenings and tree realizations


@dataclass(frozen=True)
class SymbolicMatrix:
    """Matrix whose entry (i, j) is the variable q indexed by entries[i][j]."""

    rows: tuple
    cols: tuple
    entries: tuple

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def labels(self):
        return [["q_" + "".join(map(str, e)) for e in row] for row in self.entries]


def _subsets(side, parity):
    out = []
    for k in range(parity, len(side) + 1, 2):
        out.extend(itertools.combinations(side, k))
    return out


def _flattening(A, B):
    rows = _subsets(A, 0)
    cols = _subsets(B, 1)
    entries = tuple(tuple(tuple(sorted(r + c)) for c in cols) for r in rows)
    return SymbolicMatrix(tuple(rows), tuple(cols), entries)


def flattening_matrices(T: TrivalentTree, split):
    """(M_AB, M_BA): rows even subsets of one side, columns odd subsets of the other."""
    if isinstance(split, frozenset) and all(isinstance(x, frozenset) for x in split):
        s = split
    elif len(split) == 2 and not isinstance(next(iter(split)), int):
        s = _split(split[0], T.n)
    else:
        s = _split(split, T.n)
    if s not in T.splits:
        raise SplitNotInTree(f"{TrivalentTree._fmt(s)} is not a split of {T}")
    A, B = split_sides(s)
    return _flattening(A, B), _flattening(B, A)


def root_variable(sigma, n: int) -> tuple:
    """Index of q' for q_sigma under the root convention at leaf n."""
    sigma = tuple(sorted(sigma))
    return tuple(s for s in sigma if s != n) if n in sigma else sigma


def monomial_rank_one(M) -> bool:
    """True iff M_ij = a_i b_j for monomials a_i, b_j (exponent vectors)."""
    for i in range(len(M)):
        for j in range(len(M[0])):
            if any(M[i][j][k] + M[0][0][k] != M[i][0][k] + M[0][j][k] for k in range(len(M[0][0]))):
                return False
    return True


def initial_q_monomials(B) -> dict:
    """sigma (1-based, sorted) -> in(Q_sigma) for the odd-subset generators."""
    gs = castravet_tevelev_generators(B, verify=False)
    out = {}
    for lab, inm in zip(gs.labels, gs.initial_monomials()):
        if isinstance(inm, NotMoneric):
            raise NotMonericError(f"{lab} has tied lowest order {inm.order}")
        out[tuple(int(c) for c in lab.split("_")[1])] = inm
    return out


def split_realized(T: TrivalentTree, split, inm: dict) -> bool:
    for M in flattening_matrices(T, split):
        if not monomial_rank_one([[inm[e] for e in row] for row in M.entries]):
            return False
    return True


def verify_tree_realization(T: TrivalentTree, B) -> bool:
    """Monomial rank-one test of every flattening after q_sigma -> in(Q_sigma)."""
    if len(B[0]) != T.n:
        raise SplitNotInTree(f"matrix has {len(B[0])} columns, tree has {T.n} leaves")
    if T.n > 9:
        raise ValueError("labels of the generators assume at most 9 leaves")
    inm = initial_q_monomials(B)
    return all(split_realized(T, s, inm) for s in T.splits)


def realized_splits(B=None, inm: dict | None = None) -> list:
    """All splits {A, B} of 1..n whose flattenings pass the rank-one test,
    for a matrix B or a given map sigma -> monomial."""
    if inm is None:
        inm = initial_q_monomials(B)
    n = len(next(iter(inm.values()))) // 2
    out = []
    for k in range(2, n // 2 + 1):
        for A in itertools.combinations(range(1, n + 1), k):
            if k * 2 == n and 1 not in A:
                continue
            s = _split(A, n)
            sides = split_sides(s)
            ok = all(monomial_rank_one([[inm[e] for e in row] for row in M.entries])
                     for M in (_flattening(*sides), _flattening(sides[1], sides[0])))
            if ok:
                out.append(sides)
    return out
