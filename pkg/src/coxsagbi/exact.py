"""Exact scalars and dense linear algebra over Q and Q(t).

Rationals are :class:`fractions.Fraction`.  Polynomials in ``t`` are
:class:`TPoly` (sparse, rational coefficients) and rational functions are
:class:`TScalar`.  Matrices are plain lists of rows whose entries may be
``int``, ``Fraction`` or ``TScalar``; :func:`rank` and :func:`kernel_basis`
dispatch on the entry types.

Elimination is fraction-free (Bareiss) on integer rows, or on rows of
integer polynomials for Q(t), after clearing denominators row by row.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ParseError, ZeroScalar

Rational = Fraction


# ---------------------------------------------------------------------------
# polynomials in t


class TPoly:
    """Polynomial in ``t`` with rational coefficients, stored sparsely."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for e, v in items:
                if e < 0:
                    raise ValueError("negative exponent in TPoly")
                if v:
                    c[e] = c.get(e, 0) + v
                    if not c[e]:
                        del c[e]
        self._c = c

    @classmethod
    def _raw(cls, c):
        p = cls.__new__(cls)
        p._c = c
        return p

    @classmethod
    def const(cls, v):
        return cls._raw({0: v} if v else {})

    @classmethod
    def monomial(cls, e, v=1):
        return cls._raw({e: v} if v else {})

    @property
    def coeffs(self):
        return dict(self._c)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def degree(self):
        return max(self._c) if self._c else -1

    def low(self):
        """Smallest exponent with a nonzero coefficient."""
        if not self._c:
            raise ZeroScalar("zero polynomial has no lowest term")
        return min(self._c)

    def coeff(self, e):
        return self._c.get(e, 0)

    def lead(self):
        return self._c[self.degree()]

    def is_constant(self):
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def __add__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        return TPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return TPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return other
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return TPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = TPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return False
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __call__(self, x):
        return sum((v * x**e for e, v in self._c.items()), 0)

    def divmod(self, other):
        """Euclidean division over Q."""
        if not other:
            raise ZeroScalar("division by the zero polynomial")
        rem = dict(self._c)
        q = {}
        db = other.degree()
        lb = Fraction(other.lead())
        oc = other._c
        while rem:
            dr = max(rem)
            if dr < db:
                break
            f = rem[dr] / lb
            s = dr - db
            q[s] = f
            for e, v in oc.items():
                w = rem.get(e + s, 0) - f * v
                if w:
                    rem[e + s] = w
                else:
                    rem.pop(e + s, None)
        return TPoly._raw(q), TPoly._raw(rem)

    def content(self):
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._c:
            return Fraction(0)
        num = 0
        den = 1
        for v in self._c.values():
            v = Fraction(v)
            num = math.gcd(num, v.numerator)
            den = den * v.denominator // math.gcd(den, v.denominator)
        return Fraction(num, den)

    def primitive(self):
        c = self.content()
        return TPoly._raw({e: _simplify(Fraction(v) / c) for e, v in self._c.items()})

    def monic(self):
        lc = Fraction(self.lead())
        return TPoly._raw({e: _simplify(v / lc) for e, v in self._c.items()})

    def shifted(self, k):
        """Multiply by t^k (k may be negative if no exponent drops below 0)."""
        return TPoly._raw({e + k: v for e, v in self._c.items()})

    def int_list(self):
        """Dense coefficient list; requires integer coefficients."""
        if not self._c:
            return []
        out = [0] * (self.degree() + 1)
        for e, v in self._c.items():
            v = Fraction(v)
            if v.denominator != 1:
                raise ValueError("non-integer coefficient")
            out[e] = v.numerator
        return out

    def __repr__(self):
        return f"TPoly({format_tpoly(self)!r})"

    def __str__(self):
        return format_tpoly(self)


def _simplify(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _as_tpoly(x):
    if isinstance(x, TPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return TPoly.const(x)
    return NotImplemented


def tpoly_gcd(a: TPoly, b: TPoly) -> TPoly:
    """Monic gcd over Q (zero if both inputs are zero).

    Runs a primitive remainder sequence over Z to avoid the coefficient
    growth of Euclid over Q.
    """
    if not a or not b:
        g = a or b
        return g.monic() if g else g
    # strip the common power of t first; it is cheap and common here
    s = min(a.low(), b.low())
    x = _zprimitive(_ptrim(a.primitive().shifted(-a.low()).int_list()))
    y = _zprimitive(_ptrim(b.primitive().shifted(-b.low()).int_list()))
    if len(x) < len(y):
        x, y = y, x
    while len(y) > 1:
        r = _zprimitive(_pprem(x, y))
        x, y = y, r
        if not y:
            break
    g = [1] if y else x
    out = TPoly(g).shifted(s)
    return out.monic()


def _zprimitive(a):
    g = 0
    for v in a:
        g = math.gcd(g, v)
    if g > 1:
        return [v // g for v in a]
    return a


def _pprem(a, b):
    """Pseudo-remainder of integer polynomial lists."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        k = len(a) - 1 - db
        a = [lb * v for v in a]
        for j, y in enumerate(b):
            a[k + j] -= c * y
        _ptrim(a)
    return a


T_VAR = TPoly.monomial(1)


# ---------------------------------------------------------------------------
# rational functions in t


class TScalar:
    """Element of Q(t) stored as ``num/den``; reduction is lazy.

    Equality cross-multiplies, so unreduced values compare correctly.
    Hashing and printing go through :meth:`normalized`.
    """

    __slots__ = ("num", "den", "_norm")

    def __init__(self, num=0, den=1):
        num = num if isinstance(num, TPoly) else TPoly.const(num)
        den = den if isinstance(den, TPoly) else TPoly.const(den)
        if not den:
            raise ZeroScalar("zero denominator")
        self.num = num
        self.den = den
        self._norm = None

    @classmethod
    def t(cls, e=1):
        if e >= 0:
            return cls(TPoly.monomial(e))
        return cls(TPoly.const(1), TPoly.monomial(-e))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, TScalar):
            return x
        if isinstance(x, (int, Fraction, TPoly)):
            return cls(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to TScalar")

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def order(self):
        if not self.num:
            raise ZeroScalar("order of zero is undefined")
        return self.num.low() - self.den.low()

    def initial_coefficient(self):
        if not self.num:
            raise ZeroScalar("initial coefficient of zero is undefined")
        v = Fraction(self.num.coeff(self.num.low())) / Fraction(self.den.coeff(self.den.low()))
        return _simplify(v)

    def normalized(self) -> "TScalar":
        """Reduced form: coprime integer polynomials, den with positive lead."""
        if self._norm is not None:
            return self._norm
        num, den = self.num, self.den
        if not num:
            res = TScalar._make(TPoly(), TPoly.const(1))
        else:
            if not den.is_constant():
                g = tpoly_gcd(num, den)
                if g.degree() > 0:
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
            cn, cd = num.content(), den.content()
            num = num.primitive()
            den = den.primitive()
            scale = cn / cd
            if den.lead() < 0:
                den = -den
                scale = -scale
            # fold the rational scale into num/den keeping integer coefficients
            num = num * scale.numerator
            den = den * scale.denominator
            res = TScalar._make(num, den)
        res._norm = res
        self._norm = res
        return res

    @classmethod
    def _make(cls, num, den):
        s = cls.__new__(cls)
        s.num = num
        s.den = den
        s._norm = None
        return s

    def is_polynomial(self):
        n = self.normalized()
        return n.den.is_constant()

    def as_rational(self):
        """Return the value as a Fraction/int if it does not involve t."""
        n = self.normalized()
        if n.num.degree() > 0 or not n.den.is_constant():
            raise ValueError("scalar depends on t")
        return _simplify(Fraction(n.num.coeff(0)) / Fraction(n.den.coeff(0)))

    def __add__(self, other):
        other = _as_tscalar(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return TScalar._make(self.num + other.num, self.den)
        return TScalar._make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return TScalar._make(-self.num, self.den)

    def __sub__(self, other):
        other = _as_tscalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_tscalar(other)
        if other is NotImplemented:
            return other
        return TScalar._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroScalar("inverse of zero")
        return TScalar._make(self.den, self.num)

    def __truediv__(self, other):
        other = _as_tscalar(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_tscalar(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return TScalar._make(self.num**k, self.den**k)

    def __eq__(self, other):
        other = _as_tscalar(other)
        if other is NotImplemented:
            return False
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        n = self.normalized()
        if n.den.is_constant() and n.num.is_constant():
            # agree with hash(int/Fraction) for constants
            return hash(Fraction(n.num.coeff(0)) / Fraction(n.den.coeff(0)))
        return hash((n.num, n.den))

    def evaluate(self, x):
        """Evaluate at a rational point ``t = x``."""
        d = self.den(x)
        if d == 0:
            raise ZeroScalar("pole at evaluation point")
        return _simplify(Fraction(self.num(x)) / Fraction(d))

    def __repr__(self):
        return f"TScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _as_tscalar(x):
    if isinstance(x, TScalar):
        return x
    if isinstance(x, (int, Fraction, TPoly)):
        return TScalar(x)
    return NotImplemented


def order(c) -> int:
    """Valuation at t = 0."""
    if isinstance(c, TScalar):
        return c.order()
    if not c:
        raise ZeroScalar("order of zero is undefined")
    return 0


def initial_coefficient(c):
    if isinstance(c, TScalar):
        return c.initial_coefficient()
    if not c:
        raise ZeroScalar("initial coefficient of zero is undefined")
    return c


# ---------------------------------------------------------------------------
# literal grammar

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(\^)|([-+*/()]))")


def parse_scalar(text) -> TScalar:
    """Parse a scalar literal such as ``t^2-t^4``, ``3/2`` or ``(t-t^5)/(t^2)``.

    Accepts ``+ - * /``, integer exponents after ``^`` (negative allowed on
    ``t``), parentheses and implicit multiplication (``3t^2``).
    """
    if isinstance(text, (int, Fraction)):
        return TScalar(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a string literal, got {type(text).__name__}")
    tokens = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {s[pos]!r} in {text!r}")
        pos = m.end()
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("t", None))
        elif m.group(3):
            tokens.append(("^", None))
        else:
            tokens.append((m.group(4), None))
        # trailing whitespace
        while pos < len(s) and s[pos].isspace():
            pos += 1
    if not tokens:
        raise ParseError("empty scalar literal")
    parser = _Parser(tokens, text)
    val = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return val


class _Parser:
    def __init__(self, tokens, text):
        self.toks = tokens
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of {self.text!r}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            k = self.peek()
            if k == "*":
                self.take()
                val = val * self.unary()
            elif k == "/":
                self.take()
                rhs = self.unary()
                if not rhs:
                    raise ParseError(f"division by zero in {self.text!r}")
                val = val / rhs
            elif k in ("t", "(", "int"):
                val = val * self.power()
            else:
                return val

    def unary(self):
        k = self.peek()
        if k == "-":
            self.take()
            return -self.unary()
        if k == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            elif self.peek() == "+":
                self.take()
            e = sign * self.take("int")[1]
            if e < 0 and not base:
                raise ParseError(f"negative power of zero in {self.text!r}")
            base = base**e
        return base

    def atom(self):
        k = self.peek()
        if k == "int":
            return TScalar(self.take()[1])
        if k == "t":
            self.take()
            return TScalar(T_VAR)
        if k == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected token {k!r} in {self.text!r}")


def format_tpoly(p: TPoly) -> str:
    """Print in ascending powers of t, e.g. ``t^2-t^4``."""
    if not p:
        return "0"
    parts = []
    for e in sorted(p._c):
        v = p._c[e]
        neg = v < 0
        a = -v if neg else v
        if e == 0:
            body = str(a)
        else:
            mono = "t" if e == 1 else f"t^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def format_scalar(c) -> str:
    """Canonical literal; ``parse_scalar(format_scalar(c)) == c``."""
    if isinstance(c, (int, Fraction)):
        c = TScalar(c)
    n = c.normalized()
    num = format_tpoly(n.num)
    if n.den == TPoly.const(1):
        return num
    if len(n.num.coeffs) > 1:
        num = f"({num})"
    if n.den.is_constant():
        return f"{num}/{n.den.coeff(0)}"
    return f"{num}/({format_tpoly(n.den)})"


def as_scalar(x):
    """Coerce literals to exact scalars: strings to TScalar (or Fraction when
    t-free), ints and Fractions unchanged."""
    if isinstance(x, str):
        v = parse_scalar(x)
        try:
            return v.as_rational()
        except ValueError:
            return v
    if isinstance(x, (int, Fraction, TScalar)):
        return x
    raise TypeError(f"unsupported scalar {x!r}")


# ---------------------------------------------------------------------------
# integer polynomial kernels (dense lists, lowest degree first)


def _ptrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _pmul(a, b):
    if not a or not b:
        return []
    if len(a) == 1:
        c = a[0]
        return [c * x for x in b]
    if len(b) == 1:
        c = b[0]
        return [c * x for x in a]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub(a, b):
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    else:
        a = list(a)
    for i, y in enumerate(b):
        a[i] -= y
    return _ptrim(a)


def _pdiv_exact(a, b):
    """Exact quotient a/b in Z[t]."""
    if len(b) == 1:
        c = b[0]
        if c == 1:
            return list(a)
        return [x // c for x in a]
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db) if len(a) > db else []
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if c:
            f = c // lb
            q[k] = f
            for j, y in enumerate(b):
                a[k + j] -= f * y
    return _ptrim(q)


def _pweight(a):
    return (len(a), max(abs(x) for x in a).bit_length())


# ---------------------------------------------------------------------------
# matrices


def _is_t_matrix(rows) -> bool:
    return any(isinstance(x, TScalar) for row in rows for x in row)


def _int_rows(rows):
    """Scale rational rows to integer rows (same row space)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in row])
        else:
            out.append([int(x * den) for x in row])
    return out


def _poly_rows(rows):
    """Scale rows over Q(t) to rows of integer polynomial lists."""
    out = []
    for row in rows:
        entries = [TScalar.coerce(x) for x in row]
        den = TPoly.const(1)
        for e in entries:
            if e.num and not e.den.is_constant():
                g = tpoly_gcd(den, e.den)
                den = den * e.den.divmod(g)[0] if g.degree() > 0 else den * e.den
        polys = []
        for e in entries:
            if not e.num:
                polys.append(TPoly())
                continue
            q, r = (e.num * den).divmod(e.den)
            if r:
                raise ArithmeticError("denominator clearing failed")
            polys.append(q)
        # clear rational coefficients
        lcm = 1
        for p in polys:
            for v in p._c.values():
                if isinstance(v, Fraction) and v.denominator != 1:
                    lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        out.append([(p * lcm).int_list() if lcm != 1 else p.int_list() for p in polys])
    return out


def _bareiss_int(rows, ncols, jordan):
    """Fraction-free elimination on integer rows (modified in place).

    Returns (rows, pivot_columns, D).  With ``jordan`` the result is a
    reduced echelon form whose pivot entries all equal D.
    """
    m = len(rows)
    prev = 1
    rank = 0
    pivots = []
    for c in range(ncols):
        if rank == m:
            break
        best = -1
        bw = None
        for i in range(rank, m):
            x = rows[i][c]
            if x:
                w = abs(x).bit_length()
                if bw is None or w < bw:
                    best, bw = i, w
                    if w == 1:
                        break
        if best < 0:
            continue
        if best != rank:
            rows[best], rows[rank] = rows[rank], rows[best]
        prow = rows[rank]
        p = prow[c]
        targets = range(m) if jordan else range(rank + 1, m)
        for i in targets:
            if i == rank:
                continue
            row = rows[i]
            # rows above the pivot need their earlier free columns rescaled too;
            # the pivot row is zero on every column left of c
            s = c if i > rank else 0
            tail = prow[s:]
            a = row[c]
            if a:
                if prev == 1:
                    row[s:] = [p * x - a * y for x, y in zip(row[s:], tail)]
                else:
                    row[s:] = [(p * x - a * y) // prev for x, y in zip(row[s:], tail)]
            elif p != prev:
                if prev == 1:
                    row[s:] = [p * x for x in row[s:]]
                else:
                    row[s:] = [p * x // prev for x in row[s:]]
        pivots.append(c)
        prev = p
        rank += 1
    return rows, pivots, prev


def _bareiss_poly(rows, ncols, jordan):
    """Fraction-free elimination on rows of integer polynomial lists."""
    m = len(rows)
    prev = [1]
    rank = 0
    pivots = []
    for c in range(ncols):
        if rank == m:
            break
        best = -1
        bw = None
        for i in range(rank, m):
            x = rows[i][c]
            if x:
                w = _pweight(x)
                if bw is None or w < bw:
                    best, bw = i, w
        if best < 0:
            continue
        if best != rank:
            rows[best], rows[rank] = rows[rank], rows[best]
        prow = rows[rank]
        p = prow[c]
        targets = range(m) if jordan else range(rank + 1, m)
        for i in targets:
            if i == rank:
                continue
            row = rows[i]
            a = row[c]
            for j in range(c if i > rank else 0, ncols):
                if a and prow[j]:
                    v = _psub(_pmul(p, row[j]), _pmul(a, prow[j]))
                else:
                    v = _pmul(p, row[j]) if row[j] else []
                row[j] = _pdiv_exact(v, prev) if v else []
        pivots.append(c)
        prev = p
        rank += 1
    return rows, pivots, prev


def _shape(rows, ncols):
    if ncols is None:
        if not rows:
            raise DimensionMismatch("cannot infer column count of an empty matrix")
        ncols = len(rows[0])
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix")
    return ncols


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Exact rank over Q or Q(t)."""
    if not rows:
        return 0
    ncols = _shape(rows, ncols)
    if _is_t_matrix(rows):
        r = _poly_rows(rows)
        r = [row for row in r if any(row)]
        return len(_bareiss_poly(r, ncols, False)[1])
    r = _int_rows(rows)
    r = [row for row in r if any(row)]
    return len(_bareiss_int(r, ncols, False)[1])


def int_rank(rows, ncols):
    """Rank of a list of integer rows; rows are consumed."""
    rows = [row for row in rows if any(row)]
    return len(_bareiss_int(rows, ncols, False)[1])


def poly_rank(rows, ncols):
    """Rank of rows of integer polynomial lists; rows are consumed."""
    rows = [row for row in rows if any(row)]
    return len(_bareiss_poly(rows, ncols, False)[1])


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None, check: bool = True) -> list[list]:
    """Exact basis of the right kernel {v : M v = 0}.

    Over Q the vectors have integer entries; over Q(t) the entries are
    polynomial TScalars.  With ``check`` every vector is multiplied back and
    rank + nullity = ncols is asserted.
    """
    if ncols is None:
        ncols = _shape(rows, None) if rows else 0
    else:
        _shape(rows, ncols)
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    is_t = _is_t_matrix(rows)
    if is_t:
        red, piv, D = _bareiss_poly([r for r in _poly_rows(rows) if any(r)], ncols, True)
    else:
        red, piv, D = _bareiss_int([r for r in _int_rows(rows) if any(r)], ncols, True)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        if is_t:
            v = [TScalar() for _ in range(ncols)]
            v[f] = TScalar(TPoly(D))
            for i, pc in enumerate(piv):
                e = red[i][f]
                if e:
                    v[pc] = TScalar(TPoly([-x for x in e]))
        else:
            v = [0] * ncols
            v[f] = D
            for i, pc in enumerate(piv):
                v[pc] = -red[i][f]
            g = 0
            for x in v:
                g = math.gcd(g, x)
            if g > 1:
                v = [x // g for x in v]
        basis.append(v)
    if check:
        if len(piv) + len(basis) != ncols:
            raise ArithmeticError("rank-nullity violated")
        for v in basis:
            for row in rows:
                if sum((a * b for a, b in zip(row, v) if a and b), 0) != 0:
                    raise ArithmeticError("kernel vector check failed")
    return basis


def mat_vec(rows, v):
    return [sum((a * b for a, b in zip(row, v) if a and b), 0) for row in rows]


def transpose(rows):
    return [list(c) for c in zip(*rows)]


def solve_square(rows, rhs_cols):
    """Solve M X = B exactly for square invertible M over Q or Q(t).

    ``rhs_cols`` is a list of columns.  Returns the list of solution columns.
    """
    n = len(rows)
    aug = [list(rows[i]) + [col[i] for col in rhs_cols] for i in range(n)]
    # Gauss-Jordan with exact field arithmetic; sizes here are tiny (d x d)
    is_t = _is_t_matrix(aug)
    if is_t:
        aug = [[TScalar.coerce(x) for x in row] for row in aug]
    else:
        aug = [[Fraction(x) for x in row] for row in aug]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c]), None)
        if p is None:
            raise ZeroScalar("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = []
    for k in range(len(rhs_cols)):
        col = [aug[i][n + k] for i in range(n)]
        out.append([x.normalized() if is_t else _simplify(x) for x in col])
    return out


def determinant(rows):
    """Exact determinant of a square matrix over Q or Q(t)."""
    n = len(rows)
    if n == 0:
        return 1
    is_t = _is_t_matrix(rows)
    a = [[TScalar.coerce(x) if is_t else Fraction(x) for x in row] for row in rows]
    det = TScalar(1) if is_t else Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return TScalar(0) if is_t else 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = det * a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det.normalized() if is_t else _simplify(det)


def scalars(values: Iterable) -> list:
    return [as_scalar(v) for v in values]
