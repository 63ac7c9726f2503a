"""Exact scalars in Q(v^(1/2)).

Every value is a reduced fraction N/D of Laurent polynomials in u = v^(1/2)
with rational coefficients. D is an ordinary polynomial in u with nonzero
constant term and leading coefficient 1, so the pair (N, D) is canonical and
can be hashed.
"""

import re
from functools import lru_cache

from fractions import Fraction

from gmpy2 import mpq

__all__ = ["Scalar", "ZERO", "ONE", "u", "v", "qint", "qfact", "qbinom", "scalar_bar"]

_Q0 = mpq(0)
_Q1 = mpq(1)
_RAT = (int, type(_Q0), Fraction)


def _strip(lo, c):
    # drop zero coefficients at both ends
    i, j = 0, len(c)
    while i < j and not c[i]:
        i += 1
    while j > i and not c[j - 1]:
        j -= 1
    if i == j:
        return 0, ()
    return lo + i, tuple(c[i:j])


def _pmul(a, b):
    if len(a) == 1:
        x = a[0]
        return [x * y for y in b]
    if len(b) == 1:
        y = b[0]
        return [x * y for x in a]
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ladd(lo1, a, lo2, b, sign=1):
    lo = min(lo1, lo2)
    n = max(lo1 + len(a), lo2 + len(b)) - lo
    out = [_Q0] * n
    o = lo1 - lo
    for k, x in enumerate(a):
        out[o + k] = x
    o = lo2 - lo
    if sign == 1:
        for k, y in enumerate(b):
            out[o + k] += y
    else:
        for k, y in enumerate(b):
            out[o + k] -= y
    return _strip(lo, out)


def _pdivmod(a, b):
    # ordinary polynomial division, coefficient lists in ascending order
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) <= db:
        return [], a
    q = [_Q0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c = c / lead
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    r = a[:db]
    while r and not r[-1]:
        r.pop()
    return q, r


def _monic(a):
    lead = a[-1]
    if lead == 1:
        return tuple(a)
    return tuple(x / lead for x in a)


def _pgcd(a, b):
    a = list(a)
    b = list(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _monic(a)


def _exact_div(a, b):
    q, r = _pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def _make(lo, num, dlo, den):
    """Normalize (u^lo num) / (u^dlo den) where num, den are ascending lists."""
    lo, num = _strip(lo, num)
    if not num:
        return ZERO
    dlo, den = _strip(dlo, den)
    if not den:
        raise ZeroDivisionError("scalar division by zero")
    lo -= dlo
    if len(den) == 1:
        c = den[0]
        if c != 1:
            num = tuple(x / c for x in num)
        return Scalar._raw(lo, num, None)
    g = _pgcd(num, den)
    if len(g) > 1:
        num = _exact_div(num, g)
        den = _exact_div(den, g)
        lo, num = _strip(lo, num)
        dlo2, den = _strip(0, den)
        lo -= dlo2
    lead = den[-1]
    if lead != 1:
        num = tuple(x / lead for x in num)
        den = tuple(x / lead for x in den)
    if len(den) == 1:
        return Scalar._raw(lo, tuple(num), None)
    return Scalar._raw(lo, tuple(num), tuple(den))


class Scalar:
    """Element of Q(u), u = v^(1/2); immutable and hashable."""

    __slots__ = ("lo", "num", "den", "_hash")

    @classmethod
    def _raw(cls, lo, num, den):
        s = object.__new__(cls)
        s.lo = lo
        s.num = num
        s.den = den
        s._hash = None
        return s

    def __new__(cls, value=0):
        if isinstance(value, Scalar):
            return value
        q = mpq(value)
        if not q:
            return ZERO
        return cls._raw(0, (q,), None)

    @classmethod
    def from_terms(cls, terms):
        """Build a Laurent polynomial from {u_exponent: rational}."""
        terms = {k: mpq(c) for k, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = min(terms)
        hi = max(terms)
        c = [_Q0] * (hi - lo + 1)
        for k, x in terms.items():
            c[k - lo] = x
        return cls._raw(lo, tuple(c), None)

    @staticmethod
    def coerce(x):
        if isinstance(x, Scalar):
            return x
        return Scalar(x)

    # -- queries
    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_laurent(self):
        return self.den is None

    def is_integral(self):
        """Laurent polynomial with integer coefficients."""
        return self.den is None and all(x.denominator == 1 for x in self.num)

    def terms(self):
        """{u_exponent: mpq} for a Laurent scalar."""
        if self.den is not None:
            raise ValueError("not a Laurent polynomial: %s" % self)
        return {self.lo + k: c for k, c in enumerate(self.num) if c}

    def degree_range(self):
        return self.lo, self.lo + len(self.num) - 1

    def constant(self):
        if self.den is not None:
            raise ValueError("not a Laurent polynomial")
        k = -self.lo
        if 0 <= k < len(self.num):
            return self.num[k]
        return _Q0

    def is_rational(self):
        return self.den is None and len(self.num) <= 1 and (not self.num or self.lo == 0)

    def is_monomial(self):
        return self.den is None and len(self.num) == 1

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RAT):
                other = Scalar(other)
            else:
                return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den is None and other.den is None:
            lo, c = _ladd(self.lo, self.num, other.lo, other.num)
            if not c:
                return ZERO
            return Scalar._raw(lo, c, None)
        return _fadd(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RAT):
                other = Scalar(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return -other
        if self.den is None and other.den is None:
            lo, c = _ladd(self.lo, self.num, other.lo, other.num, -1)
            if not c:
                return ZERO
            return Scalar._raw(lo, c, None)
        return _fadd(self, other, -1)

    def __rsub__(self, other):
        return Scalar(other) - self

    def __neg__(self):
        if not self.num:
            return self
        return Scalar._raw(self.lo, tuple(-x for x in self.num), self.den)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RAT):
                other = Scalar(other)
            else:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den is None and other.den is None:
            return Scalar._raw(self.lo + other.lo, tuple(_pmul(self.num, other.num)), None)
        if other.den is None and len(other.num) == 1:
            c = other.num[0]
            return Scalar._raw(self.lo + other.lo, tuple(x * c for x in self.num), self.den)
        if self.den is None and len(self.num) == 1:
            c = self.num[0]
            return Scalar._raw(self.lo + other.lo, tuple(x * c for x in other.num), other.den)
        d1 = self.den or (_Q1,)
        d2 = other.den or (_Q1,)
        return _make(self.lo + other.lo, _pmul(self.num, other.num), 0, _pmul(d1, d2))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("scalar division by zero")
        if len(self.num) == 1:
            c = self.num[0]
            den = self.den
            if den is None:
                return Scalar._raw(-self.lo, (1 / c,), None)
            return _make(0, [x / c for x in den], self.lo, [_Q1])
        return _make(0, list(self.den or (_Q1,)), self.lo, list(self.num))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RAT):
                other = Scalar(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if self.den is None and len(self.num) == 1:
            return Scalar._raw(self.lo * n, (self.num[0] ** n,), None)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        """u -> u^-1."""
        if not self.num:
            return self
        n = len(self.num)
        if self.den is None:
            return Scalar._raw(-(self.lo + n - 1), self.num[::-1], None)
        d = len(self.den)
        # N(u^-1)/D(u^-1) = u^{d-1} rev(N) u^{-lo-n+1} / rev(D)
        return _make(-(self.lo + n - 1) + (d - 1), list(self.num[::-1]), 0, list(self.den[::-1]))

    # -- comparison / hashing
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RAT):
                other = Scalar(other)
            else:
                return NotImplemented
        return self.lo == other.lo and self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.lo, self.num, self.den))
        return h

    # -- text
    def __str__(self):
        if self.den is None:
            return _lstr(self.lo, self.num)
        return "( %s )/( %s )" % (_lstr(self.lo, self.num), _lstr(0, self.den))

    def __repr__(self):
        return "Scalar(%r)" % str(self)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        m = re.fullmatch(r"\(\s*(.*?)\s*\)\s*/\s*\(\s*(.*?)\s*\)", text, re.S)
        if m:
            return _parse_laurent(m.group(1)) / _parse_laurent(m.group(2))
        return _parse_laurent(text)

    def latex(self):
        """Render in powers of v (half-integer exponents allowed)."""
        if self.den is None:
            return _llatex(self.lo, self.num)
        return r"\frac{%s}{%s}" % (_llatex(self.lo, self.num), _llatex(0, self.den))


def _fadd(a, b, sign):
    d1 = a.den or (_Q1,)
    d2 = b.den or (_Q1,)
    if a.lo != b.lo:
        lo = min(a.lo, b.lo)
        n1 = [_Q0] * (a.lo - lo) + list(a.num)
        n2 = [_Q0] * (b.lo - lo) + list(b.num)
    else:
        lo, n1, n2 = a.lo, a.num, b.num
    if d1 == d2:
        x, y = list(n1), list(n2)
        den = list(d1)
    else:
        x = _pmul(n1, d2)
        y = _pmul(n2, d1)
        den = _pmul(d1, d2)
    if len(x) < len(y):
        x += [_Q0] * (len(y) - len(x))
    if sign == 1:
        for k, c in enumerate(y):
            x[k] += c
    else:
        for k, c in enumerate(y):
            x[k] -= c
    return _make(lo, x, 0, den)


def _qstr(q):
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def _lstr(lo, c):
    parts = []
    for k in range(len(c) - 1, -1, -1):
        q = c[k]
        if not q:
            continue
        e = lo + k
        neg = q < 0
        a = -q if neg else q
        if e == 0:
            body = _qstr(a)
        else:
            mono = "u" if e == 1 else "u^%d" % e
            body = mono if a == 1 else "%s*%s" % (_qstr(a), mono)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _llatex(lo, c):
    parts = []
    for k in range(len(c) - 1, -1, -1):
        q = c[k]
        if not q:
            continue
        e = lo + k
        neg = q < 0
        a = -q if neg else q
        if e == 0:
            mono = ""
        elif e == 2:
            mono = "v"
        elif e % 2 == 0:
            mono = "v^{%d}" % (e // 2)
        else:
            mono = "v^{%d/2}" % e
        if a == 1:
            body = mono or "1"
        else:
            qs = _qstr(a)
            if "/" in qs:
                qs = r"\tfrac{%d}{%d}" % (a.numerator, a.denominator)
            body = qs + mono
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)\*?)?(u(?:\^\(?(-?\d+)\)?)?)?")


def _parse_laurent(text):
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    terms = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError("cannot parse scalar %r" % text)
        q = mpq(m.group(2)) if m.group(2) else _Q1
        if m.group(1) == "-":
            q = -q
        e = 0
        if m.group(3):
            e = int(m.group(4)) if m.group(4) is not None else 1
        terms[e] = terms.get(e, _Q0) + q
        pos = m.end()
    return Scalar.from_terms(terms)


ZERO = Scalar._raw(0, (), None)
ONE = Scalar._raw(0, (_Q1,), None)


@lru_cache(maxsize=None)
def u(k=1):
    """u^k = v^(k/2)."""
    return Scalar._raw(k, (_Q1,), None)


def v(k=1):
    """v^k for integer k."""
    return u(2 * k)


def scalar_bar(s):
    return s.bar()


@lru_cache(maxsize=None)
def qint(n, d=1):
    """[n] at v_i = v^d."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n, d)
    return Scalar.from_terms({2 * d * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(n, d=1):
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k, d)
    return out


@lru_cache(maxsize=None)
def qbinom(m, r, d=1):
    if r < 0:
        return ZERO
    num = ONE
    for k in range(r):
        num = num * qint(m - k, d)
    out = num / qfact(r, d)
    if not out.is_laurent():
        raise ArithmeticError("q-binomial failed to divide exactly")
    return out


def _split_top(text, seps="+-"):
    # split at top-level signs, keeping the sign with the following chunk
    parts = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch in seps and depth == 0 and i > start and text[i - 1] == " ":
            parts.append(text[start:i].strip())
            start = i
        i += 1
    parts.append(text[start:].strip())
    return [p for p in parts if p]


def format_terms(terms):
    """Join (Scalar, monomial-string) pairs; the empty monomial stands for 1."""
    out = []
    for c, mono in terms:
        if not c:
            continue
        neg = False
        if c.is_monomial() and c.lo == 0 and c.num[0] < 0:
            c = -c
            neg = True
        if not mono:
            body = str(c) if c.is_rational() else "(%s)" % c
        elif c == ONE:
            body = mono
        else:
            body = "(%s)*%s" % (c, mono)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out) if out else "0"


def parse_terms(text):
    """Inverse of format_terms: list of (Scalar, monomial-string)."""
    text = text.strip()
    if text == "0":
        return []
    out = []
    for part in _split_top(text):
        sign = ONE
        if part[0] in "+-":
            if part[0] == "-":
                sign = -ONE
            part = part[1:].strip()
        if part.startswith("("):
            depth = 0
            for k, ch in enumerate(part):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            coeff = Scalar.parse(part[1:k])
            rest = part[k + 1:].strip()
            if rest.startswith("*"):
                rest = rest[1:].strip()
        elif re.match(r"^\d", part) and not part.startswith(("th", "h")):
            m = re.match(r"^(\d+(?:/\d+)?)\s*\*?\s*(.*)$", part)
            coeff = Scalar(mpq(m.group(1)))
            rest = m.group(2).strip()
        else:
            coeff = ONE
            rest = part
        out.append((sign * coeff, rest))
    return out
