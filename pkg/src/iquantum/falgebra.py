"""Lusztig's algebra f on the rescaled generators th_i.

Elements are stored as {word: Scalar} over a fixed monomial basis of each
weight space: the lexicographically least words outside the span of the
quantum Serre relations. Words are tuples of 0-based node indices.
"""

import re

from .scalars import ONE, ZERO, Scalar, format_terms, parse_terms, qbinom, v

__all__ = ["FAlgebra", "FElement", "falgebra", "word_str", "HeightError"]


class HeightError(ValueError):
    pass


def word_str(word):
    return "th[%s]" % ",".join(str(i + 1) for i in word)


def _axpy(acc, c, vec):
    # acc += c * vec
    for k, x in vec.items():
        y = acc.get(k)
        y = c * x if y is None else y + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def _add_to(acc, k, c):
    y = acc.get(k)
    y = c if y is None else y + c
    if y:
        acc[k] = y
    else:
        acc.pop(k, None)


class WeightBasis:
    """Basis words of one weight space with reductions of the candidate words."""

    def __init__(self, mu, words, reduction):
        self.weight = mu
        self.words = words
        self.index = {w: k for k, w in enumerate(words)}
        self.reduction = reduction

    def __len__(self):
        return len(self.words)

    def __repr__(self):
        return "WeightBasis(%s, dim=%d)" % (self.weight, len(self.words))


class FAlgebra:
    """Normal forms, products, coproduct, skew derivations and pairing of f."""

    def __init__(self, datum, max_height=None):
        self.datum = datum
        self.n = datum.n
        self.max_height = max_height
        self._bases = {}
        self._nf = {}
        self._r = {}
        self._dR = {}
        self._dL = {}
        self._gram = {}
        self._vi = [v(d) - v(-d) for d in datum.d]
        self._serre = self._serre_relations()

    # -- weights
    def weight(self, word):
        w = [0] * self.n
        for i in word:
            w[i] += 1
        return tuple(w)

    def _serre_relations(self):
        rels = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                m = 1 - self.datum.cartan[i][j]
                terms = []
                for r in range(m + 1):
                    c = qbinom(m, r, self.datum.d[i])
                    if r % 2:
                        c = -c
                    terms.append(((i,) * r + (j,) + (i,) * (m - r), c))
                w = [0] * self.n
                w[i] += m
                w[j] += 1
                rels.append((tuple(w), terms))
        return rels

    def serre_element(self, i, j):
        """The Serre combination for (i, j) as a raw word combination."""
        m = 1 - self.datum.cartan[i][j]
        out = {}
        for r in range(m + 1):
            c = qbinom(m, r, self.datum.d[i])
            out[(i,) * r + (j,) + (i,) * (m - r)] = -c if r % 2 else c
        return out

    # -- weight bases
    def basis(self, mu):
        mu = tuple(mu)
        b = self._bases.get(mu)
        if b is None:
            if any(x < 0 for x in mu):
                raise ValueError("negative weight %s" % (mu,))
            if self.max_height is not None and sum(mu) > self.max_height:
                raise HeightError("weight %s exceeds height bound %d" % (mu, self.max_height))
            b = self._build_basis(mu)
            self._bases[mu] = b
        return b

    def _build_basis(self, mu):
        n = self.n
        if not any(mu):
            return WeightBasis(mu, [()], {(): {(): ONE}})
        support = [i for i in range(n) if mu[i]]
        if len(support) == 1:
            w = (support[0],) * mu[support[0]]
            return WeightBasis(mu, [w], {w: {w: ONE}})
        cands = []
        for i in support:
            low = list(mu)
            low[i] -= 1
            for b in self.basis(tuple(low)).words:
                cands.append((i,) + b)
        cands.sort()
        cset = set(cands)
        rows = []
        for wS, terms in self._serre:
            rest = tuple(x - y for x, y in zip(mu, wS))
            if any(x < 0 for x in rest):
                continue
            for b in self.basis(rest).words:
                row = {}
                for word, c in terms:
                    full = word + b
                    if full in cset:
                        _add_to(row, full, c)
                    else:
                        tail = self.nf_word(full[1:])
                        for t, ct in tail.items():
                            _add_to(row, (full[0],) + t, c * ct)
                if row:
                    rows.append(row)
        pivots = {}
        for row in rows:
            row = dict(row)
            # eliminate known pivots, largest first
            while row:
                top = max(row)
                p = pivots.get(top)
                if p is None:
                    break
                _axpy(row, -row[top], p)
            if not row:
                continue
            top = max(row)
            inv = row[top].inverse()
            row = {k: c * inv for k, c in row.items()}
            pivots[top] = row
        # fully reduce: each pivot expressed in non-pivot words
        reduced = {}
        for p in sorted(pivots):
            row = dict(pivots[p])
            del row[p]
            expr = {}
            for k, c in row.items():
                if k in reduced:
                    _axpy(expr, -c, reduced[k])
                else:
                    _add_to(expr, k, -c)
            reduced[p] = expr
        words = [w for w in cands if w not in pivots]
        red = {w: {w: ONE} for w in words}
        red.update(reduced)
        return WeightBasis(mu, words, red)

    def dim(self, mu):
        return len(self.basis(mu))

    # -- normal forms
    def nf_word(self, word):
        word = tuple(word)
        r = self._nf.get(word)
        if r is not None:
            return r
        if len(word) <= 1:
            r = {word: ONE}
        else:
            b = self.basis(self.weight(word))
            r = b.reduction.get(word)
            if r is None:
                tail = self.nf_word(word[1:])
                r = {}
                red = b.reduction
                i = word[0]
                for t, c in tail.items():
                    _axpy(r, c, red[(i,) + t])
        self._nf[word] = r
        return r

    def normal_form(self, combo):
        """Reduce an arbitrary {word: coeff} combination."""
        out = {}
        for w, c in combo.items():
            c = Scalar.coerce(c)
            if c:
                _axpy(out, c, self.nf_word(w))
        return out

    def lmul(self, i, x):
        """th_i * x for x in normal form."""
        out = {}
        for w, c in x.items():
            _axpy(out, c, self.nf_word((i,) + w))
        return out

    def mul(self, x, y):
        if not x or not y:
            return {}
        out = {}
        memo = {(): y}
        for w, c in x.items():
            _axpy(out, c, self._lword(w, memo))
        return out

    def _lword(self, w, memo):
        r = memo.get(w)
        if r is None:
            r = self.lmul(w[0], self._lword(w[1:], memo))
            memo[w] = r
        return r

    def power(self, x, k):
        out = {(): ONE}
        for _ in range(k):
            out = self.mul(out, x)
        return out

    # -- coproduct r
    def r_word(self, word):
        """r of a basis word as {(word1, word2): coeff}."""
        res = self._r.get(word)
        if res is not None:
            return res
        if not word:
            res = {((), ()): ONE}
        else:
            i = word[0]
            rest = self.r_word(word[1:])
            res = {}
            for (a, b), c in rest.items():
                for a2, ca in self.lmul(i, {a: ONE}).items():
                    _add_to(res, (a2, b), c * ca)
                tw = v(self.datum.bil_simple(i, self.weight(a)))
                for b2, cb in self.lmul(i, {b: ONE}).items():
                    _add_to(res, (a, b2), c * cb * tw)
        self._r[word] = res
        return res

    def coproduct_r(self, x):
        out = {}
        for w, c in x.items():
            for k, ck in self.r_word(w).items():
                _add_to(out, k, c * ck)
        return out

    def tensor_mul(self, s, t):
        """Product in the twisted square: (x1⊗x2)(y1⊗y2) = v^((wt x2, wt y1)) x1y1⊗x2y2."""
        out = {}
        for (a1, a2), c in s.items():
            wa2 = self.weight(a2)
            for (b1, b2), d in t.items():
                tw = v(self.datum.bil(wa2, self.weight(b1)))
                p1 = self.mul({a1: ONE}, {b1: ONE})
                p2 = self.mul({a2: ONE}, {b2: ONE})
                cc = c * d * tw
                for w1, e1 in p1.items():
                    for w2, e2 in p2.items():
                        _add_to(out, (w1, w2), cc * e1 * e2)
        return out

    # -- skew derivations
    def dR_word(self, i, word):
        key = (i, word)
        res = self._dR.get(key)
        if res is not None:
            return res
        if not word:
            res = {}
        else:
            j = word[0]
            rest = word[1:]
            res = {}
            if j == i:
                _add_to(res, rest, ONE)
            inner = self.dR_word(i, rest)
            if inner:
                _axpy(res, v(self.datum.gram[i][j]), self.lmul(j, inner))
        self._dR[key] = res
        return res

    def dL_word(self, i, word):
        key = (i, word)
        res = self._dL.get(key)
        if res is not None:
            return res
        if not word:
            res = {}
        else:
            j = word[0]
            rest = word[1:]
            res = {}
            if j == i:
                _add_to(res, rest, v(self.datum.bil_simple(i, self.weight(rest))))
            inner = self.dL_word(i, rest)
            if inner:
                _axpy(res, ONE, self.lmul(j, inner))
        self._dL[key] = res
        return res

    def skew_derivative(self, side, i, x):
        f = self.dL_word if side == "L" else self.dR_word
        out = {}
        for w, c in x.items():
            _axpy(out, c, f(i, w))
        return out

    # -- pairing
    def gram(self, mu):
        """Pairing matrix on the basis words of weight mu, as a dict of dicts."""
        mu = tuple(mu)
        g = self._gram.get(mu)
        if g is not None:
            return g
        words = self.basis(mu).words
        g = {}
        if not any(mu):
            g = {(): {(): ONE}}
        else:
            for w in words:
                i = w[0]
                low = tuple(x - (k == i) for k, x in enumerate(mu))
                sub = self.gram(low)
                row_w = sub[w[1:]]
                g[w] = {}
                for y in words:
                    d = self.dR_word(i, y)
                    s = ZERO
                    for t, c in d.items():
                        e = row_w.get(t)
                        if e:
                            s = s + c * e
                    if s:
                        g[w][y] = self._vi[i] * s
        self._gram[mu] = g
        return g

    def pairing(self, x, y):
        s = ZERO
        for w, c in x.items():
            row = self.gram(self.weight(w))[w]
            for y_w, d in y.items():
                e = row.get(y_w)
                if e:
                    s = s + c * d * e
        return s

    # -- symmetries
    def sigma(self, x):
        return self.normal_form({w[::-1]: c for w, c in x.items()})

    def tau(self, x, perm):
        # f is shared between diagrams with the same Cartan datum, so τ is explicit
        return self.normal_form({tuple(perm[i] for i in w): c for w, c in x.items()})

    def bar(self, x):
        """Anti-linear anti-automorphism fixing every th_i."""
        return self.normal_form({w[::-1]: c.bar() for w, c in x.items()})

    def homogeneous(self, x):
        out = {}
        for w, c in x.items():
            out.setdefault(self.weight(w), {})[w] = c
        return out

    def kostant(self, mu):
        """Kostant partition count of mu over the positive roots."""
        roots = self.datum.positive_roots()
        mu = tuple(mu)
        memo = {}

        def count(rest, k):
            if not any(rest):
                return 1
            if k == len(roots):
                return 0
            key = (rest, k)
            if key in memo:
                return memo[key]
            total = 0
            r = roots[k]
            cur = rest
            while all(x >= 0 for x in cur):
                total += count(cur, k + 1)
                cur = tuple(a - b for a, b in zip(cur, r))
            memo[key] = total
            return total

        return count(mu, 0)

    # -- element helpers
    def element(self, terms=None):
        return FElement(self, self.normal_form(terms or {}))

    def gen(self, i):
        return FElement(self, {(i,): ONE})

    def one(self):
        return FElement(self, {(): ONE})


_REGISTRY = {}


def falgebra(datum, max_height=None):
    """Shared FAlgebra per Cartan datum and bound (τ does not matter for f)."""
    key = (datum.gram, max_height)
    alg = _REGISTRY.get(key)
    if alg is None:
        alg = FAlgebra(datum, max_height)
        _REGISTRY[key] = alg
    return alg


class FElement:
    """Immutable element of f in normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def _wrap(self, t):
        return FElement(self.alg, t)

    def __add__(self, other):
        out = dict(self.terms)
        _axpy(out, ONE, other.terms)
        return self._wrap(out)

    def __sub__(self, other):
        out = dict(self.terms)
        _axpy(out, -ONE, other.terms)
        return self._wrap(out)

    def __neg__(self):
        return self._wrap({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FElement):
            return self._wrap(self.alg.mul(self.terms, other.terms))
        c = Scalar.coerce(other)
        if not c:
            return self._wrap({})
        return self._wrap({w: x * c for w, x in self.terms.items()})

    def __rmul__(self, other):
        c = Scalar.coerce(other)
        if not c:
            return self._wrap({})
        return self._wrap({w: c * x for w, x in self.terms.items()})

    def __pow__(self, k):
        return self._wrap(self.alg.power(self.terms, k))

    def __eq__(self, other):
        if isinstance(other, FElement):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def weight(self):
        ws = {self.alg.weight(w) for w in self.terms}
        if len(ws) != 1:
            raise ValueError("element is not homogeneous")
        return ws.pop()

    def r(self):
        return self.alg.coproduct_r(self.terms)

    def sigma(self):
        return self._wrap(self.alg.sigma(self.terms))

    def tau(self, perm):
        return self._wrap(self.alg.tau(self.terms, perm))

    def bar(self):
        return self._wrap(self.alg.bar(self.terms))

    def dL(self, i):
        return self._wrap(self.alg.skew_derivative("L", i, self.terms))

    def dR(self, i):
        return self._wrap(self.alg.skew_derivative("R", i, self.terms))

    def pair(self, other):
        return self.alg.pairing(self.terms, other.terms)

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
        return format_terms([(c, word_str(w) if w else "") for w, c in items])

    def __repr__(self):
        return "FElement(%s)" % self

    @classmethod
    def parse(cls, alg, text):
        combo = {}
        for c, mono in parse_terms(text):
            if not mono or mono == "1":
                w = ()
            else:
                w = ()
                for factor in mono.split("*"):
                    m = re.fullmatch(r"\s*th\[([\d,\s]*)\]\s*", factor)
                    if not m:
                        raise ValueError("cannot parse monomial %r" % mono)
                    w += tuple(int(x) - 1 for x in m.group(1).split(",") if x.strip())
            _add_to(combo, w, c)
        return alg.element(combo)
