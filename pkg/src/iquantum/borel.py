"""The Borel Hopf algebra: f tensored with the Cartan monomials h_alpha.

A term is keyed by (alpha, word) and stands for h_alpha * th_word, Cartan part
on the left. Exponents may be negative, which gives the invertible-Cartan
variant with no change of code.
"""

import re

from .falgebra import _add_to, falgebra, word_str
from .scalars import ONE, ZERO, format_terms, parse_terms, u, v

__all__ = ["BorelAlgebra", "borel_algebra", "cartan_str", "term_str", "parse_borel"]


def cartan_str(alpha):
    return "h[%s]" % ",".join(str(a) for a in alpha)


def term_str(alpha, word):
    parts = []
    if any(alpha):
        parts.append(cartan_str(alpha))
    if word:
        parts.append(word_str(word))
    return "*".join(parts)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class BorelAlgebra:
    def __init__(self, datum, f=None):
        self.datum = datum
        self.f = f or falgebra(datum)
        self.n = datum.n
        self.zero_wt = datum.zero()

    def bil(self, a, b):
        return self.datum.bil(a, b)

    # -- construction
    def from_f(self, x, alpha=None):
        alpha = alpha or self.zero_wt
        return {(alpha, w): c for w, c in x.items()}

    def h(self, alpha, c=ONE):
        return {(tuple(alpha), ()): c}

    def theta(self, i):
        return {(self.zero_wt, (i,)): ONE}

    # -- product in the underlying algebra
    def mul(self, a, b):
        """(h_a x)(h_b y) = v^{-(b, wt x)} h_{a+b} xy."""
        out = {}
        f = self.f
        for (al, x), c in a.items():
            wx = f.weight(x)
            for (be, y), d in b.items():
                cd = c * d * v(-self.bil(be, wx))
                ab = _vadd(al, be)
                for w, e in f.mul({x: ONE}, {y: ONE}).items():
                    _add_to(out, (ab, w), cd * e)
        return out

    # -- coproduct
    def delta(self, a):
        """Δ(h_a x) = Σ v^{-(wt x2, wt x1)} h_{a+wt x2} x1 ⊗ h_a x2."""
        out = {}
        f = self.f
        for (al, x), c in a.items():
            for (x1, x2), e in f.r_word(x).items():
                w1 = f.weight(x1)
                w2 = f.weight(x2)
                coeff = c * e * v(-self.bil(w2, w1))
                _add_to(out, ((_vadd(al, w2), x1), (al, x2)), coeff)
        return out

    def delta2(self, a):
        """(Δ⊗id)Δ as {(t1, t2, t3): coeff}."""
        out = {}
        for (t1, t2), c in self.delta(a).items():
            for (s1, s2), d in self.delta({t1: ONE}).items():
                _add_to(out, (s1, s2, t2), c * d)
        return out

    def delta2_right(self, a):
        """(id⊗Δ)Δ, for the coassociativity check."""
        out = {}
        for (t1, t2), c in self.delta(a).items():
            for (s1, s2), d in self.delta({t2: ONE}).items():
                _add_to(out, (t1, s1, s2), c * d)
        return out

    def counit(self, a):
        s = ZERO
        for (al, x), c in a.items():
            if not x:
                s = s + c
        return s

    # -- pairing
    def pair_terms(self, al, x, be, y):
        """φ(h_al x, h_be y) = v^{(al,be)+(al,wt y)+(wt y,be)} φ(x, y)."""
        f = self.f
        if len(x) != len(y):
            return ZERO
        wy = f.weight(y)
        if f.weight(x) != wy:
            return ZERO
        p = f.gram(wy)[x].get(y)
        if not p:
            return ZERO
        e = self.bil(al, be) + self.bil(al, wy) + self.bil(wy, be)
        return p * v(e)

    def pairing(self, a, b):
        s = ZERO
        for (al, x), c in a.items():
            for (be, y), d in b.items():
                p = self.pair_terms(al, x, be, y)
                if p:
                    s = s + c * d * p
        return s

    # -- tau and the twisted character
    def tau(self, a):
        d = self.datum
        f = self.f
        out = {}
        for (al, x), c in a.items():
            ta = d.tau_weight(al)
            for w, e in f.tau({x: ONE}, d.tau).items():
                _add_to(out, (ta, w), c * e)
        return out

    def chi_h(self, alpha):
        """χ(h_alpha): v^{(α,τα)/2 + Σ a_i (α_i,α_τi)/2}."""
        d = self.datum
        e = d.bil(alpha, d.tau_weight(alpha))
        e += sum(a * d.gram[i][d.tau[i]] for i, a in enumerate(alpha))
        return u(e)

    def chi_f(self, x):
        """χ on a basis word: χ(th_i y) = χ(h_i) (v_τi - v_τi^-1) χ(∂^R_τi y)."""
        cache = self.__dict__.setdefault("_chi", {})
        r = cache.get(x)
        if r is not None:
            return r
        if not x:
            r = ONE
        else:
            d = self.datum
            i = x[0]
            t = d.tau[i]
            s = ZERO
            for w, c in self.f.dR_word(t, x[1:]).items():
                s = s + c * self.chi_f(w)
            r = s * self.chi_h(self.datum.simple(i)) * (v(d.d[t]) - v(-d.d[t])) if s else ZERO
        cache[x] = r
        return r

    def chi(self, a):
        d = self.datum
        s = ZERO
        for (al, x), c in a.items():
            cx = self.chi_f(x)
            if cx:
                s = s + c * self.chi_h(al) * cx * v(d.bil(d.tau_weight(al), self.f.weight(x)))
        return s

    # -- text
    def to_str(self, a):
        items = sorted(a.items(), key=lambda t: (len(t[0][1]), t[0][1], t[0][0]))
        return format_terms([(c, term_str(al, w)) for (al, w), c in items])

    def parse(self, text):
        return parse_borel(self, text)


def parse_monomial(n, mono):
    alpha = [0] * n
    word = ()
    if mono and mono != "1":
        for factor in mono.split("*"):
            factor = factor.strip()
            m = re.fullmatch(r"h\[([-\d,\s]*)\]", factor)
            if m:
                vals = [int(x) for x in m.group(1).split(",")]
                alpha = [a + b for a, b in zip(alpha, vals)]
                continue
            m = re.fullmatch(r"th\[([\d,\s]*)\]", factor)
            if m:
                word += tuple(int(x) - 1 for x in m.group(1).split(",") if x.strip())
                continue
            raise ValueError("cannot parse monomial %r" % mono)
    return tuple(alpha), word


def parse_borel(alg, text):
    out = {}
    for c, mono in parse_terms(text):
        alpha, word = parse_monomial(alg.n, mono)
        for w, e in alg.f.nf_word(word).items():
            _add_to(out, (alpha, w), c * e)
    return out


_REG = {}


def borel_algebra(datum):
    key = datum.key()
    b = _REG.get(key)
    if b is None:
        b = BorelAlgebra(datum)
        _REG[key] = b
    return b
