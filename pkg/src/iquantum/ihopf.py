"""The iHopf product on the Borel, the bar map and friends, and the double.

Elements of the iHopf algebra share the Borel coordinates (alpha, word) for
h_alpha * th_word. Since h_alpha * iota(x) = h_alpha . iota(x), these are also
the standard coordinates of the iHopf algebra.

The Drinfeld double is realized as the iHopf algebra of the doubled diagram
(two copies of the nodes, tau swapping them): its Borel is B x B and its star
product is the diagonal formula.
"""

from .borel import _vadd, borel_algebra, parse_monomial, term_str
from .falgebra import _add_to, _axpy
from .scalars import ONE, ZERO, Scalar, format_terms, parse_terms, u, v

__all__ = ["IHopf", "IElement", "ihopf", "Morphism", "DoubleAlgebra", "TUElement",
           "double_algebra"]


def _scale(x, c):
    if c == ONE:
        return dict(x)
    return {k: c * e for k, e in x.items()}


def _add(a, b, c=ONE):
    out = dict(a)
    _axpy(out, c, b)
    return out


class IHopf:
    """Star product a*b = Σ φ(τ b_(2), a_(1)) a_(2) b_(1) on the Borel."""

    def __init__(self, datum):
        self.datum = datum
        self.B = borel_algebra(datum)
        self.f = self.B.f
        self.n = datum.n
        self.zero_wt = datum.zero()
        self._core = {}
        self._split = {}
        self._tauw = {}
        self._bar = None
        self._sigma = None
        self._psi = None

    # -- weights
    def term_weight(self, alpha, word):
        d = self.datum
        return tuple(a + t + w for a, t, w in zip(alpha, d.tau_weight(alpha), self.f.weight(word)))

    def homogeneous(self, x):
        out = {}
        for (al, w), c in x.items():
            out.setdefault(self.term_weight(al, w), {})[(al, w)] = c
        return out

    def weight(self, x):
        ws = {self.term_weight(al, w) for (al, w) in x}
        if len(ws) != 1:
            raise ValueError("element is not homogeneous")
        return ws.pop()

    # -- constructors
    def iota(self, x):
        return {(self.zero_wt, w): c for w, c in x.items()}

    def theta(self, i):
        return {(self.zero_wt, (i,)): ONE}

    def h(self, alpha):
        return {(tuple(alpha), ()): ONE}

    def one(self):
        return {(self.zero_wt, ()): ONE}

    def kappa(self, alpha):
        """K_alpha = v^{(α,τα)/2} h_{τα}."""
        d = self.datum
        return {(d.tau_weight(alpha), ()): u(d.bil(alpha, d.tau_weight(alpha)))}

    # -- star product
    def _split_word(self, x):
        """r(x) grouped as {wt x1: {x2: {x1: c}}}."""
        s = self._split.get(x)
        if s is None:
            f = self.f
            s = {}
            for (x1, x2), c in f.r_word(x).items():
                s.setdefault(f.weight(x1), {}).setdefault(x2, {})[x1] = c
            self._split[x] = s
        return s

    def _split_word_right(self, y):
        """r(y) grouped as {wt y2: {y1: {y2: c}}}."""
        key = ("R", y)
        s = self._split.get(key)
        if s is None:
            f = self.f
            s = {}
            for (y1, y2), c in f.r_word(y).items():
                s.setdefault(f.weight(y2), {}).setdefault(y1, {})[y2] = c
            self._split[key] = s
        return s

    def _tau_word(self, w):
        t = self._tauw.get(w)
        if t is None:
            t = self.f.tau({w: ONE}, self.datum.tau)
            self._tauw[w] = t
        return t

    def core(self, x, y):
        """Cartan-independent part of ι(x)*ι(y): list of (γ, exponent, f-element)."""
        key = (x, y)
        res = self._core.get(key)
        if res is not None:
            return res
        f = self.f
        d = self.datum
        sx = self._split_word(x)
        sy = self._split_word_right(y)
        wx = f.weight(x)
        wy = f.weight(y)
        res = []
        for gam, gx in sx.items():
            tg = d.tau_weight(gam)
            gy = sy.get(tg)
            if gy is None:
                continue
            gram = f.gram(gam)
            # φ(τ y2, x1) for all y2 and x1 of this weight
            phi = {}
            y2s = {y2 for row in gy.values() for y2 in row}
            for y2 in y2s:
                row = {}
                for t, ct in self._tau_word(y2).items():
                    grow = gram[t]
                    for x1, g in grow.items():
                        _add_to(row, x1, ct * g)
                phi[y2] = row
            elt = {}
            for x2, x1s in gx.items():
                a_row = {}
                for y2, prow in phi.items():
                    s = ZERO
                    for x1, c in x1s.items():
                        p = prow.get(x1)
                        if p:
                            s = s + c * p
                    if s:
                        a_row[y2] = s
                if not a_row:
                    continue
                for y1, y2s_ in gy.items():
                    s = ZERO
                    for y2, c in y2s_.items():
                        a = a_row.get(y2)
                        if a:
                            s = s + a * c
                    if s:
                        _axpy(elt, s, f.mul({x2: ONE}, {y1: ONE}))
            if elt:
                wx2 = tuple(a - b for a, b in zip(wx, gam))
                wy1 = tuple(a - b for a, b in zip(wy, tg))
                e0 = -d.bil(tg, wy1) - d.bil(tg, wx2)
                res.append((gam, tg, wx2, e0, elt))
        self._core[key] = res
        return res

    def star(self, a, b):
        if not a or not b:
            return {}
        d = self.datum
        out = {}
        tb_cache = {}
        for (al, x), c in a.items():
            for (be, y), e in b.items():
                tb = tb_cache.get(be)
                if tb is None:
                    tb = tb_cache[be] = d.tau_weight(be)
                ce = c * e
                base = d.bil(tb, al)
                atb = _vadd(al, tb)
                tbmb = tuple(p - q for p, q in zip(tb, be))
                ab = _vadd(al, be)
                for gam, tg, wx2, e0, elt in self.core(x, y):
                    ex = e0 + base + d.bil(tbmb, wx2) + d.bil(gam, atb)
                    k = _vadd(ab, tg)
                    cc = ce * v(ex)
                    for w, g in elt.items():
                        _add_to(out, (k, w), cc * g)
        return out

    def star_many(self, *xs):
        out = self.one()
        for x in xs:
            out = self.star(out, x)
        return out

    def star_power(self, x, k):
        out = self.one()
        for _ in range(k):
            out = self.star(out, x)
        return out

    def diamond(self, alpha, x):
        """h_alpha ◇ x = v^{(τα-α, wt x)/2} h_alpha * x, homogeneous parts separately."""
        d = self.datum
        ta = d.tau_weight(alpha)
        diff = tuple(p - q for p, q in zip(ta, alpha))
        h = self.h(alpha)
        out = {}
        for wt, part in self.homogeneous(x).items():
            _axpy(out, u(d.bil(diff, wt)), self.star(h, part))
        return out

    def kdiamond(self, alpha, x):
        """K_alpha ◇ x."""
        d = self.datum
        ta = d.tau_weight(alpha)
        return _scale(self.diamond(ta, x), u(d.bil(alpha, ta)))

    # -- straightening in the underlying algebra
    def borel_mul(self, a, b):
        return self.B.mul(a, b)

    # -- symmetries
    def tau(self, x):
        return self.B.tau(x)

    def bar(self, x):
        if self._bar is None:
            d = self.datum
            self._bar = Morphism(
                self, lambda i: self.theta(i),
                lambda al: {(al, ()): v(d.bil(al, d.tau_weight(al)))},
                anti=True, conj=True)
        return self._bar(x)

    def sigma(self, x):
        """σ^ı by the closed form σ^ı(h_α x) = v^{(α-τα, wt x)} h_{τα} σ(x)."""
        d = self.datum
        f = self.f
        out = {}
        for (al, w), c in x.items():
            ta = d.tau_weight(al)
            diff = tuple(p - q for p, q in zip(al, ta))
            cc = c * v(d.bil(diff, f.weight(w)))
            for w2, e in f.sigma({w: ONE}).items():
                _add_to(out, (ta, w2), cc * e)
        return out

    def sigma_recursive(self, x):
        if self._sigma is None:
            d = self.datum
            self._sigma = Morphism(self, lambda i: self.theta(i),
                                   lambda al: {(d.tau_weight(al), ()): ONE}, anti=True)
        return self._sigma(x)

    def psi(self, x):
        """ψ^ı = bar∘σ^ı: anti-linear automorphism with h_α ↦ v^{(α,τα)} h_{τα}."""
        if self._psi is None:
            d = self.datum
            self._psi = Morphism(
                self, lambda i: self.theta(i),
                lambda al: {(d.tau_weight(al), ()): v(d.bil(al, d.tau_weight(al)))},
                anti=False, conj=True)
        return self._psi(x)

    def star_recursive(self, i, x, side="L"):
        """ϑ_i*ι(x) or ι(x)*ϑ_i through the skew derivations."""
        d = self.datum
        f = self.f
        t = d.tau[i]
        ci = v(d.d[i]) - v(-d.d[i])
        if side == "L":
            out = self.iota(f.lmul(i, x))
            y = f.skew_derivative("L", t, x)
            # y * h_t = v^{-(α_t, wt y)} h_t y
            for w, c in y.items():
                _add_to(out, (d.simple(t), w), ci * c * v(-d.bil_simple(t, f.weight(w))))
            return out
        out = self.iota(f.mul(x, {(i,): ONE}))
        y = f.skew_derivative("R", t, x)
        for w, c in y.items():
            _add_to(out, (d.simple(i), w), ci * c * v(-d.bil_simple(i, f.weight(w))))
        return out

    # -- twisted embedding into the double
    def xi_tau(self, a, double):
        """ξ_τ(a) = Σ χ(a_(2)) τ(a_(3)) ⊗ a_(1), as an element of the double."""
        B = self.B
        out = {}
        for (t1, t2, t3), c in B.delta2(a).items():
            ch = B.chi({t2: ONE})
            if not ch:
                continue
            for t3b, e in B.tau({t3: ONE}).items():
                _add_to(out, (t3b, t1), c * ch * e)
        return double.from_tu(out)

    # -- text
    def to_str(self, x):
        return self.B.to_str(x)

    def parse(self, text):
        return self.B.parse(text)

    def element(self, terms):
        return IElement(self, terms)


class Morphism:
    """Extend generator images to the iHopf algebra by peeling off generators.

    iota(th_i w) = th_i * iota(w) - (v_i - v_i^-1) v^{-(α_τi, wt y)} h_τi * iota(y)
    with y = ∂^L_τi(w); h_alpha x = h_alpha * iota(x). The images of h_alpha
    are supplied directly. anti reverses products, conj applies bar to scalars.
    """

    def __init__(self, alg, gen_image, cartan_image, anti=False, conj=False, target=None):
        self.src = alg
        self.dst = target or alg
        self.gen_image = gen_image
        self.cartan_image = cartan_image
        self.anti = anti
        self.conj = conj
        self._gens = {}
        self._cartan = {}
        self._words = {}

    def _c(self, s):
        return s.bar() if self.conj else s

    def _mul(self, a, b):
        if self.anti:
            a, b = b, a
        return self.dst.star(a, b)

    def gen(self, i):
        g = self._gens.get(i)
        if g is None:
            g = self._gens[i] = self.gen_image(i)
        return g

    def cartan(self, alpha):
        alpha = tuple(alpha)
        g = self._cartan.get(alpha)
        if g is None:
            g = self._cartan[alpha] = self.cartan_image(alpha)
        return g

    def word(self, w):
        r = self._words.get(w)
        if r is not None:
            return r
        src = self.src
        if not w:
            r = self.dst.one()
        else:
            d = src.datum
            f = src.f
            i = w[0]
            t = d.tau[i]
            r = self._mul(self.gen(i), self.word(w[1:]))
            y = f.dL_word(t, w[1:])
            if y:
                ci = v(d.d[i]) - v(-d.d[i])
                st = d.simple(t)
                for w2, c in y.items():
                    coeff = ci * c * v(-d.bil_simple(t, f.weight(w2)))
                    _axpy(r, -self._c(coeff), self._mul(self.cartan(st), self.word(w2)))
        self._words[w] = r
        return r

    def __call__(self, x):
        out = {}
        groups = {}
        for (al, w), c in x.items():
            groups.setdefault(al, {})[w] = c
        for al, part in groups.items():
            img = {}
            for w, c in part.items():
                _axpy(img, self._c(c), self.word(w))
            if any(al):
                img = self._mul(self.cartan(al), img)
            _axpy(out, ONE, img)
        return out


_REG = {}


def ihopf(datum):
    key = datum.key()
    a = _REG.get(key)
    if a is None:
        a = IHopf(datum)
        _REG[key] = a
    return a


class IElement:
    """Element of the iHopf algebra with * as the star product."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def _wrap(self, t):
        return type(self)(self.alg, t)

    def __add__(self, other):
        return self._wrap(_add(self.terms, other.terms))

    def __sub__(self, other):
        return self._wrap(_add(self.terms, other.terms, -ONE))

    def __neg__(self):
        return self._wrap({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, IElement):
            return self._wrap(self.alg.star(self.terms, other.terms))
        c = Scalar.coerce(other)
        return self._wrap({k: x * c for k, x in self.terms.items()} if c else {})

    def __rmul__(self, other):
        c = Scalar.coerce(other)
        return self._wrap({k: x * c for k, x in self.terms.items()} if c else {})

    def __eq__(self, other):
        if isinstance(other, IElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def bar(self):
        return self._wrap(self.alg.bar(self.terms))

    def __str__(self):
        return self.alg.to_str(self.terms)

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self)


class DoubleAlgebra(IHopf):
    """The double of the Borel, as the iHopf algebra of the doubled diagram.

    Tensor coordinates ((alpha, x), (beta, y)) stand for h_alpha x ⊗ h_beta y;
    E_i = th_i ⊗ 1, F_i = 1 ⊗ th_i, K_i = h_i ⊗ 1, K'_i = 1 ⊗ h_i.
    """

    def __init__(self, base):
        self.base = base
        super().__init__(base.doubled())
        self.m = base.n

    # coordinate conversions
    def from_tu(self, terms):
        m = self.m
        out = {}
        f = self.f
        for ((al, x), (be, y)), c in terms.items():
            w = tuple(x) + tuple(j + m for j in y)
            for w2, e in f.nf_word(w).items():
                _add_to(out, (tuple(al) + tuple(be), w2), c * e)
        return out

    def to_tu(self, x):
        m = self.m
        out = {}
        for (al, w), c in x.items():
            k = 0
            while k < len(w) and w[k] < m:
                k += 1
            left = w[:k]
            right = tuple(j - m for j in w[k:])
            if any(j < 0 for j in right):
                raise ValueError("doubled word not in split normal form")
            out[((al[:m], left), (al[m:], right))] = c
        return out

    def E(self, i):
        return {(self.zero_wt, (i,)): ONE}

    def F(self, i):
        return {(self.zero_wt, (i + self.m,)): ONE}

    def K(self, mu):
        return {(tuple(mu) + (0,) * self.m, ()): ONE}

    def Kp(self, mu):
        return {((0,) * self.m + tuple(mu), ()): ONE}

    def bigrade(self, alpha, word):
        """(wt^+, wt^-) of a term: E-weight and F-weight, Cartan excluded."""
        m = self.m
        wp = [0] * m
        wm = [0] * m
        for j in word:
            if j < m:
                wp[j] += 1
            else:
                wm[j - m] += 1
        return tuple(wp), tuple(wm)

    def star_diagonal_tu(self, a, b):
        """The diagonal formula in tensor coordinates, evaluated directly."""
        B = self.base_borel()
        out = {}
        for (a1, a2), c in a.items():
            for (b1, b2), e in b.items():
                # (a1⊗a2)*(b1⊗b2) = Σ φ(a1_(1), b2_(2)) φ(b1_(2), a2_(1)) a1_(2) b1_(1) ⊗ a2_(2) b2_(1)
                da1 = B.delta({a1: ONE})
                da2 = B.delta({a2: ONE})
                db1 = B.delta({b1: ONE})
                db2 = B.delta({b2: ONE})
                for (p1, p2), cp in da1.items():
                    for (q1, q2), cq in db2.items():
                        x = B.pair_terms(p1[0], p1[1], q2[0], q2[1])
                        if not x:
                            continue
                        for (r1, r2), cr in db1.items():
                            for (s1, s2), cs in da2.items():
                                y = B.pair_terms(r2[0], r2[1], s1[0], s1[1])
                                if not y:
                                    continue
                                left = B.mul({p2: ONE}, {r1: ONE})
                                right = B.mul({s2: ONE}, {q1: ONE})
                                k = c * e * cp * cq * cr * cs * x * y
                                for lt, lc in left.items():
                                    for rt, rc in right.items():
                                        _add_to(out, (lt, rt), k * lc * rc)
        return out

    def base_borel(self):
        return borel_algebra(self.base)

    def element(self, terms):
        return TUElement(self, terms)

    def to_str(self, x):
        return tu_str(self, x)

    def parse(self, text):
        return tu_parse(self, text)


def tu_str(alg, x):
    m = alg.m
    items = sorted(x.items(), key=lambda t: (len(t[0][1]), t[0][1], t[0][0]))
    terms = []
    for (al, w), c in items:
        nz = [k for k, a in enumerate(al) if a]
        if not w and not nz:
            terms.append((c, ""))
        elif not w and len(nz) == 1:
            k = nz[0]
            name = "K[%d]" % (k + 1) if k < m else "K'[%d]" % (k - m + 1)
            terms.append((c, name if al[k] == 1 else "%s^%d" % (name, al[k])))
        elif len(w) == 1 and not nz:
            j = w[0]
            terms.append((c, "E[%d]" % (j + 1) if j < m else "F[%d]" % (j - m + 1)))
        else:
            (((a1, x1), (a2, x2)), _), = alg.to_tu({(al, w): ONE}).items()
            terms.append((c, "[%s | %s]" % (term_str(a1, x1) or "1", term_str(a2, x2) or "1")))
    return format_terms(terms)


def tu_parse(alg, text):
    import re
    m = alg.m
    out = {}
    for c, mono in parse_terms(text):
        mono = mono.strip()
        if mono.startswith("["):
            left, right = mono[1:-1].split("|")
            l = parse_monomial(m, left.strip())
            r = parse_monomial(m, right.strip())
            _axpy(out, c, alg.from_tu({(l, r): ONE}))
            continue
        al = [0] * (2 * m)
        word = ()
        if mono and mono != "1":
            for factor in mono.split("*"):
                factor = factor.strip()
                g = re.fullmatch(r"(K'|K|E|F)\[(\d+)\](?:\^(-?\d+))?", factor)
                if not g:
                    raise ValueError("cannot parse %r" % factor)
                i = int(g.group(2)) - 1
                p = int(g.group(3)) if g.group(3) else 1
                if g.group(1) == "K":
                    al[i] += p
                elif g.group(1) == "K'":
                    al[m + i] += p
                elif g.group(1) == "E":
                    word += (i,)
                else:
                    word += (i + m,)
        for w2, e in alg.f.nf_word(word).items():
            _add_to(out, (tuple(al), w2), c * e)
    return out


class TUElement(IElement):
    """Element of the double; * is the diagonal star product."""

    __slots__ = ()

    def tu_terms(self):
        return self.alg.to_tu(self.terms)


_DREG = {}


def double_algebra(base):
    key = base.key()
    a = _DREG.get(key)
    if a is None:
        a = DoubleAlgebra(base)
        _DREG[key] = a
    return a
