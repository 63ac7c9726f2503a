"""Braid symmetries: Lusztig's operators on the double, root vectors, dual PBW
monomials, relative braid operators on the iHopf algebra, and the rank-one
quasi-K-matrix.

Elements of the double use the coordinates of DoubleAlgebra: a key
(alpha, word) with alpha in Z^{2n} (K part, then K' part) and letters j < n
for E_j, j >= n for F_{j-n}.
"""

from .falgebra import _add_to, _axpy
from .ihopf import Morphism, double_algebra, ihopf
from .linalg import solve
from .scalars import ONE, Scalar, qfact, u, v

__all__ = [
    "BraidError", "BraidOperator", "lusztig_T", "lusztig_T_word", "in_plus", "to_f",
    "from_f", "in_f_itaui", "in_sigma_f_itaui", "root_vectors", "root_vector_weights",
    "dual_pbw", "ad_theta",
    "rank1_root_vector", "rank1_generators", "rel_braid_T", "rel_braid_word",
    "RelBraid", "twist_psi", "scriptT", "quasi_k_matrix", "QuasiKMatrix",
    "k_matrix_residual", "distinguished_parameters",
]


class BraidError(ValueError):
    """An image left the subalgebra it was expected to stay in."""


def _scale(x, c):
    return {k: c * e for k, e in x.items()} if c else {}


class BraidOperator:
    """T'_{i,e} (flavor 'prime') or T''_{i,e} (flavor 'doubleprime') on the double."""

    def __init__(self, datum, i, e=1, flavor="prime"):
        if e not in (1, -1) or flavor not in ("prime", "doubleprime"):
            raise ValueError("bad braid operator")
        self.datum = datum
        self.D = double_algebra(datum)
        self.i = i
        self.e = e
        self.flavor = flavor
        if flavor == "prime":
            self._m = _prime_morphism(self.D, i, e)
        else:
            # T''_{i,e} = σ T'_{i,-e} σ
            self._m = _prime_morphism(self.D, i, -e)

    def inverse(self):
        return BraidOperator(self.datum, self.i, -self.e,
                             "doubleprime" if self.flavor == "prime" else "prime")

    def __call__(self, x):
        if self.flavor == "prime":
            return self._m(x)
        D = self.D
        return D.sigma(self._m(D.sigma(x)))


_PRIME = {}


def _prime_morphism(D, i, e):
    key = (D.datum.key(), i, e)
    m = _PRIME.get(key)
    if m is not None:
        return m
    base = D.base
    n = base.n
    di = base.d[i]
    cvi = v(di) - v(-di)
    si = base.simple(i)
    neg = tuple(-x for x in si)

    def ei_power(s):
        # E_i^{(s)} = E_i^s / [s]_i!
        return _scale(D.star_power(D.E(i), s), qfact(s, di).inverse())

    def gen(j):
        if j == i:
            if e == 1:
                return _scale(D.star(D.Kp(neg), D.F(i)), v(di))
            return _scale(D.star(D.K(neg), D.F(i)), v(-di))
        if j == i + n:
            if e == 1:
                return _scale(D.star(D.E(i), D.K(neg)), v(-di))
            return _scale(D.star(D.E(i), D.Kp(neg)), v(di))
        if j < n:
            c = base.cartan[i][j]
            mk, pow_ = D.E, ei_power
        else:
            j -= n
            c = base.cartan[i][j]
            mk = D.F

            def pow_(s):
                return _scale(D.star_power(D.F(i), s), qfact(s, di).inverse())
        out = {}
        for r in range(-c + 1):
            s = -c - r
            # (-1)^r v_i^{-e(r + c/2)} (v_i - v_i^-1)^c
            coeff = u(-e * di * (2 * r + c)) * cvi ** c
            if r % 2:
                coeff = -coeff
            term = D.star(D.star(pow_(s), mk(j)), pow_(r))
            _axpy(out, coeff, term)
        return out

    def cartan(alpha):
        a = base.reflect(i, alpha[:n])
        b = base.reflect(i, alpha[n:])
        return {(tuple(a) + tuple(b), ()): ONE}

    m = Morphism(D, gen, cartan)
    _PRIME[key] = m
    return m


def lusztig_T(datum, i, x, e=1, flavor="prime"):
    """Apply T̃'_{i,e} (or T̃''_{i,e}) to an element of the double."""
    return BraidOperator(datum, i, e, flavor)(x)


def lusztig_T_word(datum, word, x, inverse=False):
    """T̃_w = T̃_{i1}...T̃_{ik} for w = s_{i1}...s_{ik}; inverse gives T̃_w^{-1}."""
    if inverse:
        for i in word:
            x = BraidOperator(datum, i, -1, "doubleprime")(x)
        return x
    for i in reversed(word):
        x = BraidOperator(datum, i, 1, "prime")(x)
    return x


def in_plus(D, x):
    n = D.m
    return all(not any(al) and all(j < n for j in w) for (al, w) in x)


def to_f(D, x):
    """The f-element of an element of U^+ inside the double."""
    if not in_plus(D, x):
        raise BraidError("element does not lie in U^+")
    f = D.base_borel().f
    out = {}
    for (_, w), c in x.items():
        _axpy(out, c, f.nf_word(w))
    return out


def from_f(D, x, minus=False):
    shift = D.m if minus else 0
    out = {}
    for w, c in x.items():
        for w2, e in D.f.nf_word(tuple(j + shift for j in w)).items():
            _add_to(out, (D.zero_wt, w2), c * e)
    return out


def in_f_itaui(datum, i, x):
    """x ∈ f[i,τi]: T̃_{r_i}(x^+) stays in U^+."""
    D = double_algebra(datum)
    return in_plus(D, lusztig_T_word(datum, datum.restricted_reflection(i), from_f(D, x)))


def in_sigma_f_itaui(datum, i, x):
    """x ∈ ^σf[i,τi]: T̃_{r_i}^{-1}(x^+) stays in U^+."""
    D = double_algebra(datum)
    return in_plus(D, lusztig_T_word(datum, datum.restricted_reflection(i), from_f(D, x),
                                     inverse=True))


# -- root vectors and dual PBW monomials

def root_vector_weights(datum, word):
    return [datum.apply_word(word[:k], datum.simple(word[k])) for k in range(len(word))]


def root_vectors(datum, word):
    """E_{i,k} = T̃_{i1}^{-1}...T̃_{i(k-1)}^{-1}(E_{ik}) as f-elements."""
    D = double_algebra(datum)
    out = []
    for k in range(len(word)):
        x = lusztig_T_word(datum, word[:k][::-1], D.E(word[k]), inverse=True)
        out.append(to_f(D, x))
    return out


def dual_pbw(datum, word, a, roots=None):
    """v^{n/2} ∏ ϑ_{i,k}^{a_k} with n = Σ_{k<l} (β_k, β_l) a_k a_l."""
    from .falgebra import falgebra
    f = falgebra(datum)
    roots = roots or root_vectors(datum, word)
    betas = root_vector_weights(datum, word)
    n = 0
    for k in range(len(a)):
        for l in range(k + 1, len(a)):
            n += datum.bil(betas[k], betas[l]) * a[k] * a[l]
    out = {(): ONE}
    for k, ak in enumerate(a):
        for _ in range(ak):
            out = f.mul(out, roots[k])
    return _scale(out, u(n))


# -- rank-one root vectors

def ad_theta(datum, i, x, m=1):
    """ad(ϑ_i^{(m)})(x), with ad(ϑ_i)(x) = ϑ_i x - v^{(α_i, wt x)} x ϑ_i."""
    from .falgebra import falgebra
    f = falgebra(datum)
    th = {(i,): ONE}
    y = dict(x)
    for _ in range(m):
        nxt = {}
        for wt, part in f.homogeneous(y).items():
            _axpy(nxt, ONE, f.mul(th, part))
            _axpy(nxt, -v(datum.bil_simple(i, wt)), f.mul(part, th))
        y = nxt
    return _scale(y, qfact(m, datum.d[i]).inverse())


def rank1_root_vector(datum, i, j, exps, sigma=False):
    """f'_{i,j;m}, f'_{i,τi,j;m,n} or f'_{i,τi,j;a,b,c}, by the shape of exps.

    The ad-letters alternate i, τi, i, ... from the left; with sigma the
    unprimed f (σ applied) is returned.
    """
    from .falgebra import falgebra
    f = falgebra(datum)
    t = datum.tau[i]
    letters = [i if k % 2 == 0 else t for k in range(len(exps))]
    y = {(j,): ONE}
    for k, m in reversed(list(zip(letters, exps))):
        if m:
            y = ad_theta(datum, k, y, m)
    tot = sum(exps)
    di = datum.d[i]
    y = _scale(y, u(di * tot) * (v(di) - v(-di)) ** (-tot))
    if sigma:
        y = f.sigma(y)
    return y


def rank1_generators(datum, i, bound):
    """The generators f' of ^σf[i,τi] with all exponents <= bound and nonzero."""
    t = datum.tau[i]
    c = datum.cartan[i][t]
    out = []
    for j in range(datum.n):
        if j in (i, t):
            continue
        if c == 2:
            shapes = [(m,) for m in range(bound + 1)]
        elif c == 0:
            shapes = [(m, k) for m in range(bound + 1) for k in range(bound + 1)]
        else:
            shapes = [(a, b, cc) for a in range(bound + 1) for b in range(bound + 1)
                      for cc in range(bound + 1)]
        starts = [i] if c != -1 else [i, t]
        for s in starts:
            for sh in shapes:
                x = rank1_root_vector(datum, s, j, sh)
                if x:
                    out.append(((s, j, sh), x))
    return out


# -- twisting and the twisted Lusztig operator

def _half(a):
    """a^{1/2} for a monomial a = q u^{2k}, q a rational square."""
    a = Scalar.coerce(a)
    if not a.is_monomial():
        raise ValueError("twisting scalars must be monomials")
    ((k, q),) = a.terms().items()
    if k % 2:
        raise ValueError("square root of u^%d is not in the scalar field" % k)
    from gmpy2 import is_square, isqrt, mpq
    q = mpq(q)
    if q < 0 or not (is_square(q.numerator) and is_square(q.denominator)):
        raise ValueError("square root of %s is not rational" % q)
    return Scalar(mpq(isqrt(q.numerator), isqrt(q.denominator))) * u(k // 2)


def twist_psi(datum, a, x, inverse=False):
    """Ψ̃_a: K_i, K'_i, E_i scaled by a_i^{1/2}, F_i fixed."""
    n = datum.n
    roots = [_half(ai) for ai in a]
    if inverse:
        roots = [r.inverse() for r in roots]
    out = {}
    for (al, w), c in x.items():
        deg = [al[k] + al[k + n] for k in range(n)]
        for j in w:
            if j < n:
                deg[j] += 1
        s = c
        for k, dk in enumerate(deg):
            if dk:
                s = s * roots[k] ** dk
        out[(al, w)] = s
    return out


def distinguished_parameters(datum):
    """ς_{i,◇} = v^{-(α_i, α_τi)/2}."""
    return [u(-datum.gram[i][datum.tau[i]]) for i in range(datum.n)]


def scriptT(datum, word, x, inverse=False, params=None):
    """𝒯̃_w = Ψ̃^{-1} T̃_w Ψ̃ for the distinguished parameters.

    Ψ̃ is diagonal in the degree (E-weight + K-weight + K'-weight), and T̃_w
    maps degree γ to w(γ), so 𝒯̃_w = a^{(γ - wγ)/2} T̃_w on degree γ. This
    only needs square roots of the total, which exist whenever the
    composite is defined over Q(v^{1/2}).
    """
    n = datum.n
    a = params or distinguished_parameters(datum)
    loga = []
    for ai in a:
        ((k, q),) = Scalar.coerce(ai).terms().items()
        if q != 1:
            raise ValueError("scriptT needs parameters that are powers of u")
        loga.append(k)
    parts = {}
    for (al, w), c in x.items():
        deg = [al[k] + al[k + n] for k in range(n)]
        for j in w:
            if j < n:
                deg[j] += 1
        parts.setdefault(tuple(deg), {})[(al, w)] = c
    out = {}
    for deg, part in parts.items():
        if inverse:
            img = deg
            for i in word:
                img = datum.reflect(i, img)
        else:
            img = datum.apply_word(word, deg)
        e = sum(loga[k] * (deg[k] - img[k]) for k in range(n))
        if e % 2:
            raise ValueError("twisted operator leaves Q(v^{1/2}) on this degree")
        _axpy(out, u(e // 2), lusztig_T_word(datum, word, part, inverse=inverse))
    return out


# -- relative braid operators on the iHopf algebra

class RelBraid:
    """T̃𝕋_i on the iHopf algebra, defined on generators and extended by Morphism."""

    def __init__(self, datum, i):
        self.datum = datum
        self.A = ihopf(datum)
        self.i = i
        self.word = datum.restricted_reflection(i)
        self._m = Morphism(self.A, self._gen, self._cartan)

    def kappa(self, alpha):
        return self.A.kappa(alpha)

    def _cartan(self, alpha):
        # h_α = v^{-(α,τα)/2} 𝕂_{τα}, and 𝕂_β ↦ 𝕂_{r_i β}
        d = self.datum
        ta = d.tau_weight(alpha)
        img = d.apply_word(self.word, ta)
        return _scale(self.kappa(img), u(-d.bil(alpha, ta)))

    def _gen(self, j):
        d = self.datum
        A = self.A
        i = self.i
        t = d.tau[i]
        if j in (i, t):
            k = j
            other = t if j == i else i
            si = d.simple(i)
            st = d.simple(t)
            e = d.bil(tuple(a - b for a, b in zip(si, st)), si)
            a = d.tau_i(i, k)
            b = d.tau_i(i, other)
            neg = tuple(-x for x in d.simple(a))
            return _scale(A.star(self.kappa(neg), A.theta(b)), u(e))
        D = double_algebra(d)
        img = lusztig_T_word(d, self.word, D.E(j))
        return A.iota(to_f(D, img))

    def __call__(self, x):
        return self._m(x)

    def inverse(self, x):
        A = self.A
        return A.sigma(self._m(A.sigma(x)))


_RB = {}


def _relbraid(datum, i):
    key = (datum.key(), i)
    r = _RB.get(key)
    if r is None:
        r = _RB[key] = RelBraid(datum, i)
    return r


def rel_braid_T(datum, i, x, direction=1):
    r = _relbraid(datum, i)
    return r(x) if direction == 1 else r.inverse(x)


def rel_braid_word(datum, seq, x, inverse=False):
    """T̃𝕋_w for w = r_{i1}...r_{it}: the rightmost operator acts first."""
    if inverse:
        for i in seq:
            x = rel_braid_T(datum, i, x, -1)
        return x
    for i in reversed(seq):
        x = rel_braid_T(datum, i, x, 1)
    return x


# -- quasi-K-matrix

class QuasiKMatrix:
    def __init__(self, datum, i, bound, components):
        self.datum = datum
        self.i = i
        self.bound = bound
        self.components = components

    def __getitem__(self, mu):
        return self.components.get(tuple(mu), {})

    def support(self):
        return sorted(mu for mu, x in self.components.items() if x)


def _rank_one_weights(datum, i, bound):
    t = datum.tau[i]
    out = []
    for a in range(bound + 1):
        for b in range(bound + 1 - a):
            if t == i and b:
                continue
            mu = [0] * datum.n
            mu[i] += a
            mu[t] += b
            out.append(tuple(mu))
    return sorted(set(out), key=lambda m: (sum(m), m))


def _k_equation(D, j, x, y):
    """[F_j, x] + E_τj K'_j y - y K_j E_τj for U^+ elements x, y of the double."""
    datum = D.base
    t = datum.tau[j]
    sj = datum.simple(j)
    out = dict(D.star(D.F(j), x))
    _axpy(out, -ONE, D.star(x, D.F(j)))
    if y:
        _axpy(out, ONE, D.star(D.star(D.E(t), D.Kp(sj)), y))
        _axpy(out, -ONE, D.star(y, D.star(D.K(sj), D.E(t))))
    return out


def quasi_k_matrix(datum, i, bound):
    """Solve B_j Υ = Υ B_j^σ (j in {i, τi}) weight by weight up to height bound."""
    D = double_algebra(datum)
    f = D.base_borel().f
    t = datum.tau[i]
    comps = {datum.zero(): {(): ONE}}
    for mu in _rank_one_weights(datum, i, bound):
        if not any(mu):
            continue
        basis = f.basis(mu).words
        cols = []
        rhs = {}
        for j in sorted({i, t}):
            lower = tuple(m - (1 if k == j else 0) - (1 if k == datum.tau[j] else 0)
                          for k, m in enumerate(mu))
            y = comps.get(lower) if all(x >= 0 for x in lower) else None
            if y:
                known = _k_equation(D, j, {}, from_f(D, y))
                for key, c in known.items():
                    _add_to(rhs, (j, key), -c)
        for w in basis:
            col = {}
            for j in sorted({i, t}):
                for key, c in _k_equation(D, j, from_f(D, {w: ONE}), {}).items():
                    col[(j, key)] = c
            cols.append(col)
        sol = solve(cols, rhs)
        comps[mu] = {w: c for w, c in zip(basis, sol) if c}
    return QuasiKMatrix(datum, i, bound, comps)


def k_matrix_residual(K, j):
    """Components of B_j Υ - Υ B_j^σ whose inputs are all inside the bound."""
    datum = K.datum
    D = double_algebra(datum)
    bad = []
    for mu, x in K.components.items():
        lower = tuple(m - (1 if k == j else 0) - (1 if k == datum.tau[j] else 0)
                      for k, m in enumerate(mu))
        y = K.components.get(lower, {}) if all(a >= 0 for a in lower) else {}
        r = _k_equation(D, j, from_f(D, x), from_f(D, y))
        if r:
            bad.append(mu)
    return bad
