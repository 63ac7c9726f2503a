"""Verification suites shared by the command line and the test-suite.

Each suite returns a Result; report-only suites never set ok to False.
"""

import random

from .braid import (BraidOperator, from_f, in_plus, k_matrix_residual, lusztig_T_word,
                    quasi_k_matrix, rank1_generators, rel_braid_T, rel_braid_word, to_f)
from .cartan import satake
from .dcb import (appendix_a_compare, appendix_a_table, bullet_product, dcb_double,
                  dcb_iquantum, dcb_symmetry_check, positivity_report, qs_sl3,
                  table_invariants, weights_up_to)
from .falgebra import _axpy, falgebra
from .linalg import rank
from .ihopf import double_algebra, ihopf
from .scalars import ONE, u, v


class Result:
    def __init__(self, name, ok=True, checked=0, failures=None, info="", report_only=False):
        self.name = name
        self.ok = ok
        self.checked = checked
        self.failures = failures or []
        self.info = info
        self.report_only = report_only

    def fail(self, what):
        self.failures.append(what)
        if not self.report_only:
            self.ok = False

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        if self.report_only:
            status = "REPORT"
        s = "%s %s: %d checks" % (status, self.name, self.checked)
        if self.failures:
            s += ", %d failures (first: %s)" % (len(self.failures), self.failures[0])
        if self.info:
            s += "; " + self.info
        return s


def _label(datum):
    if any(datum.tau[i] != i for i in range(datum.n)):
        return "%s,tau=%s" % (datum.name, datum.tau_text)
    return datum.name


def _sub(a, b):
    out = dict(a)
    _axpy(out, -ONE, b)
    return out


# -- f, pairing and products

def serre(datum):
    """Serre relations vanish in f and, for E and F, in the double."""
    res = Result("serre[%s]" % _label(datum))
    f = falgebra(datum)
    D = double_algebra(datum)
    m = datum.n
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            raw = f.serre_element(i, j)
            res.checked += 1
            if f.normal_form(raw):
                res.fail(("f", i, j))
            for shift, name in ((0, "E"), (m, "F")):
                out = {}
                for w, c in raw.items():
                    _axpy(out, c, D.star_many(*[{(D.zero_wt, (k + shift,)): ONE} for k in w]))
                res.checked += 1
                if out:
                    res.fail((name, i, j))
    return res


def double_relations(datum):
    """The defining relations of the double on its generators."""
    res = Result("double-relations[%s]" % _label(datum))
    D = double_algebra(datum)
    m = datum.n
    star = D.star
    for i in range(m):
        si = datum.simple(i)
        di = datum.d[i]
        Ki, Kpi = D.K(si), D.Kp(si)
        for j in range(m):
            sj = datum.simple(j)
            cij = datum.cartan[i][j]
            Ej, Fj = D.E(j), D.F(j)
            comm = _sub(star(D.E(i), Fj), star(Fj, D.E(i)))
            want = {}
            if i == j:
                _axpy(want, v(-di) - v(di), _sub(Ki, Kpi))
            checks = [
                ("[E,F]", comm, want),
                ("[K,K]", _sub(star(Ki, D.K(sj)), star(D.K(sj), Ki)), {}),
                ("[K,K']", _sub(star(Ki, D.Kp(sj)), star(D.Kp(sj), Ki)), {}),
                ("[K',K']", _sub(star(Kpi, D.Kp(sj)), star(D.Kp(sj), Kpi)), {}),
                ("KE", star(Ki, Ej), {k: c * v(di * cij) for k, c in star(Ej, Ki).items()}),
                ("KF", star(Ki, Fj), {k: c * v(-di * cij) for k, c in star(Fj, Ki).items()}),
                ("K'E", star(Kpi, Ej), {k: c * v(-di * cij) for k, c in star(Ej, Kpi).items()}),
                ("K'F", star(Kpi, Fj), {k: c * v(di * cij) for k, c in star(Fj, Kpi).items()}),
            ]
            for name, lhs, rhs in checks:
                res.checked += 1
                if lhs != rhs:
                    res.fail((name, i + 1, j + 1))
    ser = serre(datum)
    res.checked += ser.checked
    for fl in ser.failures:
        res.fail(fl)
    return res


def kostant(datum, maxht):
    res = Result("kostant[%s]" % _label(datum))
    f = falgebra(datum)
    for mu in weights_up_to(datum.n, maxht):
        res.checked += 1
        if f.dim(mu) != f.kostant(mu):
            res.fail(mu)
    return res


def r_multiplicative(datum, maxht):
    res = Result("r-multiplicative[%s]" % _label(datum))
    f = falgebra(datum)
    for mu in weights_up_to(datum.n, maxht):
        for w in f.basis(mu).words:
            for i in range(datum.n):
                lhs = f.coproduct_r(f.lmul(i, {w: ONE}))
                rhs = f.tensor_mul(f.r_word((i,)), f.r_word(w))
                res.checked += 1
                if lhs != rhs:
                    res.fail((i, w))
    return res


def pairing(datum, maxht):
    """Adjointness φ(xy, z) = φ(x⊗y, r(z)) and nondegeneracy of every slice."""
    from .linalg import rank
    res = Result("pairing[%s]" % _label(datum))
    f = falgebra(datum)
    for mu in weights_up_to(datum.n, maxht):
        words = f.basis(mu).words
        g = f.gram(mu)
        res.checked += 1
        if rank([g[w] for w in words]) != len(words):
            res.fail(("degenerate", mu))
        for z in words:
            rz = f.r_word(z)
            for x in words:
                for k in range(len(x) + 1):
                    a, b = x[:k], x[k:]
                    lhs = f.pairing(f.nf_word(x), {z: ONE})
                    rhs = 0
                    for (z1, z2), c in rz.items():
                        if len(z1) != len(a):
                            continue
                        p = f.pairing(f.nf_word(a), {z1: ONE})
                        if p:
                            rhs = c * p * f.pairing(f.nf_word(b), {z2: ONE}) + rhs
                    res.checked += 1
                    if lhs != rhs:
                        res.fail((x, k, z))
    return res


def _random_element(rng, datum, maxlen=2, cartan=True):
    A = ihopf(datum)
    n = datum.n
    w = tuple(rng.randrange(n) for _ in range(rng.randint(0, maxlen)))
    al = tuple(rng.randint(-1, 1) for _ in range(n)) if cartan else datum.zero()
    out = {}
    c = v(rng.randint(-1, 1)) * rng.choice([1, 2, -1])
    for w2, e in A.f.nf_word(w).items():
        out[(al, w2)] = c * e
    return out


def star_assoc(datum, trials=100, seed=0):
    res = Result("star-assoc[%s]" % _label(datum))
    A = ihopf(datum)
    rng = random.Random(seed)
    for _ in range(trials):
        a, b, c = (_random_element(rng, datum) for _ in range(3))
        res.checked += 1
        if A.star(A.star(a, b), c) != A.star(a, A.star(b, c)):
            res.fail((A.to_str(a), A.to_str(b), A.to_str(c)))
    return res


def bar_checks(datum, trials=50, seed=0):
    res = Result("bar[%s]" % _label(datum))
    A = ihopf(datum)
    rng = random.Random(seed)
    for _ in range(trials):
        a, b = _random_element(rng, datum), _random_element(rng, datum)
        res.checked += 2
        if A.bar(A.bar(a)) != a:
            res.fail(("involution", A.to_str(a)))
        if A.bar(A.star(a, b)) != A.star(A.bar(b), A.bar(a)):
            res.fail(("anti", A.to_str(a), A.to_str(b)))
    return res


def xi_multiplicative(datum, trials=30, seed=0):
    res = Result("xi-multiplicative[%s]" % _label(datum))
    A = ihopf(datum)
    D = double_algebra(datum)
    rng = random.Random(seed)
    for _ in range(trials):
        a = _random_element(rng, datum, cartan=False)
        b = _random_element(rng, datum, cartan=False)
        res.checked += 1
        if A.xi_tau(A.star(a, b), D) != D.star(A.xi_tau(a, D), A.xi_tau(b, D)):
            res.fail((A.to_str(a), A.to_str(b)))
    return res


# -- braid operators

def _generators(D):
    m = D.m
    out = []
    for i in range(m):
        s = D.base.simple(i)
        out += [("E%d" % (i + 1), D.E(i)), ("F%d" % (i + 1), D.F(i)),
                ("K%d" % (i + 1), D.K(s)), ("K'%d" % (i + 1), D.Kp(s))]
    return out


def braid(datum):
    """Braid relations of T̃_i on the generators, and T̃_i T̃_i^{-1} = id."""
    res = Result("braid[%s]" % _label(datum))
    D = double_algebra(datum)
    m = datum.n
    gens = _generators(D)
    for i in range(m):
        T = BraidOperator(datum, i)
        for name, x in gens:
            res.checked += 1
            if T.inverse()(T(x)) != x:
                res.fail(("inverse", i + 1, name))
    for i in range(m):
        for j in range(i + 1, m):
            cij = datum.cartan[i][j] * datum.cartan[j][i]
            mij = {0: 2, 1: 3, 2: 4, 3: 6}[cij]
            w1 = tuple((i, j)[k % 2] for k in range(mij))
            w2 = tuple((j, i)[k % 2] for k in range(mij))
            for name, x in gens:
                res.checked += 1
                if lusztig_T_word(datum, w1, x) != lusztig_T_word(datum, w2, x):
                    res.fail((w1, name))
    return res


def rel_braid(datum, maxlen=3):
    """T̃𝕋_i inverse pairs on generators, and T̃𝕋_w(ϑ_i) = ϑ_{wi} whenever wα_i is simple."""
    res = Result("rel-braid[%s]" % _label(datum))
    A = ihopf(datum)
    reps = datum.representatives()
    for i in reps:
        for j in range(datum.n):
            x = A.theta(j)
            res.checked += 1
            if rel_braid_T(datum, i, rel_braid_T(datum, i, x), -1) != x:
                res.fail(("inverse", i + 1, j + 1))
    for seq, e in datum.restricted_elements(maxlen):
        for i in range(datum.n):
            img = tuple(datum.weyl_act(e, datum.simple(i)))
            js = [j for j in range(datum.n) if datum.simple(j) == img]
            if not js:
                continue
            res.checked += 1
            if rel_braid_word(datum, seq, A.theta(i)) != A.theta(js[0]):
                res.fail((tuple(k + 1 for k in seq), i + 1))
    return res


def k_matrix(datum, bound=4):
    res = Result("k-matrix[%s]" % _label(datum))
    for i in datum.representatives():
        K = quasi_k_matrix(datum, i, bound)
        for j in sorted({i, datum.tau[i]}):
            bad = k_matrix_residual(K, j)
            res.checked += len(K.components)
            for mu in bad:
                res.fail(("equation", j + 1, mu))
        for mu in K.support():
            res.checked += 1
            if tuple(datum.tau_weight(mu)) != tuple(mu):
                res.fail(("support", mu))
    return res


# -- matching the relative braid operator with Lusztig's

def _tau_tau_i(datum, i, word):
    return tuple(datum.tau[datum.tau_i(i, j)] for j in word)


def thm3_match(datum=None, i=0, bound=2, products=20, pairs=20, maxht=5, seed=0):
    """T̃𝕋_i^{-1} = T̃_{r_i}^{-1} on ^σf[i,τi], and both formulas for x u / u x."""
    datum = datum or satake("A3", "1:3")
    res = Result("thm-3-match[%s]" % _label(datum))
    A = ihopf(datum)
    D = double_algebra(datum)
    f = falgebra(datum)
    w = datum.restricted_reflection(i)
    rng = random.Random(seed)

    def tinv(x):
        return to_f(D, lusztig_T_word(datum, w, from_f(D, x), inverse=True))

    def tfwd(x):
        return to_f(D, lusztig_T_word(datum, w, from_f(D, x)))

    gens = rank1_generators(datum, i, bound)
    xs = [x for _, x in gens]
    for key, x in gens:
        res.checked += 1
        if rel_braid_T(datum, i, A.iota(x), -1) != A.iota(tinv(x)):
            res.fail(("generator", key))
    for _ in range(products):
        x = f.mul(rng.choice(xs), rng.choice(xs))
        res.checked += 1
        if rel_braid_T(datum, i, A.iota(x), -1) != A.iota(tinv(x)):
            res.fail(("product",))
    letters = sorted({i, datum.tau[i]})
    small = [x for x in xs if sum(f.weight(next(iter(x)))) < maxht]
    done = 0
    while done < pairs:
        x = rng.choice(small)
        wx = f.weight(next(iter(x)))
        room = maxht - sum(wx)
        uw = tuple(rng.choice(letters) for _ in range(rng.randint(1, room)))
        uel = f.nf_word(uw)
        if not uel:
            continue
        done += 1
        wu = f.weight(uw)
        e = -(datum.bil(datum.tau_weight(wu), wx) + datum.bil(wu, wx))
        shift = tuple(-a for a in datum.tau_weight(datum.tau_i_weight(i, wu)))
        tu = f.nf_word(_tau_tau_i(datum, i, uw))
        # (1) T̃𝕋_i^{-1}(xu)
        lhs = rel_braid_T(datum, i, A.iota(f.mul(x, uel)), -1)
        rhs = A.kdiamond(shift, A.iota(f.mul(tu, tinv(x))))
        res.checked += 1
        if lhs != {k: c * u(e) for k, c in rhs.items()}:
            res.fail(("xu", uw))
        # (2) T̃𝕋_i(u σ(x)) with σ(x) ∈ f[i,τi]
        sx = f.sigma(x)
        lhs = rel_braid_T(datum, i, A.iota(f.mul(uel, sx)), 1)
        rhs = A.kdiamond(tuple(-a for a in datum.tau_i_weight(i, wu)),
                         A.iota(f.mul(tfwd(sx), tu)))
        res.checked += 1
        if lhs != {k: c * u(e) for k, c in rhs.items()}:
            res.fail(("ux", uw))
    return res


def generation(datum, i=0, maxht=4):
    """^σf[i,τi] is spanned by products of the rank-one root vectors.

    Per weight, three dimensions must agree: the span of generator products,
    the kernel cut out by T̃_{r_i}^{-1}(x^+) ∈ U^+, and the dimension forced
    by f ≅ f_{i,τi} ⊗ ^σf[i,τi].
    """
    res = Result("generation[%s,i=%d]" % (_label(datum), i + 1))
    D = double_algebra(datum)
    f = falgebra(datum)
    w = datum.restricted_reflection(i)
    rank_one = {i, datum.tau[i]}
    gens = {}
    for _, x in rank1_generators(datum, i, maxht):
        wt = f.weight(next(iter(x)))
        if sum(wt) <= maxht:
            gens.setdefault(wt, []).append(x)
    weights = weights_up_to(datum.n, maxht)

    def local(mu):
        return all(mu[k] == 0 for k in range(datum.n) if k not in rank_one)

    predicted = {}
    spans = {tuple([0] * datum.n): [{(): ONE}]}
    for mu in weights:
        d = f.dim(mu)
        for nu in weights:
            if any(nu) and local(nu) and all(a <= b for a, b in zip(nu, mu)):
                d -= f.dim(nu) * predicted.get(tuple(b - a for a, b in zip(nu, mu)), 0)
        predicted[mu] = d
        if not any(mu):
            continue
        prods = []
        for gw, xs in gens.items():
            rest = tuple(b - a for a, b in zip(gw, mu))
            if min(rest) < 0:
                continue
            for y in spans.get(rest, []):
                prods.extend(f.mul(x, y) for x in xs)
        spans[mu] = prods
        outside = []
        for word in f.basis(mu).words:
            img = lusztig_T_word(datum, w, from_f(D, {word: ONE}), inverse=True)
            outside.append({k: c for k, c in img.items() if not in_plus(D, {k: c})})
        kernel = f.dim(mu) - rank(outside)
        generated = rank(prods)
        res.checked += 1
        if not generated == kernel == d:
            res.fail((mu, generated, kernel, d))
    return res


# -- canonical bases

def dcb_symmetries(datum, maxwt):
    res = Result("dcb-symmetries[%s]" % _label(datum))
    T = dcb_iquantum(datum, maxwt)
    inv = table_invariants(T)
    res.checked += len(T)
    for x in inv:
        res.fail(x)
    for name, (checked, bad) in dcb_symmetry_check(T).items():
        res.checked += checked
        for b in bad:
            res.fail((name, b))
    return res


def appendix_a(maxdeg=6, variant="delta"):
    res = Result("appendix-a[%s]" % variant)
    T = dcb_iquantum(qs_sl3(), maxdeg)
    common, bad = appendix_a_compare(T, appendix_a_table(maxdeg, variant))
    res.checked = common
    for k in bad:
        res.fail(k)
    return res


def double_coincide(base, maxht=4):
    """b_-∙b_+ = b_+∙b_- = C_{b_+,b_-} entrywise, with all K-shifts."""
    res = Result("double-coincide[%s]" % base.name)
    T = dcb_double(base, maxht)
    for sign in "+-":
        b = bullet_product(base, sign, maxht)
        for (al, be, a, c), el in b.entries.items():
            res.checked += 1
            key = (tuple(be) + tuple(al), a + c)
            if key not in T or T[key] != el:
                res.fail((sign, al, be, a, c))
    return res


def positivity(table, name):
    res = Result("positivity[%s]" % name, report_only=True)
    rep = positivity_report(table)
    res.checked = rep["checked"]
    for x in rep["nonpositive"]:
        res.fail(x)
    return res

