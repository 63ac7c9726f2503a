import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import laurent

from iquantum import dcb
from iquantum.braid import from_f
from iquantum.cartan import satake
from iquantum.dcb import (ConventionError, TriangularityError, a2_closed_form, a2_keys,
                          a2_root_elements, appendix_a_compare, appendix_a_table,
                          bullet_product, circ_product, dcb_double, dcb_f, dcb_iquantum,
                          dcb_specialize, dcb_symmetry_check, heisenberg_formula,
                          heisenberg_mul, lusztig_lemma_solve, positivity_report,
                          specialize_element, specialized_bar, split_bar_antisymmetric,
                          table_invariants)
from iquantum.ihopf import double_algebra, ihopf
from iquantum.scalars import ONE, ZERO, u, v

A1 = satake("A1")
A2 = satake("A2")
QS = satake("A2", "1:2")


@pytest.fixture(scope="module")
def qs_table():
    return dcb_iquantum(QS, 4)


def _sub(a, b):
    out = dict(a)
    for k, c in b.items():
        y = out.get(k, ZERO) - c
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def _scale(x, c):
    return {k: c * e for k, e in x.items()}


# -- solver

def test_split_bar_antisymmetric():
    assert split_bar_antisymmetric(v() - v(-1)) == -v(-1)
    assert split_bar_antisymmetric(v() - v(-1), ring="plus") == v()
    assert split_bar_antisymmetric(ZERO) == ZERO
    with pytest.raises(ConventionError):
        split_bar_antisymmetric(v() + v(-1))
    with pytest.raises(ConventionError):
        split_bar_antisymmetric(u(1) - u(-1))
    assert split_bar_antisymmetric(u(1) - u(-1), allow_half=True) == -u(-1)


@given(laurent(span=8))
def test_split_is_unique_solution(p):
    # any q in v^-1 Z[v^-1] is recovered from q - bar(q)
    q = dcb.Scalar.from_terms({k: c for k, c in p.terms().items() if k < 0 and k % 2 == 0
                                and c.denominator == 1})
    assert split_bar_antisymmetric(q - q.bar()) == q


def test_solver_single_key():
    out = lusztig_lemma_solve(["x"], {"x": {"x": ONE}})
    assert out == {"x": {"x": ONE}}


def test_solver_sl2_double_slice():
    # bar(s) = s + (v - v^-1)(K + K'), with K, K' bar-fixed
    c = v() - v(-1)
    barm = {"s": {"s": ONE, "K": c, "Kp": c}, "K": {"K": ONE}, "Kp": {"Kp": ONE}}
    out = lusztig_lemma_solve(["s", "K", "Kp"], barm)
    assert out["s"] == {"s": ONE, "K": -v(-1), "Kp": -v(-1)}


def test_solver_rejects_non_unitriangular():
    with pytest.raises(TriangularityError):
        lusztig_lemma_solve(["x"], {"x": {"x": v()}})
    c = v() - v(-1)
    with pytest.raises(TriangularityError):
        lusztig_lemma_solve(["x", "y"], {"x": {"x": ONE, "y": c}, "y": {"y": ONE, "x": c}})
    with pytest.raises(TriangularityError):
        lusztig_lemma_solve(["x", "y"], {"x": {"x": ONE, "y": c}, "y": {"y": ONE}},
                            above=lambda a, b: False)


@st.composite
def unitriangular(draw, n=4):
    """c = P s with P unitriangular and strict, together with bar(s) = bar(P)^-1 P s."""
    P = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            terms = draw(st.dictionaries(st.integers(-3, -1), st.integers(-2, 2), max_size=2))
            P[i][j] = dcb.Scalar.from_terms({2 * k: c for k, c in terms.items()})
    # inverse of the unitriangular bar(P), by back substitution
    Pb = [[x.bar() for x in row] for row in P]
    inv = [[ZERO] * n for _ in range(n)]
    for i in reversed(range(n)):
        inv[i][i] = ONE
        for j in range(i + 1, n):
            inv[i][j] = -sum((Pb[i][k] * inv[k][j] for k in range(i + 1, j + 1)), ZERO)
    barm = {}
    for i in range(n):
        row = {}
        for j in range(n):
            c = sum((inv[i][k] * P[k][j] for k in range(n)), ZERO)
            if c:
                row[j] = c
        barm[i] = row
    return P, barm


@given(unitriangular(), st.integers(0, 20))
def test_solver_recovers_expansion(data, seed):
    P, barm = data
    n = len(P)
    above = lambda x, y: y > x  # noqa: E731
    for kwargs in ({}, {"seed": seed}):
        out = lusztig_lemma_solve(range(n), barm, above, **kwargs)
        for i in range(n):
            assert out[i] == {j: P[i][j] for j in range(n) if P[i][j]}


# -- f

def test_a2_closed_form_height_6():
    F = dcb_f(A2)
    basis = dcb_f(A2, 6)
    elems = {frozenset(x.items()) for mu in basis for _, x in basis[mu]}
    closed = {frozenset(a2_closed_form(A2, a).items()) for a in a2_keys(6)}
    assert elems == closed
    assert len(elems) == 50
    assert F.find(a2_closed_form(A2, (1, 0, 0, 0))) is not None


def test_a2_closed_form_examples():
    t12, _ = a2_root_elements(A2)
    f = dcb_f(A2).f
    assert a2_closed_form(A2, (1, 0, 0, 0)) == {(0,): ONE}
    assert a2_closed_form(A2, (1, 0, 1, 0)) == _scale(f.mul({(0,): ONE}, t12), u(-1))


def test_a1_basis_is_powers():
    basis = dcb_f(A1, 6)
    for (n,), items in basis.items():
        assert items == [((n,), {(0,) * n: ONE})]


def test_f_basis_bar_invariant_b2():
    F = dcb_f(satake("B2"))
    f = F.f
    for mu, items in dcb_f(satake("B2"), 5).items():
        for _, x in items:
            assert f.bar(x) == x


def test_word_override_gives_same_basis():
    b1 = dcb_f(A2, 4)
    b2 = dcb_f(A2, 4, word=(1, 0, 1))
    for mu in b1:
        assert {frozenset(x.items()) for _, x in b1[mu]} == \
            {frozenset(x.items()) for _, x in b2[mu]}


# -- iHopf tables

def test_theta12_entry(qs_table):
    T = qs_table
    A = T.alg
    t12, t21 = a2_root_elements(QS)
    for t, kap in ((t12, (1, 0)), (t21, (0, 1))):
        expect = _sub(A.iota(t), _scale(A.kappa(kap), v(-1)))
        assert T.find(expect) is not None


def test_table_invariants(qs_table):
    assert table_invariants(qs_table) == []
    assert table_invariants(dcb_iquantum(satake("A1"), 4)) == []
    assert table_invariants(dcb_iquantum(satake("A3", "1:3"), 3)) == []


def test_kshift_rule(qs_table):
    T = qs_table
    for (al, a) in T.keys():
        assert T[(al, a)] == T.alg.kdiamond(al, T[(QS.zero(), a)])


def test_route_and_extension_independence():
    ref = dcb_iquantum(QS, 4)
    pbw = dcb_iquantum(QS, 4, route="pbw")
    scrambled = dcb_iquantum(QS, 4, seed=7)
    for k in ref.keys():
        assert pbw[k] == ref[k]
        assert scrambled[k] == ref[k]


def test_symmetries(qs_table):
    rep = dcb_symmetry_check(qs_table)
    for name, (checked, bad) in rep.items():
        assert checked > 0 and bad == [], name


def test_sigma_swaps_root_entries(qs_table):
    T = qs_table
    A = T.alg
    t12, t21 = a2_root_elements(QS)
    c12 = _sub(A.iota(t12), _scale(A.kappa((1, 0)), v(-1)))
    c21 = _sub(A.iota(t21), _scale(A.kappa((0, 1)), v(-1)))
    assert A.sigma(c12) == c21
    assert A.tau(c12) == c21


def test_specialization(qs_table):
    A = qs_table.alg
    kk = A.star(A.kappa((1, 0)), A.kappa((0, 1)))
    assert specialize_element(QS, kk) == {((0,), ()): ONE}
    spec = dcb_specialize(qs_table)
    assert spec
    for x in spec.values():
        assert specialized_bar(QS, x) == x
    S = satake("A1")
    assert specialize_element(S, ihopf(S).kappa((1,))) == {((), ()): ONE}


def test_sl2_double_entry():
    T = dcb_double(A1, 2)
    D = T.alg
    # ϑ⊗ϑ - v^-1 K - v^-1 K'
    expect = _sub(from_f(D, {(0, 1): ONE}), _scale(D.K((1,)), v(-1)))
    expect = _sub(expect, _scale(D.Kp((1,)), v(-1)))
    assert T.find(expect) is not None


# -- Heisenberg doubles

def test_heisenberg_formula_matches_double():
    D = double_algebra(A1)
    for n in range(3):
        for m in range(3):
            x = {(0,) * n: ONE}
            y = {(0,) * m: ONE}
            xp = from_f(D, x)
            ym = from_f(D, y, minus=True)
            assert heisenberg_formula(A1, "-", x, y) == heisenberg_mul(A1, "-", xp, ym)
            assert heisenberg_formula(A1, "+", x, y) == heisenberg_mul(A1, "+", ym, xp)


def test_heisenberg_pure_products():
    D = double_algebra(A2)
    xp = from_f(D, {(0, 1): ONE})
    ym = from_f(D, {(1,): ONE}, minus=True)
    tensor = D.from_tu({(((0, 0), (0, 1)), ((0, 0), (1,))): ONE})
    # y^- *^- x^+ and x^+ *^+ y^- are pure tensors
    assert heisenberg_mul(A2, "-", ym, xp) == tensor
    assert heisenberg_mul(A2, "+", xp, ym) == tensor


def test_circ_unit():
    circ = circ_product(A1, "+", 3)
    for (al, a, b), el in circ.entries.items():
        if not any(al) and not any(b):
            D = double_algebra(A1)
            assert el == from_f(D, dcb_f(A1).element(a))


@pytest.mark.parametrize("base", [A1, A2], ids=["sl2", "A2"])
def test_bullet_equals_dcb(base):
    h = 4 if base.n == 1 else 3
    T = dcb_double(base, h)
    for sign in "+-":
        b = bullet_product(base, sign, h)
        for (al, be, a, c), el in b.entries.items():
            assert T[(tuple(be) + tuple(al), a + c)] == el


# -- closed rank-one recursions

def test_appendix_seeds():
    tab = appendix_a_table(2, "plain")
    A = ihopf(QS)
    t12, t21 = a2_root_elements(QS)
    assert tab[(0, 0, 1, 0)] == _sub(A.iota(t12), _scale(A.kappa((1, 0)), v(-1)))
    assert tab[(0, 0, 0, 1)] == _sub(A.iota(t21), _scale(A.kappa((0, 1)), v(-1)))


def test_appendix_products():
    tab = appendix_a_table(4, "plain")
    A = ihopf(QS)
    c1, c12, c21 = tab[(1, 0, 0, 0)], tab[(0, 0, 1, 0)], tab[(0, 0, 0, 1)]
    kk = A.star(A.kappa((1, 0)), A.kappa((0, 1)))
    assert tab[(0, 0, 1, 1)] == _sub(A.star(c12, c21), kk)
    assert tab[(1, 0, 1, 0)] == _scale(A.star(c1, c12), u(-1))


def test_plain_recursions_match_table():
    T = dcb_iquantum(QS, 6)
    common, bad = appendix_a_compare(T, appendix_a_table(6, "plain"))
    assert common == 50 and bad == []


def test_delta_term_breaks_strictness():
    # with the extra term, C_{ϑ1ϑ12} differs from the basis element by another
    # basis element with coefficient -1, which uniqueness rules out
    T = dcb_iquantum(QS, 3)
    x = appendix_a_table(3, "delta")[(1, 0, 1, 0)]
    k = T.find(appendix_a_table(3, "plain")[(1, 0, 1, 0)])
    a1 = dcb_f(QS).find({(0,): ONE})
    assert k is not None
    assert x == _sub(T[k], T[((1, 0), a1)])
    assert T.find(x) is None


# -- positivity and conventions

def test_positivity(qs_table):
    rep = positivity_report(qs_table)
    assert rep["checked"] > 0
    assert rep["nonpositive"] == []


def test_positivity_empty_table():
    T = dcb_iquantum(QS, 1)
    T.entries.clear()
    rep = positivity_report(T)
    assert rep["checked"] == 0 and rep["nonpositive"] == []


def test_conventions_pinned(monkeypatch):
    dcb.check_conventions()
    h = dcb.convention_hash()
    assert len(h) == 16 and h == dcb.convention_hash()
    monkeypatch.setitem(dcb.PINNED, "bar h1", "(u^2)*h[1]")
    with pytest.raises(ConventionError):
        dcb.check_conventions()


def test_json_deterministic(qs_table):
    assert qs_table.to_json() == dcb_iquantum(QS, 4).to_json()


def test_elements_round_trip(qs_table):
    A = qs_table.alg
    for k in qs_table.keys():
        x = qs_table[k]
        assert A.parse(A.to_str(x)) == x


@given(st.sampled_from([(0, 0, 1, 0), (1, 0, 1, 0), (0, 2, 0, 1), (0, 0, 1, 1)]))
def test_closed_form_in_basis(a):
    assert dcb_f(A2).find(a2_closed_form(A2, a)) is not None
