import pytest
from hypothesis import given
from strategies import ihopf_elements

from iquantum.cartan import satake
from iquantum.ihopf import IElement, double_algebra, ihopf
from iquantum.scalars import ONE, u, v

QS = satake("A2", "1:2")
A_QS = ihopf(QS)
A_A2 = ihopf(satake("A2"))
A_B2 = ihopf(satake("B2"))
D1 = double_algebra(satake("A1"))
D_QS = double_algebra(QS)


def _sub(a, b):
    out = dict(a)
    for k, c in b.items():
        y = out.get(k, 0) - c
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def test_star_examples():
    A = A_QS
    c = v() - v(-1)
    assert A.star(A.theta(0), A.theta(1)) == {((0, 0), (0, 1)): ONE, ((0, 1), ()): c}
    assert A.star(A.theta(1), A.theta(0)) == {((0, 0), (1, 0)): ONE, ((1, 0), ()): c}
    assert A.star(A.theta(0), A.theta(0)) == {((0, 0), (0, 0)): ONE}
    # h_α * h_β = v^{(α,τβ)} h_{α+β}
    assert A.star(A.h((1, 0)), A.h((0, 1))) == {((1, 1), ()): v(2)}
    x = {((1, 0), (0, 1)): v(3)}
    assert A.star(A.one(), x) == x and A.star(x, A.one()) == x


def test_kappa_and_diamond():
    A = A_QS
    assert A.kappa((1, 0)) == {((0, 1), ()): u(-1)}
    assert A.kappa((0, 0)) == A.one()
    assert ihopf(satake("A1")).kappa((1,)) == {((1,), ()): v(1)}
    assert A_B2.kappa((1, 0)) == {((1, 0), ()): v(2)}
    assert A.diamond((0, 0), A.theta(0)) == A.theta(0)
    assert A.kdiamond((1, 0), A.one()) == A.kappa((1, 0))
    assert A.diamond((1, 0), A.theta(0)) == {((1, 0), (0,)): u(-3)}


def test_kappa_orbit_product_is_central():
    # 𝕂_i * 𝕂_τi is central
    A = A_QS
    k = A.star(A.kappa((1, 0)), A.kappa((0, 1)))
    for i in range(2):
        assert A.star(k, A.theta(i)) == A.star(A.theta(i), k)


def test_bar_and_sigma_examples():
    A = A_QS
    assert A.bar(A.theta(0)) == A.theta(0)
    assert A.bar(A.h((1, 0))) == {((1, 0), ()): v(-1)}
    assert A.sigma(A.theta(0)) == A.theta(0)
    assert A.sigma(A.h((1, 0))) == A.h((0, 1))
    assert A.sigma(A.iota({(0, 1): ONE})) == A.iota({(1, 0): ONE})


def test_double_commutator():
    D = D1
    comm = _sub(D.star(D.E(0), D.F(0)), D.star(D.F(0), D.E(0)))
    K = D.K((1,))
    Kp = D.Kp((1,))
    assert comm == {k: (v(-1) - v()) * c for k, c in _sub(K, Kp).items()}
    # E*F = E⊗F + (v - v^-1) K'
    assert D.star(D.E(0), D.F(0)) == {((0, 0), (0, 1)): ONE, ((0, 1), ()): v() - v(-1)}


def test_double_embeds_positive_part():
    D = D_QS
    assert D.star(D.E(0), D.E(1)) == {((0, 0, 0, 0), (0, 1)): ONE}
    assert D.to_tu(D.star(D.E(0), D.E(1))) == {(((0, 0), (0, 1)), ((0, 0), ())): ONE}


def test_xi_tau_examples():
    A = A_QS
    D = D_QS
    assert A.xi_tau(A.one(), D) == D.one()
    # ξ(ϑ_1) = F_1 + v^-1 E_2 K'_1
    assert A.xi_tau(A.theta(0), D) == {((0, 0, 0, 0), (2,)): ONE, ((0, 0, 1, 0), (1,)): v(-1)}
    # ξ(h_1) lands on K_τ1 K'_1
    assert A.xi_tau(A.h((1, 0)), D) == {((0, 1, 1, 0), ()): v(-1)}


def test_diagonal_formula_agrees_with_star():
    D = D1
    gens = [((0,), ()), ((1,), ()), ((0,), (0,)), ((1,), (0,)), ((0,), (0, 0))]
    for a1 in gens:
        for b2 in gens:
            a = {(a1, ((0,), ())): ONE}
            b = {(((0,), ()), b2): ONE}
            lhs = D.star(D.from_tu(a), D.from_tu(b))
            rhs = D.from_tu(D.star_diagonal_tu(a, b))
            assert lhs == rhs


def test_parse_round_trip():
    A = A_QS
    x = A.star(A.theta(0), A.star(A.theta(1), A.h((1, -1))))
    assert A.parse(A.to_str(x)) == x
    D = D1
    y = D.star(D.E(0), D.F(0))
    assert D.parse(D.to_str(y)) == y


def test_ielement_operators():
    A = A_QS
    t1 = IElement(A, A.theta(0))
    t2 = IElement(A, A.theta(1))
    assert (t1 * t2).terms == A.star(A.theta(0), A.theta(1))
    assert (t1 * t2 - t1 * t2).terms == {}
    assert (2 * t1).terms == {((0, 0), (0,)): 2 * ONE}
    assert (t1 * t2).bar() == IElement(A, A.bar(A.star(A.theta(0), A.theta(1))))


@pytest.mark.parametrize("A", [A_QS, A_A2], ids=["qs", "split"])
def test_recursive_star_matches(A):
    f = A.f
    for mu in [(1, 1), (2, 1), (1, 2)]:
        for w in f.basis(mu).words:
            for i in range(2):
                x = {w: ONE}
                assert A.star_recursive(i, x, "L") == A.star(A.theta(i), A.iota(x))
                assert A.star_recursive(i, x, "R") == A.star(A.iota(x), A.theta(i))


@given(ihopf_elements(A_QS, 2), ihopf_elements(A_QS, 2), ihopf_elements(A_QS, 2))
def test_star_associative_qs(a, b, c):
    A = A_QS
    assert A.star(A.star(a, b), c) == A.star(a, A.star(b, c))


@given(ihopf_elements(A_B2, 2), ihopf_elements(A_B2, 2), ihopf_elements(A_B2, 2))
def test_star_associative_b2(a, b, c):
    A = A_B2
    assert A.star(A.star(a, b), c) == A.star(a, A.star(b, c))


@given(ihopf_elements(A_QS, 2), ihopf_elements(A_QS, 2))
def test_bar_sigma_psi(a, b):
    A = A_QS
    ab = A.star(a, b)
    assert A.bar(A.bar(a)) == a
    assert A.bar(ab) == A.star(A.bar(b), A.bar(a))
    assert A.sigma(A.sigma(a)) == a
    assert A.sigma(ab) == A.star(A.sigma(b), A.sigma(a))
    assert A.sigma(a) == A.sigma_recursive(a)
    assert A.psi(a) == A.bar(A.sigma(a))
    assert A.tau(ab) == A.star(A.tau(a), A.tau(b))


@given(ihopf_elements(A_QS, 2, maxlen=2), ihopf_elements(A_QS, 2, maxlen=2))
def test_xi_tau_multiplicative(a, b):
    A = A_QS
    D = D_QS
    assert A.xi_tau(A.star(a, b), D) == D.star(A.xi_tau(a, D), A.xi_tau(b, D))
