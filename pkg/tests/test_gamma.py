import json
import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from lagperm import gamma as G
from lagperm.errors import NotGammaExpandable, SizeTooLarge
from lagperm.gamma import QTPolynomial as Q

ONE_T = Q({(0, 0): 1, (0, 1): 1})
N4_GAMMA1 = Q.from_q_coeffs([0, 2, 3, 2, 1])  # 2q + 3q^2 + 2q^3 + q^4

polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-5, 5), max_size=6
).map(Q)
qpolys = st.lists(st.integers(-5, 5), max_size=5).map(Q.from_q_coeffs)


def evaluate(p, q, t):
    return sum(c * q ** a * t ** b for (a, b), c in p.terms)


class TestArithmetic:
    def test_square(self):
        assert ONE_T * ONE_T == Q({(0, 0): 1, (0, 1): 2, (0, 2): 1})

    def test_eval_t(self):
        p = Q({(0, 0): 1, (1, 1): 1})  # 1 + qt
        assert G.poly_eval_t(p, -1) == Q({(0, 0): 1, (1, 0): -1})
        assert G.poly_eval_t(ONE_T ** 3, 1) == Q.const(8)

    def test_laurent(self):
        # 1 + qt at t = -1/q is 1 - 1 = 0; 1 + t at t = -1/q is 1 - q^-1
        assert G.eval_t_laurent(Q({(0, 0): 1, (1, 1): 1}), -1, -1) == {}
        assert G.eval_t_laurent(ONE_T, -1, -1) == {-1: -1, 0: 1}

    def test_canonical_form(self):
        p = Q({(1, 0): 2, (2, 2): 0}) + Q({(1, 0): -2})
        assert p.is_zero() and p.terms == ()
        with pytest.raises(ValueError):
            Q({(-1, 0): 1})

    def test_printer(self):
        assert str(N4_GAMMA1) == "2q + 3q^2 + 2q^3 + q^4"
        assert str(Q({(0, 0): 1, (1, 0): -1})) == "1 - q"
        assert str(Q({(2, 1): -3, (0, 0): 1})) == "1 - 3q^2t"
        assert str(Q()) == "0"

    def test_json(self):
        p = Q({(1, 2): 3, (0, 0): 1, (4, 0): -2})
        data = p.to_json(n=3)
        assert data == {"n": 3, "terms": [{"q": 0, "t": 0, "c": 1}, {"q": 4, "t": 0, "c": -2},
                                          {"q": 1, "t": 2, "c": 3}]}
        assert Q.from_json(json.loads(json.dumps(data))) == p

    @given(polys, polys, st.integers(-3, 3), st.integers(-3, 3))
    def test_ring_ops_match_evaluation(self, a, b, q, t):
        assert evaluate(a + b, q, t) == evaluate(a, q, t) + evaluate(b, q, t)
        assert evaluate(a - b, q, t) == evaluate(a, q, t) - evaluate(b, q, t)
        assert evaluate(a * b, q, t) == evaluate(a, q, t) * evaluate(b, q, t)
        assert evaluate(G.poly_eval_t(a, t), q, 0) == evaluate(a, q, t)


class TestGeneratingFunctions:
    def test_n4_display(self):
        assert G.qt_eulerian(4) == ONE_T ** 3 + N4_GAMMA1 * Q.t() * ONE_T

    def test_trivial(self):
        assert G.qt_eulerian(1) == Q.const(1)
        assert G.qt_descent_polynomial(1) == Q.const(1)

    def test_eulerian_numbers(self):
        assert [c for _, c in G.qt_eulerian(4).at_q1().terms] == oracles.eulerian_by_des(4)

    def test_n3_by_brute_force(self):
        # direct tally over S_3 via the oracle statistics
        want = {}
        for w in oracles.perms(3):
            d = sum(1 for i in range(2) if w[i] > w[i + 1])
            key = (2 * oracles.pattern_2_13(w) + oracles.pattern_31_2(w), d)
            want[key] = want.get(key, 0) + 1
        assert G.qt_descent_polynomial(3) == Q(want) == G.qt_eulerian(3)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_descent_equals_excedance_form(self, n):
        assert G.qt_descent_polynomial(n) == G.qt_eulerian(n)

    def test_size_guard(self):
        for bad in (0, 10):
            with pytest.raises(SizeTooLarge):
                G.qt_eulerian(bad)
            with pytest.raises(SizeTooLarge):
                G.gamma_de(bad)

    def test_parallel_scan_matches_serial(self):
        assert G.qt_eulerian(7, workers=3) == G.qt_eulerian(7)


class TestGammaExpand:
    def test_n4(self):
        g = G.gamma_expand(G.qt_eulerian(4), 4)
        assert g.gammas == (Q.const(1), N4_GAMMA1)
        assert g.to_json() == {"n": 4, "gamma": [[1], [0, 2, 3, 2, 1]]}
        assert str(g) == "k=0: 1 | k=1: 2q + 3q^2 + 2q^3 + q^4"

    def test_trivial(self):
        assert G.gamma_expand(Q.const(1), 1).gammas == (Q.const(1),)

    def test_not_expandable(self):
        with pytest.raises(NotGammaExpandable):
            G.gamma_expand(Q.t(2), 3)
        with pytest.raises(NotGammaExpandable):
            G.gamma_expand(Q.t(3), 3)

    @given(st.integers(1, 7).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(qpolys, min_size=(n + 1) // 2, max_size=(n + 1) // 2))))
    @settings(max_examples=60)
    def test_expand_recovers_coefficients(self, n_gammas):
        n, gammas = n_gammas
        p = Q()
        for k, g in enumerate(gammas):
            for j in range(n - 2 * k):
                p = p + g * Q.t(k + j) * math.comb(n - 1 - 2 * k, j)
        assert G.gamma_expand(p, n).gammas == tuple(gammas)

    def test_json_round_trip(self):
        g = G.gamma_de(6)
        assert G.GammaExpansion.from_json(json.loads(json.dumps(g.to_json()))) == g


class TestModels:
    def test_gamma_de(self):
        assert G.gamma_de(4).gammas == (Q.const(1), N4_GAMMA1)
        assert G.gamma_de(1).gammas == (Q.const(1),)

    def test_gamma_dd_at_q1(self):
        assert G.gamma_dd(4).at_q1() == (1, 8)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_main_expansion(self, n):
        de = G.gamma_de(n)
        assert G.gamma_expand(G.qt_eulerian(n), n) == de
        assert de.is_positive()
        assert sum(g * 2 ** (n - 1 - 2 * k) for k, g in enumerate(de.at_q1())) == math.factorial(n)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_descent_expansion(self, n):
        dd = G.gamma_dd(n)
        assert G.gamma_expand(G.qt_descent_polynomial(n), n) == dd
        assert dd.is_positive()


class TestTangent:
    def test_boustrophedon_matches_tan_series(self):
        assert [G.tangent_number(k) for k in range(1, 6)] == [1, 2, 16, 272, 7936]

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_even_vanishes(self, n):
        assert G.q_tangent_via_sign(n).is_zero()
        assert G.q_tangent_via_de(n).is_zero()

    @pytest.mark.parametrize("n", [1, 3, 5, 7])
    def test_odd_agree(self, n):
        a = G.q_tangent_via_sign(n)
        assert a == G.q_tangent_via_de(n) == G.q_tangent_via_alternating(n)
        k = (n - 1) // 2
        assert sum(c for _, c in a.terms) == (-1) ** k * G.tangent_number(k + 1)

    def test_n3(self):
        assert G.q_tangent_via_de(3) == Q({(1, 0): -1, (2, 0): -1})
        assert sum(c for _, c in G.q_tangent_via_de(3).terms) == -2
