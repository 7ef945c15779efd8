import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

import oracles
from lagperm import perm as P
from lagperm.errors import IndexOutOfRange, InvalidFamilyParams, NotAPermutation, ParseError

SIGMA = P.parse_permutation("432189765")


@st.composite
def permutations(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    return P.Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


class TestConstruction:
    def test_make(self):
        s = P.make_permutation([4, 3, 2, 1, 8, 9, 7, 6, 5])
        assert s.n == 9 and s == SIGMA

    def test_identity_of_one(self):
        assert P.make_permutation([1]) == P.identity(1)

    @pytest.mark.parametrize("word", [[1, 1], [], [0, 1], [1, 3], [2, 2, 1]])
    def test_rejects(self, word):
        with pytest.raises(NotAPermutation):
            P.make_permutation(word)

    def test_text_formats(self):
        assert P.parse_permutation("4,3,2,1,8,9,7,6,5") == SIGMA
        big = P.Permutation(tuple(range(10, 0, -1)))
        assert str(big) == "10,9,8,7,6,5,4,3,2,1"
        assert P.parse_permutation(str(big)) == big
        assert str(SIGMA) == "432189765"

    @pytest.mark.parametrize("text", ["", "12a", "1,,2", "11"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            P.parse_permutation(text)

    def test_boundary_values(self):
        assert SIGMA(0) == 0 and SIGMA(10) == 0 and SIGMA(5) == 8
        with pytest.raises(IndexOutOfRange):
            SIGMA(11)


class TestInverse:
    def test_worked_example(self):
        # not an involution: sigma(5) = 8 but sigma(8) = 6
        assert oracles.inverse(SIGMA.word) == (4, 3, 2, 1, 9, 8, 7, 5, 6)
        assert P.inverse(SIGMA) == P.parse_permutation("432198756")

    def test_small(self):
        assert P.inverse(P.identity(5)) == P.identity(5)
        assert P.inverse(P.parse_permutation("231")) == P.parse_permutation("312")

    @given(permutations())
    def test_matches_oracle(self, s):
        assert P.inverse(s).word == oracles.inverse(s.word)
        assert P.inverse(P.inverse(s)) == s


class TestStatistics:
    def test_worked_example(self):
        assert P.exc_set(SIGMA) == {1, 2, 5, 6}
        assert P.inv(SIGMA) == 15
        assert P.val_vector(SIGMA) == (0, 0, 1, 1, 0, 0, 0, 1, 1)
        assert P.pos_vector(SIGMA) == (1, 1, 0, 0, 1, 1, 0, 0, 0)
        assert P.nes_vector(SIGMA) == (0, 1, 1, 0, 0, 0, 2, 1, 0)
        assert P.nest_k(SIGMA, 7) == 2

    def test_identity(self):
        e = P.identity(6)
        assert P.des_set(e) == frozenset() and P.dd_count(e) == 0 and P.inv(e) == 0
        assert all(P.cros_k(e, k) == P.nest_k(e, k) == 0 for k in range(1, 7))
        assert P.pattern_31_2(e) == P.pattern_2_13(e) == 0
        assert P.val_vector(e) == P.pos_vector(e) == P.nes_vector(e) == (0,) * 6

    def test_321(self):
        s = P.parse_permutation("321")
        assert P.des_set(s) == {1, 2}
        assert P.dd_count(s) == 2
        assert P.nes_vector(s) == (0, 1, 0)
        assert P.pattern_31_2(s) == 0 and P.pattern_2_13(s) == 0

    def test_21(self):
        s = P.parse_permutation("21")
        assert P.val_vector(s) == (0, 1) and P.pos_vector(s) == (1, 0) and P.nes_vector(s) == (0, 0)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_reversal_inversions(self, n):
        assert P.inv(P.Permutation(tuple(range(n, 0, -1)))) == n * (n - 1) // 2

    def test_shifted_double_excedances(self):
        assert P.shifted_double_excedances(P.parse_permutation("1234")) == frozenset()
        assert P.shifted_double_excedances(P.parse_permutation("1423")) == frozenset()
        assert P.shifted_double_excedances(P.parse_permutation("2134")) == {1}

    def test_index_errors(self):
        for fn in (P.cros_k, P.nest_k, P.pattern_31_2_at, P.pattern_2_13_at):
            with pytest.raises(IndexOutOfRange):
                fn(SIGMA, 0)
            with pytest.raises(IndexOutOfRange):
                fn(SIGMA, 10)

    @given(permutations(max_n=7))
    def test_against_oracles(self, s):
        w = s.word
        assert P.inv(s) == oracles.inv(w)
        assert tuple(P.cros_k(s, k) for k in range(1, s.n + 1)) == tuple(oracles.cros_k(w, k) for k in range(1, s.n + 1))
        assert P.nes_vector(s) == tuple(oracles.nest_k(w, k) for k in range(1, s.n + 1))
        assert P.pattern_2_13(s) == oracles.pattern_2_13(w)
        assert P.pattern_31_2(s) == oracles.pattern_31_2(w)


@pytest.mark.parametrize("n", range(1, 9))
def test_inv_exc_cros_nest(n):
    for s in P.all_permutations(n):
        assert P.inv(s) == P.exc(s) + P.cros(s) + 2 * P.nest(s)


@pytest.mark.parametrize("n", range(1, 8))
def test_forced_zeros(n):
    for s in P.all_permutations(n):
        v, p, nes = P.val_vector(s), P.pos_vector(s), P.nes_vector(s)
        assert nes[-1] == 0 and v[0] == 0 and p[-1] == 0
        assert sum(v) == sum(p) == P.exc(s)


@pytest.mark.parametrize("n", range(1, 7))
def test_refined_patterns_sum(n):
    for s in P.all_permutations(n):
        assert sum(P.pattern_2_13_at(s, k) for k in range(1, n + 1)) == P.pattern_2_13(s)
        assert sum(P.pattern_31_2_at(s, k) for k in range(1, n + 1)) == P.pattern_31_2(s)


@pytest.mark.parametrize("n", range(1, 9))
def test_des_exc_equidistributed(n):
    perms = list(P.all_permutations(n))
    assert Counter(map(P.des, perms)) == Counter(map(P.exc, perms))
    if n == 4:
        assert [Counter(map(P.des, perms))[j] for j in range(4)] == oracles.eulerian_by_des(4) == [1, 11, 11, 1]


class TestFamilies:
    def test_all_lexicographic(self):
        words = [s.word for s in P.all_permutations(4)]
        assert words == sorted(words) and len(words) == 24
        assert words == oracles.perms(4)

    def test_prefix_partition(self):
        parts = [list(P.all_permutations(5, (f,))) for f in range(1, 6)]
        assert sum(parts, []) == list(P.all_permutations(5))

    def test_de4(self):
        assert [str(s) for s in P.family(4, P.Family.DE, 0)] == ["1234"]
        assert {str(s) for s in P.family(4, "DE", 1)} == {
            "1423", "1432", "3124", "3214", "4123", "4132", "4213", "4231"}

    def test_de52(self):
        got = {str(s) for s in P.family(5, P.Family.DE, 2)}
        assert len(got) == 16 and {"54231", "31542"} <= got

    def test_alternating(self):
        assert [str(s) for s in P.family(3, P.Family.ALTERNATING)] == ["213", "312"]
        brute = [p for p in oracles.perms(5) if p[0] > p[1] < p[2] > p[3] < p[4]]
        assert [s.word for s in P.family(5, "ALT")] == brute

    @pytest.mark.parametrize("k, t", [(1, 2), (2, 16), (3, 272)])
    def test_de_tangent(self, k, t):
        assert sum(1 for _ in P.family(2 * k + 1, P.Family.DE, k)) == t

    def test_dd_members(self):
        for s in P.family(6, P.Family.DD, 2):
            assert P.des(s) == 2 and P.dd_count(s) == 0

    @pytest.mark.parametrize("kind, k", [("DE", -1), ("DD", 2), ("DE", None)])
    def test_bad_params(self, kind, k):
        with pytest.raises(InvalidFamilyParams):
            P.family(4, kind, k)

    def test_dd_sizes_match_classical_gamma(self):
        # A_n(t) = sum_k |DD_{n,k}| t^k (1+t)^(n-1-2k), compared coefficientwise
        n = 6
        sizes = [sum(1 for _ in P.family(n, "DD", k)) for k in range((n - 1) // 2 + 1)]
        coeffs = [0] * n
        for k, c in enumerate(sizes):
            for j in range(n - 2 * k):
                coeffs[k + j] += c * math.comb(n - 1 - 2 * k, j)
        assert coeffs == oracles.eulerian_by_des(n)
