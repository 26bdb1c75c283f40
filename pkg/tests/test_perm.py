import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicpancake.perm import (
    DegreeMismatch,
    DegreeTooLarge,
    IndexOutOfRange,
    Perm,
    PointOutOfRange,
    RankOutOfRange,
    ReversalWord,
    all_perms,
    compose,
    from_cycles,
    from_text,
    identity,
    rank,
    reversal,
    unrank,
    word_eval,
    word_from_text,
)

perms = st.integers(2, 8).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(lambda t: Perm(tuple(t))))


def same_degree_pairs():
    return st.integers(2, 8).flatmap(
        lambda n: st.tuples(
            st.permutations(list(range(1, n + 1))).map(lambda t: Perm(tuple(t))),
            st.permutations(list(range(1, n + 1))).map(lambda t: Perm(tuple(t)))))


class TestPermBasics:
    def test_identity_fixes_everything(self):
        e = identity(6)
        assert all(e.apply(x) == x for x in range(1, 7))
        assert e.is_identity()

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Perm((1, 1, 3))
        with pytest.raises(ValueError):
            Perm((0, 1, 2))
        with pytest.raises(ValueError):
            Perm(())

    def test_apply_point_range(self):
        p = identity(4)
        with pytest.raises(PointOutOfRange):
            p.apply(0)
        with pytest.raises(PointOutOfRange):
            p.apply(5)

    def test_mul_right_factor_first(self):
        # (a*b)(x) = a(b(x)): with a = (1 2), b = (2 3) we get 3 -> 2 -> 1
        a = from_cycles(3, ((1, 2),))
        b = from_cycles(3, ((2, 3),))
        assert (a * b).apply(3) == 1
        assert (b * a).apply(3) == 2
        assert (b * a).apply(1) == 3

    def test_mul_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            identity(3) * identity(4)

    @given(perms)
    def test_inverse(self, p):
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()

    @given(same_degree_pairs())
    def test_inverse_antihomomorphism(self, pair):
        a, b = pair
        assert (a * b).inverse() == b.inverse() * a.inverse()

    @given(perms, st.integers(-6, 12))
    def test_pow_matches_repeated_product(self, p, e):
        expected = identity(p.degree)
        q = p if e >= 0 else p.inverse()
        for _ in range(abs(e)):
            expected = expected * q
        assert p ** e == expected

    @given(perms)
    def test_order_is_minimal_exponent(self, p):
        o = p.order()
        assert (p ** o).is_identity()
        for d in range(1, o):
            if o % d == 0:
                assert not (p ** d).is_identity() or d == o

    @given(perms)
    def test_cycle_type_partitions_degree(self, p):
        ct = p.cycle_type()
        assert sum(ct) == p.degree
        assert ct == tuple(sorted(ct, reverse=True))
        assert p.order() == math.lcm(*ct)

    @given(same_degree_pairs())
    def test_parity_multiplicative(self, pair):
        a, b = pair
        assert (a * b).parity() == (a.parity() + b.parity()) % 2

    @given(perms)
    def test_text_roundtrip(self, p):
        assert from_text(p.to_text()) == p


class TestReversal:
    @pytest.mark.parametrize("n,i", [(4, 2), (5, 5), (9, 6), (2, 2)])
    def test_involution(self, n, i):
        r = reversal(n, i)
        assert (r * r).is_identity()

    def test_images(self):
        assert reversal(5, 3).images == (3, 2, 1, 4, 5)
        assert reversal(4, 4).images == (4, 3, 2, 1)

    def test_parity_is_halved_index(self):
        # reversing i entries is floor(i/2) transpositions
        for n in range(2, 10):
            for i in range(2, n + 1):
                assert reversal(n, i).parity() == (i // 2) % 2

    def test_index_bounds(self):
        with pytest.raises(IndexOutOfRange):
            reversal(5, 1)
        with pytest.raises(IndexOutOfRange):
            reversal(5, 6)

    def test_compose_known_product(self):
        # flipping 6 after flipping 8 cycles all points: 1->8->6->4->2->7->5->3
        got = compose(reversal(8, 6), reversal(8, 8))
        assert got.cycles() == ((1, 8, 6, 4, 2, 7, 5, 3),)


class TestReversalWord:
    def test_word_eval_matches_product(self):
        # folding prefix reversals left to right equals the group product
        # r_{i_1} r_{i_2} ... applied with the rightmost factor first
        w = ReversalWord(6, (6, 3, 5, 2))
        prod = reversal(6, 6) * reversal(6, 3) * reversal(6, 5) * reversal(6, 2)
        assert word_eval(w) == prod

    @given(st.integers(2, 7), st.data())
    def test_word_eval_random_words(self, n, data):
        letters = data.draw(st.lists(st.integers(2, n), min_size=0, max_size=8))
        w = ReversalWord(n, tuple(letters))
        expected = identity(n)
        for i in letters:
            expected = expected * reversal(n, i)
        assert word_eval(w) == expected

    def test_known_products(self):
        assert word_eval(ReversalWord(7, (7, 4, 2))).cycles() == \
            ((1, 5, 3, 6, 2, 4, 7),)
        assert word_eval(ReversalWord(7, (7, 4, 3))).cycles() == \
            ((1, 6, 2, 5, 3, 4, 7),)
        assert word_eval(ReversalWord(5, (5, 2, 3))).cycles() == \
            ((1, 3, 4, 2, 5),)

    def test_rotation(self):
        n = 9
        rot = word_eval(ReversalWord(n, (n, n - 1)))
        assert all(rot.apply(x) == x % n + 1 for x in range(1, n + 1))

    def test_word_text_roundtrip(self):
        w = ReversalWord(7, (7, 6, 5, 6))
        assert w.to_text() == "7.6.5.6"
        assert word_from_text(7, "7.6.5.6") == w

    def test_word_index_validation(self):
        with pytest.raises(IndexOutOfRange):
            ReversalWord(5, (5, 6))
        with pytest.raises(IndexOutOfRange):
            ReversalWord(5, (1,))


class TestRanking:
    def test_lexicographic_agreement(self):
        # ranks enumerate itertools.permutations order exactly
        for n in (1, 2, 3, 4, 5):
            for i, images in enumerate(itertools.permutations(range(1, n + 1))):
                p = Perm(images)
                assert rank(p) == i
                assert unrank(n, i) == p

    @given(st.integers(1, 10), st.data())
    def test_roundtrip(self, n, data):
        r = data.draw(st.integers(0, math.factorial(n) - 1))
        assert rank(unrank(n, r)) == r

    def test_identity_is_rank_zero(self):
        assert rank(identity(8)) == 0
        assert unrank(8, 0) == identity(8)

    def test_rank_bounds(self):
        with pytest.raises(RankOutOfRange):
            unrank(3, 6)
        with pytest.raises(RankOutOfRange):
            unrank(3, -1)

    def test_degree_guard(self):
        with pytest.raises(DegreeTooLarge):
            unrank(21, 0)

    def test_all_perms_count(self):
        ps = list(all_perms(4))
        assert len(ps) == 24
        assert len(set(ps)) == 24


class TestFromCycles:
    def test_basic(self):
        p = from_cycles(5, ((1, 3, 5),))
        assert p.apply(1) == 3 and p.apply(3) == 5 and p.apply(5) == 1
        assert p.apply(2) == 2

    def test_rejects_repeats(self):
        with pytest.raises(ValueError):
            from_cycles(5, ((1, 2), (2, 3)))

    @given(perms)
    def test_roundtrip_through_cycles(self, p):
        assert from_cycles(p.degree, p.cycles()) == p
