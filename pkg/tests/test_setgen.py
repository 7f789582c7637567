import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from apsets.setgen import (IntegerSet, MultiplicativeSpec, combine, density,
                           gen_beatty, gen_kfree, gen_multiplicative, gen_periodic,
                           kfree_rule, squarefree_rule)
from oracles import trial_division_kfree


def elems(s):
    return s.elements().tolist()


class TestKfree:
    def test_small(self):
        assert elems(gen_kfree(2, 3)) == [1, 2, 3]
        assert elems(gen_kfree(3, 8)) == [1, 2, 3, 4, 5, 6, 7]

    def test_thirty(self):
        s = gen_kfree(2, 30)
        excluded = sorted(set(range(1, 31)) - set(elems(s)))
        assert excluded == [4, 8, 9, 12, 16, 18, 20, 24, 25, 27, 28]
        assert s.count == 19
        assert excluded == [n for n in range(1, 31) if not trial_division_kfree(n, 2)]

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_trial_division_oracle(self, k):
        s = gen_kfree(k, 10**4)
        expected = [n for n in range(1, 10**4 + 1) if trial_division_kfree(n, k)]
        assert elems(s) == expected

    @pytest.mark.parametrize("k, x", [(1, 10), (2, 0), (2, -3)])
    def test_rejects(self, k, x):
        with pytest.raises(ValueError):
            gen_kfree(k, x)

    def test_density(self):
        assert abs(density(gen_kfree(2, 10**6)) - 6 / math.pi**2) < 2e-3


class TestBeatty:
    def test_examples(self):
        assert elems(gen_beatty(2, 10)) == [1, 2, 4, 5, 7, 8, 9]
        assert elems(gen_beatty(3, 10)) == [1, 3, 5, 6, 8, 10]
        assert elems(gen_beatty(2, 1)) == [1]

    @pytest.mark.parametrize("r", [2, 3, 5, 7])
    def test_matches_isqrt_enumeration(self, r):
        x = 5000
        expected = sorted({math.isqrt(r * a * a) for a in range(1, x + 1)} & set(range(1, x + 1)))
        assert elems(gen_beatty(r, x)) == expected

    @pytest.mark.parametrize("r", [2, 3])
    def test_gap_property(self, r):
        gaps = set(np.diff(gen_beatty(r, 10**5).elements()).tolist())
        lo = math.isqrt(r)
        assert gaps <= {lo, lo + 1}

    def test_large_a_exact(self):
        # floor(a sqrt 2) near 2^40 where float sqrt loses the last digit
        s = gen_beatty(2, 2_000_000)
        last = int(s.elements()[-1])
        a = math.isqrt((last + 1) ** 2 // 2)
        assert math.isqrt(2 * a * a) == last

    @pytest.mark.parametrize("r", [1, 4, 9])
    def test_rejects_squares(self, r):
        with pytest.raises(ValueError):
            gen_beatty(r, 10)

    def test_density(self):
        assert abs(density(gen_beatty(2, 10**6)) - 1 / math.sqrt(2)) < 1e-5


class TestPeriodic:
    def test_examples(self):
        assert elems(gen_periodic(1, {0}, 5)) == [1, 2, 3, 4, 5]
        assert elems(gen_periodic(2, {1}, 6)) == [1, 3, 5]
        assert elems(gen_periodic(3, {1, 2}, 9)) == [1, 2, 4, 5, 7, 8]

    def test_empty_residues(self):
        s = gen_periodic(5, [], 20)
        assert s.count == 0 and density(s) == 0

    def test_bad_residue(self):
        with pytest.raises(ValueError):
            gen_periodic(3, [3], 10)

    def test_density_exact(self):
        assert density(gen_periodic(2, {1}, 10**6)) == 0.5


class TestMultiplicative:
    def test_squarefree_rule_matches_kfree(self):
        assert gen_multiplicative(squarefree_rule, 30) == gen_kfree(2, 30)
        assert gen_multiplicative(squarefree_rule, 10**5) == gen_kfree(2, 10**5)

    def test_cube_rule(self):
        assert gen_multiplicative(kfree_rule(3), 20000) == gen_kfree(3, 20000)

    def test_constant_and_odd(self):
        assert elems(gen_multiplicative(MultiplicativeSpec(lambda p, e: True), 10)) == list(range(1, 11))
        odd = MultiplicativeSpec(lambda p, e: p != 2)
        assert elems(gen_multiplicative(odd, 10)) == [1, 3, 5, 7, 9]

    def test_against_factorisation(self):
        # f(p^e) = 1 iff e is even or p = 3 mod 4 ... an arbitrary rule
        rule = MultiplicativeSpec(lambda p, e: e % 2 == 0 or p % 4 == 3)
        x = 3000
        got = gen_multiplicative(rule, x)
        expected = []
        for n in range(1, x + 1):
            m, ok, p = n, True, 2
            while p * p <= m:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                if e:
                    ok &= rule(p, e)
                p += 1
            if m > 1:
                ok &= rule(m, 1)
            if ok:
                expected.append(n)
        assert elems(got) == expected


class TestCombine:
    def test_intersect(self):
        s = combine("intersect", gen_kfree(2, 30), gen_periodic(3, {1, 2}, 30))
        expected = [n for n in range(1, 31) if trial_division_kfree(n, 2) and n % 3]
        assert expected == [1, 2, 5, 7, 10, 11, 13, 14, 17, 19, 22, 23, 26, 29]
        assert elems(s) == expected
        assert s.count == 14

    def test_idempotent(self):
        a = gen_kfree(2, 100)
        assert combine("intersect", a, a) == a
        assert combine("union", a, a) == a

    def test_complement(self):
        assert elems(combine("complement", gen_periodic(2, {1}, 6))) == [2, 4, 6]

    def test_mismatched_limits(self):
        with pytest.raises(ValueError):
            combine("intersect", gen_kfree(2, 10), gen_kfree(2, 11))


class TestSerialization:
    @pytest.mark.parametrize("x", [1, 7, 8, 9, 1000])
    def test_binary_roundtrip(self, x, tmp_path):
        s = gen_kfree(2, x)
        path = tmp_path / "s.apset"
        s.save(path)
        assert IntegerSet.load(path) == s

    def test_header_layout(self):
        data = gen_periodic(1, [0], 10).to_bytes()
        assert data[:6] == b"APSET\x00"
        assert int.from_bytes(data[8:16], "little") == 10
        assert len(data) == 16 + 2

    def test_bad_magic(self):
        data = bytearray(gen_kfree(2, 10).to_bytes())
        data[0] = ord("X")
        with pytest.raises(ValueError):
            IntegerSet.from_bytes(bytes(data))

    def test_text_roundtrip(self):
        s = gen_beatty(3, 10)
        assert s.to_text() == "x=10\n1 3 5 6 8 10\n"
        assert IntegerSet.from_text(s.to_text()) == s


def test_immutable():
    s = gen_kfree(2, 10)
    with pytest.raises(ValueError):
        s.bits[0] = False


GENERATORS = [
    lambda x: gen_kfree(2, x),
    lambda x: gen_kfree(3, x),
    lambda x: gen_beatty(2, x),
    lambda x: gen_beatty(3, x),
    lambda x: gen_periodic(6, {1, 5}, x),
    lambda x: gen_multiplicative(squarefree_rule, x),
]


@settings(max_examples=40, deadline=None)
@given(gen=st.sampled_from(GENERATORS), x=st.integers(1, 3000), data=st.data())
def test_prefix_consistency(gen, x, data):
    xp = data.draw(st.integers(1, x))
    full = gen(x)
    assert full.truncate(xp) == gen(xp)
    assert full.count == int(full.bits.sum())
