import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xorcomm.symfun import (InputPair, ProfileError, SymmetricProfile,
                            TrivialClass, classify,
                            conjectured_unbounded_measure, evaluate_F,
                            flip_reduction, gap_params, parity_decompose,
                            parse_profile, threshold_of)


def all_profiles(n):
    for i in range(1 << (n + 1)):
        yield SymmetricProfile(n, tuple((i >> k) & 1 for k in range(n + 1)))


profiles = st.integers(min_value=1, max_value=12).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(
        st.integers(0, 1), min_size=n + 1, max_size=n + 1))).map(
    lambda t: SymmetricProfile(t[0], tuple(t[1])))


class TestEvaluate:
    def test_equal_inputs(self):
        p = parse_profile("parity", 6)
        pair = InputPair((1, 0, 1, 1, 0, 0), (1, 0, 1, 1, 0, 0))
        assert evaluate_F(p, pair) == 0

    def test_complement_hits_s_n(self):
        p = parse_profile("bits:0110010", 6)
        x = (1, 0, 1, 1, 0, 0)
        y = tuple(1 - b for b in x)
        assert evaluate_F(p, InputPair(x, y)) == p.s[6]

    def test_threshold_mid_weight(self):
        p = parse_profile("threshold:3", 8)
        pair = InputPair((0,) * 8, (0, 0, 0, 0, 1, 1, 1, 1))
        assert evaluate_F(p, pair) == 1

    def test_length_mismatch(self):
        p = parse_profile("parity", 4)
        with pytest.raises(ProfileError):
            evaluate_F(p, InputPair((0,) * 5, (1,) * 5))


class TestClassify:
    @pytest.mark.parametrize("spec,expected", [
        ("const0", TrivialClass.CONST0),
        ("const1", TrivialClass.CONST1),
        ("parity", TrivialClass.PARITY),
        ("notparity", TrivialClass.NOTPARITY),
        ("threshold:3", TrivialClass.NONTRIVIAL),
        ("exact:0", TrivialClass.NONTRIVIAL),
    ])
    def test_templates(self, spec, expected):
        assert classify(parse_profile(spec, 8)) is expected

    def test_trivial_iff_r_zero(self):
        # the four templates are exactly the 2-periodic profiles
        for n in range(1, 13):
            for p in all_profiles(n):
                gp = gap_params(p)
                is_trivial = classify(p) is not TrivialClass.NONTRIVIAL
                assert is_trivial == (gp.r == 0)


class TestGapParams:
    def test_parity_zero(self):
        gp = gap_params(parse_profile("parity", 9))
        assert (gp.r0, gp.r1) == (0, 0)

    def test_equality_profile(self):
        gp = gap_params(parse_profile("exact:0", 8))
        assert (gp.r0, gp.r1) == (1, 0)

    def test_threshold(self):
        gp = gap_params(parse_profile("threshold:3", 16))
        assert (gp.r0, gp.r1) == (4, 0)

    def test_mod_profile_near_half(self):
        gp = gap_params(parse_profile("mod:4:0", 64))
        assert (gp.r0, gp.r1, gp.saturated) == (31, 31, False)

    def test_saturation(self):
        # s(n/2-1) != s(n/2+1) leaves no feasible pair under the cap
        gp = gap_params(parse_profile("mod:4:0", 66))
        assert gp.saturated
        assert (gp.r0, gp.r1) == (33, 33)
        gp2 = gap_params(SymmetricProfile(2, (1, 0, 0)))
        assert gp2.saturated and gp2.r == 1

    def test_exhaustive_minimality(self):
        # r0/r1 are minimal coordinates over all feasible pairs
        def feasible(s, n, a, b):
            return all(s[k] == s[k + 2] for k in range(a, n - b - 1))

        for n in (5, 8):
            cap = (n - 1) // 2
            for p in all_profiles(n):
                gp = gap_params(p)
                pairs = [(a, b) for a in range(cap + 1) for b in range(cap + 1)
                         if feasible(p.s, n, a, b)]
                if not pairs:
                    assert gp.saturated
                    assert gp.r0 == gp.r1 == (n + 1) // 2
                    continue
                assert not gp.saturated
                assert gp.r0 == min(a for a, _ in pairs)
                assert gp.r1 == min(b for _, b in pairs)
                assert feasible(p.s, n, gp.r0, gp.r1)


class TestReductions:
    def test_flip_small(self):
        p = SymmetricProfile(2, (1, 0, 0))
        assert flip_reduction(p).s == (0, 0, 1)

    def test_flip_involution_and_gap_swap(self):
        for n in range(1, 11):
            for p in all_profiles(n):
                q = flip_reduction(p)
                assert flip_reduction(q) == p
                gp, gq = gap_params(p), gap_params(q)
                assert (gp.r0, gp.r1) == (gq.r1, gq.r0)

    def test_decompose_const1(self):
        s0, s1 = parity_decompose(parse_profile("const1", 2))
        assert s0.s == (1, 0, 1)
        assert s1.s == (0, 1, 0)

    def test_decompose_parity(self):
        p = parse_profile("parity", 8)
        s0, s1 = parity_decompose(p)
        assert all(b == 0 for b in s0.s)
        assert s1 == p

    def test_recombination_exhaustive(self):
        for p in all_profiles(8):
            s0, s1 = parity_decompose(p)
            assert tuple(a | b for a, b in zip(s0.s, s1.s)) == p.s

    @given(profiles)
    def test_flip_preserves_measure(self, p):
        assert (conjectured_unbounded_measure(flip_reduction(p))
                == conjectured_unbounded_measure(p))


class TestMeasure:
    def test_parity_zero(self):
        assert conjectured_unbounded_measure(parse_profile("parity", 10)) == 0

    def test_equality_one(self):
        assert conjectured_unbounded_measure(parse_profile("exact:0", 8)) == 1

    def test_threshold_two(self):
        assert conjectured_unbounded_measure(parse_profile("threshold:3", 16)) == 2


class TestParse:
    def test_bits(self):
        p = parse_profile("bits:01101", 4)
        assert p.s == (0, 1, 1, 0, 1)

    def test_mod_residues(self):
        p = parse_profile("mod:3:0,2", 6)
        assert p.s == tuple(1 if k % 3 in (0, 2) else 0 for k in range(7))

    @pytest.mark.parametrize("bad", [
        "nope", "threshold:x", "bits:01", "mod:0:1", "mod:3:", "exact:99"])
    def test_rejects(self, bad):
        with pytest.raises(ProfileError):
            parse_profile(bad, 8)

    def test_profile_validation(self):
        with pytest.raises(ProfileError):
            SymmetricProfile(3, (0, 1))
        with pytest.raises(ProfileError):
            SymmetricProfile(1, (0, 2))

    def test_threshold_of(self):
        assert threshold_of(parse_profile("threshold:4", 9)) == 4
        assert threshold_of(parse_profile("const0", 5)) == 5
        assert threshold_of(parse_profile("exact:2", 5)) is None
