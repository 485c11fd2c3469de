"""Digit boxes, interval boxes, enumeration, sampling, splitting."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitsquares import (BudgetExceeded, DigitBox, IntervalBox, count_squares,
                          enumerate_box, format_digit_set, parse_digit_spec,
                          sample_uniform, split_box)
from digitsquares.boxes import BUDGET_ENV_VAR, default_budget


class TestParsing:
    def test_ranges_and_singletons(self):
        assert parse_digit_spec("0-4,7,9", 11) == (0, 1, 2, 3, 4, 7, 9)
        assert parse_digit_spec("3", 5) == (3,)
        assert parse_digit_spec("2,0,1", 5) == (0, 1, 2)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            parse_digit_spec("0-5", 5)
        with pytest.raises(ValueError):
            parse_digit_spec("", 5)
        with pytest.raises(ValueError):
            parse_digit_spec("4-2", 5)

    def test_format_round_trip(self):
        for digits in [(0,), (0, 1), (0, 1, 2), (1, 3, 5), (0, 1, 2, 5, 7, 8, 9)]:
            assert parse_digit_spec(format_digit_set(digits), 11) == digits

    @given(st.sets(st.integers(0, 12), min_size=1))
    @settings(max_examples=60, deadline=None)
    def test_format_round_trip_property(self, digits):
        ds = tuple(sorted(digits))
        assert parse_digit_spec(format_digit_set(ds), 13) == ds


class TestEnumeration:
    def test_f9_uniform_12(self, field):
        F9 = field(3, 2)
        box = DigitBox.uniform(F9, (1, 2))
        got = [e.poly_coords for e in enumerate_box(box)]
        assert got == [(1, 1), (1, 2), (2, 1), (2, 2)]  # lex coordinate order

    def test_full_digit_set_is_whole_field(self, field):
        ctx = field(5, 2)
        box = DigitBox.uniform(ctx, tuple(range(5)))
        assert sorted(e.idx for e in enumerate_box(box)) == list(range(25))

    def test_unit_interval_box(self, field):
        F9 = field(3, 2)
        box = IntervalBox(F9, (0, 0), (1, 1))
        assert [e.poly_coords for e in enumerate_box(box)] == [(1, 1)]

    def test_interval_box_wraps_mod_p(self, field):
        F9 = field(3, 2)
        box = IntervalBox(F9, (1, 1), (2, 2))  # coords in {2, 0} per axis
        assert box.coordinate_sets() == ((0, 2), (0, 2))
        assert box.contains_zero()

    @pytest.mark.parametrize("p,r,digits", [
        (3, 2, (0, 2)), (5, 2, (1, 2, 4)), (5, 4, (0, 3)), (3, 6, (1, 2)),
    ])
    def test_size_and_distinctness(self, field, p, r, digits):
        ctx = field(p, r)
        box = DigitBox.uniform(ctx, digits)
        elems = [e.idx for e in enumerate_box(box)]
        assert len(elems) == len(digits) ** r == box.size()
        assert len(set(elems)) == len(elems)

    def test_mixed_digit_sets(self, field):
        ctx = field(5, 3)
        box = DigitBox(ctx, ((0, 1), (2,), (1, 3, 4)))
        elems = list(enumerate_box(box))
        assert len(elems) == 2 * 1 * 3
        assert all(box.contains(e) for e in elems)

    def test_zero_membership_rule(self, field):
        ctx = field(3, 2)
        assert DigitBox.uniform(ctx, (0, 1)).contains_zero()
        assert not DigitBox(ctx, ((0, 1), (1, 2))).contains_zero()

    def test_prefix_shards_partition_the_box(self, field):
        ctx = field(5, 2)
        box = DigitBox.uniform(ctx, (0, 2, 3))
        whole = [e.idx for e in enumerate_box(box)]
        shards = []
        for c in (0, 2, 3):
            shards.extend(e.idx for e in enumerate_box(box, prefix=(c,)))
        assert shards == whole

    def test_budget_refusal_names_monte_carlo(self, field):
        ctx = field(5, 3)
        box = DigitBox.uniform(ctx, tuple(range(5)))
        with pytest.raises(BudgetExceeded, match="Monte-Carlo"):
            list(enumerate_box(box, budget=100))

    def test_budget_applies_to_the_shard_not_the_whole_box(self, field):
        # fixing a prefix makes an over-budget box streamable shard by shard
        ctx = field(5, 3)
        box = DigitBox.uniform(ctx, tuple(range(5)))  # 125 elements
        shard = list(enumerate_box(box, budget=30, prefix=(2,)))
        assert len(shard) == 25
        assert all(e.coords[0] == 2 for e in shard)

    def test_basis_change_multiplies_pointwise(self, field):
        # with b_j = a_j / a_1 installed, W becomes a_1^{-1} * W pointwise
        ctx = field(3, 2)
        x = ctx.from_poly_coords((0, 1))
        shifted = ctx.with_basis([x, ctx.one() + x])  # a_1 = x
        norm = shifted.normalized_basis()
        digits = (1, 2)
        orig = [e for e in enumerate_box(DigitBox.uniform(shifted, digits))]
        scaled = [e for e in enumerate_box(DigitBox.uniform(norm, digits))]
        a1_inv = x.inv()
        assert [(a1_inv * e).idx for e in orig] == [e.idx for e in scaled]


class TestSampling:
    def test_determinism(self, field):
        ctx = field(13, 2)
        box = DigitBox.uniform(ctx, (0, 1, 5, 11))
        a = sample_uniform(box, 64, seed=9)
        b = sample_uniform(box, 64, seed=9)
        assert [e.idx for e in a] == [e.idx for e in b]

    def test_singleton_box(self, field):
        ctx = field(5, 2)
        box = DigitBox(ctx, ((3,), (2,)))
        samples = sample_uniform(box, 10, seed=0)
        assert all(e == ctx.from_coords((3, 2)) for e in samples)

    def test_samples_lie_in_box(self, field):
        ctx = field(7, 2)
        box = DigitBox.uniform(ctx, (1, 3, 6))
        assert all(box.contains(e) for e in sample_uniform(box, 100, seed=3))

    def test_count_must_be_positive(self, field):
        with pytest.raises(ValueError):
            sample_uniform(DigitBox.uniform(field(3, 2), (1,)), 0, seed=1)


class TestSplit:
    def test_f9_split_example(self, field):
        F9 = field(3, 2)
        box = DigitBox.uniform(F9, (1, 2))
        U, V = split_box(box, 1)
        assert {e.poly_coords for e in enumerate_box(U)} == {(1, 0), (2, 0)}
        assert {e.poly_coords for e in enumerate_box(V)} == {(0, 1), (0, 2)}

    def test_extreme_split_supported_on_first_coordinate(self, field):
        ctx = field(5, 3)
        box = DigitBox.uniform(ctx, (0, 1, 2))
        U, _ = split_box(box, 2)
        assert U.digits == ((0, 1, 2), (0,), (0,))

    @pytest.mark.parametrize("k", [1, 2])
    def test_sizes_multiply(self, field, k):
        ctx = field(5, 3)
        box = DigitBox.uniform(ctx, (1, 2, 3))
        U, V = split_box(box, k)
        assert U.size() * V.size() == box.size()

    def test_direct_sum_recovers_box(self, field):
        ctx = field(3, 3)
        box = DigitBox.uniform(ctx, (1, 2))
        U, V = split_box(box, 1)
        sums = {(u + v).idx for u in enumerate_box(U) for v in enumerate_box(V)}
        assert sums == {e.idx for e in enumerate_box(box)}

    def test_split_index_range(self, field):
        box = DigitBox.uniform(field(3, 2), (1, 2))
        with pytest.raises(ValueError):
            split_box(box, 0)
        with pytest.raises(ValueError):
            split_box(box, 2)


class TestBudgetEnv:
    def test_env_var_overrides_default(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "12345")
        assert default_budget() == 12345

    def test_env_var_must_be_positive_int(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "zero")
        with pytest.raises(ValueError):
            default_budget()
        monkeypatch.setenv(BUDGET_ENV_VAR, "-3")
        with pytest.raises(ValueError):
            default_budget()


class TestDownsizedTwinHarness:
    def test_sampled_fraction_consistent_with_exact_counts(self, field):
        # exact fractions for |D| = 40 in F_101^2 (twin) and F_101^3 (sampled)
        D = tuple(range(40))
        twin = count_squares(DigitBox.uniform(field(101, 2), D))
        big_box = DigitBox.uniform(field(101, 3), D)
        big = count_squares(big_box)
        f_twin = twin.count_q / twin.size_w
        f_big = big.count_q / big.size_w
        from digitsquares import estimate_square_fraction
        est = estimate_square_fraction(big_box, 100_000, seed=424242)
        sigma = (0.5 * 0.5 / 100_000) ** 0.5
        # sound 5-sigma check against the sampled population's own exact fraction
        assert abs(est.estimate - f_big) <= 5 * sigma
        # the twin is structurally close but a different population
        assert abs(f_twin - f_big) < 0.02
