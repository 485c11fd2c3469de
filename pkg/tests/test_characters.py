"""Quadratic and general multiplicative characters, exact cyclotomic sums."""

import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitsquares import (CycloSum, DigitBox, char_sum, enumerate_box,
                          field_generator, make_char, quad_char)
from digitsquares.fields import divisors


def brute_square_set(ctx):
    """Independent oracle: square every element."""
    return {(a * a).idx for a in ctx.elements() if not a.is_zero()}


class TestQuadChar:
    def test_prime_field_values(self, field):
        F5 = field(5, 1)
        assert quad_char(F5, F5.from_int(4)) == 1
        assert quad_char(F5, F5.from_int(2)) == -1

    def test_zero_maps_to_zero(self, field):
        for p, r in [(3, 1), (3, 2), (5, 2)]:
            assert quad_char(field(p, r), field(p, r).zero()) == 0

    def test_f9_examples(self, field):
        F9 = field(3, 2)
        x = F9.from_poly_coords((0, 1))
        assert quad_char(F9, x) == 1
        assert quad_char(F9, F9.one() + x) == -1

    @pytest.mark.parametrize("p,r", [(3, 2), (5, 2), (3, 3), (7, 2)])
    def test_matches_exhaustive_squaring(self, field, p, r):
        ctx = field(p, r)
        squares = brute_square_set(ctx)
        for a in ctx.elements():
            expected = 0 if a.is_zero() else (1 if a.idx in squares else -1)
            assert quad_char(ctx, a) == expected

    @pytest.mark.parametrize("p,r", [(3, 2), (5, 2), (11, 1), (3, 3)])
    def test_half_the_units_are_squares(self, field, p, r):
        ctx = field(p, r)
        vals = [quad_char(ctx, a) for a in ctx.elements()]
        assert vals.count(1) == (ctx.q - 1) // 2
        assert vals.count(-1) == (ctx.q - 1) // 2


class TestMakeChar:
    def test_principal_character(self, field):
        F7 = field(7, 1)
        chi = make_char(F7, 1, 0)
        assert chi.is_principal
        assert all(chi.root_exponent(F7.from_int(c)) == 0 for c in range(1, 7))

    def test_f7_cubic_character(self, field):
        F7 = field(7, 1)
        assert field_generator(F7).idx == 3  # smallest primitive root mod 7
        chi = make_char(F7, 3, 1)
        assert chi.root_exponent(F7.from_int(3)) == 1  # chi(g) = zeta_3

    def test_quadratic_agrees_with_quad_char(self, field):
        F9 = field(3, 2)
        chi = make_char(F9, 2, 1)
        for a in F9.elements():
            qc = quad_char(F9, a)
            k = chi.root_exponent(a)
            assert (k is None and qc == 0) or (k == 0 and qc == 1) or (k == 1 and qc == -1)

    def test_tableless_quadratic_above_dlog_cap(self, field):
        import numpy as np
        ctx = field(1031, 2)  # q = 1062961 > 2^20: no dlog table available
        chi = make_char(ctx, 2, 1)
        assert chi._exp is None
        rng = np.random.default_rng(8)
        idx = rng.integers(0, ctx.q, size=50, dtype=np.int64)
        exps = chi.exponents_for_indices(idx)
        for i, k in zip(idx, exps):
            qc = quad_char(ctx, ctx.from_index(int(i)))
            assert (k == -1 and qc == 0) or (k == 0 and qc == 1) or (k == 1 and qc == -1)
        with pytest.raises(ValueError):
            make_char(ctx, 5, 1)  # only the quadratic character beyond the cap

    def test_order_must_divide_group_order(self, field):
        with pytest.raises(ValueError):
            make_char(field(3, 2), 3, 1)  # 3 does not divide 8

    def test_index_range(self, field):
        with pytest.raises(ValueError):
            make_char(field(3, 2), 2, 2)

    def test_generator_is_lex_smallest(self, field):
        F9 = field(3, 2)
        g = field_generator(F9)
        assert g.coords == (1, 1)  # 1 + x, the first primitive element in lex order

    @pytest.mark.parametrize("p,r", [(3, 2), (5, 2)])
    def test_multiplicativity_exhaustive(self, field, p, r):
        ctx = field(p, r)
        for s in divisors(ctx.q - 1):
            if s == 1 or s > 8:
                continue
            chi = make_char(ctx, s, 1)
            for a in ctx.elements():
                if a.is_zero():
                    continue
                for b in ctx.elements():
                    if b.is_zero():
                        continue
                    ka, kb, kab = (chi.root_exponent(a), chi.root_exponent(b),
                                   chi.root_exponent(a * b))
                    assert kab == (ka + kb) % s


class TestCharSum:
    def test_nontrivial_full_field_sum_vanishes(self, field):
        ctx = field(5, 2)
        for s in (2, 3, 4, 6, 8):
            if (ctx.q - 1) % s:
                continue
            total = char_sum(make_char(ctx, s, 1), ctx.elements())
            assert total.is_zero()

    def test_principal_full_field(self, field):
        ctx = field(3, 2)
        total = char_sum(make_char(ctx, 1, 0), ctx.elements())
        assert total.value_int() == ctx.q - 1

    def test_quad_sum_over_digit_box(self, field):
        F9 = field(3, 2)
        box = DigitBox.uniform(F9, (1, 2))
        total = char_sum(make_char(F9, 2, 1), enumerate_box(box))
        assert total.value_int() == -4

    def test_index_array_path_matches_iterable_path(self, field):
        import numpy as np
        ctx = field(7, 2)
        chi = make_char(ctx, 3, 1)
        idx = np.arange(ctx.q, dtype=np.int64)
        a = char_sum(chi, idx)
        b = char_sum(chi, ctx.elements())
        assert a == b


class TestCycloSum:
    def test_value_int_orders(self):
        assert CycloSum(1, [5]).value_int() == 5
        assert CycloSum(2, [3, 7]).value_int() == -4
        with pytest.raises(ValueError):
            CycloSum(3, [1, 0, 0]).value_int()

    def test_is_zero_prime_order_exact(self):
        assert CycloSum(3, [4, 4, 4]).is_zero()
        assert not CycloSum(3, [4, 4, 5]).is_zero()
        assert CycloSum(3, [0, 0, 0]).zero_test_is_exact()

    def test_is_zero_composite_order_flagged_inexact(self):
        s = CycloSum(4, [1, 1, 1, 1])  # 1 + i - 1 - i = 0
        assert s.is_zero()
        assert not s.zero_test_is_exact()

    def test_magnitude_interval_brackets_float_value(self):
        import math
        s = CycloSum(5, [3, 0, 2, 0, 1])
        lo, hi = s.magnitude_interval()
        assert lo <= abs(s.value()) <= hi
        assert hi - lo <= 4 * math.ulp(hi)  # tight up to float outward rounding

    def test_value_matches_complex_sum(self):
        s = CycloSum(6, [1, 2, 0, 4, 0, 1])
        direct = sum(c * cmath.exp(2j * cmath.pi * k / 6) for k, c in enumerate(s.counts))
        assert abs(s.value() - direct) < 1e-12

    @given(st.lists(st.integers(-50, 50), min_size=4, max_size=4),
           st.lists(st.integers(-50, 50), min_size=4, max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_merge_is_componentwise(self, a, b):
        sa, sb = CycloSum(4, a), CycloSum(4, b)
        merged = sa + sb
        assert merged.counts == [x + y for x, y in zip(a, b)]
        assert (sa + sb) == (sb + sa)

    def test_mismatched_orders_refuse_to_merge(self):
        with pytest.raises(ValueError):
            CycloSum(2) + CycloSum(4)
