#!/usr/bin/env python3
"""Multiplicative energy of interval boxes and worst-case normalised box sums.

The energy upper bound and the corollary's deviation bound both carry
unspecified constants, so this script reports ratios rather than verdicts;
the one asserted fact is the diagonal lower bound E >= |B|^2.
"""

from digitsquares import (DigitBox, IntervalBox, corC_rhs, count_squares,
                          delta_H, energy_count, make_char, make_field,
                          HypothesisNotMet)

# ── energy ratio table ───────────────────────────────────────────────

print("Multiplicative energy of cubic boxes B (sides H, offsets 0) in F_p^2:")
print(f"{'p':>4} | {'H':>2} | {'|B|':>4} | {'E':>8} | {'E/|B|^2':>8} | {'E/(|B|^2 log p)':>15}")
print("-" * 56)
for p in (11, 17, 23, 31):
    ctx = make_field(p, 2)
    import math
    for h in range(1, math.isqrt(p) + 1):
        rep = energy_count(IntervalBox(ctx, (0, 0), (h, h)))
        assert rep.energy >= rep.trivial_lower
        print(f"{p:>4} | {h:>2} | {rep.size:>4} | {rep.energy:>8} | "
              f"{rep.energy / rep.size ** 2:>8.3f} | {rep.ratio:>15.3f}")

# ── worst boxes for the quadratic character ──────────────────────────

print("\nWorst-case normalised box sums Delta(H) = max |Σ_B chi| / |B|, sides in [H, 2H]:")
for p, r, h in [(5, 1, 1), (7, 1, 1), (11, 1, 2), (5, 2, 1), (5, 2, 2)]:
    ctx = make_field(p, r)
    rep = delta_H(ctx, h, make_char(ctx, 2, 1))
    print(f"  F_{p}^{r}, H = {h}: Delta = {rep.delta:.4f} over {rep.n_boxes} boxes, "
          f"witness {rep.best_box.describe()}")

# ── the corollary's report-only bound ────────────────────────────────

print("\nCorollary bound c * (r^4 / eps) * p^(-eps^2/2) * |W| (report-only, c = 1):")
p, r, eps = 101, 2, 0.25
ctx = make_field(p, r)
print(f"{'t':>4} | {'|W|':>6} | {'exact dev':>9} | {'bound':>12} | {'dev/bound':>9}")
print("-" * 52)
for t in (11, 31, 61, 101):
    try:
        rhs = corC_rhs(p, r, t, eps, 1.0)
    except HypothesisNotMet:
        print(f"{t:>4} |    t < p^(1/4 + eps), outside the corollary")
        continue
    rep = count_squares(DigitBox.uniform(ctx, tuple(range(t))))
    dev = float(rep.deviation)
    print(f"{t:>4} | {rep.size_w:>6} | {dev:>9.1f} | {rhs:>12.1f} | {dev / rhs:>9.5f}")

print("\nDone.")
