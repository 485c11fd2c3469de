#!/usr/bin/env python3
"""Every explicit deviation bound, evaluated and compared against exact counts.

For each digit-set size the exact deviation is set against the four bounds;
'nontrivial' marks right-hand sides below |W|/2 (the regime where a bound
proves squares exist).
"""

from digitsquares import (DigitBox, count_squares, make_field, thm1_hypothesis,
                          thm1_rhs, thm1_threshold, thm2_best, thm2_Cr,
                          thm2_threshold, thmA_heuristic_nontrivial, thmA_rhs,
                          thmB_rhs, HypothesisNotMet)

p, r = 13, 2
ctx = make_field(p, r)
print(f"Field F_{p}^{r}; interval digit sets D = {{0..t-1}}; deviations of the")
print("square count against each bound's right-hand side:\n")
hdr = (f"{'t':>3} | {'|W|':>5} | {'dev(Q0)':>8} | {'thmA':>9} | {'thmB':>9} | "
       f"{'dev(Q)':>7} | {'thm1':>9} | {'thm2*':>9}")
print(hdr)
print("-" * len(hdr))
for t in range(2, p + 1):
    rep = count_squares(DigitBox.uniform(ctx, tuple(range(t))))
    a = thmA_rhs(p, r, t) if t <= p - 1 else float("nan")
    try:
        b = f"{thmB_rhs(p, r, t):9.2f}"
    except (HypothesisNotMet, ValueError):
        b = "      n/a"
    t1 = thm1_rhs(p, r, t)
    k, nu, t2 = thm2_best(p, r, t)
    print(f"{t:>3} | {rep.size_w:>5} | {str(rep.deviation_q0):>8} | "
          f"{a:9.2f} | {b} | {str(rep.deviation):>7} | {t1:9.2f} | {t2:9.2f}")

print(f"\nHypothesis 2r-1 <= sqrt(p) for the thm1 bound: {thm1_hypothesis(p, r)}")
print(f"thmA heuristic nontriviality cut (~0.618p): d >= "
      f"{next(d for d in range(2, p) if thmA_heuristic_nontrivial(p, d))}")

# ── existence thresholds ─────────────────────────────────────────────

print("\nthm1 existence threshold (1 + delta)(2r - 1) sqrt(p):")
for pp in (29, 101, 997):
    thr = thm1_threshold(pp, 2)
    print(f"  p = {pp:>4}, r = 2: |D| >= {thr:7.2f} forces a square in W_D")

F101 = make_field(101, 2)
thr = thm1_threshold(101, 2)
tmin = int(thr) + 1
counts = [count_squares(DigitBox.uniform(F101, tuple(range(t)))).count_q
          for t in range(tmin, tmin + 5)]
print(f"  verified on F_101^2: counts at t = {tmin}..{tmin + 4} are {counts}")

print("\nthm2 large-degree regime (not enumerable; formula evaluation only):")
print(f"  C(20) = {thm2_Cr(20):.6f}")
for pp in (101, 1009):
    print(f"  threshold(p = {pp}, r = 20) = {thm2_threshold(pp, 20):.2f}  "
          f"(vs sqrt(p) = {pp ** 0.5:.2f})")

print("\nBest (k, nu) choices for the thm2 bound at p = 101, r = 6:")
for d in (11, 31, 61):
    k, nu, rhs = thm2_best(101, 6, d)
    size_w = d ** 6
    print(f"  |D| = {d:>3}: k = {k}, nu = {nu:>2}, rhs = {rhs:.3e}, "
          f"nontrivial = {rhs < size_w / 2}")

print("\nDone.")
