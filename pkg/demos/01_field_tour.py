#!/usr/bin/env python3
"""Tour of F_{p^r} construction: moduli, arithmetic, Frobenius, subfields."""

from digitsquares import (conjugates, element_degree, frobenius, is_generator,
                          make_field)
from digitsquares.fields import divisors, poly_str

# ── deterministic moduli ─────────────────────────────────────────────

print("Smallest irreducible moduli (constant-term-last scan order):")
for p, r in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (13, 3), (101, 2)]:
    ctx = make_field(p, r)
    print(f"  F_{p}^{r}: x^{r} ... -> {poly_str(ctx.modulus)}   (q = {ctx.q})")

# ── arithmetic in F_9 ────────────────────────────────────────────────

print("\nArithmetic in F_9 = F_3[x]/(x^2 + 1):")
F9 = make_field(3, 2)
x = F9.from_poly_coords((0, 1))
one = F9.one()
print(f"  x * x        = {poly_str((x * x).poly_coords)}")
print(f"  (1 + x)^2    = {poly_str(((one + x) ** 2).poly_coords)}")
print(f"  (1 + x)^-1   = {poly_str(((one + x).inv()).poly_coords)}")
print(f"  x^8          = {poly_str((x ** 8).poly_coords)}   (Fermat: a^(q-1) = 1)")

# ── Frobenius orbits ─────────────────────────────────────────────────

print("\nFrobenius orbits in F_27:")
F27 = make_field(3, 3)
seen = set()
for a in F27.elements():
    if a.idx in seen:
        continue
    orbit = conjugates(a)
    seen.update(e.idx for e in orbit)
    if len(orbit) > 1 and len(seen) < 15:
        chain = " -> ".join(poly_str(e.poly_coords) for e in orbit)
        print(f"  degree {element_degree(a)}: {chain}")
print(f"  frobenius(x) = {poly_str(frobenius(F27.from_poly_coords((0, 1, 0))).poly_coords)}")

# ── subfield census ──────────────────────────────────────────────────

print("\nSubfield census (elements counted by their degree over F_p):")
for p, r in [(3, 4), (5, 2), (3, 6)]:
    ctx = make_field(p, r)
    census = {}
    for a in ctx.elements():
        d = element_degree(a)
        census[d] = census.get(d, 0) + 1
    parts = ", ".join(f"deg {d}: {census[d]}" for d in sorted(census))
    gens = sum(1 for a in ctx.elements() if is_generator(a))
    print(f"  F_{p}^{r}: {parts}")
    for d in divisors(r):
        inside = sum(census.get(e, 0) for e in divisors(d))
        assert inside == p ** d, "subfield sizes must be p^d"
    print(f"          {gens} field generators, subfield sizes verified")

print("\nDone.")
