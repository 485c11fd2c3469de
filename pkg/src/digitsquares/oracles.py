"""Brute-force verification of the lemma-level inequalities on small fields.

Each check computes its left-hand side exactly (integer for quadratic
characters, CycloSum interval otherwise), evaluates the right-hand side as a
certified float upper bound, and reports holds / slack.  Mathematical
preconditions that fail raise HypothesisNotMet so sweep drivers can mark the
row skipped rather than failed.

Upper bounds that the source results state only up to unspecified constants
(the multiplicative-energy count, the normalised box sums) are reported as
slack ratios and never asserted; the only asserted energy fact is the
unconditional diagonal lower bound E >= |B|^2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from mpmath import iv

from .boxes import Box, IntervalBox, default_budget, index_blocks
from .bounds import _upper
from .characters import (CycloSum, DLOG_CAP, MultChar, char_sum_indices,
                         dlog_table, make_char, quad_char_coords, quad_table)
from .errors import BudgetExceeded, HypothesisNotMet
from .fields import (FieldCtx, FieldElem, all_poly_coords, conjugates,
                     element_degree, vec_decode, vec_encode, vec_pow)


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    parameters: dict = field(compare=False)
    lhs: float = 0.0     # exact when integral; interval midpoint otherwise
    rhs: float = 0.0     # certified upper bound
    holds: bool = True

    @property
    def slack(self) -> float:
        return self.lhs / self.rhs if self.rhs else math.inf


def _report(lemma: str, params: dict, total: CycloSum, rhs: float) -> LemmaReport:
    lo, hi = total.magnitude_interval()
    # a violation is reported only when even the certified lower bound exceeds rhs
    return LemmaReport(lemma, params, lhs=(lo + hi) / 2.0, rhs=rhs, holds=lo <= rhs)


def _subfield_shift_indices(ctx: FieldCtx, alpha_idx: int) -> np.ndarray:
    """Indices of xi + alpha for xi = 0..p-1 (only the constant digit moves)."""
    p = ctx.p
    c0 = alpha_idx % p
    rest = alpha_idx - c0
    return rest + (c0 + np.arange(p, dtype=np.int64)) % p


# ---------------------------------------------------------------------------
# two-generator Weil-type sums over the prime subfield (the lemmaD check)

def lemmaD_check(ctx: FieldCtx, alpha: FieldElem, beta: FieldElem,
                 s: int, index: int = 1) -> LemmaReport:
    """|sum_xi chi((xi+alpha)(xi+beta)^{s-1})| <= (2r - 1) sqrt(p)."""
    if s < 2 or (ctx.q - 1) % s != 0:
        raise ValueError(f"character order s = {s} must be >= 2 and divide q - 1")
    if math.gcd(index, s) != 1:
        raise ValueError(f"index {index} gives a character of order below {s}")
    if element_degree(alpha) != ctx.r or element_degree(beta) != ctx.r:
        raise HypothesisNotMet("alpha and beta must generate F_q over F_p")
    if beta in conjugates(alpha):
        raise HypothesisNotMet("alpha and beta must not be conjugate")
    chi = make_char(ctx, s, index)
    dl = dlog_table(ctx)
    a_idx = _subfield_shift_indices(ctx, alpha.idx)
    b_idx = _subfield_shift_indices(ctx, beta.idx)
    da, db = dl[a_idx], dl[b_idx]
    live = (da >= 0) & (db >= 0)  # chi(0) = 0 kills terms with a vanished factor
    # chi(a b^{s-1}) = zeta_s^{ j (dlog a + (s-1) dlog b) mod s }
    exps = (index * (da[live] + (s - 1) * db[live])) % s
    total = CycloSum(s, [int(c) for c in np.bincount(exps, minlength=s)])
    rhs = _upper((2 * ctx.r - 1) * iv.sqrt(iv.mpf(ctx.p)))
    params = {"s": s, "j": index, "alpha": alpha.coords, "beta": beta.coords,
              "p": ctx.p, "r": ctx.r}
    return _report("D", params, total, rhs)


def generator_elements(ctx: FieldCtx) -> list[FieldElem]:
    """All elements of degree r, i.e. lying in no proper subfield."""
    out = []
    for idx in range(ctx.q):
        a = FieldElem(ctx, idx)
        if element_degree(a) == ctx.r:
            out.append(a)
    return out


# ---------------------------------------------------------------------------
# complete sums of shifted character products (the lemmaE check)

def lemmaE_check(ctx: FieldCtx, chars: list[MultChar], shifts: list[FieldElem]) -> LemmaReport:
    """|sum_a prod_i chi_i(a + h_i)| <= (t - t0 - 1) sqrt(q) + t0 + 1."""
    t = len(chars)
    if t != len(shifts):
        raise ValueError("need one shift per character")
    if not 1 <= t < ctx.q:
        raise ValueError(f"t = {t} outside [1, q)")
    if len({h.idx for h in shifts}) != t:
        raise ValueError("shifts must be pairwise distinct")
    t0 = sum(1 for c in chars if c.is_principal)
    if t0 == t:
        raise HypothesisNotMet("at least one character must be non-principal")
    order = math.lcm(*(c.order for c in chars))
    base = all_poly_coords(ctx)
    total_exp = np.zeros(ctx.q, dtype=np.int64)
    dead = np.zeros(ctx.q, dtype=bool)
    for chi, h in zip(chars, shifts):
        shifted = vec_encode(ctx, (base + np.asarray(h.poly_coords, dtype=np.int64)) % ctx.p)
        exps = chi.exponents_for_indices(shifted)
        dead |= exps < 0
        total_exp += (order // chi.order) * np.maximum(exps, 0)
    exps = total_exp[~dead] % order
    total = CycloSum(order, [int(c) for c in np.bincount(exps, minlength=order)])
    rhs = _upper((t - t0 - 1) * iv.sqrt(iv.mpf(ctx.q)) + t0 + 1)
    params = {"t": t, "t0": t0, "orders": tuple(c.order for c in chars),
              "indices": tuple(c.index for c in chars),
              "shifts": tuple(h.idx for h in shifts), "p": ctx.p, "r": ctx.r}
    return _report("E", params, total, rhs)


# ---------------------------------------------------------------------------
# bilinear quadratic-character sums over U + V (the lemma1 check)

def lemma1_rhs(q: int, nu: int, size_u: int, size_v: int) -> float:
    if nu < 1:
        raise ValueError("nu must be >= 1")
    fac = math.factorial(2 * nu) // math.factorial(nu)
    inner = (iv.mpf(fac) * iv.mpf(size_v) ** nu * q
             + iv.mpf(size_v) ** (2 * nu) * 4 * nu * iv.sqrt(iv.mpf(q)))
    val = iv.exp(iv.log(iv.mpf(size_u)) * (2 * nu - 1) / (2 * nu)) \
        * iv.exp(iv.log(inner) / (2 * nu))
    return _upper(val)


def lemma1_check(ctx: FieldCtx, U, V, nu: int) -> LemmaReport:
    """|sum_{u in U} sum_{v in V} chi(u + v)| against the moment bound."""
    u_idx = np.asarray([x.idx if isinstance(x, FieldElem) else int(x) for x in U],
                       dtype=np.int64)
    v_idx = np.asarray([x.idx if isinstance(x, FieldElem) else int(x) for x in V],
                       dtype=np.int64)
    if u_idx.size == 0 or v_idx.size == 0:
        raise ValueError("U and V must be nonempty")
    cu = vec_decode(ctx, u_idx)
    cv = vec_decode(ctx, v_idx)
    sums = ((cu[:, None, :] + cv[None, :, :]) % ctx.p).reshape(-1, ctx.r)
    if ctx.q <= DLOG_CAP:
        vals = quad_table(ctx)[vec_encode(ctx, sums)]
    else:
        vals = quad_char_coords(ctx, sums)
    lhs = abs(int(vals.sum()))
    rhs = lemma1_rhs(ctx.q, nu, u_idx.size, v_idx.size)
    params = {"nu": nu, "size_u": int(u_idx.size), "size_v": int(v_idx.size),
              "p": ctx.p, "r": ctx.r}
    return LemmaReport("1", params, lhs=float(lhs), rhs=rhs, holds=lhs <= rhs)


# ---------------------------------------------------------------------------
# subfield partition of digit tuples (the mechanism behind the thm1 bound)

def subfield_partition(ctx: FieldCtx, digits, basis=None,
                       budget: int | None = None) -> dict[int, list[tuple[int, ...]]]:
    """Partition D^{r-1} by the subfield degree of c_2 b_2 + ... + c_r b_r.

    b_j = a_j / a_1 normalises the installed (or supplied) basis so that
    b_1 = 1; the keys divide r and the degree-1 class is {0-tuple} exactly
    when 0 is a digit.
    """
    if ctx.r < 2:
        raise ValueError("the partition needs r >= 2")
    ds = tuple(sorted(set(int(c) for c in digits)))
    if not ds or ds[0] < 0 or ds[-1] >= ctx.p:
        raise ValueError(f"digits {digits} invalid for F_{ctx.p}")
    budget = default_budget() if budget is None else budget
    m = len(ds) ** (ctx.r - 1)
    if m > budget:
        raise BudgetExceeded(m, budget, "subfield partition of the digit tuples")
    basis_idx = (tuple(b.idx if isinstance(b, FieldElem) else int(b) for b in basis)
                 if basis is not None else ctx.basis_indices)
    a1_inv = ctx.inv_idx(basis_idx[0])
    b_rows = np.asarray(
        [ctx.index_to_poly_coords(ctx.mul_idx(a1_inv, b)) for b in basis_idx[1:]],
        dtype=np.int64)
    dvals = np.asarray(ds, dtype=np.int64)
    k = np.arange(m, dtype=np.int64)
    tuples = np.empty((m, ctx.r - 1), dtype=np.int64)
    stride = 1
    for i in range(ctx.r - 2, -1, -1):
        tuples[:, i] = dvals[(k // stride) % len(ds)]
        stride *= len(ds)
    y = (tuples @ b_rows) % ctx.p   # poly coords of c_2 b_2 + ... + c_r b_r
    degrees = np.zeros(m, dtype=np.int64)
    cur = y.copy()
    for d in range(1, ctx.r + 1):
        cur = vec_pow(ctx, cur, ctx.p)
        if ctx.r % d == 0:
            hit = (degrees == 0) & (cur == y).all(axis=1)
            degrees[hit] = d
    out: dict[int, list[tuple[int, ...]]] = {}
    for row, d in zip(tuples, degrees):
        out.setdefault(int(d), []).append(tuple(int(c) for c in row))
    return out


# ---------------------------------------------------------------------------
# multiplicative energy

@dataclass(frozen=True)
class EnergyReport:
    box: str
    size: int
    energy: int                      # exact count of x1 x2 = x3 x4 in B^4
    trivial_lower: int               # |B|^2 diagonal solutions
    ratio: float                     # energy / (|B|^2 log p), report-only
    within_lemma_hypothesis: bool    # equal-sided interval box with H <= sqrt(p)


def energy_count(box: Box, budget: int | None = None) -> EnergyReport:
    """Exact multiplicative energy via the product-multiplicity histogram.

    E = sum_w f(w)^2 with f(w) = #{(x, y) in B^2 : x y = w}; collisions of
    the product map are exactly the quadruple solutions, at O(|B|^2) cost.
    """
    ctx = box.ctx
    n = box.size()
    budget = default_budget() if budget is None else budget
    if n * n > budget:
        raise BudgetExceeded(n * n, budget, "pairwise products for the energy count")
    idx = np.concatenate(list(index_blocks(box)))
    has_zero = bool((idx == 0).any())
    nz = idx[idx != 0]
    if ctx.q <= DLOG_CAP:
        dl = dlog_table(ctx)[nz]
        m = ctx.q - 1
        hist = np.zeros(m, dtype=np.int64)
        chunk = max(1, (1 << 22) // max(1, nz.size))
        for lo in range(0, nz.size, chunk):
            part = (dl[lo:lo + chunk, None] + dl[None, :]) % m
            hist += np.bincount(part.ravel(), minlength=m)
        energy = int((hist.astype(object) ** 2).sum())
    else:
        from collections import Counter
        counts = Counter()
        elems = [int(i) for i in nz]
        for a in elems:
            for b in elems:
                counts[ctx.mul_idx(a, b)] += 1
        energy = sum(c * c for c in counts.values())
    if has_zero:
        f0 = 2 * n - 1  # pairs with x = 0 or y = 0
        energy += f0 * f0
    assert energy >= n * n, "diagonal solutions alone give |B|^2"
    hyp = (isinstance(box, IntervalBox)
           and len(set(box.lengths)) == 1
           and box.lengths[0] ** 2 <= ctx.p)
    return EnergyReport(
        box=box.describe(),
        size=n,
        energy=energy,
        trivial_lower=n * n,
        ratio=energy / (n * n * math.log(ctx.p)),
        within_lemma_hypothesis=hyp,
    )


# ---------------------------------------------------------------------------
# worst-case normalised box sums

@dataclass(frozen=True)
class DeltaReport:
    delta: float
    best_box: IntervalBox
    n_boxes: int


def delta_H(ctx: FieldCtx, H: int, chi: MultChar,
            budget: int | None = None) -> DeltaReport:
    """max over boxes with sides in [H, 2H] of |sum_B chi| / |B|, by exhaustion."""
    if not 1 <= H <= ctx.p:
        raise ValueError(f"H = {H} outside [1, p]")
    budget = default_budget() if budget is None else budget
    lengths = range(H, min(2 * H, ctx.p) + 1)
    n_len = len(lengths)
    n_boxes = (ctx.p * n_len) ** ctx.r
    if n_boxes * (2 * H) ** ctx.r > budget:
        raise BudgetExceeded(n_boxes * (2 * H) ** ctx.r, budget,
                             "exhaustive search over parallelepipeds")
    best = None
    count = 0
    for hs in itertools.product(lengths, repeat=ctx.r):
        for ns in itertools.product(range(ctx.p), repeat=ctx.r):
            box = IntervalBox(ctx, ns, hs)
            count += 1
            total = CycloSum(chi.order)
            for idx in index_blocks(box):
                total += char_sum_indices(chi, idx)
            lo, hi = total.magnitude_interval()
            val = (lo + hi) / 2.0 / box.size()
            if best is None or val > best[0]:
                best = (val, box)
    return DeltaReport(delta=best[0], best_box=best[1], n_boxes=count)
