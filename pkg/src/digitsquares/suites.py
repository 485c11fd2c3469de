"""Verification suites: one function per named check family.

Each suite takes TaskOptions for one (p, r) field and returns report rows.
Mathematical precondition failures become skip-hypothesis rows, budget
refusals become skips, and anything the source results do not quantify is
emitted report-only.  All randomness is derived from the configured seed
plus (p, r), so identical configurations reproduce identical rows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import bounds
from .boxes import (DigitBox, IntervalBox, format_digit_set, parse_digit_spec)
from .characters import make_char
from .counting import count_squares
from .errors import BudgetExceeded, HypothesisNotMet
from .fields import FieldElem, divisors, make_field
from .oracles import (delta_H, energy_count, generator_elements, lemma1_check,
                      lemmaD_check, lemmaE_check, subfield_partition)
from .reporting import Row, slack_of


@dataclass(frozen=True)
class TaskOptions:
    p: int
    r: int
    digits: str | None = None
    seed: int | None = None
    budget: int | None = None
    trials: int | None = None
    h: int = 0             # 0 = suite-specific default
    eps: float = 0.25
    const: float = 1.0
    nu_max: int = 4
    orders: tuple[int, ...] | None = None


def _needs_seed(opts: TaskOptions, why: str):
    if opts.seed is None:
        raise ValueError(f"a seed is required for {why}")


def digit_instances(opts: TaskOptions) -> list[tuple[str, tuple[int, ...]]]:
    """(label, digit set) pairs for one field, from the digit-set spec.

    Spec forms, combinable with '+': "intervals" (all {0..t-1}),
    "all-size-m", "random:n" or "random:n,m" (seeded), or an explicit
    residue list like "0-4,7".
    """
    p = opts.p
    spec = opts.digits or "intervals"
    out = []
    for part in spec.split("+"):
        part = part.strip()
        if part == "intervals":
            out.extend((format_digit_set(range(t)), tuple(range(t)))
                       for t in range(1, p + 1))
        elif part.startswith("all-size-"):
            m = int(part[len("all-size-"):])
            if not 1 <= m <= p:
                raise ValueError(f"subset size {m} outside [1, {p}]")
            out.extend((format_digit_set(c), tuple(c))
                       for c in itertools.combinations(range(p), m))
        elif part.startswith("random:"):
            _needs_seed(opts, "random digit sets")
            args = part[len("random:"):].split(",")
            n = int(args[0])
            fixed = int(args[1]) if len(args) > 1 else None
            rng = np.random.default_rng([opts.seed, p, opts.r])
            for i in range(n):
                size = fixed if fixed is not None else int(rng.integers(1, p + 1))
                ds = tuple(sorted(int(v) for v in rng.choice(p, size=size, replace=False)))
                out.append((f"rnd{i}={format_digit_set(ds)}", ds))
        else:
            ds = parse_digit_spec(part, p)
            out.append((format_digit_set(ds), ds))
    return out


def _skip_row(suite, opts, instance, note) -> Row:
    return Row(suite, opts.p, opts.r, f"{instance};{note}", verdict="skip-hypothesis")


# ---------------------------------------------------------------------------
# counting identities

def suite_identity(opts: TaskOptions) -> list[Row]:
    """|W ∩ Q| = (|W| - [0 in W])/2 + (1/2) sum chi(x), exactly."""
    ctx = make_field(opts.p, opts.r)
    rows = []
    for label, ds in digit_instances(opts):
        box = DigitBox.uniform(ctx, ds)
        try:
            rep = count_squares(box, opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row("identity", opts, label, "budget"))
            continue
        z = 1 if rep.zero_in_w else 0
        expected = Fraction(rep.size_w - z + rep.char_sum, 2)
        ok = Fraction(rep.count_q) == expected
        rows.append(Row("identity", opts.p, opts.r, label,
                        lhs=rep.count_q, rhs=expected,
                        verdict="pass" if ok else "fail"))
    return rows


def suite_est1(opts: TaskOptions) -> list[Row]:
    """Deviation of |W ∩ Q| is at most |sum chi| / 2 + 1/2, exactly."""
    ctx = make_field(opts.p, opts.r)
    rows = []
    for label, ds in digit_instances(opts):
        box = DigitBox.uniform(ctx, ds)
        try:
            rep = count_squares(box, opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row("est1", opts, label, "budget"))
            continue
        rhs = Fraction(abs(rep.char_sum), 2) + Fraction(1, 2)
        ok = rep.deviation <= rhs
        rows.append(Row("est1", opts.p, opts.r, label,
                        lhs=rep.deviation, rhs=rhs,
                        slack=slack_of(rep.deviation, rhs),
                        verdict="pass" if ok else "fail"))
    return rows


# ---------------------------------------------------------------------------
# theorem bound suites

def _bound_rows(suite, opts, name, make_rhs, use_q0, restrict=None) -> list[Row]:
    ctx = make_field(opts.p, opts.r)
    rows = []
    for label, ds in digit_instances(opts):
        d = len(ds)
        if restrict is not None and not restrict(d):
            continue
        try:
            rhs = make_rhs(d)
        except HypothesisNotMet as exc:
            rows.append(_skip_row(suite, opts, label, exc))
            continue
        box = DigitBox.uniform(ctx, ds)
        try:
            rep = count_squares(box, opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row(suite, opts, label, "budget"))
            continue
        observed = rep.deviation_q0 if use_q0 else rep.deviation
        bound = bounds.check_bound(name, {"p": opts.p, "r": opts.r, "d": d},
                                   rhs, observed, rep.size_w)
        rows.append(Row(suite, opts.p, opts.r, label,
                        lhs=bound.observed, rhs=bound.rhs_value, slack=bound.slack,
                        verdict="pass" if bound.holds else "fail"))
    return rows


def suite_thmA(opts: TaskOptions) -> list[Row]:
    return _bound_rows("thmA", opts, "ThmA",
                       lambda d: bounds.thmA_rhs(opts.p, opts.r, d),
                       use_q0=True, restrict=lambda d: 2 <= d <= opts.p - 1)


def suite_thmB(opts: TaskOptions) -> list[Row]:
    """Initial intervals D = {0..t-1} only; t = p-1 rows are hypothesis skips."""
    ctx = make_field(opts.p, opts.r)
    rows = []
    for t in range(2, opts.p):
        label = format_digit_set(range(t))
        try:
            rhs = bounds.thmB_rhs(opts.p, opts.r, t)
        except HypothesisNotMet:
            rows.append(_skip_row("thmB", opts, label, "C(p,t) undefined at t=p-1"))
            continue
        try:
            rep = count_squares(DigitBox.uniform(ctx, tuple(range(t))), opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row("thmB", opts, label, "budget"))
            continue
        bound = bounds.check_bound("ThmB", {"p": opts.p, "r": opts.r, "t": t},
                                   rhs, rep.deviation_q0, rep.size_w)
        rows.append(Row("thmB", opts.p, opts.r, label,
                        lhs=bound.observed, rhs=bound.rhs_value, slack=bound.slack,
                        verdict="pass" if bound.holds else "fail"))
    return rows


def suite_thm1(opts: TaskOptions) -> list[Row]:
    if not bounds.thm1_hypothesis(opts.p, opts.r):
        return [_skip_row("thm1", opts, "all", "needs 2r-1 <= sqrt(p)")]
    return _bound_rows("thm1", opts, "Thm1",
                       lambda d: bounds.thm1_rhs(opts.p, opts.r, d), use_q0=False)


def suite_thm1_existence(opts: TaskOptions) -> list[Row]:
    """Every initial interval at or above the threshold must contain a square."""
    if opts.r < 2:
        return [_skip_row("thm1-existence", opts, "all", "needs r >= 2")]
    if not bounds.thm1_hypothesis(opts.p, opts.r):
        return [_skip_row("thm1-existence", opts, "all", "needs 2r-1 <= sqrt(p)")]
    ctx = make_field(opts.p, opts.r)
    threshold = bounds.thm1_threshold(opts.p, opts.r)
    t_min = math.ceil(threshold)
    if t_min > opts.p - 1:
        return [_skip_row("thm1-existence", opts, f"threshold={threshold!r}",
                          "threshold exceeds p-1; no digit set to test")]
    rows = []
    for t in range(t_min, opts.p):
        try:
            rep = count_squares(DigitBox.uniform(ctx, tuple(range(t))), opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row("thm1-existence", opts, f"t={t}", "budget"))
            continue
        rows.append(Row("thm1-existence", opts.p, opts.r,
                        f"t={t};threshold={threshold!r}",
                        lhs=rep.count_q, rhs=1,
                        verdict="pass" if rep.count_q >= 1 else "fail"))
    return rows


def suite_thm2(opts: TaskOptions) -> list[Row]:
    if opts.r < 2:
        return [_skip_row("thm2", opts, "all", "the split needs r >= 2")]
    ctx = make_field(opts.p, opts.r)
    rows = []
    for label, ds in digit_instances(opts):
        d = len(ds)
        try:
            rep = count_squares(DigitBox.uniform(ctx, ds), opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row("thm2", opts, label, "budget"))
            continue
        for k in range(1, opts.r):
            for nu in range(1, opts.nu_max + 1):
                rhs = bounds.thm2_rhs(opts.p, opts.r, d, k, nu)
                bound = bounds.check_bound(
                    "Thm2", {"p": opts.p, "r": opts.r, "d": d, "k": k, "nu": nu},
                    rhs, rep.deviation, rep.size_w)
                rows.append(Row("thm2", opts.p, opts.r, f"{label};k={k};nu={nu}",
                                lhs=bound.observed, rhs=bound.rhs_value,
                                slack=bound.slack,
                                verdict="pass" if bound.holds else "fail"))
    return rows


def suite_corC_report(opts: TaskOptions) -> list[Row]:
    """Report-only: the corollary's bound carries an unspecified constant."""
    ctx = make_field(opts.p, opts.r)
    rows = []
    for t in range(2, opts.p + 1):
        label = f"t={t};eps={opts.eps!r};const={opts.const!r}"
        try:
            rhs = bounds.corC_rhs(opts.p, opts.r, t, opts.eps, opts.const)
        except HypothesisNotMet:
            rows.append(_skip_row("corC-report", opts, label, "t below p^(1/4+eps)"))
            continue
        try:
            rep = count_squares(DigitBox.uniform(ctx, tuple(range(t))), opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row("corC-report", opts, label, "budget"))
            continue
        rows.append(Row("corC-report", opts.p, opts.r, label,
                        lhs=rep.deviation, rhs=rhs,
                        slack=slack_of(rep.deviation, rhs),
                        verdict="report-only"))
    return rows


# ---------------------------------------------------------------------------
# lemma suites

def _lemma_row(suite, opts, label, rep) -> Row:
    return Row(suite, opts.p, opts.r, label,
               lhs=rep.lhs, rhs=rep.rhs, slack=rep.slack,
               verdict="pass" if rep.holds else "fail")


def suite_lemmaD(opts: TaskOptions) -> list[Row]:
    """Exhaustive over ordered non-conjugate generator pairs, per character order."""
    ctx = make_field(opts.p, opts.r)
    orders = opts.orders or tuple(s for s in (2, 3, 4) if (ctx.q - 1) % s == 0)
    gens = generator_elements(ctx)
    rows = []
    for s in orders:
        if (ctx.q - 1) % s != 0:
            rows.append(_skip_row("lemmaD", opts, f"s={s}", "s does not divide q-1"))
            continue
        for alpha in gens:
            for beta in gens:
                try:
                    rep = lemmaD_check(ctx, alpha, beta, s)
                except HypothesisNotMet:
                    continue  # conjugate pairs are not instances of the lemma
                rows.append(_lemma_row("lemmaD", opts,
                                       f"s={s};a={alpha.idx};b={beta.idx}", rep))
    return rows


def suite_lemmaE(opts: TaskOptions) -> list[Row]:
    _needs_seed(opts, "random shifted-product instances")
    ctx = make_field(opts.p, opts.r)
    trials = opts.trials if opts.trials is not None else 200
    rng = np.random.default_rng([opts.seed, opts.p, opts.r, 2])
    divs = [s for s in divisors(ctx.q - 1)]
    rows = []
    t_hi = min(5, ctx.q)  # the lemma needs t < q
    for i in range(trials):
        t = int(rng.integers(1, t_hi))
        orders, indices = [], []
        for _ in range(t):
            s = int(divs[rng.integers(0, len(divs))])
            orders.append(s)
            indices.append(int(rng.integers(0, s)))
        if all(j % s == 0 for s, j in zip(orders, indices)):
            big = [s for s in divs if s > 1]
            s = int(big[rng.integers(0, len(big))])
            orders[-1] = s
            indices[-1] = int(rng.integers(1, s))
        chars = [make_char(ctx, s, j) for s, j in zip(orders, indices)]
        shift_idx = rng.choice(ctx.q, size=t, replace=False)
        shifts = [FieldElem(ctx, int(ix)) for ix in shift_idx]
        rep = lemmaE_check(ctx, chars, shifts)
        rows.append(_lemma_row("lemmaE", opts, f"trial{i};t={t}", rep))
    return rows


def suite_lemma1(opts: TaskOptions) -> list[Row]:
    _needs_seed(opts, "random (U, V) pairs")
    ctx = make_field(opts.p, opts.r)
    trials = opts.trials if opts.trials is not None else 100
    rng = np.random.default_rng([opts.seed, opts.p, opts.r, 3])
    cap = min(ctx.q, 25)
    rows = []
    for i in range(trials):
        su = int(rng.integers(1, cap + 1))
        sv = int(rng.integers(1, cap + 1))
        U = [FieldElem(ctx, int(ix)) for ix in rng.choice(ctx.q, size=su, replace=False)]
        V = [FieldElem(ctx, int(ix)) for ix in rng.choice(ctx.q, size=sv, replace=False)]
        for nu in (1, 2, 3):
            rep = lemma1_check(ctx, U, V, nu)
            rows.append(_lemma_row("lemma1", opts,
                                   f"trial{i};|U|={su};|V|={sv};nu={nu}", rep))
    return rows


def suite_partition(opts: TaskOptions) -> list[Row]:
    """Subfield partition bookkeeping: sizes, divisor keys, the degree-1 rule."""
    if opts.r < 2:
        return [_skip_row("partition", opts, "all", "needs r >= 2")]
    ctx = make_field(opts.p, opts.r)
    rows = []
    for label, ds in digit_instances(opts):
        try:
            part = subfield_partition(ctx, ds, budget=opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row("partition", opts, label, "budget"))
            continue
        total = sum(len(v) for v in part.values())
        keys_ok = all(opts.r % d == 0 for d in part)
        zero_tuple = tuple([0] * (opts.r - 1))
        d1 = part.get(1, [])
        d1_ok = (d1 == [zero_tuple]) if 0 in ds else (d1 == [])
        ok = total == len(ds) ** (opts.r - 1) and keys_ok and d1_ok
        sizes = ",".join(f"{d}:{len(part[d])}" for d in sorted(part))
        rows.append(Row("partition", opts.p, opts.r, f"{label};sizes={sizes}",
                        lhs=total, rhs=len(ds) ** (opts.r - 1),
                        verdict="pass" if ok else "fail"))
    return rows


def suite_energy(opts: TaskOptions) -> list[Row]:
    """Cubic interval boxes at the origin, sides up to sqrt(p).

    The asserted fact is only the unconditional diagonal lower bound
    E >= |B|^2; the slack column carries the report-only ratio
    E / (|B|^2 log p).
    """
    ctx = make_field(opts.p, opts.r)
    h_max = opts.h if opts.h > 0 else math.isqrt(opts.p)
    rows = []
    for h in range(1, max(1, h_max) + 1):
        box = IntervalBox(ctx, (0,) * opts.r, (h,) * opts.r)
        try:
            rep = energy_count(box, opts.budget)
        except BudgetExceeded:
            rows.append(_skip_row("energy", opts, box.describe(), "budget"))
            continue
        note = "" if rep.within_lemma_hypothesis else ";outside-hypothesis"
        rows.append(Row("energy", opts.p, opts.r, f"{box.describe()}{note}",
                        lhs=rep.energy, rhs=rep.trivial_lower, slack=rep.ratio,
                        verdict="pass" if rep.energy >= rep.trivial_lower else "fail"))
    return rows


def suite_deltaH(opts: TaskOptions) -> list[Row]:
    """Report-only worst-case normalised box sums for the quadratic character."""
    ctx = make_field(opts.p, opts.r)
    chi = make_char(ctx, 2, 1)
    h = opts.h if opts.h > 0 else 1
    try:
        rep = delta_H(ctx, h, chi, opts.budget)
    except BudgetExceeded:
        return [_skip_row("deltaH", opts, f"H={h}", "budget")]
    return [Row("deltaH", opts.p, opts.r,
                f"H={h};best={rep.best_box.describe()};boxes={rep.n_boxes}",
                lhs=rep.delta, rhs=1.0, slack=rep.delta,
                verdict="report-only")]


SUITES = {
    "identity": suite_identity,
    "est1": suite_est1,
    "thmA": suite_thmA,
    "thmB": suite_thmB,
    "thm1": suite_thm1,
    "thm1-existence": suite_thm1_existence,
    "thm2": suite_thm2,
    "lemmaD": suite_lemmaD,
    "lemmaE": suite_lemmaE,
    "lemma1": suite_lemma1,
    "partition": suite_partition,
    "energy": suite_energy,
    "deltaH": suite_deltaH,
    "corC-report": suite_corC_report,
}
