"""Exact and sampled counting of squares inside digit boxes.

The exact path walks the box once, classifying each element by the
quadratic character, and verifies the linking identity

    |W ∩ Q| = (|W| - [0 in W]) / 2 + (1/2) * sum_{x in W} chi(x)

before returning.  Deviations from |W|/2 are kept as exact rationals
(half-integers); nothing in this module ever compares floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .boxes import Box, check_budget, index_blocks, coords_blocks, sample_coords
from .characters import DLOG_CAP, quad_char_coords, quad_table

Z99 = 2.5758293035489004  # two-sided 99% normal quantile


@dataclass(frozen=True)
class SquareCountReport:
    size_w: int
    count_q: int           # |W ∩ Q|, nonzero squares
    count_q0: int          # |W ∩ Q_0|, squares including 0
    char_sum: int          # exact sum of the quadratic character over W
    deviation: Fraction    # |count_q - size_w / 2|
    zero_in_w: bool

    @property
    def deviation_q0(self) -> Fraction:
        """|count_q0 - size_w / 2|, the quantity the thmA/thmB bounds control."""
        return Fraction(abs(2 * self.count_q0 - self.size_w), 2)

    @property
    def count_nonsquares(self) -> int:
        return self.size_w - self.count_q - (1 if self.zero_in_w else 0)


def count_squares(box: Box, budget: int | None = None) -> SquareCountReport:
    """Exact square census of a box; refuses to exceed the enumeration budget."""
    ctx = box.ctx
    size = check_budget(box, budget, what="exact square counting")
    zero_in = box.contains_zero()
    count_q = 0
    char_sum = 0
    if ctx.q <= DLOG_CAP:
        tab = quad_table(ctx)
        for idx in index_blocks(box):
            vals = tab[idx]
            count_q += int(np.count_nonzero(vals == 1))
            char_sum += int(vals.sum())
    else:
        for coords in coords_blocks(box):
            poly = (coords @ ctx.basis_matrix.T) % ctx.p
            vals = quad_char_coords(ctx, poly)
            count_q += int(np.count_nonzero(vals == 1))
            char_sum += int(vals.sum())
    z = 1 if zero_in else 0
    assert 2 * count_q == size - z + char_sum, "square-count identity violated"
    return SquareCountReport(
        size_w=size,
        count_q=count_q,
        count_q0=count_q + z,
        char_sum=char_sum,
        deviation=Fraction(abs(2 * count_q - size), 2),
        zero_in_w=zero_in,
    )


@dataclass(frozen=True)
class FractionEstimate:
    estimate: float
    ci_low: float
    ci_high: float
    n_samples: int
    n_squares: int
    caveat_small_counts: bool  # normal approximation dubious when n*p̂ < 20


def estimate_square_fraction(box: Box, n: int, seed: int) -> FractionEstimate:
    """Monte-Carlo estimate of |W ∩ Q| / |W| with a 99% normal-approximation CI."""
    if n < 100:
        raise ValueError("need at least 100 samples for the normal-approximation CI")
    ctx = box.ctx
    rng = np.random.default_rng(seed)
    hits = 0
    block = 1 << 14
    remaining = n
    while remaining > 0:
        take = min(block, remaining)
        coords = sample_coords(box, take, rng)
        poly = (coords @ ctx.basis_matrix.T) % ctx.p
        hits += int(np.count_nonzero(quad_char_coords(ctx, poly) == 1))
        remaining -= take
    p_hat = hits / n
    half = Z99 * (p_hat * (1.0 - p_hat) / n) ** 0.5
    return FractionEstimate(
        estimate=p_hat,
        ci_low=max(0.0, p_hat - half),
        ci_high=min(1.0, p_hat + half),
        n_samples=n,
        n_squares=hits,
        caveat_small_counts=min(hits, n - hits) < 20,
    )
