"""Digit-restricted sets W(D_1,...,D_r) and coordinate interval boxes.

A DigitBox holds one residue set per coordinate of the installed basis; the
box is the set of field elements whose coordinates all lie in their sets.
An IntervalBox is the special case where coordinate i ranges over the
integer window N_i+1 .. N_i+H_i reduced mod p.

Enumeration is always in lexicographic coordinate order (first coordinate
slowest), so that report files are diffable across runs, and is emitted in
numpy blocks internally.  Exhaustive walks refuse to run past the
enumeration budget instead of truncating.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded
from .fields import FieldCtx, FieldElem, vec_encode

DEFAULT_BUDGET = 10 ** 8
BUDGET_ENV_VAR = "DIGITSQUARES_BUDGET"
BLOCK = 1 << 15


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None
    if val <= 0:
        raise ValueError(f"{BUDGET_ENV_VAR} must be positive, got {val}")
    return val


def parse_digit_spec(spec: str, p: int) -> tuple[int, ...]:
    """Residue set from a compact string like "0-4,7,9"."""
    out = set()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            raise ValueError(f"empty item in digit spec {spec!r}")
        if "-" in part:
            lo_s, _, hi_s = part.partition("-")
            lo, hi = int(lo_s), int(hi_s)
            if lo > hi:
                raise ValueError(f"descending range {part!r} in digit spec")
            out.update(range(lo, hi + 1))
        else:
            out.add(int(part))
    if not out:
        raise ValueError(f"digit spec {spec!r} denotes the empty set")
    if min(out) < 0 or max(out) >= p:
        raise ValueError(f"digit spec {spec!r} has residues outside [0, {p})")
    return tuple(sorted(out))


def format_digit_set(digits) -> str:
    """Inverse of parse_digit_spec: shortest range/singleton rendering."""
    ds = sorted(digits)
    parts = []
    i = 0
    while i < len(ds):
        j = i
        while j + 1 < len(ds) and ds[j + 1] == ds[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{ds[i]}-{ds[j]}")
        elif j == i:
            parts.append(str(ds[i]))
        else:
            parts.extend([str(ds[i]), str(ds[j])])
        i = j + 1
    return ",".join(parts)


@dataclass(frozen=True)
class DigitBox:
    """W(D_1,...,D_r): per-coordinate digit sets over the installed basis."""

    ctx: FieldCtx
    digits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.digits) != self.ctx.r:
            raise ValueError(f"need {self.ctx.r} digit sets, got {len(self.digits)}")
        norm = []
        for d in self.digits:
            ds = tuple(sorted(set(int(c) for c in d)))
            if not ds:
                raise ValueError("digit sets must be nonempty")
            if ds[0] < 0 or ds[-1] >= self.ctx.p:
                raise ValueError(f"digits {ds} outside [0, {self.ctx.p})")
            norm.append(ds)
        object.__setattr__(self, "digits", tuple(norm))

    @classmethod
    def uniform(cls, ctx: FieldCtx, digits) -> "DigitBox":
        d = tuple(digits)
        return cls(ctx, tuple(d for _ in range(ctx.r)))

    @property
    def is_uniform(self) -> bool:
        return all(d == self.digits[0] for d in self.digits)

    def size(self) -> int:
        n = 1
        for d in self.digits:
            n *= len(d)
        return n

    def coordinate_sets(self) -> tuple[tuple[int, ...], ...]:
        return self.digits

    def contains_zero(self) -> bool:
        return all(0 in d for d in self.digits)

    def contains(self, x: FieldElem) -> bool:
        return all(c in set(d) for c, d in zip(x.coords, self.digits))

    def describe(self) -> str:
        if self.is_uniform:
            return f"D={format_digit_set(self.digits[0])}"
        return "D=" + "|".join(format_digit_set(d) for d in self.digits)


@dataclass(frozen=True)
class IntervalBox:
    """Coordinate interval box: coordinate i runs over N_i+1 .. N_i+H_i mod p."""

    ctx: FieldCtx
    offsets: tuple[int, ...]
    lengths: tuple[int, ...]

    def __post_init__(self):
        if len(self.offsets) != self.ctx.r or len(self.lengths) != self.ctx.r:
            raise ValueError(f"offsets and lengths must have {self.ctx.r} entries")
        object.__setattr__(self, "offsets", tuple(int(n) for n in self.offsets))
        object.__setattr__(self, "lengths", tuple(int(h) for h in self.lengths))
        for h in self.lengths:
            if not 1 <= h <= self.ctx.p:
                raise ValueError(f"side length {h} outside [1, {self.ctx.p}]")

    def size(self) -> int:
        n = 1
        for h in self.lengths:
            n *= h
        return n

    def coordinate_sets(self) -> tuple[tuple[int, ...], ...]:
        p = self.ctx.p
        return tuple(
            tuple(sorted((n + 1 + t) % p for t in range(h)))
            for n, h in zip(self.offsets, self.lengths)
        )

    def as_digit_box(self) -> DigitBox:
        return DigitBox(self.ctx, self.coordinate_sets())

    def contains_zero(self) -> bool:
        return all(0 in s for s in self.coordinate_sets())

    def contains(self, x: FieldElem) -> bool:
        return all(c in set(s) for c, s in zip(x.coords, self.coordinate_sets()))

    def describe(self) -> str:
        return (f"N={','.join(map(str, self.offsets))};"
                f"H={','.join(map(str, self.lengths))}")


Box = DigitBox | IntervalBox


def box_size(box: Box) -> int:
    return box.size()


def check_budget(box: Box, budget: int | None = None, what="enumeration of the box"):
    budget = default_budget() if budget is None else budget
    n = box.size()
    if n > budget:
        raise BudgetExceeded(n, budget, what)
    return n


def coords_blocks(box: Box, block: int = BLOCK, prefix=None):
    """Yield (n, r) arrays of installed-basis coordinates in lex order."""
    sets = [np.asarray(s, dtype=np.int64) for s in box.coordinate_sets()]
    if prefix is not None:
        for i, c in enumerate(prefix):
            if int(c) not in set(int(v) for v in sets[i]):
                return
            sets[i] = np.asarray([int(c)], dtype=np.int64)
    sizes = [len(s) for s in sets]
    total = 1
    for m in sizes:
        total *= m
    strides = [0] * len(sizes)
    acc = 1
    for i in range(len(sizes) - 1, -1, -1):
        strides[i] = acc
        acc *= sizes[i]
    r = box.ctx.r
    for lo in range(0, total, block):
        k = np.arange(lo, min(lo + block, total), dtype=np.int64)
        out = np.empty((k.shape[0], r), dtype=np.int64)
        for i in range(r):
            out[:, i] = sets[i][(k // strides[i]) % sizes[i]]
        yield out


def index_blocks(box: Box, block: int = BLOCK, prefix=None):
    """Yield int64 arrays of element indices in lex coordinate order."""
    ctx = box.ctx
    for coords in coords_blocks(box, block, prefix):
        poly = (coords @ ctx.basis_matrix.T) % ctx.p
        yield vec_encode(ctx, poly)


def enumerate_box(box: Box, budget: int | None = None, prefix=None):
    """Stream every element of the box exactly once, lex coordinate order.

    Splittable for parallel work by fixing a coordinate prefix; the budget
    then applies to the shard being streamed, not the whole box.
    """
    budget_val = default_budget() if budget is None else budget
    n = box.size()
    if prefix is not None:
        sets = box.coordinate_sets()
        for i, c in enumerate(prefix):
            if int(c) not in sets[i]:
                return
            n //= len(sets[i])
    if n > budget_val:
        raise BudgetExceeded(n, budget_val, "enumeration of the box")
    ctx = box.ctx
    for idx in index_blocks(box, prefix=prefix):
        for i in idx:
            yield FieldElem(ctx, int(i))


def sample_coords(box: Box, n: int, rng: np.random.Generator) -> np.ndarray:
    """(n, r) i.i.d. uniform installed-basis coordinates over the box."""
    sets = [np.asarray(s, dtype=np.int64) for s in box.coordinate_sets()]
    out = np.empty((n, box.ctx.r), dtype=np.int64)
    for i, s in enumerate(sets):
        out[:, i] = s[rng.integers(0, len(s), size=n)]
    return out


def sample_uniform(box: Box, n: int, seed: int) -> list[FieldElem]:
    """n i.i.d. uniform elements of the box; deterministic under the seed."""
    if n < 1:
        raise ValueError("sample count must be >= 1")
    ctx = box.ctx
    rng = np.random.default_rng(seed)
    coords = sample_coords(box, n, rng)
    poly = (coords @ ctx.basis_matrix.T) % ctx.p
    weights = ctx._ppow
    return [FieldElem(ctx, sum(int(c) * w for c, w in zip(row, weights)))
            for row in poly]


def split_box(box: DigitBox, k: int) -> tuple[DigitBox, DigitBox]:
    """Split W = U + V: U on basis coords 1..r-k, V on the last k coords."""
    r = box.ctx.r
    if not 1 <= k <= r - 1:
        raise ValueError(f"split index k = {k} outside [1, {r - 1}]")
    zero = (0,)
    u_digits = box.digits[: r - k] + tuple(zero for _ in range(k))
    v_digits = tuple(zero for _ in range(r - k)) + box.digits[r - k:]
    return DigitBox(box.ctx, u_digits), DigitBox(box.ctx, v_digits)
