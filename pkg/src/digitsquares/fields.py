"""Construction of and arithmetic in F_p and F_{p^r}.

Elements of F_{p^r} = F_p[x]/(f) are stored by their *index*: the integer
c_0 + c_1 p + ... + c_{r-1} p^{r-1} built from the coefficients of the
residue polynomial c_0 + c_1 x + ... + c_{r-1} x^{r-1}.  The index doubles
as a position into lookup tables, which is what makes the bulk
(numpy-vectorised) code paths cheap.

A FieldCtx also carries an installed F_p-basis a_1, ..., a_r (default: the
polynomial basis 1, x, ..., x^{r-1}) together with the change-of-coordinates
matrix and its inverse mod p.  "Coordinates" always means coordinates with
respect to the installed basis; "poly coords" means the raw residue
polynomial coefficients.

Characteristic is capped at 2^20 so that coordinate products summed over
r <= 64 terms never overflow int64 in the vector kernels.
"""

from __future__ import annotations

import numpy as np

P_CAP = 1 << 20


def is_prime(n: int) -> bool:
    """Trial division; fine for the capped characteristic range."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (coefficient lists, constant term first)

def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mod(a, f, p):
    """Remainder of a modulo the monic polynomial f."""
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return [c % p for c in a[:df]] + [0] * max(0, df - len(a))


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_gcd(a, b, p):
    a, b = _poly_trim([c % p for c in a]), _poly_trim([c % p for c in b])
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        bm = [(c * inv_lead) % p for c in b]  # monic divisor
        # a mod bm
        a = list(a)
        db = len(bm) - 1
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - c * bm[j]) % p
        a, b = b, _poly_trim(a[:db])
    return a


def is_irreducible(f, p) -> bool:
    """Monic f of degree r is irreducible iff gcd(f, x^{p^d} - x) = 1 for d <= r/2."""
    f = list(f)
    r = len(f) - 1
    if r < 1 or f[-1] != 1:
        return False
    if r == 1:
        return True
    t = [0, 1] + [0] * (r - 2)  # x
    for _ in range(r // 2):
        # t <- t^p mod f, so t holds x^{p^d} after d rounds
        acc = [1] + [0] * (r - 1)
        base = t
        e = p
        while e:
            if e & 1:
                acc = _poly_mod(_poly_mul(acc, base, p), f, p)
            base = _poly_mod(_poly_mul(base, base, p), f, p)
            e >>= 1
        t = acc
        xt = list(t)
        xt[1] = (xt[1] - 1) % p  # x^{p^d} - x
        g = _poly_gcd(f, xt, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r over F_p.

    Coefficient tuples are compared constant-term-last, i.e. candidates are
    scanned in the order x^r, x^r + 1, x^r + 2, ..., x^r + x, ...
    """
    for n in range(p ** r):
        coeffs = [(n // p ** j) % p for j in range(r)]
        f = coeffs + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial of degree {r} over F_{p}")  # unreachable


def poly_str(coeffs) -> str:
    """Human-readable form of a coefficient list (constant term first)."""
    terms = []
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        if j == 0:
            terms.append(str(c))
        else:
            xj = "x" if j == 1 else f"x^{j}"
            terms.append(xj if c == 1 else f"{c}{xj}")
    return " + ".join(terms) if terms else "0"


def _matrix_inverse_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    """Gauss-Jordan over F_p; raises ValueError on a singular matrix."""
    n = m.shape[0]
    a = m % p
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    row = 0
    for col in range(n):
        piv = None
        for i in range(row, n):
            if aug[i, col] % p:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix is singular mod p")
        aug[[row, piv]] = aug[[piv, row]]
        inv = pow(int(aug[row, col]), p - 2, p)
        aug[row] = (aug[row] * inv) % p
        for i in range(n):
            if i != row and aug[i, col]:
                aug[i] = (aug[i] - aug[i, col] * aug[row]) % p
        row += 1
    return aug[:, n:] % p


class FieldCtx:
    """Immutable description of F_{p^r}: modulus, basis, and derived tables.

    Safe to share across workers; lookup tables are cached lazily but the
    mathematical content never changes after construction.
    """

    def __init__(self, p, r, modulus, basis_indices=None, _validated=False):
        if not _validated:
            if not is_prime(p):
                raise ValueError(f"p = {p} is not prime")
            if p == 2:
                raise ValueError("p must be odd (p >= 3)")
            if p > P_CAP:
                raise ValueError(f"p = {p} above characteristic cap {P_CAP}")
            if r < 1:
                raise ValueError(f"extension degree r = {r} must be >= 1")
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree r (constant term first)")
            if not is_irreducible(list(modulus), p):
                raise ValueError(f"modulus {poly_str(modulus)} is reducible over F_{p}")
        self.p = p
        self.r = r
        self.q = p ** r
        self.modulus = tuple(c % p for c in modulus[:-1]) + (1,)
        self._ppow = [p ** j for j in range(r)]
        # reduction[t] = poly coords of x^{r+t} mod f, t = 0..r-2
        red = np.zeros((max(r - 1, 0), r), dtype=np.int64)
        if r > 1:
            cur = [(-c) % p for c in self.modulus[:-1]]  # x^r
            red[0] = cur
            for t in range(1, r - 1):
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c + top * v) % p for c, v in zip(cur, red[0])]
                red[t] = cur
        self._reduction = red
        if basis_indices is None:
            basis_indices = tuple(self._ppow)  # polynomial basis 1, x, ..., x^{r-1}
        self.basis_indices = tuple(int(b) for b in basis_indices)
        if len(self.basis_indices) != r:
            raise ValueError(f"basis must have {r} elements")
        mat = np.zeros((r, r), dtype=np.int64)
        for i, idx in enumerate(self.basis_indices):
            mat[:, i] = self.index_to_poly_coords(idx)
        self.basis_matrix = mat
        self.basis_inv = _matrix_inverse_mod_p(mat, p)  # raises if not a basis
        self._cache = {}

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.p, self.r, self.modulus, self.basis_indices)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldCtx(p={self.p}, r={self.r}, modulus={poly_str(self.modulus)})"

    # -- conversions -------------------------------------------------------

    def index_to_poly_coords(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            idx, c = divmod(idx, self.p)
            out.append(c)
        return tuple(out)

    def poly_coords_to_index(self, coords) -> int:
        return sum(int(c) % self.p * w for c, w in zip(coords, self._ppow))

    def coords_to_index(self, coords) -> int:
        """Installed-basis coordinates -> element index."""
        cv = np.asarray([int(c) % self.p for c in coords], dtype=np.int64)
        poly = (self.basis_matrix @ cv) % self.p
        return self.poly_coords_to_index(poly)

    def index_to_coords(self, idx: int) -> tuple[int, ...]:
        poly = np.asarray(self.index_to_poly_coords(idx), dtype=np.int64)
        return tuple(int(v) for v in (self.basis_inv @ poly) % self.p)

    # -- element constructors ----------------------------------------------

    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def from_index(self, idx: int) -> "FieldElem":
        if not 0 <= idx < self.q:
            raise ValueError(f"index {idx} outside [0, {self.q})")
        return FieldElem(self, idx)

    def from_coords(self, coords) -> "FieldElem":
        return FieldElem(self, self.coords_to_index(coords))

    def from_poly_coords(self, coords) -> "FieldElem":
        return FieldElem(self, self.poly_coords_to_index(coords))

    def from_int(self, c: int) -> "FieldElem":
        """Embed an integer via the prime subfield."""
        return FieldElem(self, c % self.p)

    def elements(self):
        for idx in range(self.q):
            yield FieldElem(self, idx)

    def prime_subfield(self):
        for c in range(self.p):
            yield FieldElem(self, c)

    # -- scalar arithmetic on indices ----------------------------------------

    def add_idx(self, a: int, b: int) -> int:
        ca, cb = self.index_to_poly_coords(a), self.index_to_poly_coords(b)
        return self.poly_coords_to_index([(x + y) % self.p for x, y in zip(ca, cb)])

    def sub_idx(self, a: int, b: int) -> int:
        ca, cb = self.index_to_poly_coords(a), self.index_to_poly_coords(b)
        return self.poly_coords_to_index([(x - y) % self.p for x, y in zip(ca, cb)])

    def neg_idx(self, a: int) -> int:
        return self.poly_coords_to_index([(-x) % self.p for x in self.index_to_poly_coords(a)])

    def mul_idx(self, a: int, b: int) -> int:
        p, r = self.p, self.r
        ca, cb = self.index_to_poly_coords(a), self.index_to_poly_coords(b)
        full = [0] * (2 * r - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    full[i + j] += x * y
        low = [c % p for c in full[:r]]
        for t in range(r - 1):
            h = full[r + t] % p
            if h:
                row = self._reduction[t]
                low = [(c + h * int(v)) % p for c, v in zip(low, row)]
        return self.poly_coords_to_index(low)

    def pow_idx(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow_idx(self.inv_idx(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul_idx(result, base)
            base = self.mul_idx(base, base)
            e >>= 1
        return result

    def inv_idx(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("cannot invert zero")
        return self.pow_idx(a, self.q - 2)

    # -- basis handling ------------------------------------------------------

    def with_basis(self, basis_elems) -> "FieldCtx":
        """Same field, different installed basis (must be linearly independent)."""
        idxs = tuple(b.idx if isinstance(b, FieldElem) else int(b) for b in basis_elems)
        return FieldCtx(self.p, self.r, self.modulus, idxs, _validated=True)

    def normalized_basis(self) -> "FieldCtx":
        """Install b_j = a_j / a_1 (so b_1 = 1), the square-counting normalisation."""
        a1_inv = self.inv_idx(self.basis_indices[0])
        return self.with_basis([self.mul_idx(a1_inv, b) for b in self.basis_indices])


class FieldElem:
    """An element of F_{p^r}, hashable and immutable."""

    __slots__ = ("ctx", "idx")

    def __init__(self, ctx: FieldCtx, idx: int):
        self.ctx = ctx
        self.idx = idx

    @property
    def coords(self) -> tuple[int, ...]:
        """Coordinates with respect to the installed basis."""
        return self.ctx.index_to_coords(self.idx)

    @property
    def poly_coords(self) -> tuple[int, ...]:
        return self.ctx.index_to_poly_coords(self.idx)

    def is_zero(self) -> bool:
        return self.idx == 0

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx.p != self.ctx.p or other.ctx.modulus != self.ctx.modulus:
                raise ValueError("elements of different fields")
            return other.idx
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.add_idx(self.idx, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub_idx(self.idx, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub_idx(o, self.idx))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.mul_idx(self.idx, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.mul_idx(self.idx, self.ctx.inv_idx(o)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg_idx(self.idx))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow_idx(self.idx, e))

    def inv(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv_idx(self.idx))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return (self.idx == other.idx and self.ctx.p == other.ctx.p
                    and self.ctx.modulus == other.ctx.modulus)
        if isinstance(other, int):
            return self.idx == other % self.ctx.p if self.idx < self.ctx.p else False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.modulus, self.idx))

    def __repr__(self):
        return f"FieldElem({poly_str(self.poly_coords)} in F_{self.ctx.p}^{self.ctx.r})"


def make_field(p: int, r: int) -> FieldCtx:
    """F_{p^r} with the lexicographically smallest irreducible modulus.

    Deterministic across runs: the modulus scan order and the polynomial
    basis are fixed, so equal (p, r) always produce identical contexts.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p == 2:
        raise ValueError("p must be odd (p >= 3); for p = 2 every element is a square")
    if p > P_CAP:
        raise ValueError(f"p = {p} above characteristic cap {P_CAP}")
    if r < 1:
        raise ValueError(f"r = {r} must be >= 1")
    modulus = smallest_irreducible(p, r)
    return FieldCtx(p, r, modulus, _validated=True)


# ---------------------------------------------------------------------------
# Frobenius, conjugates, subfield degrees

def frobenius(a: FieldElem) -> FieldElem:
    return a ** a.ctx.p


def element_degree(a: FieldElem) -> int:
    """Smallest d | r with a^{p^d} = a, i.e. a generates the subfield F_{p^d}."""
    ctx = a.ctx
    cur = a
    for d in range(1, ctx.r + 1):
        cur = cur ** ctx.p
        if ctx.r % d == 0 and cur == a:
            return d
    raise AssertionError("element degree must divide r")  # a^q = a always


def conjugates(a: FieldElem) -> list[FieldElem]:
    """Frobenius orbit {a, a^p, ..., a^{p^{d-1}}}, all distinct."""
    out = [a]
    cur = frobenius(a)
    while cur != a:
        out.append(cur)
        cur = frobenius(cur)
    return out


def is_generator(a: FieldElem) -> bool:
    """True when a generates F_{p^r} over F_p (degree r), i.e. lies in no proper subfield."""
    return element_degree(a) == a.ctx.r


# ---------------------------------------------------------------------------
# vector kernels (coords arrays of shape (n, r), dtype int64)

def vec_mul(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise field multiplication of poly-coordinate arrays."""
    p, r = ctx.p, ctx.r
    n = A.shape[0]
    if r == 1:
        return (A * B) % p
    full = np.zeros((n, 2 * r - 1), dtype=np.int64)
    for i in range(r):
        Ai = A[:, i]
        for j in range(r):
            full[:, i + j] += Ai * B[:, j]
    full %= p
    low = full[:, :r]
    low = (low + full[:, r:] @ ctx._reduction) % p
    return low


def vec_pow(ctx: FieldCtx, A: np.ndarray, e: int) -> np.ndarray:
    """Row-wise a^e for a shared non-negative integer exponent."""
    if e < 0:
        raise ValueError("negative exponents not supported in the vector kernel")
    n = A.shape[0]
    result = np.zeros((n, ctx.r), dtype=np.int64)
    result[:, 0] = 1
    base = A % ctx.p
    while e:
        if e & 1:
            result = vec_mul(ctx, result, base)
        base = vec_mul(ctx, base, base)
        e >>= 1
    return result


def vec_encode(ctx: FieldCtx, coords: np.ndarray) -> np.ndarray:
    """Poly-coordinate rows -> element indices (int64; requires q < 2^62)."""
    if ctx.q >= 1 << 62:
        raise OverflowError("field too large for int64 element indices")
    weights = np.asarray(ctx._ppow, dtype=np.int64)
    return coords @ weights


def vec_decode(ctx: FieldCtx, idx: np.ndarray) -> np.ndarray:
    """Element indices -> poly-coordinate rows."""
    p = ctx.p
    out = np.empty((idx.shape[0], ctx.r), dtype=np.int64)
    cur = idx.astype(np.int64, copy=True)
    for j in range(ctx.r):
        out[:, j] = cur % p
        cur //= p
    return out


def all_poly_coords(ctx: FieldCtx) -> np.ndarray:
    """(q, r) array with the poly coords of every element, cached on the ctx."""
    tab = ctx._cache.get("all_coords")
    if tab is None:
        tab = vec_decode(ctx, np.arange(ctx.q, dtype=np.int64))
        ctx._cache["all_coords"] = tab
    return tab
