"""The group algebra F2[C] of a cyclic 2-group C = <a | a^(2^n) = 1>.

Elements are bit vectors: bit ``i`` is the coefficient of ``a^i``.  Addition
is XOR and multiplication is cyclic convolution mod 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import NotAUnitError, UndefinedDegreeError, UsageError
from .f2linalg import F2Matrix, kernel_basis, solve_affine

MAX_N = 6


@dataclass(frozen=True)
class CyclicContext:
    n: int

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def half(self) -> int:
        return 1 << (self.n - 1)

    @property
    def mask(self) -> int:
        return (1 << self.dim) - 1

    @cached_property
    def filtration_matrix(self) -> F2Matrix:
        # column i holds (1+a)^i in the group basis
        cols = []
        p = 1
        for _ in range(self.dim):
            cols.append(p)
            p = p ^ _rot(self, p, 1)
        return F2Matrix.from_columns(cols, self.dim)

    @cached_property
    def filtration_inverse(self) -> F2Matrix:
        fm = self.filtration_matrix
        cols = [solve_affine(fm, 1 << j).particular for j in range(self.dim)]
        return F2Matrix.from_columns(cols, self.dim)


@lru_cache(maxsize=None)
def make_context(n: int) -> CyclicContext:
    if not isinstance(n, int) or n < 2:
        raise UsageError(f"n must be an integer >= 2, got {n!r}")
    if n > MAX_N:
        raise UsageError(f"n = {n} exceeds the supported maximum {MAX_N}")
    return CyclicContext(n)


@dataclass(frozen=True)
class AlgElem:
    ctx: CyclicContext
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.ctx.dim:
            raise UsageError(f"coefficient vector {self.bits:#x} too wide for n={self.ctx.n}")

    def __add__(self, other: AlgElem) -> AlgElem:
        _same(self, other)
        return AlgElem(self.ctx, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: AlgElem) -> AlgElem:
        return mul(self, other)

    def __pow__(self, k: int) -> AlgElem:
        return power(self, k)

    def __str__(self) -> str:
        return format_elem(self)

    def __repr__(self) -> str:
        return f"AlgElem(n={self.ctx.n}, {format_elem(self)})"

    def coeff(self, i: int) -> int:
        return (self.bits >> (i % self.ctx.dim)) & 1


@dataclass(frozen=True)
class FiltrationCoords:
    """Coordinates in the basis 1, (1+a), (1+a)^2, ..."""

    ctx: CyclicContext
    coords: int

    def coord(self, i: int) -> int:
        return (self.coords >> i) & 1


def _same(x: AlgElem, y: AlgElem) -> None:
    if x.ctx != y.ctx:
        raise UsageError(f"context mismatch: n={x.ctx.n} vs n={y.ctx.n}")


# -- bit-level kernels -----------------------------------------------------


def _rot(ctx: CyclicContext, x: int, k: int) -> int:
    """x * a^k."""
    k %= ctx.dim
    if not k:
        return x
    return ((x << k) | (x >> (ctx.dim - k))) & ctx.mask


def mul_bits(ctx: CyclicContext, x: int, y: int) -> int:
    if x.bit_count() > y.bit_count():
        x, y = y, x
    dim, mask = ctx.dim, ctx.mask
    out = 0
    while x:
        low = x & -x
        k = low.bit_length() - 1
        out ^= ((y << k) | (y >> (dim - k))) & mask if k else y
        x ^= low
    return out


def parity(x: int) -> int:
    return x.bit_count() & 1


def power_bits(ctx: CyclicContext, x: int, k: int) -> int:
    result, base = 1, x
    while k:
        if k & 1:
            result = mul_bits(ctx, result, base)
        base = mul_bits(ctx, base, base)
        k >>= 1
    return result


class LinearMap:
    """A GF(2)-linear map on coefficient vectors, evaluated by byte tables.

    Works on scalars and on numpy arrays of packed vectors alike.
    """

    def __init__(self, ctx: CyclicContext, images: Sequence[int]):
        if len(images) != ctx.dim:
            raise UsageError("one image per basis vector required")
        self.ctx = ctx
        self.images = tuple(images)
        self.width = min(8, ctx.dim)
        self.chunks = ctx.dim // self.width
        tables = []
        for c in range(self.chunks):
            t = [0] * (1 << self.width)
            for v in range(1, 1 << self.width):
                low = v & -v
                t[v] = t[v ^ low] ^ self.images[c * self.width + low.bit_length() - 1]
            tables.append(t)
        self.tables = tables
        self.np_tables = [np.array(t, dtype=np.uint64) for t in tables]

    @classmethod
    def of(cls, ctx: CyclicContext, fn) -> LinearMap:
        return cls(ctx, [fn(1 << j) for j in range(ctx.dim)])

    def __call__(self, x: int) -> int:
        out = 0
        w, m = self.width, (1 << self.width) - 1
        for t in self.tables:
            out ^= t[x & m]
            x >>= w
        return out

    def many(self, xs: np.ndarray) -> np.ndarray:
        xs = xs.astype(np.uint64, copy=False)
        out = np.zeros(xs.shape, dtype=np.uint64)
        w, m = np.uint64(self.width), np.uint64((1 << self.width) - 1)
        for c, t in enumerate(self.np_tables):
            out ^= t[(xs >> (w * np.uint64(c))) & m]
        return out

    def matrix(self) -> F2Matrix:
        return F2Matrix.from_columns(self.images, self.ctx.dim)


def multiplier(ctx: CyclicContext, z: int) -> LinearMap:
    """The map y -> y*z."""
    return LinearMap(ctx, [_rot(ctx, z, j) for j in range(ctx.dim)])


# -- vectorized helpers over numpy arrays of packed vectors ----------------


def rot_many(ctx: CyclicContext, xs: np.ndarray, k: int) -> np.ndarray:
    k %= ctx.dim
    if not k:
        return xs
    mask = np.uint64(ctx.mask)
    return ((xs << np.uint64(k)) | (xs >> np.uint64(ctx.dim - k))) & mask


def mul_many(ctx: CyclicContext, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.uint64)
    ys = np.asarray(ys, dtype=np.uint64)
    out = np.zeros(np.broadcast(xs, ys).shape, dtype=np.uint64)
    one = np.uint64(1)
    for j in range(ctx.dim):
        sel = ((xs >> np.uint64(j)) & one).astype(bool)
        if sel.any():
            out ^= np.where(sel, rot_many(ctx, ys, j), np.uint64(0))
    return out


def parity_many(xs: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.uint64)
    acc = np.zeros(xs.shape, dtype=np.uint64)
    v = xs.copy()
    while v.any():
        acc ^= v & np.uint64(1)
        v >>= np.uint64(1)
    return acc.astype(np.uint8)


def all_vectors(ctx: CyclicContext) -> np.ndarray:
    if ctx.n > 4:
        raise UsageError("full enumeration of F2C is capped at n = 4")
    return np.arange(1 << ctx.dim, dtype=np.uint64)


def all_units(ctx: CyclicContext) -> np.ndarray:
    """All normalized units (odd weight), ascending."""
    xs = all_vectors(ctx)
    return xs[parity_many(xs) == 1]


# -- element-level API -----------------------------------------------------


def one(ctx: CyclicContext) -> AlgElem:
    return AlgElem(ctx, 1)


def zero(ctx: CyclicContext) -> AlgElem:
    return AlgElem(ctx, 0)


def gen_power(ctx: CyclicContext, k: int) -> AlgElem:
    """The group element a^k."""
    return AlgElem(ctx, 1 << (k % ctx.dim))


def mul(x: AlgElem, y: AlgElem) -> AlgElem:
    _same(x, y)
    return AlgElem(x.ctx, mul_bits(x.ctx, x.bits, y.bits))


def square(x: AlgElem) -> AlgElem:
    return mul(x, x)


def square_closed_form(x: AlgElem) -> AlgElem:
    """x^2 = sum over i < 2^(n-1) of (alpha_i + alpha_(i+2^(n-1))) a^(2i)."""
    ctx = x.ctx
    out = 0
    for i in range(ctx.half):
        if x.coeff(i) ^ x.coeff(i + ctx.half):
            out |= 1 << (2 * i)
    return AlgElem(ctx, out)


def augmentation(x: AlgElem) -> int:
    return parity(x.bits)


def power(x: AlgElem, k: int) -> AlgElem:
    if k < 0:
        return power(inverse(x), -k)
    return AlgElem(x.ctx, power_bits(x.ctx, x.bits, k))


def inverse(x: AlgElem) -> AlgElem:
    if not augmentation(x):
        raise NotAUnitError(f"{x} has augmentation 0 and is not invertible")
    # x^(2^n) = 1 for every normalized unit
    return AlgElem(x.ctx, power_bits(x.ctx, x.bits, x.ctx.dim - 1))


def to_filtration(x: AlgElem) -> FiltrationCoords:
    return FiltrationCoords(x.ctx, x.ctx.filtration_inverse.matvec(x.bits))


def from_filtration(c: FiltrationCoords) -> AlgElem:
    return AlgElem(c.ctx, c.ctx.filtration_matrix.matvec(c.coords))


def filtration_degree(x: AlgElem) -> int:
    """Largest i with x in A^i, where A is the augmentation ideal (A^0 = F2C)."""
    if not x.bits:
        raise UndefinedDegreeError("0 lies in every power of the augmentation ideal")
    c = to_filtration(x).coords
    return (c & -c).bit_length() - 1


def one_plus_a_power(ctx: CyclicContext, i: int) -> AlgElem:
    """(1+a)^i."""
    return AlgElem(ctx, ctx.filtration_matrix.matvec(1 << i) if i < ctx.dim else 0)


def annihilator_basis(ctx: CyclicContext, i: int) -> list[AlgElem]:
    if not 0 <= i <= ctx.dim:
        raise UsageError(f"i must lie in [0, {ctx.dim}], got {i}")
    z = one_plus_a_power(ctx, i).bits
    return [AlgElem(ctx, v) for v in kernel_basis(multiplier(ctx, z).matrix())]


def annihilator_order(ctx: CyclicContext, i: int) -> int:
    """|Ann((1+a)^i)|, counted as 2^(kernel dimension) of y -> y(1+a)^i."""
    return 1 << len(annihilator_basis(ctx, i))


def hat_sum(ctx: CyclicContext, exponents: Iterable[int]) -> AlgElem:
    out = 0
    for e in set(exponents):
        if not 0 <= e < ctx.dim:
            raise UsageError(f"exponent {e} out of range for n={ctx.n}")
        out |= 1 << e
    return AlgElem(ctx, out)


def c_hat(ctx: CyclicContext) -> AlgElem:
    """Sum of all group elements."""
    return AlgElem(ctx, ctx.mask)


def c2_hat(ctx: CyclicContext) -> AlgElem:
    """Sum of the elements of the subgroup of squares C^2."""
    return hat_sum(ctx, range(0, ctx.dim, 2))


# -- text formats ----------------------------------------------------------

_HEX = re.compile(r"^\s*0[xX]([0-9a-fA-F]+)\s*@\s*n\s*=\s*(\d+)\s*$")
_TERM = re.compile(r"^(?:1|a|a\^\(?(-?\d+)\)?)$")


def format_elem(x: AlgElem, style: str = "poly") -> str:
    if style == "hex":
        width = max(2, x.ctx.dim // 4)
        return f"0x{x.bits:0{width}X}@n={x.ctx.n}"
    if style != "poly":
        raise UsageError(f"unknown element style {style!r}")
    if not x.bits:
        return "0"
    terms = []
    for i in range(x.ctx.dim):
        if (x.bits >> i) & 1:
            terms.append("1" if i == 0 else "a" if i == 1 else f"a^{i}")
    return "+".join(terms)


def parse_elem(text: str, ctx: CyclicContext | None = None) -> AlgElem:
    """Parse "1+a+a^3" (needs ``ctx``) or "0x0B@n=2"."""
    m = _HEX.match(text)
    if m:
        hctx = make_context(int(m.group(2)))
        if ctx is not None and ctx != hctx:
            raise UsageError(f"{text!r} is for n={hctx.n}, expected n={ctx.n}")
        return AlgElem(hctx, int(m.group(1), 16))
    if ctx is None:
        raise UsageError("polynomial element text needs an explicit n")
    body = text.replace(" ", "")
    if body == "0":
        return zero(ctx)
    out = 0
    for term in body.split("+"):
        t = _TERM.match(term)
        if not t:
            raise UsageError(f"cannot parse term {term!r} in {text!r}")
        if term == "1":
            k = 0
        elif term == "a":
            k = 1
        else:
            k = int(t.group(1))
        out ^= 1 << (k % ctx.dim)
    return AlgElem(ctx, out)
