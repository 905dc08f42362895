"""The involutions * (a -> a^-1) and circledast (a -> a^(2^(n-1)-1)) of F2C.

Each involution is a coefficient permutation, precomputed once per
(involution, n) as byte lookup tables.  The closed-form products x x^sigma
are computed from coefficient sums only and never call the multiplier, so
they can be checked against it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclic import AlgElem, CyclicContext, LinearMap, augmentation, inverse, mul
from .errors import NotAUnitError, UnsupportedInvolutionError, UsageError


class Involution(enum.Enum):
    STAR = "star"
    CIRCLEDAST = "circledast"

    @classmethod
    def parse(cls, text: str) -> Involution:
        key = text.strip().lower()
        aliases = {"*": "star", "star": "star", "circledast": "circledast", "ostar": "circledast"}
        if key not in aliases:
            raise UsageError(f"unknown involution {text!r}; expected star or circledast")
        return cls(aliases[key])

    def check(self, ctx: CyclicContext) -> None:
        if self is Involution.CIRCLEDAST and ctx.n < 3:
            raise UnsupportedInvolutionError("the circledast involution needs n >= 3")

    def exponent(self, ctx: CyclicContext, k: int) -> int:
        if self is Involution.STAR:
            return -k % ctx.dim
        return (ctx.half - 1) * k % ctx.dim


@dataclass(frozen=True)
class IndexSets:
    P: frozenset[int]
    Q: frozenset[int]
    R: frozenset[int]


def index_sets(ctx: CyclicContext) -> IndexSets:
    """P = even residues, R = evens below 2^(n-1), Q = evens below 2^(n-2)
    together with their shifts by 2^(n-1).  Only meaningful for n >= 3."""
    Involution.CIRCLEDAST.check(ctx)
    low = set(range(0, ctx.dim // 4, 2))
    return IndexSets(
        P=frozenset(range(0, ctx.dim, 2)),
        Q=frozenset(low | {ctx.half + r for r in low}),
        R=frozenset(range(0, ctx.half, 2)),
    )


@lru_cache(maxsize=None)
def permutation(ctx: CyclicContext, sigma: Involution) -> tuple[int, ...]:
    """perm[k] is the exponent that a^k is sent to."""
    sigma.check(ctx)
    return tuple(sigma.exponent(ctx, k) for k in range(ctx.dim))


@lru_cache(maxsize=None)
def table(ctx: CyclicContext, sigma: Involution) -> LinearMap:
    return LinearMap(ctx, [1 << e for e in permutation(ctx, sigma)])


@lru_cache(maxsize=None)
def rho_table(ctx: CyclicContext) -> tuple[int, ...]:
    """rho(i) = i for even i, i + 2^(n-1) for odd i; x^circledast has
    coefficient alpha_rho(i) at a^-i."""
    return tuple(i if i % 2 == 0 else (i + ctx.half) % ctx.dim for i in range(ctx.dim))


def apply_bits(ctx: CyclicContext, sigma: Involution, x: int) -> int:
    return table(ctx, sigma)(x)


def apply_many(ctx: CyclicContext, sigma: Involution, xs: np.ndarray) -> np.ndarray:
    return table(ctx, sigma).many(xs)


def apply(sigma: Involution, x: AlgElem) -> AlgElem:
    return AlgElem(x.ctx, apply_bits(x.ctx, sigma, x.bits))


def trace(x: AlgElem) -> int:
    return x.bits & 1


def _alpha(x: AlgElem):
    bits, dim = x.bits, x.ctx.dim
    return lambda i: (bits >> (i % dim)) & 1


def _star_product(x: AlgElem) -> int:
    ctx = x.ctx
    al = _alpha(x)
    out = augmentation(x)
    for j in range(1, ctx.half):
        g = 0
        for i in range(ctx.dim):
            g ^= al(i) & al(i - j)
        if g:
            out ^= (1 << j) | (1 << (-j % ctx.dim))
    return out


def circledast_gamma(x: AlgElem, k: int) -> int:
    """Coefficient of a^k in x x^circledast, case by case."""
    ctx = x.ctx
    al = _alpha(x)
    P = range(0, ctx.dim, 2)
    odd = range(1, ctx.dim, 2)
    k %= ctx.dim
    if k == 0:
        return sum(al(r) for r in P) & 1
    if k == ctx.half:
        return sum(al(r) for r in odd) & 1
    g = 0
    if k % 2 == 0:
        for r in P:
            g ^= al(r) & al(r - k)
        for r in odd:
            g ^= al(r) & al(r - k + ctx.half)
    else:
        for r in P:
            g ^= al(r) & al(r - k + ctx.half)
        for r in odd:
            g ^= al(r) & al(r - k)
    return g


def _circledast_product(x: AlgElem) -> int:
    ctx = x.ctx
    sets = index_sets(ctx)
    dim = ctx.dim
    out = circledast_gamma(x, 0) | (circledast_gamma(x, ctx.half) << ctx.half)
    for k in sorted(sets.R - {0}):
        if circledast_gamma(x, k):
            out ^= (1 << k) | (1 << (-k % dim))
    for q in sorted(sets.Q):
        k = q + 1
        if circledast_gamma(x, k):
            out ^= (1 << k) | (1 << ((-k + ctx.half) % dim))
    return out


def sigma_product_closed_form(sigma: Involution, x: AlgElem) -> AlgElem:
    """x x^sigma from the coefficient-sum formulas, without multiplying."""
    sigma.check(x.ctx)
    if sigma is Involution.STAR:
        return AlgElem(x.ctx, _star_product(x))
    return AlgElem(x.ctx, _circledast_product(x))


def is_symmetric(sigma: Involution, x: AlgElem) -> bool:
    return apply(sigma, x) == x


def _require_unit(x: AlgElem) -> None:
    if not augmentation(x):
        raise NotAUnitError(f"{x} is not a normalized unit")


def is_unitary(sigma: Involution, x: AlgElem) -> bool:
    _require_unit(x)
    return mul(x, apply(sigma, x)).bits == 1


def phi_sigma(sigma: Involution, x: AlgElem) -> AlgElem:
    """x^sigma x^-1."""
    _require_unit(x)
    return mul(apply(sigma, x), inverse(x))


def psi_sigma(sigma: Involution, x: AlgElem) -> AlgElem:
    """x x^sigma."""
    _require_unit(x)
    return mul(x, apply(sigma, x))
