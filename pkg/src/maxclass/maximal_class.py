"""Group algebras F2G of the 2-groups of maximal class.

G is D, SD or Q of order 2^(n+1), an extension of C = <a> by b.  An element
is stored as the pair (x1, x2) meaning x1 + x2*b.  Since b y = y^sigma b and
b^2 is central,

    (x1 + x2 b)(y1 + y2 b) = x1 y1 + x2 y2^sigma b^2 + (x1 y2 + x2 y1^sigma) b

with sigma = * for D and Q, circledast for SD, and b^2 = a^(2^(n-1)) for Q,
1 otherwise.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from . import cyclic
from .cyclic import AlgElem, CyclicContext, augmentation, format_elem, make_context
from .errors import NotAUnitError, UsageError
from .involutions import Involution, apply_bits


class Family(enum.Enum):
    DIHEDRAL = "D"
    SEMIDIHEDRAL = "SD"
    QUATERNION = "Q"

    @classmethod
    def parse(cls, text: str) -> Family:
        key = text.strip().upper()
        aliases = {
            "D": "D", "DIHEDRAL": "D",
            "SD": "SD", "SEMIDIHEDRAL": "SD",
            "Q": "Q", "QUATERNION": "Q",
        }
        if key not in aliases:
            raise UsageError(f"unknown family {text!r}; expected D, SD or Q")
        return cls(aliases[key])

    @property
    def min_n(self) -> int:
        return 3 if self is Family.SEMIDIHEDRAL else 2


class UnitType(enum.Enum):
    TYPE1 = 1
    TYPE2 = 2
    NOT_UNIT = 0


@dataclass(frozen=True)
class MCContext:
    family: Family
    cyclic: CyclicContext
    twist: Involution
    b_square: int

    @property
    def n(self) -> int:
        return self.cyclic.n

    @property
    def name(self) -> str:
        return f"{self.family.value}{2 ** (self.n + 1)}"

    @property
    def dim(self) -> int:
        return 2 * self.cyclic.dim


@dataclass(frozen=True)
class MCElem:
    x1: AlgElem
    x2: AlgElem

    def __post_init__(self) -> None:
        if self.x1.ctx != self.x2.ctx:
            raise UsageError("both components must share one cyclic context")

    def __str__(self) -> str:
        return format_mc(self)


@lru_cache(maxsize=None)
def make_group_algebra(family: Family, n: int) -> MCContext:
    if not isinstance(n, int) or n < family.min_n:
        raise UsageError(f"{family.value} needs n >= {family.min_n}, got {n!r}")
    ctx = make_context(n)
    twist = Involution.CIRCLEDAST if family is Family.SEMIDIHEDRAL else Involution.STAR
    b_square = 1 << ctx.half if family is Family.QUATERNION else 1
    return MCContext(family, ctx, twist, b_square)


def element(ctx: MCContext, x1: AlgElem | int, x2: AlgElem | int) -> MCElem:
    def lift(v):
        return v if isinstance(v, AlgElem) else AlgElem(ctx.cyclic, v)

    return MCElem(lift(x1), lift(x2))


def identity(ctx: MCContext) -> MCElem:
    return element(ctx, 1, 0)


def mul_pair(ctx: MCContext, x1: int, x2: int, y1: int, y2: int) -> tuple[int, int]:
    c = ctx.cyclic
    mb = cyclic.mul_bits
    s = ctx.twist
    first = mb(c, x1, y1) ^ mb(c, mb(c, x2, apply_bits(c, s, y2)), ctx.b_square)
    second = mb(c, x1, y2) ^ mb(c, x2, apply_bits(c, s, y1))
    return first, second


def _check(ctx: MCContext, *elems: MCElem) -> None:
    for e in elems:
        if e.x1.ctx != ctx.cyclic:
            raise UsageError(f"element lives in n={e.x1.ctx.n}, context is n={ctx.n}")


def mc_mul(ctx: MCContext, u: MCElem, v: MCElem) -> MCElem:
    _check(ctx, u, v)
    return element(ctx, *mul_pair(ctx, u.x1.bits, u.x2.bits, v.x1.bits, v.x2.bits))


def mc_square(ctx: MCContext, u: MCElem) -> MCElem:
    return mc_mul(ctx, u, u)


def is_normalized_unit(u: MCElem) -> bool:
    return augmentation(u.x1) ^ augmentation(u.x2) == 1


def unit_type(u: MCElem) -> UnitType:
    c1, c2 = augmentation(u.x1), augmentation(u.x2)
    if c1 and not c2:
        return UnitType.TYPE1
    if c2 and not c1:
        return UnitType.TYPE2
    return UnitType.NOT_UNIT


def element_order(ctx: MCContext, u: MCElem) -> int:
    """Least 2^k with u^(2^k) = 1."""
    if not is_normalized_unit(u):
        raise NotAUnitError(f"{u} is not a normalized unit")
    _check(ctx, u)
    x1, x2 = u.x1.bits, u.x2.bits
    order = 1
    while (x1, x2) != (1, 0):
        x1, x2 = mul_pair(ctx, x1, x2, x1, x2)
        order *= 2
        if order > 1 << ctx.dim:
            raise AssertionError("normalized unit of non-2-power order")
    return order


def order2_conditions(ctx: MCContext, u: MCElem) -> bool:
    """x1^2 = x2 x2^sigma b^2 + 1 and (x1 + x1^sigma) x2 = 0."""
    if not is_normalized_unit(u):
        raise NotAUnitError(f"{u} is not a normalized unit")
    _check(ctx, u)
    c, s = ctx.cyclic, ctx.twist
    mb = cyclic.mul_bits
    x1, x2 = u.x1.bits, u.x2.bits
    lhs = mb(c, x1, x1)
    rhs = mb(c, mb(c, x2, apply_bits(c, s, x2)), ctx.b_square) ^ 1
    second = mb(c, x1 ^ apply_bits(c, s, x1), x2)
    return lhs == rhs and second == 0


def format_mc(u: MCElem, style: str = "poly") -> str:
    return f"{format_elem(u.x1, style)} + ({format_elem(u.x2, style)})b"


_MC = re.compile(r"^\s*(.*?)\s*\+\s*\((.*)\)\s*b\s*$")


def parse_mc(text: str, ctx: MCContext) -> MCElem:
    m = _MC.match(text)
    if not m:
        raise UsageError(f"expected 'x1 + (x2)b', got {text!r}")
    return MCElem(cyclic.parse_elem(m.group(1), ctx.cyclic), cyclic.parse_elem(m.group(2), ctx.cyclic))
