"""Explicit enumeration of the subgroups of V(F2C) built from the involutions.

Every kind is enumerated by filtering the normalized units with its defining
predicate, evaluated on numpy arrays of packed coefficient vectors.  Full
enumeration is capped at n = 4 (2^15 units).  Kinds whose membership is an
affine-linear condition also have a rank-based count in ``linear_order``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import cyclic
from .cyclic import AlgElem, CyclicContext, LinearMap, mul_many, all_units
from .errors import BudgetError, NoClosedFormError, UsageError
from .f2linalg import F2Matrix, kernel_basis, solve_affine
from .involutions import Involution, apply_many, table

ENUMERATION_MAX_N = 4


class Kind(enum.Enum):
    FULL_V = "v"
    LOWER_LAYER = "v2"
    S_I = "si"
    SYMMETRIC = "ssym"
    UNITARY = "vuni"
    W = "w"
    J = "j"
    H = "h"
    L = "l"
    M = "m"
    SQUARES = "squares"
    FRATTINI = "frattini"


_NEEDS_SIGMA = {Kind.SYMMETRIC, Kind.UNITARY, Kind.W, Kind.J, Kind.H, Kind.L, Kind.M}
_NEEDS_I = {Kind.S_I, Kind.H, Kind.L}


@dataclass(frozen=True)
class SubgroupSpec:
    kind: Kind
    sigma: Involution | None = None
    i: int | None = None
    z: int | None = None
    of: SubgroupSpec | None = None

    def __post_init__(self) -> None:
        if (self.kind in _NEEDS_SIGMA) != (self.sigma is not None):
            raise UsageError(f"{self.kind.name}: involution given/missing")
        if (self.kind in _NEEDS_I) != (self.i is not None):
            raise UsageError(f"{self.kind.name}: index i given/missing")
        if (self.kind is Kind.M) != (self.z is not None):
            raise UsageError(f"{self.kind.name}: element z given/missing")
        if (self.kind in (Kind.SQUARES, Kind.FRATTINI)) != (self.of is not None):
            raise UsageError(f"{self.kind.name}: parent subgroup given/missing")

    def validate(self, ctx: CyclicContext) -> None:
        if self.sigma is not None:
            self.sigma.check(ctx)
        if self.i is not None and not 0 <= self.i < ctx.dim:
            raise UsageError(f"i must lie in [0, {ctx.dim}), got {self.i}")
        if self.z is not None and self.z >> ctx.dim:
            raise UsageError("z is too wide for this context")
        if self.of is not None:
            self.of.validate(ctx)

    @property
    def label(self) -> str:
        args = []
        if self.sigma is not None:
            args.append(self.sigma.value)
        if self.i is not None:
            args.append(str(self.i))
        if self.z is not None:
            args.append(f"0x{self.z:X}")
        if self.of is not None:
            args.append(self.of.label)
        return f"{self.kind.value}({','.join(args)})" if args else self.kind.value


def full_v() -> SubgroupSpec:
    return SubgroupSpec(Kind.FULL_V)


def lower_layer() -> SubgroupSpec:
    return SubgroupSpec(Kind.LOWER_LAYER)


def s_i(i: int) -> SubgroupSpec:
    return SubgroupSpec(Kind.S_I, i=i)


def symmetric(sigma: Involution) -> SubgroupSpec:
    return SubgroupSpec(Kind.SYMMETRIC, sigma=sigma)


def unitary(sigma: Involution) -> SubgroupSpec:
    return SubgroupSpec(Kind.UNITARY, sigma=sigma)


def w(sigma: Involution) -> SubgroupSpec:
    return SubgroupSpec(Kind.W, sigma=sigma)


def j(sigma: Involution) -> SubgroupSpec:
    return SubgroupSpec(Kind.J, sigma=sigma)


def h(sigma: Involution, i: int) -> SubgroupSpec:
    return SubgroupSpec(Kind.H, sigma=sigma, i=i)


def l(sigma: Involution, i: int) -> SubgroupSpec:  # noqa: E743
    return SubgroupSpec(Kind.L, sigma=sigma, i=i)


def m(sigma: Involution, z: AlgElem | int) -> SubgroupSpec:
    return SubgroupSpec(Kind.M, sigma=sigma, z=z.bits if isinstance(z, AlgElem) else z)


def squares(of: SubgroupSpec) -> SubgroupSpec:
    return SubgroupSpec(Kind.SQUARES, of=of)


def frattini(of: SubgroupSpec) -> SubgroupSpec:
    return SubgroupSpec(Kind.FRATTINI, of=of)


@dataclass(frozen=True, eq=False)
class EnumeratedSubgroup:
    ctx: CyclicContext
    spec: SubgroupSpec
    elements: np.ndarray = field(repr=False)  # sorted, unique, uint64

    @property
    def order(self) -> int:
        return int(self.elements.size)

    @property
    def empty(self) -> bool:
        return self.elements.size == 0

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x: AlgElem | int) -> bool:
        v = x.bits if isinstance(x, AlgElem) else x
        k = int(np.searchsorted(self.elements, np.uint64(v)))
        return k < self.elements.size and int(self.elements[k]) == v

    def __iter__(self) -> Iterator[AlgElem]:
        return (AlgElem(self.ctx, int(v)) for v in self.elements)

    @property
    def bitset(self) -> frozenset[int]:
        return frozenset(int(v) for v in self.elements)

    def same_elements(self, other: EnumeratedSubgroup) -> bool:
        return np.array_equal(self.elements, other.elements)


# -- predicates ------------------------------------------------------------


def _odd_mask(ctx: CyclicContext) -> np.uint64:
    return np.uint64(sum(1 << k for k in range(1, ctx.dim, 2)))


def _square_map(ctx: CyclicContext) -> LinearMap:
    return LinearMap.of(ctx, lambda v: cyclic.mul_bits(ctx, v, v))


def _h_multiplier(ctx: CyclicContext, sigma: Involution, i: int) -> int:
    """(1+a)^i (1+a^sigma)^i."""
    p = cyclic.one_plus_a_power(ctx, i).bits
    return cyclic.mul_bits(ctx, p, table(ctx, sigma)(p))


def _inverse_many(ctx: CyclicContext, xs: np.ndarray) -> np.ndarray:
    # x^-1 = x^(2^n - 1) = x * x^2 * x^4 * ... * x^(2^(n-1))
    sq = _square_map(ctx)
    out = xs.copy()
    p = xs
    for _ in range(ctx.n - 1):
        p = sq.many(p)
        out = mul_many(ctx, out, p)
    return out


def _select(ctx: CyclicContext, spec: SubgroupSpec) -> np.ndarray:
    V = all_units(ctx)
    kind = spec.kind
    one = np.uint64(1)
    if kind is Kind.FULL_V:
        return V
    if kind is Kind.LOWER_LAYER:
        return V[_square_map(ctx).many(V) == one]
    if kind is Kind.S_I:
        p = cyclic.one_plus_a_power(ctx, spec.i).bits
        return V[cyclic.multiplier(ctx, p).many(V) == np.uint64(p)]
    sigma = spec.sigma
    if kind is Kind.SYMMETRIC:
        return V[apply_many(ctx, sigma, V) == V]
    if kind is Kind.UNITARY:
        return V[mul_many(ctx, V, apply_many(ctx, sigma, V)) == one]
    if kind is Kind.W:
        return np.unique(mul_many(ctx, apply_many(ctx, sigma, V), _inverse_many(ctx, V)))
    if kind is Kind.J:
        prods = mul_many(ctx, V, apply_many(ctx, sigma, V))
        return np.unique(prods[(prods & _odd_mask(ctx)) == 0])
    if kind is Kind.H:
        prods = mul_many(ctx, V, apply_many(ctx, sigma, V))
        t = cyclic.multiplier(ctx, _h_multiplier(ctx, sigma, spec.i))
        return V[(t.many(prods) & _odd_mask(ctx)) == 0]
    if kind is Kind.L:
        V2 = _select(ctx, lower_layer())
        p = cyclic.multiplier(ctx, cyclic.one_plus_a_power(ctx, spec.i).bits)
        return V2[p.many(V2 ^ apply_many(ctx, sigma, V2)) == 0]
    if kind is Kind.M:
        zm = cyclic.multiplier(ctx, spec.z)
        return V[zm.many(V ^ apply_many(ctx, sigma, V)) == 0]
    parent = enumerate_subgroup(ctx, spec.of)
    if kind is Kind.SQUARES:
        return np.unique(_square_map(ctx).many(parent.elements))
    if kind is Kind.FRATTINI:
        return frattini_elements(ctx, parent.elements)
    raise UsageError(f"unhandled kind {kind}")


def enumerate_subgroup(ctx: CyclicContext, spec: SubgroupSpec, check: bool = True) -> EnumeratedSubgroup:
    """All normalized units satisfying the defining predicate of ``spec``.

    An empty result (H for odd i below 2^(n-1)) is returned as such.  With
    ``check`` the result is verified to contain 1 and be closed under
    multiplication.
    """
    spec.validate(ctx)
    if ctx.n > ENUMERATION_MAX_N:
        raise BudgetError(f"exhaustive enumeration is capped at n = {ENUMERATION_MAX_N}")
    elems = np.unique(_select(ctx, spec).astype(np.uint64))
    if check and elems.size and not is_subgroup(ctx, elems):
        raise AssertionError(f"{spec.label} at n={ctx.n} is not a subgroup")
    return EnumeratedSubgroup(ctx, spec, elems)


# -- group-theoretic helpers -----------------------------------------------


def _lookup(ctx: CyclicContext, elems: np.ndarray) -> np.ndarray:
    member = np.zeros(1 << ctx.dim, dtype=bool)
    member[elems.astype(np.int64)] = True
    return member


def generators(ctx: CyclicContext, elems: np.ndarray) -> list[int]:
    """A greedy generating set of the abelian subgroup spanned by ``elems``."""
    span = np.array([1], dtype=np.uint64)
    member = _lookup(ctx, span)
    gens: list[int] = []
    for v in elems:
        if member[int(v)]:
            continue
        g = np.uint64(v)
        gens.append(int(v))
        layers = [span]
        p = g
        while not member[int(p)]:
            layers.append(mul_many(ctx, span, p))
            p = np.uint64(cyclic.mul_bits(ctx, int(p), int(g)))
        span = np.unique(np.concatenate(layers))
        member = _lookup(ctx, span)
    return gens


def is_subgroup(ctx: CyclicContext, elems: np.ndarray) -> bool:
    """Contains 1 and S*g is inside S for each g of a generating set of S."""
    elems = np.asarray(elems, dtype=np.uint64)
    member = _lookup(ctx, elems)
    if not member[1]:
        return False
    for g in generators(ctx, elems):
        if not member[mul_many(ctx, elems, np.uint64(g)).astype(np.int64)].all():
            return False
    return True


def frattini_elements(ctx: CyclicContext, elems: np.ndarray) -> np.ndarray:
    """Intersection of all index-2 subgroups of an abelian 2-group.

    Index-2 subgroups are kernels of nonzero homomorphisms to Z/2.  Writing
    each element as a word in a greedy generating set (via a BFS spanning
    tree), the homomorphisms are exactly the parity vectors orthogonal to
    every relation s*g = t.  No squaring is used.
    """
    elems = np.asarray(elems, dtype=np.uint64)
    gens = generators(ctx, elems)
    d = len(gens)
    if d == 0:
        return elems.copy()
    index = {int(v): k for k, v in enumerate(elems)}
    succ = [
        [index[int(t)] for t in mul_many(ctx, elems, np.uint64(g))]
        for g in gens
    ]
    word = [-1] * len(elems)
    start = index[1]
    word[start] = 0
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for gi in range(d):
            t = succ[gi][s]
            if word[t] < 0:
                word[t] = word[s] ^ (1 << gi)
                queue.append(t)
    relations = set()
    for gi in range(d):
        for s in range(len(elems)):
            r = word[s] ^ (1 << gi) ^ word[succ[gi][s]]
            if r:
                relations.add(r)
    rel = F2Matrix(len(relations), d, tuple(sorted(relations)))
    homs = kernel_basis(rel)
    keep = [k for k in range(len(elems)) if all((word[k] & f).bit_count() % 2 == 0 for f in homs)]
    return elems[keep]


def square_roots_in(N: EnumeratedSubgroup, g: AlgElem) -> tuple[AlgElem, ...]:
    """{h in N : h^2 = g}; empty or a coset of N[2]."""
    if g not in N:
        raise UsageError(f"{g} is not an element of {N.spec.label}")
    sq = _square_map(N.ctx).many(N.elements)
    return tuple(AlgElem(N.ctx, int(v)) for v in N.elements[sq == np.uint64(g.bits)])


def lower_layer_of(N: EnumeratedSubgroup) -> np.ndarray:
    return N.elements[_square_map(N.ctx).many(N.elements) == np.uint64(1)]


def product_set(ctx: CyclicContext, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """{ab : a in A, b in B}, sorted."""
    parts = [mul_many(ctx, A, np.uint64(b)) for b in np.asarray(B, dtype=np.uint64)]
    return np.unique(np.concatenate(parts)) if parts else np.array([], dtype=np.uint64)


# -- closed-form orders ----------------------------------------------------


def order_formula(spec: SubgroupSpec, n: int) -> int:
    """The order predicted by the closed forms, as an exact integer.

    Not capped by the arithmetic limit on n: only the bounds are checked.
    """
    if not isinstance(n, int) or n < 2:
        raise UsageError(f"n must be an integer >= 2, got {n!r}")
    ctx = CyclicContext(n)
    spec.validate(ctx)
    dim, half, quarter = ctx.dim, ctx.half, ctx.dim // 4
    kind = spec.kind
    if kind is Kind.FULL_V:
        return 2 ** (dim - 1)
    if kind is Kind.LOWER_LAYER:
        return 2 ** half
    if kind is Kind.S_I:
        return 2 ** spec.i
    if kind is Kind.SYMMETRIC:
        return 2 ** half
    if kind is Kind.UNITARY:
        if spec.sigma is Involution.STAR:
            # |C^2[2]| * 2^((|C| + |C[2]|)/2 - 1) with |C^2[2]| = |C[2]| = 2
            return 2 * 2 ** ((dim + 2) // 2 - 1)
        return 2 ** half
    if kind is Kind.W:
        # image of x -> x^sigma x^-1, whose kernel is the symmetric units
        return 2 ** (dim - 1) // 2 ** half
    if kind is Kind.J:
        if spec.sigma is Involution.STAR:
            return 2 ** (quarter - 1)
        return 2 * 2 ** (quarter - 1)
    if kind is Kind.H:
        if spec.i >= half:
            return 2 ** (dim - 1)
        if spec.i % 2:
            return 0
        return 2 ** (3 * quarter + spec.i // 2)
    if kind is Kind.L:
        if spec.i >= half:
            return 2 ** half
        return 2 ** (quarter + 1 + spec.i // 2)
    if kind in (Kind.SQUARES, Kind.FRATTINI):
        parent = spec.of
        if parent.kind is Kind.SYMMETRIC:
            return 2 ** (quarter - 1)
        if parent.kind is Kind.FULL_V:
            # squaring has kernel V[2]
            return 2 ** (dim - 1) // 2 ** half
    raise NoClosedFormError(f"no closed-form order for {spec.label}")


def linear_order(ctx: CyclicContext, spec: SubgroupSpec) -> int:
    """Order of a subgroup cut out by affine-linear conditions, as
    2^(kernel dimension) of the stacked GF(2) system."""
    spec.validate(ctx)
    dim = ctx.dim
    chi = F2Matrix(1, dim, (ctx.mask,))
    blocks: list[tuple[F2Matrix, int]] = [(chi, 1)]
    sq = _square_map(ctx).matrix()
    kind = spec.kind
    if kind is Kind.FULL_V:
        pass
    elif kind is Kind.LOWER_LAYER:
        blocks.append((sq, 1))
    elif kind is Kind.S_I:
        p = cyclic.one_plus_a_power(ctx, spec.i).bits
        blocks.append((cyclic.multiplier(ctx, p).matrix(), p))
    elif kind is Kind.SYMMETRIC:
        sig = table(ctx, spec.sigma)
        blocks.append((F2Matrix.of_linear_map(lambda v: v ^ sig(v), dim, dim), 0))
    elif kind is Kind.L:
        sig = table(ctx, spec.sigma)
        p = cyclic.multiplier(ctx, cyclic.one_plus_a_power(ctx, spec.i).bits)
        blocks.append((sq, 1))
        blocks.append((F2Matrix.of_linear_map(lambda v: p(v ^ sig(v)), dim, dim), 0))
    else:
        raise UsageError(f"{spec.label} is not cut out by linear conditions")
    mat, rhs, shift = None, 0, 0
    for b, r in blocks:
        mat = b if mat is None else mat.vstack(b)
        rhs |= r << shift
        shift += b.rows
    return solve_affine(mat, rhs).count


# -- chains ----------------------------------------------------------------


@dataclass
class ChainReport:
    n: int
    sigma: Involution
    family: str
    orders: dict[int, int]
    even_orders: tuple[int, ...]
    strict: bool
    index_two: bool
    terminal_ok: bool
    odd_ok: bool
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.strict and self.index_two and self.terminal_ok and self.odd_ok


def verify_chain(ctx: CyclicContext, sigma: Involution, family: str) -> ChainReport:
    """Check the H- or L-chain: strict index-2 steps along even i, the
    terminal member, and the odd-index behaviour (H empty, L_{2l+1} = L_{2l})."""
    family = family.upper()
    if family not in ("H", "L"):
        raise UsageError(f"chain family must be H or L, got {family!r}")
    make = h if family == "H" else l
    groups = {i: enumerate_subgroup(ctx, make(sigma, i)) for i in range(ctx.dim)}
    orders = {i: g.order for i, g in groups.items()}
    evens = list(range(0, ctx.half, 2))
    even_orders = tuple(orders[i] for i in evens)
    notes: list[str] = []
    strict = index_two = True
    for a, b in zip(evens, evens[1:]):
        ga, gb = groups[a], groups[b]
        inside = bool(np.isin(ga.elements, gb.elements).all())
        if not inside or ga.order == gb.order:
            strict = False
            notes.append(f"{family}_{a} is not a proper subgroup of {family}_{b}")
        if gb.order != 2 * ga.order:
            index_two = False
            notes.append(f"[{family}_{b}:{family}_{a}] = {gb.order}/{ga.order}")
    top = enumerate_subgroup(ctx, full_v() if family == "H" else lower_layer())
    terminal_ok = groups[evens[-1]].same_elements(top) and all(
        groups[i].same_elements(top) for i in range(ctx.half, ctx.dim)
    )
    if not terminal_ok:
        notes.append(f"terminal {family} does not equal {top.spec.label}")
    odd_ok = True
    for i in range(1, ctx.half, 2):
        if family == "H" and not groups[i].empty:
            odd_ok = False
            notes.append(f"H_{i} is not empty")
        if family == "L" and not groups[i].same_elements(groups[i - 1]):
            odd_ok = False
            notes.append(f"L_{i} differs from L_{i - 1}")
    return ChainReport(ctx.n, sigma, family, orders, even_orders, strict, index_two, terminal_ok, odd_ok, notes)
