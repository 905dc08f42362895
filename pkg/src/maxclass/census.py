"""Counting the solutions of x^2 = 1 in V(F2G) for G of maximal class.

Four routes to the same number:

* ``theta_formula``: the closed form.
* ``count_brute``: square every normalized unit x1 + x2 b.
* ``count_structural``: for each x2 the conditions on x1 are an affine GF(2)
  system; add up 2^(kernel dim) over the consistent ones.
* ``count_proof_decomposition``: assemble the count from subgroup orders of
  V(F2C), either closed-form or enumerated.

Counts include the identity, so the number of involutions is ``total - 1``.
"""

from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import cyclic, subgroups as sg
from .cyclic import LinearMap, mul_many, parity, parity_many
from .errors import UsageError
from .f2linalg import F2Matrix, solve_affine
from .involutions import Involution, apply_many, table
from .maximal_class import Family, MCContext, make_group_algebra

MAX_FORMULA_N = 6
BRUTE_MAX_N = 4
STRUCTURAL_MAX_N = 5


class Method(enum.Enum):
    FORMULA = "formula"
    BRUTE = "brute"
    STRUCTURAL = "structural"
    PROOF = "proof"


@dataclass
class CensusReport:
    family: Family
    n: int
    method: Method
    type1: int | None
    type2: int | None
    total: int | None
    elapsed: float
    budget_exhausted: bool = False
    order_source: str | None = None

    def __post_init__(self) -> None:
        if not self.budget_exhausted and self.total != self.type1 + self.type2:
            raise AssertionError("total must equal type1 + type2")

    @property
    def involutions(self) -> int | None:
        return None if self.total is None else self.total - 1

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "n": self.n,
            "method": self.method.value,
            "type1": self.type1,
            "type2": self.type2,
            "total": self.total,
            "involutions": self.involutions,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "budget_exhausted": self.budget_exhausted,
        }


def _check_family(family: Family, n: int) -> None:
    if n < family.min_n:
        raise UsageError(f"{family.value} needs n >= {family.min_n}, got {n}")
    if n > MAX_FORMULA_N:
        raise UsageError(f"n is capped at {MAX_FORMULA_N}")


def theta_formula(family: Family, n: int) -> int:
    _check_family(family, n)
    base = 2 ** (2**n + n - 1)
    if family is Family.DIHEDRAL:
        return base + 2 ** (2**n)
    if family is Family.SEMIDIHEDRAL:
        return base
    return base - 2 ** (2**n)


def type_split_formula(family: Family, n: int) -> tuple[int, int]:
    """(type 1, type 2) closed forms; type 1 is the same for all families."""
    _check_family(family, n)
    type1 = 2 ** (2**n) * (2 ** (n - 1) - 1)
    type2 = {
        Family.DIHEDRAL: 2 ** (2**n + 1),
        Family.SEMIDIHEDRAL: 2 ** (2**n),
        Family.QUATERNION: 0,
    }[family]
    return type1, type2


def count_formula(family: Family, n: int) -> CensusReport:
    t0 = time.perf_counter()
    type1, type2 = type_split_formula(family, n)
    total = theta_formula(family, n)
    if type1 + type2 != total:
        raise AssertionError("closed-form type split does not add up")
    return CensusReport(family, n, Method.FORMULA, type1, type2, total, time.perf_counter() - t0)


def corollary_check(n: int) -> bool:
    """The Theta values of the families defined at this n are pairwise distinct."""
    values = [theta_formula(f, n) for f in Family if n >= f.min_n]
    return len(set(values)) == len(values)


# -- shared worker plumbing ------------------------------------------------


def _run_chunks(worker, family: Family, n: int, budget: float | None, workers: int, extra=()):
    size = 1 << (1 << n)
    workers = max(1, int(workers))
    bounds = [(size * k // workers, size * (k + 1) // workers) for k in range(workers)]
    if workers == 1:
        return [worker(family, n, lo, hi, budget, *extra) for lo, hi in bounds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(worker, family, n, lo, hi, budget, *extra) for lo, hi in bounds]
        return [f.result() for f in futures]


def _merge(family, n, method, parts, t0, **kw) -> CensusReport:
    elapsed = time.perf_counter() - t0
    if any(p[2] for p in parts):
        return CensusReport(family, n, method, None, None, None, elapsed, True, **kw)
    t1 = sum(p[0] for p in parts)
    t2 = sum(p[1] for p in parts)
    return CensusReport(family, n, method, t1, t2, t1 + t2, elapsed, **kw)


# -- brute force -----------------------------------------------------------


def _brute_worker(family: Family, n: int, lo: int, hi: int, budget: float | None):
    mc = make_group_algebra(family, n)
    c = mc.cyclic
    deadline = None if budget is None else time.monotonic() + budget
    X = np.arange(1 << c.dim, dtype=np.uint64)
    sq = mul_many(c, X, X)
    chi = parity_many(X)
    D = X ^ apply_many(c, mc.twist, X)
    sig = table(c, mc.twist)
    t1 = t2 = 0
    for x2 in range(lo, hi):
        if deadline is not None and time.monotonic() > deadline:
            return 0, 0, True
        # first component of u^2 is x1^2 + x2 x2^sigma b^2; it must be 1
        nb = cyclic.mul_bits(c, cyclic.mul_bits(c, x2, sig(x2)), mc.b_square)
        target = 1 ^ parity(x2)
        cand = D[(sq == np.uint64(nb ^ 1)) & (chi == target)]
        if not cand.size:
            continue
        # second component is (x1 + x1^sigma) x2
        hits = int(np.count_nonzero(mul_many(c, cand, np.uint64(x2)) == 0))
        if target:
            t1 += hits
        else:
            t2 += hits
    return t1, t2, False


def count_brute(ctx: MCContext, budget: float | None = None, workers: int = 1) -> CensusReport:
    """Square every normalized unit x1 + x2 b and count those equal to 1.

    n <= 3 completes in well under a second; n = 4 (2^31 units) takes
    minutes and is meant to run under a budget.  On exhaustion the report is
    flagged and carries no counts.
    """
    if ctx.n > BRUTE_MAX_N:
        raise UsageError(f"brute force is capped at n = {BRUTE_MAX_N}")
    t0 = time.perf_counter()
    parts = _run_chunks(_brute_worker, ctx.family, ctx.n, budget, workers)
    return _merge(ctx.family, ctx.n, Method.BRUTE, parts, t0)


def count_brute_scalar(ctx: MCContext) -> tuple[int, int]:
    """Element-by-element reference loop through mc_square (n <= 3)."""
    from .maximal_class import mul_pair

    if ctx.n > 3:
        raise UsageError("the scalar reference loop is for n <= 3")
    d = ctx.cyclic.dim
    t1 = t2 = 0
    for x1 in range(1 << d):
        for x2 in range(1 << d):
            if parity(x1) ^ parity(x2) != 1:
                continue
            if mul_pair(ctx, x1, x2, x1, x2) == (1, 0):
                if parity(x1):
                    t1 += 1
                else:
                    t2 += 1
    return t1, t2


# -- structural (linear algebra) -------------------------------------------


class StructuralSystem:
    """Per-x2 affine system on the coefficients of x1.

    Rows: x1^2 = x2 x2^sigma b^2 + 1, then (x1 + x1^sigma) x2 = 0, then
    chi(x1) = 1 + chi(x2).
    """

    def __init__(self, mc: MCContext):
        self.mc = mc
        c = mc.cyclic
        self.c = c
        self.sig = table(c, mc.twist)
        self.star = table(c, Involution.STAR)
        self.square_rows = LinearMap.of(c, lambda v: cyclic.mul_bits(c, v, v)).matrix().data
        self.chi_row = (c.mask,)

    def twisted_rows(self, x2: int) -> tuple[int, ...]:
        """Rows of x1 -> (x1 + x1^sigma) x2.  Row k has bit j set iff
        x2_(k-j) + x2_(k-sigma(j)) = 1."""
        c, sig = self.c, self.sig
        base = self.star(x2)
        rows = []
        for k in range(c.dim):
            r = cyclic._rot(c, base, k)
            rows.append(r ^ sig(r))
        return tuple(rows)

    def matrix(self, x2: int) -> F2Matrix:
        c = self.c
        return F2Matrix(2 * c.dim + 1, c.dim, self.square_rows + self.twisted_rows(x2) + self.chi_row)

    def rhs(self, x2: int) -> int:
        c, mc = self.c, self.mc
        nb = cyclic.mul_bits(c, cyclic.mul_bits(c, x2, self.sig(x2)), mc.b_square)
        return (nb ^ 1) | ((1 ^ parity(x2)) << (2 * c.dim))

    def count(self, x2: int) -> int:
        return solve_affine(self.matrix(x2), self.rhs(x2)).count


def _structural_worker(family: Family, n: int, lo: int, hi: int, budget: float | None, record: bool = False):
    mc = make_group_algebra(family, n)
    system = StructuralSystem(mc)
    deadline = None if budget is None else time.monotonic() + budget
    t1 = t2 = 0
    per = {} if record else None
    for x2 in range(lo, hi):
        if deadline is not None and (x2 & 255) == 0 and time.monotonic() > deadline:
            return 0, 0, True, None
        k = system.count(x2)
        if per is not None and k:
            per[x2] = k
        if parity(x2):
            t2 += k
        else:
            t1 += k
    return t1, t2, False, per


def count_structural(
    ctx: MCContext,
    budget: float | None = None,
    workers: int = 1,
    per_x2: dict[int, int] | None = None,
) -> CensusReport:
    """Sum of affine solution counts over all x2.

    If ``per_x2`` is given it is filled with the nonzero per-x2 counts.
    """
    if ctx.n > STRUCTURAL_MAX_N:
        raise UsageError(f"the structural count is capped at n = {STRUCTURAL_MAX_N}")
    t0 = time.perf_counter()
    parts = _run_chunks(_structural_worker, ctx.family, ctx.n, budget, workers, (per_x2 is not None,))
    if per_x2 is not None:
        for p in parts:
            if p[3]:
                per_x2.update(p[3])
    return _merge(ctx.family, ctx.n, Method.STRUCTURAL, parts, t0)


# -- assembly from subgroup orders -----------------------------------------


def _order_source(n: int, order_source: str):
    if order_source == "formula":
        return lambda spec: sg.order_formula(spec, n)
    if order_source == "enumerated":
        ctx = cyclic.make_context(n)
        if n > sg.ENUMERATION_MAX_N:
            raise UsageError(f"enumerated orders need n <= {sg.ENUMERATION_MAX_N}")
        cache: dict = {}

        def order(spec):
            if spec not in cache:
                cache[spec] = sg.enumerate_subgroup(ctx, spec, check=False).order
            return cache[spec]

        return order
    raise UsageError(f"order source must be formula or enumerated, got {order_source!r}")


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise AssertionError(f"{a} is not divisible by {b}")
    return q


def count_proof_decomposition(family: Family, n: int, order_source: str = "formula") -> CensusReport:
    """Type 1: |V[2]| + sum over 0 < 2l < 2^(n-1) of |H_2l|/|S_2l| * |L_2l|
    + sum over 2^(n-1) <= j < 2^n of |V|/|S_j| * |V[2]|.
    Type 2: |H_0*| |L_0*| for D, |H_0^circledast|/2 * |L_0^circledast| for SD,
    none for Q.  H and L are taken with the family's twist."""
    _check_family(family, n)
    t0 = time.perf_counter()
    order = _order_source(n, order_source)
    dim, half = 2**n, 2 ** (n - 1)
    sigma = Involution.CIRCLEDAST if family is Family.SEMIDIHEDRAL else Involution.STAR
    v = order(sg.full_v())
    v2 = order(sg.lower_layer())
    type1 = v2
    for l in range(1, half // 2):
        k = _exact_div(order(sg.h(sigma, 2 * l)), order(sg.s_i(2 * l)))
        type1 += k * order(sg.l(sigma, 2 * l))
    for j in range(half, dim):
        type1 += _exact_div(v, order(sg.s_i(j))) * v2
    if family is Family.DIHEDRAL:
        type2 = order(sg.h(sigma, 0)) * order(sg.l(sigma, 0))
    elif family is Family.SEMIDIHEDRAL:
        type2 = _exact_div(order(sg.h(sigma, 0)), 2) * order(sg.l(sigma, 0))
    else:
        type2 = 0
    return CensusReport(
        family, n, Method.PROOF, type1, type2, type1 + type2,
        time.perf_counter() - t0, order_source=order_source,
    )


def run_method(
    family: Family,
    n: int,
    method: Method,
    order_source: str = "formula",
    budget: float | None = None,
    workers: int = 1,
) -> CensusReport:
    _check_family(family, n)
    if method is Method.FORMULA:
        return count_formula(family, n)
    if method is Method.PROOF:
        return count_proof_decomposition(family, n, order_source)
    mc = make_group_algebra(family, n)
    if method is Method.BRUTE:
        return count_brute(mc, budget, workers)
    return count_structural(mc, budget, workers)


def default_workers() -> int:
    return int(os.environ.get("MAXCLASS_WORKERS", "1"))
