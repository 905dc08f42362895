"""Verification suites: each runs one family of invariants over a range of n
and records expected-versus-actual for every check."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import census, cyclic, subgroups as sg
from .cyclic import AlgElem, make_context
from .errors import UsageError
from .involutions import (
    Involution,
    apply,
    circledast_gamma,
    index_sets,
    rho_table,
    sigma_product_closed_form,
)
from .maximal_class import Family, make_group_algebra

STAR, OAST = Involution.STAR, Involution.CIRCLEDAST


@dataclass(frozen=True)
class VerifySuite:
    name: str
    n_range: tuple[int, int] | None = None
    samples: int = 1000
    seed: int = 0


@dataclass
class Check:
    name: str
    n: int
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _elements(ctx, samples: int, rng: random.Random, exhaustive_max_n: int = 3) -> list[AlgElem]:
    if ctx.n <= exhaustive_max_n:
        return [AlgElem(ctx, v) for v in range(1 << ctx.dim)]
    return [AlgElem(ctx, rng.getrandbits(ctx.dim)) for _ in range(samples)]


def _agree(items, fn) -> int:
    return sum(1 for x in items if fn(x))


# -- suites ----------------------------------------------------------------


def _lemma1(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    for i in range(ctx.dim):
        yield Check(f"|S_{i}| enumerated", n, 2**i, sg.enumerate_subgroup(ctx, sg.s_i(i)).order)
        yield Check(f"|S_{i}| by rank", n, 2**i, sg.linear_order(ctx, sg.s_i(i)))
        yield Check(f"|Ann((1+a)^{i})|", n, 2**i, cyclic.annihilator_order(ctx, i))


def _lemma3(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    xs = _elements(ctx, samples, rng)
    N = len(xs)
    yield Check("x^2 closed form", n, N, _agree(xs, lambda x: cyclic.square_closed_form(x) == cyclic.square(x)))
    yield Check("x x* closed form", n, N, _agree(xs, lambda x: sigma_product_closed_form(STAR, x) == x * apply(STAR, x)))
    yield Check("gamma_0 of x x* is chi(x)", n, N, _agree(xs, lambda x: (x * apply(STAR, x)).coeff(0) == cyclic.augmentation(x)))
    yield Check("gamma_half of x x* is 0", n, N, _agree(xs, lambda x: (x * apply(STAR, x)).coeff(ctx.half) == 0))


def _lemma4(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    xs = _elements(ctx, samples, rng)
    N = len(xs)
    sets = index_sets(ctx)
    odd = [r for r in range(ctx.dim) if r % 2]
    rho = rho_table(ctx)
    yield Check("rho is an involution", n, True, all(rho[rho[i]] == i for i in range(ctx.dim)))

    def via_rho(x):
        v = 0
        for i in range(ctx.dim):
            v |= x.coeff(rho[i]) << (-i % ctx.dim)
        return AlgElem(ctx, v)

    yield Check("x^circledast via rho", n, N, _agree(xs, lambda x: via_rho(x) == apply(OAST, x)))
    yield Check("x x^circledast closed form", n, N, _agree(xs, lambda x: sigma_product_closed_form(OAST, x) == x * apply(OAST, x)))
    yield Check("gamma_k formula for every k", n, N, _agree(
        xs, lambda x: all(circledast_gamma(x, k) == (x * apply(OAST, x)).coeff(k) for k in range(ctx.dim))))
    yield Check("gamma_0 is sum over P", n, N, _agree(
        xs, lambda x: (x * apply(OAST, x)).coeff(0) == sum(x.coeff(r) for r in sets.P) % 2))
    yield Check("gamma_half is sum over 1+P", n, N, _agree(
        xs, lambda x: (x * apply(OAST, x)).coeff(ctx.half) == sum(x.coeff(r) for r in odd) % 2))


def _lemma5(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    W = sg.enumerate_subgroup(ctx, sg.w(OAST))
    sq = sg.enumerate_subgroup(ctx, sg.squares(sg.unitary(OAST)))
    yield Check("1+C^ not in W_circledast", n, False, (cyclic.one(ctx) + cyclic.c_hat(ctx)) in W)
    yield Check("1+(C^2)^ not in V_circledast^2", n, False, (cyclic.one(ctx) + cyclic.c2_hat(ctx)) in sq)
    xs = _elements(ctx, samples, rng)
    yield Check("tr(x + x^circledast) = 0", n, len(xs), _agree(xs, lambda x: (x + apply(OAST, x)).coeff(0) == 0))


def _lemma6(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    V = sg.enumerate_subgroup(ctx, sg.unitary(OAST))
    S = sg.enumerate_subgroup(ctx, sg.symmetric(OAST))
    W = sg.enumerate_subgroup(ctx, sg.w(OAST))
    u = (cyclic.one(ctx) + cyclic.c_hat(ctx)).bits
    yield Check("|V_circledast|", n, 2**ctx.half, V.order)
    yield Check("|S_circledast|", n, 2**ctx.half, S.order)
    yield Check("|W_circledast|", n, 2 ** (ctx.half - 1), W.order)
    yield Check("1+C^ has order 2", n, 1, cyclic.mul_bits(ctx, u, u))
    prod = sg.product_set(ctx, W.elements, np.array([1, u], dtype=np.uint64))
    yield Check("V_circledast = <1+C^> W_circledast", n, True, np.array_equal(prod, V.elements))
    yield Check("|<1+C^>| |W| = |V_circledast|", n, V.order, 2 * W.order)
    lv, ls = sg.lower_layer_of(V), sg.lower_layer_of(S)
    yield Check("V_circledast[2] = S_circledast[2]", n, True, np.array_equal(lv, ls))
    yield Check("|S_circledast[2]|", n, 2 ** (ctx.dim // 4 + 1), int(ls.size))


def _lemma7(n, samples, rng) -> Iterator[Check]:
    D, Q = make_group_algebra(Family.DIHEDRAL, n), make_group_algebra(Family.QUATERNION, n)
    if n <= 3:
        d, q = census.count_brute(D), census.count_brute(Q)
        label = "brute"
    else:
        d, q = census.count_structural(D), census.count_structural(Q)
        label = "structural"
    yield Check(f"type-1 count D = Q ({label})", n, d.type1, q.type1)


def _lemma8(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    quarter = ctx.dim // 4
    for sigma in (STAR, OAST) if n >= 3 else (STAR,):
        rep = sg.verify_chain(ctx, sigma, "H")
        tag = sigma.value
        yield Check(f"H^{tag} even orders", n,
                    tuple(2 ** (3 * quarter + l) for l in range(len(rep.even_orders))), rep.even_orders)
        yield Check(f"H^{tag} chain strict", n, True, rep.strict)
        yield Check(f"H^{tag} chain index 2", n, True, rep.index_two)
        yield Check(f"H^{tag} top = V", n, True, rep.terminal_ok)
        yield Check(f"H^{tag} odd i empty", n, True, rep.odd_ok)
        J = sg.enumerate_subgroup(ctx, sg.j(sigma))
        S2 = sg.enumerate_subgroup(ctx, sg.squares(sg.symmetric(sigma)))
        yield Check(f"|S_{tag}(C)^2|", n, 2 ** (quarter - 1), S2.order)
        if sigma is STAR:
            yield Check("J* = S_*(C)^2", n, True, J.same_elements(S2))
        else:
            z = np.array([1, 1 << ctx.half], dtype=np.uint64)
            yield Check("J^circledast = <a^half> x S^2", n, True,
                        np.array_equal(sg.product_set(ctx, S2.elements, z), J.elements))
            yield Check("a^half not in S_circledast(C)^2", n, False, (1 << ctx.half) in S2)
        yield Check(f"|J^{tag}|", n, sg.order_formula(sg.j(sigma), n), J.order)
        H0 = sg.enumerate_subgroup(ctx, sg.h(sigma, 0))
        U = sg.enumerate_subgroup(ctx, sg.unitary(sigma))
        yield Check(f"|H_0^{tag}| = |V_{tag}| |J^{tag}|", n, H0.order, U.order * J.order)


def _lemma10(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    rep = sg.verify_chain(ctx, STAR, "L")
    quarter = ctx.dim // 4
    yield Check("L* even orders", n,
                tuple(2 ** (quarter + 1 + l) for l in range(len(rep.even_orders))), rep.even_orders)
    yield Check("L* chain strict", n, True, rep.strict)
    yield Check("L* chain index 2", n, True, rep.index_two)
    yield Check("L*_i = V[2] for i >= 2^(n-1)", n, True, rep.terminal_ok)
    yield Check("L*_(2l+1) = L*_(2l)", n, True, rep.odd_ok)
    for i in range(ctx.dim):
        yield Check(f"|L*_{i}| by rank", n, sg.order_formula(sg.l(STAR, i), n), sg.linear_order(ctx, sg.l(STAR, i)))
    yield Check("L*_0 = S_*(C)[2]", n, True, np.array_equal(
        sg.enumerate_subgroup(ctx, sg.l(STAR, 0)).elements,
        sg.lower_layer_of(sg.enumerate_subgroup(ctx, sg.symmetric(STAR)))))


def _eq2(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    yield Check("|V_*|", n, 2 ** (ctx.half + 1), sg.enumerate_subgroup(ctx, sg.unitary(STAR)).order)


def _eq13(n, samples, rng) -> Iterator[Check]:
    ctx = make_context(n)
    V2 = sg.enumerate_subgroup(ctx, sg.lower_layer())
    yield Check("h^circledast = h* on V[2]", n, V2.order, _agree(V2, lambda h: apply(OAST, h) == apply(STAR, h)))
    yield Check("|V[2]|", n, 2**ctx.half, V2.order)
    for i in range(ctx.dim):
        a = sg.enumerate_subgroup(ctx, sg.l(STAR, i))
        b = sg.enumerate_subgroup(ctx, sg.l(OAST, i))
        yield Check(f"L^circledast_{i} = L*_{i}", n, True, a.same_elements(b))


def _theorem(n, samples, rng) -> Iterator[Check]:
    for fam in Family:
        if n < fam.min_n:
            continue
        mc = make_group_algebra(fam, n)
        want = census.theta_formula(fam, n)
        split = census.type_split_formula(fam, n)
        reports = [census.count_structural(mc), census.count_proof_decomposition(fam, n, "formula"),
                   census.count_proof_decomposition(fam, n, "enumerated")]
        if n <= 3:
            reports.append(census.count_brute(mc))
        for r in reports:
            label = r.method.value + (f"/{r.order_source}" if r.order_source else "")
            yield Check(f"{mc.name} total ({label})", n, want, r.total)
            yield Check(f"{mc.name} type split ({label})", n, split, (r.type1, r.type2))
            yield Check(f"{mc.name} total even ({label})", n, 0, r.total % 2)


def _corollary(n, samples, rng) -> Iterator[Check]:
    yield Check("Theta values pairwise distinct", n, True, census.corollary_check(n))


SUITES: dict[str, tuple[Callable, tuple[int, int]]] = {
    "lemma1": (_lemma1, (2, 4)),
    "lemma3": (_lemma3, (2, 5)),
    "lemma4": (_lemma4, (3, 5)),
    "lemma5": (_lemma5, (3, 4)),
    "lemma6": (_lemma6, (3, 4)),
    "lemma7": (_lemma7, (2, 4)),
    "lemma8": (_lemma8, (2, 4)),
    "lemma10": (_lemma10, (2, 4)),
    "eq2": (_eq2, (2, 4)),
    "eq13": (_eq13, (3, 4)),
    "theorem": (_theorem, (2, 4)),
    "corollary": (_corollary, (2, 6)),
}
SUITE_NAMES = (*SUITES, "all")


def parse_n_range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition("..")
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise UsageError(f"bad n range {text!r}; expected e.g. 2..4") from None
    if lo > hi:
        raise UsageError(f"empty n range {text!r}")
    return lo, hi


def run_verify(suite: VerifySuite) -> VerifyReport:
    """Run one suite (or every suite for "all"); deterministic given the seed."""
    if suite.name not in SUITE_NAMES:
        raise UsageError(f"unknown suite {suite.name!r}")
    t0 = time.perf_counter()
    report = VerifyReport(suite.name)
    names = list(SUITES) if suite.name == "all" else [suite.name]
    for name in names:
        fn, (cap_lo, cap_hi) = SUITES[name]
        lo, hi = suite.n_range or (cap_lo, cap_hi)
        if lo > hi:
            raise UsageError(f"empty n range {lo}..{hi}")
        if suite.name == "all":
            lo, hi = max(lo, cap_lo), min(hi, cap_hi)
        elif lo < cap_lo or hi > cap_hi:
            raise UsageError(f"suite {name} supports n in {cap_lo}..{cap_hi}, got {lo}..{hi}")
        rng = random.Random(f"{suite.seed}:{name}")
        for n in range(lo, hi + 1):
            for check in fn(n, suite.samples, rng):
                check.name = f"{name}: {check.name}"
                report.checks.append(check)
    report.elapsed = time.perf_counter() - t0
    return report
