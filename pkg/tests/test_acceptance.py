"""Acceptance criteria 1-10. Each test prints one PASS/FAIL line."""

import random
import time
from functools import lru_cache

import numpy as np
import pytest

from maxclass import subgroups as sg
from maxclass.census import (
    Method,
    count_brute,
    count_proof_decomposition,
    count_structural,
    run_method,
    theta_formula,
)
from maxclass.cyclic import AlgElem, augmentation, make_context
from maxclass.involutions import Involution, apply, sigma_product_closed_form
from maxclass.maximal_class import Family, element, identity, make_group_algebra, mc_square, order2_conditions

from conftest import naive_mul

D, SD, Q = Family.DIHEDRAL, Family.SEMIDIHEDRAL, Family.QUATERNION
STAR, CIRC = Involution.STAR, Involution.CIRCLEDAST
FAMILIES = (D, SD, Q)


def families_at(n):
    return [f for f in FAMILIES if n >= f.min_n]


@pytest.fixture
def verdict(capsys):
    def emit(k: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
        assert ok, detail

    return emit


@lru_cache(maxsize=None)
def structural_n4(family):
    t0 = time.perf_counter()
    r = count_structural(make_group_algebra(family, 4), workers=1)
    return r, time.perf_counter() - t0


def test_criterion_1_theorem_n2(verdict):
    t0 = time.perf_counter()
    d = count_brute(make_group_algebra(D, 2))
    q = count_brute(make_group_algebra(Q, 2))
    dt = time.perf_counter() - t0
    ok = (
        (d.total, d.type1, d.type2) == (48, 16, 32) == (theta_formula(D, 2), 16, 32)
        and (q.total, q.type1, q.type2) == (16, 16, 0)
        and q.total == theta_formula(Q, 2)
        and dt < 1.0
    )
    verdict(1, ok, f"D8 {d.total} ({d.type1}/{d.type2}), Q8 {q.total} ({q.type1}/{q.type2}), {dt:.2f}s")


def test_criterion_2_theorem_n3(verdict):
    t0 = time.perf_counter()
    got = {f: count_brute(make_group_algebra(f, 3)) for f in FAMILIES}
    dt = time.perf_counter() - t0
    want = {D: (1280, 512), SD: (1024, 256), Q: (768, 0)}
    ok = all((got[f].total, got[f].type2) == want[f] for f in FAMILIES) and dt < 5.0
    detail = ", ".join(f"{got[f].family.value}16 {got[f].total}/{got[f].type2}" for f in FAMILIES)
    verdict(2, ok, f"{detail}, {dt:.2f}s")


def test_criterion_3_theorem_n4_structural(verdict):
    want = {D: 589824, SD: 524288, Q: 458752}
    parts, ok = [], True
    for f in FAMILIES:
        r, dt = structural_n4(f)
        ok &= r.total == want[f] == theta_formula(f, 4) and dt < 60.0
        parts.append(f"{f.value}32 {r.total} in {dt:.1f}s")
    # optional budgeted brute force must agree when it completes
    brute = count_brute(make_group_algebra(D, 4), budget=60.0)
    if not brute.budget_exhausted:
        ok &= brute.total == want[D]
        parts.append(f"brute D32 {brute.total}")
    else:
        parts.append("brute D32 skipped (budget)")
    verdict(3, ok, ", ".join(parts))


def test_criterion_4_proof_decomposition_formula(verdict):
    t0 = time.perf_counter()
    checked, ok = 0, True
    for n in range(2, 7):
        for f in families_at(n):
            ok &= count_proof_decomposition(f, n, "formula").total == theta_formula(f, n)
            checked += 1
    dt = time.perf_counter() - t0
    verdict(4, ok and dt < 1.0, f"{checked} (family, n) pairs for n = 2..6, {dt * 1000:.1f}ms")


def test_criterion_5_proof_decomposition_enumerated(verdict):
    t0 = time.perf_counter()
    ok, parts = True, []
    for n in (3, 4):
        for f in FAMILIES:
            r = count_proof_decomposition(f, n, "enumerated")
            ok &= r.total == theta_formula(f, n)
            parts.append(f"{f.value}{2 ** (n + 1)}={r.total}")
    dt = time.perf_counter() - t0
    verdict(5, ok and dt < 30.0, f"{' '.join(parts)}, {dt:.1f}s")


def test_criterion_6_subgroup_orders(verdict):
    t0 = time.perf_counter()
    failures = []

    def check(label, got, want):
        if got != want:
            failures.append(f"{label}: {got} != {want}")

    for n in (3, 4):
        ctx = make_context(n)
        dim, half, q = ctx.dim, ctx.half, ctx.dim // 4
        for i in range(dim):
            check(f"n={n} S_{i}", sg.enumerate_subgroup(ctx, sg.s_i(i)).order, 2**i)
        check(f"n={n} V_star", sg.enumerate_subgroup(ctx, sg.unitary(STAR)).order, 2 ** (half + 1))
        vc = sg.enumerate_subgroup(ctx, sg.unitary(CIRC))
        wc = sg.enumerate_subgroup(ctx, sg.w(CIRC))
        check(f"n={n} V_circledast", vc.order, 2**half)
        u = (1 | ctx.mask) ^ 1  # 1 + C-hat
        pair = np.array([1, u], dtype=np.uint64)
        prod = sg.product_set(ctx, pair, wc.elements)
        check(f"n={n} V_circledast = <1+C^> x W", (len(prod), set(prod.tolist()) == vc.bitset), (vc.order, True))
        for s in (STAR, CIRC):
            chain = sg.verify_chain(ctx, s, "H")
            check(f"n={n} H_0^{s.value}", chain.orders[0], 2 ** (3 * q))
            check(f"n={n} H chain {s.value}", (chain.strict, chain.index_two, chain.odd_ok), (True, True, True))
        for l in range(half // 2):
            a = sg.enumerate_subgroup(ctx, sg.l(STAR, 2 * l))
            b = sg.enumerate_subgroup(ctx, sg.l(STAR, 2 * l + 1))
            check(f"n={n} |L_{2 * l}*|", a.order, 2 ** (q + 1 + l))
            check(f"n={n} L_{2 * l} = L_{2 * l + 1}", a.same_elements(b), True)
        for i in range(dim):
            a = sg.enumerate_subgroup(ctx, sg.l(STAR, i))
            b = sg.enumerate_subgroup(ctx, sg.l(CIRC, i))
            check(f"n={n} L_{i} circledast = star", a.same_elements(b), True)
    dt = time.perf_counter() - t0
    ok = not failures and dt < 60.0
    verdict(6, ok, f"n = 3, 4 in {dt:.1f}s" + ("" if not failures else "; " + "; ".join(failures[:5])))


def test_criterion_7_closed_form_products(verdict):
    rng = random.Random(7)
    mismatches, checked = 0, 0
    for n in (2, 3, 4, 5):
        ctx = make_context(n)
        sigmas = (STAR, CIRC) if n >= 3 else (STAR,)
        if n <= 3:
            xs = range(1 << ctx.dim)
        else:
            xs = [rng.getrandbits(ctx.dim) for _ in range(10_000)]
        for s in sigmas:
            for v in xs:
                x = AlgElem(ctx, v)
                direct = naive_mul(ctx, v, apply(s, x).bits) if n <= 4 else (x * apply(s, x)).bits
                mismatches += sigma_product_closed_form(s, x).bits != direct
                checked += 1
    verdict(7, mismatches == 0, f"{checked} products checked, {mismatches} mismatches")


def test_criterion_8_order2_conditions(verdict):
    mismatches, checked = 0, 0
    for n in (2, 3):
        for f in families_at(n):
            mc = make_group_algebra(f, n)
            one = identity(mc)
            d = mc.cyclic.dim
            for x1 in range(1 << d):
                for x2 in range(1 << d):
                    if not (x1.bit_count() + x2.bit_count()) & 1:
                        continue
                    u = element(mc, x1, x2)
                    mismatches += order2_conditions(mc, u) != (mc_square(mc, u) == one)
                    checked += 1
    verdict(8, mismatches == 0, f"{checked} normalized units, {mismatches} mismatches")


def test_criterion_9_type1_counts_agree(verdict):
    parts, ok = [], True
    for n in (2, 3):
        d = count_brute(make_group_algebra(D, n)).type1
        q = count_brute(make_group_algebra(Q, n)).type1
        ok &= d == q
        parts.append(f"n={n} D {d} Q {q}")
    d, q = structural_n4(D)[0].type1, structural_n4(Q)[0].type1
    ok &= d == q
    parts.append(f"n=4 D {d} Q {q} (structural)")
    verdict(9, ok, ", ".join(parts))


def test_criterion_10_parity(verdict):
    reports = []
    for n in range(2, 7):
        for f in families_at(n):
            reports.append(run_method(f, n, Method.FORMULA))
            reports.append(run_method(f, n, Method.PROOF, order_source="formula"))
            if n <= 4:
                reports.append(run_method(f, n, Method.PROOF, order_source="enumerated"))
            if n <= 3:
                reports.append(run_method(f, n, Method.BRUTE))
                reports.append(run_method(f, n, Method.STRUCTURAL))
            if n == 4:
                reports.append(structural_n4(f)[0])
    bad = [r for r in reports if r.total % 2 != 0 or r.involutions % 2 != 1]
    verdict(10, not bad, f"{len(reports)} reports, {len(bad)} parity violations")
