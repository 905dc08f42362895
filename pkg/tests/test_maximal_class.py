import pytest

from maxclass import cyclic
from maxclass.cyclic import AlgElem, augmentation
from maxclass.errors import NotAUnitError, UsageError
from maxclass.involutions import apply
from maxclass.maximal_class import (
    Family,
    UnitType,
    element,
    element_order,
    format_mc,
    identity,
    is_normalized_unit,
    make_group_algebra,
    mc_mul,
    mc_square,
    order2_conditions,
    parse_mc,
    unit_type,
)

D, SD, Q = Family.DIHEDRAL, Family.SEMIDIHEDRAL, Family.QUATERNION
CASES = [(D, 2), (Q, 2), (D, 3), (SD, 3), (Q, 3)]


def a(ctx, k=1):
    return 1 << (k % ctx.dim)


def test_make_group_algebra():
    d8 = make_group_algebra(D, 2)
    assert d8.dim == 8 and d8.name == "D8"
    with pytest.raises(UsageError):
        make_group_algebra(SD, 2)
    q16 = make_group_algebra(Q, 3)
    assert q16.b_square == 1 << 4
    assert make_group_algebra(SD, 3).b_square == 1
    assert Family.parse("sd") is SD


def test_mul_examples():
    d8 = make_group_algebra(D, 2)
    b = element(d8, 0, 1)
    assert mc_mul(d8, b, element(d8, a(d8.cyclic), 0)) == element(d8, 0, a(d8.cyclic, 3))
    q8 = make_group_algebra(Q, 2)
    bq = element(q8, 0, 1)
    assert mc_mul(q8, bq, bq) == element(q8, a(q8.cyclic, 2), 0)
    sd = make_group_algebra(SD, 3)
    assert mc_mul(sd, element(sd, 0, 1), element(sd, 2, 0)) == element(sd, 0, 1 << 3)


def test_unit_examples():
    d8 = make_group_algebra(D, 2)
    assert is_normalized_unit(element(d8, 1, 0)) and is_normalized_unit(element(d8, 0, 1))
    x = element(d8, 0b11, 0b11)
    assert not is_normalized_unit(x)
    assert unit_type(element(d8, 1, 0)) is UnitType.TYPE1
    assert unit_type(element(d8, 0, 1)) is UnitType.TYPE2
    assert unit_type(x) is UnitType.NOT_UNIT


def test_order_examples():
    d8, q8 = make_group_algebra(D, 2), make_group_algebra(Q, 2)
    assert element_order(d8, identity(d8)) == 1
    assert element_order(d8, element(d8, 0, 1)) == 2
    assert element_order(q8, element(q8, 0, 1)) == 4
    with pytest.raises(NotAUnitError):
        element_order(d8, element(d8, 0b11, 0))


def test_order2_examples():
    d8, q8 = make_group_algebra(D, 2), make_group_algebra(Q, 2)
    assert order2_conditions(d8, element(d8, 0, 1))
    assert not order2_conditions(q8, element(q8, 0, 1))
    for fam, n in CASES:
        mc = make_group_algebra(fam, n)
        assert order2_conditions(mc, element(mc, 1 << mc.cyclic.half, 0))
    with pytest.raises(NotAUnitError):
        order2_conditions(d8, element(d8, 0, 0))


def test_b_orders():
    for fam, n in CASES:
        mc = make_group_algebra(fam, n)
        assert element_order(mc, element(mc, 0, 1)) == (4 if fam is Q else 2)


@pytest.mark.parametrize("fam,n", CASES)
def test_ring_properties_random(fam, n, rng):
    mc = make_group_algebra(fam, n)
    d = mc.cyclic.dim
    one = identity(mc)
    for _ in range(10_000 if n == 2 else 4000):
        u, v, w = (element(mc, rng.getrandbits(d), rng.getrandbits(d)) for _ in range(3))
        assert mc_mul(mc, mc_mul(mc, u, v), w) == mc_mul(mc, u, mc_mul(mc, v, w))
        assert mc_mul(mc, one, u) == u == mc_mul(mc, u, one)
        x, y = rng.getrandbits(d), rng.getrandbits(d)
        assert mc_mul(mc, element(mc, x, 0), element(mc, y, 0)) == element(mc, cyclic.mul_bits(mc.cyclic, x, y), 0)
        twisted = apply(mc.twist, AlgElem(mc.cyclic, y))
        assert mc_mul(mc, element(mc, 0, 1), element(mc, y, 0)) == element(mc, 0, twisted)
        if is_normalized_unit(u) and is_normalized_unit(v):
            uv = mc_mul(mc, u, v)
            assert is_normalized_unit(uv)


@pytest.mark.parametrize("fam,n", CASES)
def test_unit_orders_divide_group_order(fam, n, rng):
    mc = make_group_algebra(fam, n)
    d = mc.cyclic.dim
    for _ in range(300):
        u = element(mc, rng.getrandbits(d), rng.getrandbits(d))
        if not is_normalized_unit(u):
            continue
        k = element_order(mc, u)
        assert k & (k - 1) == 0 and k <= 2 ** (mc.dim - 1)


@pytest.mark.parametrize("fam,n", CASES)
def test_order2_conditions_exhaustive(fam, n):
    mc = make_group_algebra(fam, n)
    d = mc.cyclic.dim
    one = identity(mc)
    for x1 in range(1 << d):
        for x2 in range(1 << d):
            if (x1.bit_count() + x2.bit_count()) & 1 == 0:
                continue
            u = element(mc, x1, x2)
            assert order2_conditions(mc, u) == (mc_square(mc, u) == one)


def test_text_round_trip(rng):
    mc = make_group_algebra(SD, 3)
    for _ in range(200):
        u = element(mc, rng.getrandbits(8), rng.getrandbits(8))
        assert parse_mc(format_mc(u), mc) == u
    assert format_mc(element(mc, 0b11, 1)) == "1+a + (1)b"
