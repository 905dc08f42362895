import random

import pytest

from maxclass.cyclic import AlgElem, make_context


def naive_mul(ctx, x: int, y: int) -> int:
    """Coefficient-list convolution, written independently of the package."""
    d = ctx.dim
    a = [(x >> i) & 1 for i in range(d)]
    b = [(y >> i) & 1 for i in range(d)]
    c = [0] * d
    for i in range(d):
        for j in range(d):
            c[(i + j) % d] ^= a[i] & b[j]
    return sum(v << k for k, v in enumerate(c))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(params=[2, 3, 4])
def ctx(request):
    return make_context(request.param)


def elem(ctx, *exps):
    v = 0
    for e in exps:
        v ^= 1 << (e % ctx.dim)
    return AlgElem(ctx, v)
