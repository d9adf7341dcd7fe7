"""Integer-coordinate layer tests, checked against direct Cyclotomic math."""

import random
from fractions import Fraction

import numpy as np
import pytest

from sympref._field import FieldContext, ModPContext, field_context, igcd_reduce, imatmul
from sympref.cyclo import Cyclotomic, root_of_unity


def random_scalar(rng, m):
    coeffs = {rng.randrange(m): Fraction(rng.randint(-5, 5), rng.randint(1, 3))
              for _ in range(rng.randint(0, 3))}
    return Cyclotomic(m, coeffs)


def random_matrix(rng, m, n):
    return [[random_scalar(rng, m) for _ in range(n)] for _ in range(n)]


def mat_mul_exact(a, b):
    n = len(a)
    return [[sum((a[r][k] * b[k][c] for k in range(n)), Cyclotomic())
             for c in range(n)] for r in range(n)]


def mat_vec_exact(a, v):
    n = len(a)
    return [sum((a[r][k] * v[k] for k in range(n)), Cyclotomic()) for r in range(n)]


def test_scalar_round_trip():
    rng = random.Random(10)
    for m in (1, 4, 12, 20):
        ctx = field_context(m)
        for _ in range(40):
            s = random_scalar(rng, m)
            vec, den = ctx.scalar_coords(s)
            assert ctx.coords_scalar(vec, den) == s


def test_vec_round_trip_and_matvec():
    rng = random.Random(11)
    ctx = field_context(12)
    for _ in range(30):
        mat = random_matrix(rng, 12, 3)
        v = [random_scalar(rng, 12) for _ in range(3)]
        vm = ctx.vecmat(mat)
        vec, den = ctx.vec(v)
        assert ctx.unvec(vec, den) == v
        out, oden = ctx.matvec(vm, vec, den)
        assert ctx.unvec(out, oden) == mat_vec_exact(mat, v)


def test_matmul_matches_exact_product():
    rng = random.Random(12)
    for m in (4, 20):
        ctx = field_context(m)
        for _ in range(20):
            a = random_matrix(rng, m, 3)
            b = random_matrix(rng, m, 3)
            prod = ctx.matmul(ctx.vecmat(a), ctx.vecmat(b))
            assert ctx.unvecmat(prod) == mat_mul_exact(a, b)


def test_vecmat_round_trip_and_keys():
    rng = random.Random(13)
    ctx = field_context(20)
    a = random_matrix(rng, 20, 2)
    vm1 = ctx.vecmat(a)
    vm2 = ctx.vecmat([[x * 1 for x in row] for row in a])
    assert ctx.unvecmat(vm1) == a
    assert vm1.key() == vm2.key()
    assert vm1 == vm2 and hash(vm1) == hash(vm2)


def test_identity_and_fixes_vector():
    ctx = field_context(4)
    ident = ctx.identity(3)
    i = root_of_unity(4)
    vec, den = ctx.vec([i, 1 - i, Cyclotomic()])
    assert ctx.fixes_vector(ident, vec, den)
    swap = ctx.vecmat([[Cyclotomic(), Cyclotomic.from_rational(1), Cyclotomic()],
                       [Cyclotomic.from_rational(1), Cyclotomic(), Cyclotomic()],
                       [Cyclotomic(), Cyclotomic(), Cyclotomic.from_rational(1)]])
    assert not ctx.fixes_vector(swap, vec, den)
    fixed, fden = ctx.vec([1 + i, 1 + i, i])
    assert ctx.fixes_vector(swap, fixed, fden)


def test_overflow_fallback_is_exact():
    big = 2**40
    a = np.array([[big, 1], [0, big]], dtype=np.int64)
    prod = imatmul(a, a)
    assert prod.dtype == object
    assert int(prod[0, 0]) == big * big
    assert int(prod[0, 1]) == 2 * big
    arr, den = igcd_reduce(np.array([6, -4], dtype=np.int64), 10)
    assert list(arr) == [3, -2] and den == 5
    arr, den = igcd_reduce(np.array([-6, -4], dtype=np.int64), -10)
    assert list(arr) == [3, 2] and den == 5


def test_modp_is_multiplicative():
    rng = random.Random(14)
    ctx = field_context(12)
    shadow = ModPContext(ctx)
    p = shadow.p
    assert p % 12 == 1
    assert pow(shadow.z, 12, p) == 1 and pow(shadow.z, 6, p) != 1
    for _ in range(15):
        a = random_matrix(rng, 12, 3)
        b = random_matrix(rng, 12, 3)
        va, vb = ctx.vecmat(a), ctx.vecmat(b)
        left = shadow.vm_matrix(ctx.matmul(va, vb))
        right = (shadow.vm_matrix(va) @ shadow.vm_matrix(vb)) % p
        assert np.array_equal(left, right)


def test_modp_kernel_dimension_bounds_exact_kernel():
    # the mod-p nullity can only overshoot the exact nullity
    ctx = field_context(4)
    shadow = ModPContext(ctx)
    i = root_of_unity(4)
    rows = [[1 - i, 1 - i, Cyclotomic()],
            [2 + 0 * i, 2 + 0 * i, Cyclotomic()],
            [Cyclotomic(), Cyclotomic(), i]]
    vm = ctx.vecmat(rows)
    ker = shadow.kernel(shadow.vm_matrix(vm))
    assert ker.shape[0] == 1
    red, pivots = shadow.rref(shadow.vm_matrix(vm))
    assert len(pivots) == 2


def test_modp_kernel_canonical_and_correct():
    ctx = field_context(1)
    shadow = ModPContext(ctx)
    p = shadow.p
    mat = np.array([[1, 2, 3], [2, 4, 6], [0, 0, 1]], dtype=np.int64)
    ker = shadow.kernel(mat)
    assert ker.shape == (1, 3)
    assert np.array_equal((mat @ ker.T) % p, np.zeros((3, 1), dtype=np.int64))
    assert ker[0, 0] == 1
