"""Scratch validation of _lattice.py against the exact linalg layer."""
import random
import time

import numpy as np

from sympref.cyclo import Cyclotomic, root_of_unity
from sympref.linalg import Subspace, ExactVector as Vector, ExactMatrix
from sympref._field import FieldContext
from sympref._lattice import (IntSpace, kernel_int, rref_int,
                              intspace_from_subspace, subspace_from_intspace)

rng = random.Random(7)

# -- 1. rref_int canonicality -------------------------------------------------
for trial in range(200):
    r = rng.randrange(1, 5)
    c = rng.randrange(1, 7)
    m = np.array([[rng.randrange(-9, 10) for _ in range(c)] for _ in range(r)],
                 dtype=np.int64)
    red = rref_int(m)
    assert np.array_equal(rref_int(red), red), "rref not idempotent"
    # row ops preserve the canonical form
    m2 = m.copy()
    if r >= 2:
        i, j = rng.sample(range(r), 2)
        m2[i] += rng.randrange(-3, 4) * m2[j]
    m2[rng.randrange(r)] *= rng.choice([2, 3, -1, -5])
    perm = list(range(r))
    rng.shuffle(perm)
    m2 = m2[perm]
    assert np.array_equal(rref_int(m2), red), f"canonical mismatch\n{m}\n{m2}"
print("rref_int canonical: ok")

# -- 2. kernel_int: orthogonality, rank-nullity, double kernel ------------------
for trial in range(200):
    r = rng.randrange(1, 5)
    c = rng.randrange(1, 8)
    m = np.array([[rng.randrange(-9, 10) for _ in range(c)] for _ in range(r)],
                 dtype=np.int64)
    red = rref_int(m)
    ker = kernel_int(m)
    assert red.shape[0] + ker.shape[0] == c, "rank-nullity"
    if red.shape[0] and ker.shape[0]:
        prod = red.astype(object) @ ker.T.astype(object)
        assert not np.any(prod), "kernel not annihilated"
    if red.shape[0]:
        assert np.array_equal(kernel_int(ker) if ker.shape[0] else red, red) or \
            np.array_equal(kernel_int(ker), red), "double kernel"
print("kernel_int: ok")

# overflow path: big entries force the object fallback
big = np.array([[2**40, 3**25, 1], [5**20, -2**41, 7]], dtype=np.int64)
redb = rref_int(big)
kerb = kernel_int(big)
assert redb.shape[0] + kerb.shape[0] == 3
prod = redb.astype(object) @ kerb.T.astype(object)
assert not np.any(prod)
print("overflow path: ok")

# -- 3. IntSpace vs exact Subspace over Q(zeta_20) ------------------------------
ctx = FieldContext(20)
d = ctx.degree
n = 4
z = root_of_unity(20)
half = Cyclotomic.from_rational(1) / Cyclotomic.from_rational(2)


def rand_scalar():
    k = rng.randrange(0, 20)
    num = rng.randrange(-2, 3)
    s = Cyclotomic.from_rational(num) * (z ** k)
    if rng.random() < 0.3:
        s = s * half
    return s


def rand_vector():
    return Vector([rand_scalar() for _ in range(n)])


def rand_subspace():
    k = rng.randrange(0, n + 1)
    return Subspace(n, [rand_vector() for _ in range(k)])


t0 = time.time()
for trial in range(60):
    s1 = rand_subspace()
    s2 = rand_subspace()
    i1 = intspace_from_subspace(ctx, s1)
    i2 = intspace_from_subspace(ctx, s2)
    assert i1.qdim == d * s1.dim, (i1.qdim, s1.dim)
    # round trip
    back = subspace_from_intspace(ctx, n, i1)
    assert back == s1, f"round trip failed dim {s1.dim}"
    # contains
    assert i1.contains(i2) == s1.contains_subspace(s2)
    assert i2.contains(i1) == s2.contains_subspace(s1)
    # intersect
    cap = s1.intersect(s2)
    icap = i1.intersect(i2)
    assert icap.key == intspace_from_subspace(ctx, cap).key, "intersect mismatch"
    assert subspace_from_intspace(ctx, n, icap) == cap
print(f"IntSpace vs Subspace ({time.time()-t0:.1f}s): ok")

# -- 4. apply vs exact Subspace.apply -------------------------------------------
# random monomial-ish exact matrices over the field
for trial in range(30):
    rows = [[Cyclotomic.from_rational(0)] * n for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    for r in range(n):
        rows[r][perm[r]] = rand_scalar() + Cyclotomic.from_rational(1)
    g = ExactMatrix([Vector(r) for r in rows])
    vm = ctx.vecmat([list(g.row(r)) for r in range(n)])
    lin_t = np.ascontiguousarray(ctx.linearize(vm).T)
    s = rand_subspace()
    ispace = intspace_from_subspace(ctx, s)
    moved = ispace.apply(lin_t)
    expect = intspace_from_subspace(ctx, s.apply(g))
    assert moved.key == expect.key, "apply mismatch"
print("apply: ok")
print("ALL LATTICE CHECKS PASS")
