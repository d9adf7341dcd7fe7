"""Chain construction, orbits, streaming, and certified fixed spaces.

Orders coming out of the stabilizer chain are checked against a plain
multiplication-closure oracle that never looks at the chain.
"""

from fractions import Fraction

import pytest

from sympref._engine import (Engine, FixClassifier, OrbitCapError,
                             conjugation_closure, element_order,
                             subspace_orbit, vm_pow)
from sympref._field import ModPContext, field_context
from sympref.cyclo import Cyclotomic, root_of_unity
from sympref.linalg import ExactMatrix, ExactVector, Subspace, kernel

I = root_of_unity(4)
HALF = Fraction(1, 2)


def vm(ctx, rows):
    return ctx.vecmat([[Cyclotomic._coerce(e) for e in row] for row in rows])


def perm_rows(n, images):
    """Permutation matrix sending e_c to e_images[c]."""
    rows = [[0] * n for _ in range(n)]
    for c, r in enumerate(images):
        rows[r][c] = 1
    return rows


def closure(ctx, gens, cap=100000):
    """Oracle: full multiplication closure by BFS, independent of chains."""
    n = gens[0].arr.shape[1]
    ident = ctx.identity(n)
    seen = {ident.key(): ident}
    queue = [ident]
    while queue:
        cur = queue.pop()
        for g in gens:
            nxt = ctx.matmul(cur, g)
            if nxt.key() not in seen:
                assert len(seen) < cap
                seen[nxt.key()] = nxt
                queue.append(nxt)
        cur._lin = None
    return list(seen.values())


def s4_engine():
    ctx = field_context(1)
    gens = [vm(ctx, perm_rows(4, (1, 0, 2, 3))),
            vm(ctx, perm_rows(4, (1, 2, 3, 0)))]
    return ctx, Engine(ctx, 4, gens)


def test_chain_order_s4():
    ctx, eng = s4_engine()
    assert eng.order() == 24
    assert eng.order() == len(closure(ctx, eng.gens))


def test_chain_order_binary_tetrahedral():
    # unit quaternions <i, j, (1+i+j+k)/2> as 2x2 matrices over Q(i)
    ctx = field_context(4)
    a = vm(ctx, [[I, 0], [0, -I]])
    b = vm(ctx, [[0, 1], [-1, 0]])
    c = vm(ctx, [[HALF * (1 + I), HALF * (1 + I)],
                 [HALF * (-1 + I), HALF * (1 - I)]])
    eng = Engine(ctx, 2, [a, b, c])
    assert eng.order() == 24
    assert len(closure(ctx, [a, b, c])) == 24


def test_chain_order_wreath():
    # 3-cycles on entries plus a coordinate 3-cycle: order 3^3 * 3!
    ctx = field_context(3)
    w = root_of_unity(3)
    d = vm(ctx, [[w, 0, 0], [0, 1, 0], [0, 0, 1]])
    s = vm(ctx, perm_rows(3, (1, 0, 2)))
    t = vm(ctx, perm_rows(3, (0, 2, 1)))
    eng = Engine(ctx, 3, [d, s, t])
    assert eng.order() == 162
    assert len(closure(ctx, [d, s, t])) == 162


def test_elements_stream_matches_closure():
    ctx, eng = s4_engine()
    keys = [g.key() for g in eng.elements()]
    assert len(keys) == 24
    assert len(set(keys)) == 24
    assert keys[0] == eng.idkey
    assert set(keys) == {g.key() for g in closure(ctx, eng.gens)}


def test_membership():
    ctx, eng = s4_engine()
    for g in eng.elements():
        assert eng.is_member(g)
    assert not eng.is_member(vm(ctx, [[-1, 0, 0, 0], [0, 1, 0, 0],
                                      [0, 0, 1, 0], [0, 0, 0, 1]]))
    assert not eng.is_member(vm(ctx, [[2, 0, 0, 0], [0, 1, 0, 0],
                                      [0, 0, 1, 0], [0, 0, 0, 1]]))


def test_orbit_and_stabilizer():
    ctx, eng = s4_engine()
    e1 = ctx.vec([1, 0, 0, 0])
    orb = eng.vector_orbit(e1)
    assert len(orb) == 4
    subgens, target, _ = eng.stabilizer_pairs(e1)
    assert target == 6
    sub = Engine(ctx, 4, subgens)
    assert sub.order() == 6
    for g in subgens:
        assert ctx.fixes_vector(g, *e1)


def test_stabilizer_of_invariant_vector():
    ctx, eng = s4_engine()
    ones = ctx.vec([1, 1, 1, 1])
    subgens, target, orb = eng.stabilizer_pairs(ones)
    assert len(orb) == 1
    assert target == 24
    assert Engine(ctx, 4, subgens).order() == 24


def test_orbit_cap():
    ctx, eng = s4_engine()
    with pytest.raises(OrbitCapError):
        eng.vector_orbit(ctx.vec([1, 0, 0, 0]), cap=2)


def test_fix_classifier_signed_group():
    # <diag(-1,1), swap>: eight elements, six distinct fixed spaces
    ctx = field_context(1)
    gens = [vm(ctx, [[-1, 0], [0, 1]]), vm(ctx, [[0, 1], [1, 0]])]
    eng = Engine(ctx, 2, gens)
    assert eng.order() == 8
    fc = FixClassifier(ctx, 2, keep=lambda dim: dim == 0)
    for g in eng.elements():
        fc.add(g)
    assert sum(cl.count for cl in fc.classes) == 8
    spaces = {cl.space for cl in fc.classes}
    lines = [[1, 0], [0, 1], [1, 1], [1, -1]]
    expect = {Subspace(2, [ExactVector(v)]) for v in lines}
    expect.add(Subspace.full(2))
    expect.add(Subspace.zero(2))
    assert spaces == expect
    kept = [g for cl in fc.classes for g in cl.elements]
    assert len(kept) == 3
    dims = sorted(cl.space.dim for cl in fc.classes)
    assert dims == [0, 1, 1, 1, 1, 2]


def test_fix_classifier_certified_against_exact():
    ctx = field_context(3)
    w = root_of_unity(3)
    d = vm(ctx, [[w, 0, 0], [0, 1, 0], [0, 0, 1]])
    s = vm(ctx, perm_rows(3, (1, 0, 2)))
    t = vm(ctx, perm_rows(3, (0, 2, 1)))
    eng = Engine(ctx, 3, [d, s, t])
    fc = FixClassifier(ctx, 3, keep=lambda dim: True)
    for g in eng.elements():
        fc.add(g)
    assert sum(cl.count for cl in fc.classes) == 162
    for cl in fc.classes:
        assert cl.count == len(cl.elements)
        for g in cl.elements:
            mat = ExactMatrix(ctx.unvecmat(g)) - ExactMatrix.identity(3)
            assert kernel(mat) == cl.space


def test_element_order_histogram():
    ctx, eng = s4_engine()
    shadow = ModPContext(ctx)
    hist = {}
    for g in eng.elements():
        k = element_order(ctx, shadow, g)
        hist[k] = hist.get(k, 0) + 1
    assert hist == {1: 1, 2: 9, 3: 8, 4: 6}


def test_vm_pow():
    ctx, eng = s4_engine()
    g = eng.gens[1]
    step = ctx.identity(4)
    for e in range(5):
        assert vm_pow(ctx, g, e).key() == step.key()
        step = ctx.matmul(g, step)


def test_conjugation_closure_transpositions():
    ctx, eng = s4_engine()
    out = conjugation_closure(eng, [eng.gens[0]])
    assert len(out) == 6


def test_subspace_orbit():
    ctx, eng = s4_engine()
    line = Subspace(4, [ExactVector([1, 0, 0, 0])])
    orb = subspace_orbit(eng.exact_gens(), line)
    assert len(orb) == 4


def test_determinism():
    _, eng1 = s4_engine()
    _, eng2 = s4_engine()
    assert eng1.order() == eng2.order()
    assert [lev.base[0].tobytes() for lev in eng1.chain()] == \
        [lev.base[0].tobytes() for lev in eng2.chain()]
    assert [g.key() for g in eng1.elements()] == \
        [g.key() for g in eng2.elements()]
