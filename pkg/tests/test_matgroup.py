"""Public group API: orders, enumeration, orbits, stabilizers, membership."""

import random
from fractions import Fraction

import pytest

from sympref.cyclo import Cyclotomic, root_of_unity
from sympref.linalg import ExactMatrix, ExactVector, Subspace, SymplecticSpace
from sympref.matgroup import (EnumerationCapError, FiniteMatrixGroup,
                              OrbitCapError)

I = root_of_unity(4)
W3 = root_of_unity(3)
HALF = Fraction(1, 2)


def perm(n, images):
    rows = [[0] * n for _ in range(n)]
    for c, r in enumerate(images):
        rows[r][c] = 1
    return ExactMatrix(rows)


def diag(*entries):
    n = len(entries)
    return ExactMatrix([[entries[r] if r == c else 0 for c in range(n)]
                        for r in range(n)])


def s4():
    return FiniteMatrixGroup([perm(4, (1, 0, 2, 3)), perm(4, (1, 2, 3, 0))])


def signed_perms(n):
    gens = [diag(*([-1] + [1] * (n - 1))),
            perm(n, (1, 0) + tuple(range(2, n))),
            perm(n, tuple(range(1, n)) + (0,))]
    return FiniteMatrixGroup(gens)


def quaternion(x, y, z, w):
    return ExactMatrix([[x + y * I, z + w * I], [-z + w * I, x - y * I]])


def test_binary_polyhedral_orders():
    i = quaternion(0, 1, 0, 0)
    j = quaternion(0, 0, 1, 0)
    h = quaternion(HALF, HALF, HALF, HALF)
    two_t = FiniteMatrixGroup([i, j, h])
    assert two_t.order() == 24
    e8 = root_of_unity(8)
    two_o = FiniteMatrixGroup([i, j, h, diag(e8, e8**-1)])
    assert two_o.order() == 48
    assert len(two_t.enumerate()) == 24


def test_order_matches_enumeration():
    g = signed_perms(3)
    assert g.order() == 48
    assert len(g.enumerate()) == 48
    assert len(g.elements()) == 48


def test_trivial_group():
    g = FiniteMatrixGroup([], dim=3)
    assert g.order() == 1
    assert g.elements() == [ExactMatrix.identity(3)]
    assert g.is_member(ExactMatrix.identity(3))


def test_orbit_of_zero():
    g = s4()
    orb = g.orbit(ExactVector([0, 0, 0, 0]))
    assert len(orb) == 1
    assert orb.transversal[orb.points[0]] == ExactMatrix.identity(4)


def test_orbit_and_schreier_edges():
    g = s4()
    orb = g.orbit(ExactVector([1, 0, 0, 0]))
    assert len(orb) == 4
    assert len(orb.schreier_edges) == 4 * len(g.gens)
    for (p, gen), q in orb.schreier_edges.items():
        assert gen @ p == q
    for p, t in orb.transversal.items():
        assert t @ orb.seed == p


def test_projective_orbit():
    g = signed_perms(3)
    lines = g.orbit(ExactVector([2, 0, 0]), normalize="projective")
    assert len(lines) == 3
    for p in lines.points:
        lead = next(e for e in p if not e.is_zero())
        assert lead == Cyclotomic.from_rational(1)
    vectors = g.orbit(ExactVector([2, 0, 0]))
    assert len(vectors) == 6


def test_orbit_stabilizer_identity_random():
    g = FiniteMatrixGroup([diag(W3, 1, 1), perm(3, (1, 0, 2)),
                           perm(3, (0, 2, 1))])
    assert g.order() == 162
    rng = random.Random(7)
    pool = [0, 1, -1, 2, W3, W3**2, 1 + W3]
    for _ in range(6):
        v = ExactVector([rng.choice(pool) for _ in range(3)])
        orb = g.orbit(v)
        stab = g.stabilizer(v)
        assert len(orb) * stab.order() == g.order()
        for gen in stab.gens:
            assert gen @ v == v


def test_stabilizer_in_s4():
    g = s4()
    v = ExactVector([1, 1, 0, 0])
    stab = g.stabilizer(v)
    assert stab.order() == 4
    assert len(g.orbit(v)) == 6
    full = g.stabilizer(ExactVector([1, 1, 1, 1]))
    assert full.order() == 24


def test_stabilizer_elements_all_fix():
    g = signed_perms(3)
    v = ExactVector([1, 1, 0])
    stab = g.stabilizer(v)
    for m in stab.elements():
        assert m @ v == v
        assert g.is_member(m)


def test_pointwise_stabilizer():
    g = s4()
    assert g.pointwise_stabilizer(Subspace.zero(4)).order() == g.order()
    v = ExactVector([1, 1, 0, 0])
    span = Subspace(4, [v])
    assert g.pointwise_stabilizer(span).order() == g.stabilizer(v).order()
    w = ExactVector([0, 0, 1, 0])
    s1 = g.pointwise_stabilizer(Subspace(4, [v, w]))
    s2 = g.pointwise_stabilizer(Subspace(4, [w, v]))
    assert s1.order() == s2.order() == 2
    assert all(s2.is_member(m) for m in s1.elements())


def test_is_member():
    g = s4()
    assert g.is_member(ExactMatrix.identity(4))
    assert g.is_member(g.gens[0] @ g.gens[1] @ g.gens[0])
    assert not g.is_member(diag(W3, W3, W3, W3))
    assert not g.is_member(diag(-1, 1, 1, 1))
    with pytest.raises(ValueError):
        g.is_member(ExactMatrix.identity(3))


def test_element_order_histogram():
    cyc = FiniteMatrixGroup([diag(I, -I)])
    assert cyc.element_order_histogram() == {1: 1, 2: 1, 4: 2}
    g = s4()
    hist = g.element_order_histogram()
    assert sum(hist.values()) == 24
    assert hist == {1: 1, 2: 9, 3: 8, 4: 6}


def test_caps():
    g = s4()
    with pytest.raises(EnumerationCapError):
        g.enumerate(cap=3)
    with pytest.raises(OrbitCapError):
        g.orbit(ExactVector([1, 0, 0, 0]), cap=2)


def test_form_validation():
    sp = SymplecticSpace(2)
    FiniteMatrixGroup([diag(I, -I)], form=sp)
    with pytest.raises(ValueError):
        FiniteMatrixGroup([diag(2, 1)], form=sp)


def test_base_hints_do_not_change_results():
    plain = s4()
    hinted = FiniteMatrixGroup(plain.gens,
                               base_hints=[ExactVector([1, 2, 3, 4])])
    assert plain.order() == hinted.order() == 24
    assert {m for m in plain.elements()} == {m for m in hinted.elements()}


def test_determinism():
    a = signed_perms(3).elements()
    b = signed_perms(3).elements()
    assert a == b
