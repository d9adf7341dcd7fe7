"""Exact linear algebra tests.

Random inputs are small matrices over Q(i) and Q(zeta_12); structural
identities (rank-nullity, double complement, projector idempotence) serve as
oracles alongside hand-computed fixtures.
"""

import random
from fractions import Fraction

import pytest

from sympref.cyclo import Cyclotomic, root_of_unity
from sympref.linalg import (
    ExactMatrix,
    ExactVector,
    Subspace,
    SymplecticSpace,
    averaging_projector,
    find_invariant_lagrangian,
    fixed_space,
    image,
    is_isotropic,
    is_lagrangian,
    kernel,
    matrix_from_json,
    matrix_to_json,
    restrict,
    rref,
    solve,
    spin,
    standard_form,
    subspace_from_json,
    subspace_to_json,
    symplectic_basis,
    symplectic_complement,
    vector_from_json,
    vector_to_json,
)

I = root_of_unity(4)


def random_matrix(rng, n, m=4):
    def scalar():
        return Cyclotomic(m, {rng.randrange(m): Fraction(rng.randint(-3, 3))})
    return ExactMatrix([[scalar() for _ in range(n)] for _ in range(n)])


def test_rref_and_rank_nullity():
    rng = random.Random(20)
    for _ in range(40):
        m = random_matrix(rng, rng.randint(1, 5))
        red, rank, pivots = rref(m)
        assert rank == len(pivots)
        assert kernel(m).dim == m.ncols - rank
        for r, c in enumerate(pivots):
            assert red[r, c] == 1
            for rr in range(red.nrows):
                if rr != r:
                    assert red[rr, c] == 0


def test_rref_idempotent_and_zero():
    z = ExactMatrix.zeros(4, 4)
    red, rank, _ = rref(z)
    assert rank == 0
    m = ExactMatrix([[1, I], [I, -1]])
    red, rank, _ = rref(m)
    assert rank == 1
    again, rank2, _ = rref(red)
    assert again == red and rank2 == 1


def test_kernel_vectors_satisfy_system():
    rng = random.Random(21)
    for _ in range(30):
        m = random_matrix(rng, 4)
        for v in kernel(m).basis:
            assert (m @ v).is_zero()


def test_kernel_of_stack_is_intersection():
    a = ExactMatrix([[1, 0, 0, -1]])
    b = ExactMatrix([[0, 1, -1, 0]])
    stacked = ExactMatrix(list(a.rows) + list(b.rows))
    assert kernel(stacked) == kernel(a).intersect(kernel(b))


def test_solve_and_inverse():
    rng = random.Random(22)
    for _ in range(25):
        m = random_matrix(rng, 3)
        _, rank, _ = rref(m)
        if rank < 3:
            continue
        inv = m.inverse()
        assert (m @ inv).is_identity()
        rhs = ExactVector([1, I, 1 - I])
        x = solve(m, rhs)
        assert m @ x == rhs


def test_subspace_canonical_equality():
    v1 = ExactVector([1, I, 0])
    v2 = ExactVector([2, 2 * I, 0])
    v3 = ExactVector([1 + I, I - 1, 0])
    s1 = Subspace(3, [v1, v3])
    s2 = Subspace(3, [v3, v2])
    assert s1 == s2 and hash(s1) == hash(s2)
    assert s1.contains(v1 + v3) and not s1.contains(ExactVector([0, 0, 1]))
    assert s1.contains_subspace(Subspace(3, [v1]))


def test_subspace_equations_and_intersection():
    s = Subspace(4, [ExactVector([1, 0, I, 0]), ExactVector([0, 1, 0, -1])])
    eq = s.equations()
    for v in s.basis:
        assert (eq @ v).is_zero()
    t = Subspace(4, [ExactVector([1, 0, I, 0]), ExactVector([0, 0, 0, 1])])
    meet = s.intersect(t)
    assert meet.dim == 1
    assert meet.contains(ExactVector([1, 0, I, 0]))
    join = s.add(t)
    assert join.dim == s.dim + t.dim - meet.dim


def test_fixed_space_basics():
    ident = ExactMatrix.identity(4)
    assert fixed_space([ident]).dim == 4
    assert fixed_space([], ambient_dim=3) == Subspace.full(3)
    swap = ExactMatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    fs = fixed_space([swap])
    assert fs.dim == 2
    assert fs.contains(ExactVector([1, 1, 0, 0]))


def test_averaging_projector_idempotent_image_kernel():
    swap = ExactMatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    ident = ExactMatrix.identity(4)
    e = averaging_projector([ident, swap])
    assert e @ e == e
    assert image(e) == fixed_space([swap])
    assert kernel(e).dim == 2
    sp = SymplecticSpace(4)
    assert kernel(e) == symplectic_complement(fixed_space([swap]), sp)
    with pytest.raises(ValueError):
        averaging_projector([])


def test_symplectic_space_and_complement():
    sp = SymplecticSpace(4)
    e1 = ExactVector([1, 0, 0, 0])
    e3 = ExactVector([0, 0, 1, 0])
    assert sp.omega(e1, e3) == 1
    assert sp.omega(e3, e1) == -1
    comp = symplectic_complement(Subspace(4, [e1]), sp)
    assert comp.dim == 3
    assert comp.contains(e1)
    full = symplectic_complement(Subspace.zero(4), sp)
    assert full.dim == 4
    with pytest.raises(ValueError):
        SymplecticSpace(4, ExactMatrix.identity(4))
    with pytest.raises(ValueError):
        SymplecticSpace(3)


def test_complement_of_lagrangian_is_itself():
    sp = SymplecticSpace(4)
    lag = Subspace(4, [ExactVector([1, 0, 0, 0]), ExactVector([0, 1, 0, 0])])
    assert is_lagrangian(lag, sp)
    assert symplectic_complement(lag, sp) == lag


def test_restrict_is_homomorphism():
    # block diagonal action keeping span(e1, e2) invariant
    a = ExactMatrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    b = ExactMatrix([[I, 0, 0, 0], [0, -I, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    sp = SymplecticSpace(4, ExactMatrix([[0, 1, 0, 0], [-1, 0, 0, 0],
                                         [0, 0, 0, 1], [0, 0, -1, 0]]))
    w = Subspace(4, [ExactVector([1, 0, 0, 0]), ExactVector([0, 1, 0, 0])])
    (ra, rb), gram = restrict([a, b], w, sp)
    (rab,), _ = restrict([a @ b], w, sp)
    assert rab == ra @ rb
    assert gram == ExactMatrix([[0, 1], [-1, 0]])
    with pytest.raises(ValueError):
        restrict([ExactMatrix([[0, 0, 0, 1], [0, 1, 0, 0],
                               [0, 0, 1, 0], [1, 0, 0, 0]])], w, sp)


def test_symplectic_basis_standardizes():
    std = standard_form(4)
    b, c = symplectic_basis(std)
    assert b.is_identity() and c == 1
    twice = 2 * std
    b, c = symplectic_basis(twice)
    assert b.is_identity() and c == 2
    rng = random.Random(23)
    for _ in range(10):
        while True:
            m = random_matrix(rng, 6)
            cand = m - m.transpose()
            _, rank, _ = rref(cand)
            if rank == 6:
                break
        b, c = symplectic_basis(cand)
        assert b.transpose() @ cand @ b == c * standard_form(6)
        assert not c.is_zero()


def test_spin_properties():
    swap = ExactMatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    zero = spin(ExactVector([0, 0, 0, 0]), [swap])
    assert zero.dim == 0
    s = spin(ExactVector([1, 0, 0, 0]), [swap])
    assert s.dim == 2
    for v in s.basis:
        assert s.contains(swap @ v)


def test_isotropy():
    sp = SymplecticSpace(4)
    assert is_isotropic(Subspace(4, [ExactVector([1, 0, 0, 0])]), sp)
    assert not is_isotropic(
        Subspace(4, [ExactVector([1, 0, 0, 0]), ExactVector([0, 0, 1, 0])]), sp)


def test_find_invariant_lagrangian_block_case():
    # doubled rotation: preserves span(e1, e2), a Lagrangian for this form
    g = ExactMatrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    sp = SymplecticSpace(4)
    lag = find_invariant_lagrangian([g], sp, elements=[g])
    assert lag is not None
    assert is_lagrangian(lag, sp)
    for v in lag.basis:
        assert lag.contains(g @ v)


def test_serialization_round_trips():
    m = ExactMatrix([[1, I], [Fraction(1, 2) * (I - 1), 0]])
    assert matrix_from_json(matrix_to_json(m)) == m
    v = ExactVector([1, I, Fraction(2, 3)])
    assert vector_from_json(vector_to_json(v)) == v
    s = Subspace(3, [v])
    assert subspace_from_json(subspace_to_json(s)) == s
