"""Catalogue constructions: roots, reflections, builders, reference data."""

import random

import pytest

from sympref.catalogue import (QuaternionicStructure, build_gmpn,
                               build_imprimitive, build_primitive,
                               build_sl2_subgroup, build_trivial,
                               coxeter_h3, data_checksums, direct_sum,
                               double, gmpn_order, group_names,
                               imprimitive_order, imprimitive_reference,
                               reference_collisions, reflection_from_root,
                               worked_subgroup)
from sympref.cyclo import Cyclotomic, root_of_unity
from sympref.linalg import ExactMatrix, ExactVector, SymplecticSpace

EXPECTED_ORDERS = {
    "Q": 12096, "R": 1209600, "S1": 6912, "S2": 82944,
    "S3": 3317760, "T": 2592000, "U": 27371520,
}
TABLE_SIZES = {"Q": 2, "R": 3, "S1": 6, "S2": 5, "S3": 4, "T": 7, "U": 5}


@pytest.fixture(scope="module")
def s1():
    return build_primitive("S1")


def test_group_names_complete():
    assert group_names() == ["Q", "R", "S1", "S2", "S3", "T", "U"]


def test_expected_orders_and_tables():
    for name, spec in ((n, build_primitive(n)) for n in group_names()):
        assert spec.expected_order == EXPECTED_ORDERS[name]
        assert len(spec.table) == TABLE_SIZES[name]
        assert len(set(row.label for row in spec.table)) == len(spec.table)
        for row in spec.table:
            assert not row.vector.is_zero()
            assert len(row.vector) == spec.space.dim
            assert spec.expected_order % row.order == 0


def test_root_reflections_are_symplectic_involutions():
    for name in group_names():
        spec = build_primitive(name)
        ident = ExactMatrix.identity(spec.space.dim)
        for g in spec.group.gens:
            assert g @ g == ident
            assert spec.space.is_symplectic_matrix(g)


def test_s1_root_reflections_equal_worked_matrices(s1):
    refl = [reflection_from_root(r, sp=s1.space, j=s1.quaternionic)
            for r in s1.roots]
    assert refl == s1.crosscheck_generators


def test_q_first_root_moves_paired_plane():
    spec = build_primitive("Q")
    g = reflection_from_root(spec.roots[0], sp=spec.space,
                             j=spec.quaternionic)
    want = ExactMatrix([[(-1 if r == c and r in (0, 3) else
                          1 if r == c else 0) for c in range(6)]
                        for r in range(6)])
    assert g == want


def test_quaternionic_structure_squares_to_minus_one():
    rng = random.Random(7)
    j = QuaternionicStructure(8)
    v = ExactVector([Cyclotomic.from_rational(rng.randint(-5, 5))
                     for _ in range(8)])
    assert j.apply(j.apply(v)) == -1 * v
    jm = j.matrix()
    conj = ExactVector(c.conjugate() for c in v)
    assert j.apply(v) == jm @ conj


def test_s1_generators_are_quaternion_linear(s1):
    for g in s1.group.gens:
        assert s1.quaternionic.commutes_with(g)


def test_small_primitive_orders():
    for name in ("Q", "S1", "S2"):
        spec = build_primitive(name)
        assert spec.group.order() == spec.expected_order


def test_s1_enumeration_and_membership(s1):
    elems = s1.group.enumerate()
    assert len(elems) == 6912
    m1, m2, m3, _ = s1.crosscheck_generators
    assert s1.group.is_member(m1 @ m2 @ m3)
    z3 = root_of_unity(3)
    scalar = ExactMatrix([[z3 if r == c else 0 for c in range(8)]
                          for r in range(8)])
    assert not s1.space.is_symplectic_matrix(scalar)
    assert not s1.group.is_member(scalar)


def test_q_enumeration_count():
    spec = build_primitive("Q")
    assert len(spec.group.enumerate()) == 12096


def test_worked_example_stabilizer(s1):
    v = s1.worked_example["vector"]
    stab = s1.group.stabilizer(v)
    assert stab.order() == s1.worked_example["expected_order"] == 54
    sub = worked_subgroup(s1)
    assert sub.order() == 54
    assert all(stab.is_member(g) for g in sub.gens)
    assert all(sub.is_member(g) for g in stab.gens)
    hist = stab.element_order_histogram()
    assert sum(hist.values()) == 54
    orb = s1.group.orbit(v)
    assert len(orb) == 6912 // 54 == 128
    fv = s1.worked_example["fixed_vector"]
    assert all(g @ fv == fv for g in stab.gens)


def test_worked_example_parabolic_closure(s1):
    from sympref.linalg import fixed_space
    v = s1.worked_example["vector"]
    stab = s1.group.stabilizer(v)
    space = fixed_space(stab.gens, 8)
    assert space.dim == s1.worked_example["expected_fixed_dim"] == 2
    again = s1.group.pointwise_stabilizer(space)
    assert again.order() == 54


def test_s1_projective_root_orbit(s1):
    orb = s1.group.orbit(s1.roots[0].vector, normalize="projective")
    assert len(orb) == 36


def test_gmpn_order_formula():
    cases = {(3, 3, 2): 6, (4, 2, 2): 16, (5, 5, 2): 10, (2, 2, 3): 24,
             (2, 1, 3): 48, (4, 4, 3): 96, (5, 5, 3): 150, (3, 3, 4): 648}
    for (m, p, n), want in cases.items():
        assert gmpn_order(m, p, n) == want
        if want <= 100:
            assert build_gmpn(m, p, n).order() == want
    assert build_gmpn(3, 3, 3).order() == 54


def test_gmpn_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_gmpn(4, 3, 2)


def test_double_preserves_order_and_form():
    s5 = double(build_gmpn(1, 1, 5), name="S5")
    assert s5.order() == 120
    sp = SymplecticSpace(10)
    assert all(sp.is_symplectic_matrix(g) for g in s5.gens)


def test_direct_sum_order():
    c2 = build_sl2_subgroup("cyclic", 2)
    g = direct_sum(c2, double(build_gmpn(3, 3, 2)))
    assert g.order() == 12
    assert all(SymplecticSpace(6).is_symplectic_matrix(h) for h in g.gens)


def test_sl2_subgroup_orders():
    assert build_sl2_subgroup("cyclic", 4).order() == 4
    assert build_sl2_subgroup("binary_dihedral", 2).order() == 8
    assert build_sl2_subgroup("binary_tetrahedral").order() == 24
    assert build_sl2_subgroup("binary_octahedral").order() == 48
    assert build_sl2_subgroup("binary_icosahedral").order() == 120


def test_coxeter_h3_order():
    assert coxeter_h3().order() == 120


def test_imprimitive_wreath_and_restricted():
    k = build_sl2_subgroup("binary_dihedral", 2)
    wreath = build_imprimitive(k, list(k.gens), 2)
    assert wreath.order() == imprimitive_order(8, 8, 2) == 128
    c2 = build_sl2_subgroup("cyclic", 2)
    tiny = build_imprimitive(c2, [], 2)
    assert tiny.order() == imprimitive_order(2, 1, 2) == 4
    ref = imprimitive_reference("G3(D2,C2)")
    assert ref.order() == imprimitive_order(8, 2, 3) == 768


def test_imprimitive_rejects_missing_commutators():
    k = build_sl2_subgroup("binary_tetrahedral")
    with pytest.raises(ValueError):
        build_imprimitive(k, [ExactMatrix.identity(2)], 2)


def test_imprimitive_preserves_form():
    ref = imprimitive_reference("G(D2,C2,1)")
    sp = SymplecticSpace(2)
    assert all(sp.is_symplectic_matrix(g) for g in ref.gens)


def test_reference_collisions_pinned():
    assert reference_collisions() == [["C2", "G(D2,C2,1)"]]


def test_trivial_group():
    g = build_trivial(4)
    assert g.order() == 1
    assert g.dim == 4


def test_data_checksums_deterministic():
    sums = data_checksums()
    assert sorted(sums) == ["groups.json", "tables.json"]
    assert all(len(v) == 64 for v in sums.values())
    assert data_checksums() == sums


def test_table_types_are_known_references():
    known = {"C2xC2xC2", "G(2,2,3)", "G(3,3,2)", "G(3,3,3)", "G(4,2,2)",
             "G(5,5,2)", "C2xG(3,3,2)", "G(2,1,3)", "G(4,4,3)",
             "C2xG(5,5,2)", "G23", "G(5,5,3)", "C2xG(2,2,3)",
             "C2xG(3,3,3)", "S5", "G(3,3,4)", "W(S1)", "G(D2,C2,1)",
             "G3(D2,C2)"}
    for name in group_names():
        for row in build_primitive(name).table:
            assert row.type_name in known
