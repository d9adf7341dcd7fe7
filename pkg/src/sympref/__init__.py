"""Exact arithmetic for symplectic reflection groups and their parabolics."""

from .cyclo import Cyclotomic, format_literal, parse_literal
from .linalg import (ExactMatrix, ExactVector, Subspace, SymplecticSpace,
                     fixed_space, kernel)
from .matgroup import (EnumerationCapError, FiniteMatrixGroup, OrbitCapError,
                       OrbitData)
from .catalogue import (GroupSpec, QuaternionicStructure, RootLine, TableRow,
                        build_gmpn, build_imprimitive, build_primitive,
                        build_sl2_subgroup, build_trivial, coxeter_h3,
                        data_checksums, direct_sum, double, group_names,
                        imprimitive_reference, reference_collisions,
                        reference_fingerprints, reference_groups,
                        reflection_from_root, worked_subgroup)
from .reflections import (Fingerprint, ParabolicRecord, classify_parabolics,
                          fingerprint, fixed_space_lattice,
                          is_symplectic_reflection, recognize, reflections_in,
                          steinberg_check, type_matches)

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic", "EnumerationCapError", "ExactMatrix", "ExactVector",
    "Fingerprint", "FiniteMatrixGroup", "GroupSpec", "OrbitCapError",
    "OrbitData", "ParabolicRecord", "QuaternionicStructure", "RootLine",
    "Subspace", "SymplecticSpace", "TableRow", "build_gmpn",
    "build_imprimitive", "build_primitive", "build_sl2_subgroup",
    "build_trivial", "classify_parabolics", "coxeter_h3", "data_checksums",
    "direct_sum", "double", "fingerprint", "fixed_space", "fixed_space_lattice",
    "format_literal", "group_names", "imprimitive_reference",
    "is_symplectic_reflection", "kernel", "parse_literal",
    "recognize", "reference_collisions", "reference_fingerprints",
    "reference_groups", "reflection_from_root", "reflections_in",
    "steinberg_check", "type_matches", "worked_subgroup",
]
