"""Smoke + timing for the integer-domain full-lattice classification."""
import time

from sympref.cyclo import parse_literal
from sympref.linalg import ExactMatrix, standard_form, SymplecticSpace
from sympref.matgroup import FiniteMatrixGroup
from sympref.reflections import (classify_parabolics, fixed_space_lattice,
                                 steinberg_check)

zero = parse_literal("0")
one = parse_literal("1")

# trivial group in Sp2
sp2 = SymplecticSpace(2)
triv = FiniteMatrixGroup([], dim=2, form=sp2, name="trivial-2")
lat = fixed_space_lattice(triv)
assert len(lat) == 1 and lat[0].dim == 2, lat
recs = classify_parabolics(triv)
assert len(recs) == 1
assert recs[0].steinberg_ok and recs[0].is_maximal is False
assert recs[0].group is triv
print("trivial: ok")

# C5 = <diag(z5, z5^-1)> in Sp2
z5 = parse_literal("E(5)")
c5 = FiniteMatrixGroup([ExactMatrix([[z5, zero], [zero, z5 ** 4]])],
                       form=sp2, name="C5")
recs = classify_parabolics(c5)
assert len(recs) == 2, recs
by_dim = {r.fixed_space.dim: r for r in recs}
assert by_dim[0].fingerprint.order == 5
assert by_dim[0].steinberg_ok and by_dim[0].is_maximal is False
assert by_dim[0].fingerprint.reflection_count == 4
assert by_dim[2].fingerprint.order == 1
assert by_dim[2].steinberg_ok and by_dim[2].is_maximal is True
print("C5: ok")

# <-I_4>: no reflections, Steinberg fails and is reported
m1 = parse_literal("-1")
neg = ExactMatrix([[m1 if i == j else zero for j in range(4)]
                   for i in range(4)])
sp4 = SymplecticSpace(4)
g2 = FiniteMatrixGroup([neg], form=sp4, name="minus")
recs = classify_parabolics(g2)
assert len(recs) == 2
by_dim = {r.fixed_space.dim: r for r in recs}
assert by_dim[0].fingerprint.order == 2 and not by_dim[0].steinberg_ok
assert by_dim[4].fingerprint.order == 1 and by_dim[4].steinberg_ok
assert not steinberg_check(g2)
print("minus-identity: ok")

# W(Q) full lattice
from sympref.catalogue import build_primitive
t0 = time.time()
built = build_primitive("Q")
gq = built.group
print(f"build Q: {time.time()-t0:.1f}s order {gq.order()}")
t0 = time.time()
recs = classify_parabolics(gq)
dt = time.time() - t0
n_lat = len(recs)
st_bad = [r for r in recs if not r.steinberg_ok]
maxi = [r for r in recs if r.is_maximal]
classes = sorted({r.conjugacy_class_id for r in maxi})
types = sorted({r.recognized_type for r in maxi})
orders = sorted({r.fingerprint.order for r in maxi})
print(f"Q full lattice: {dt:.1f}s, {n_lat} elements, "
      f"{len(st_bad)} steinberg failures")
print(f"Q maximal: {len(maxi)} records, classes {classes}, types {types}, "
      f"orders {orders}")
assert not st_bad
assert len(classes) == 2, classes
assert types == ["G(3,3,2)", "G(4,2,2)"], types
lat = fixed_space_lattice(gq)
assert len(lat) == n_lat
print("Q: ok")
