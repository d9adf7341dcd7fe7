"""Full-lattice benchmark for S1 and S2."""
import sys
import time

from sympref.catalogue import build_primitive
from sympref.reflections import classify_parabolics

name = sys.argv[1]
t0 = time.time()
built = build_primitive(name)
g = built.group
print(f"build {name}: {time.time()-t0:.1f}s order {g.order()}", flush=True)
t0 = time.time()
recs = classify_parabolics(g)
dt = time.time() - t0
st_bad = [r for r in recs if not r.steinberg_ok]
maxi = [r for r in recs if r.is_maximal]
classes = sorted({r.conjugacy_class_id for r in maxi})
from collections import Counter
type_by_class = {}
for r in maxi:
    type_by_class[r.conjugacy_class_id] = (r.recognized_type,
                                           r.fingerprint.order)
print(f"{name} full lattice: {dt:.1f}s, {len(recs)} elements, "
      f"{len(st_bad)} steinberg failures")
print(f"{name} maximal classes ({len(classes)}):")
for cid in classes:
    t, o = type_by_class[cid]
    cnt = sum(1 for r in maxi if r.conjugacy_class_id == cid)
    print(f"  class {cid}: type {t}, order {o}, {cnt} members")
dims = Counter(r.fixed_space.dim for r in recs)
print(f"{name} lattice dims: {dict(sorted(dims.items()))}")
