"""Mod-p order of a primitive catalogue group (diagnostic).

Reduction mod an odd prime p = 1 (mod conductor) is injective on finite
matrix groups, so the size of the BFS closure of the reduced generators
equals the group order (when it fits the cap).
"""
import sys
import time

import numpy as np

from sympref._field import ModPContext
from sympref.catalogue import build_primitive

name = sys.argv[1]
cap = int(sys.argv[2]) if len(sys.argv) > 2 else 3_000_000

spec = build_primitive(name)
eng = spec.group._engine
shadow = ModPContext(eng.ctx)
p = shadow.p
gens = [np.asarray(shadow.vm_matrix(vm), dtype=np.int64) for vm in eng.gens]
dim = spec.space.dim

t0 = time.time()
ident = np.eye(dim, dtype=np.int64)
seen = {ident.tobytes()}
frontier = [ident]
capped = False
while frontier and not capped:
    batch = np.stack(frontier)
    new = []
    for g in gens:
        prod = (batch @ g) % p
        for m in prod:
            b = m.tobytes()
            if b not in seen:
                seen.add(b)
                new.append(m)
        if len(seen) > cap:
            capped = True
            break
    frontier = new
dt = time.time() - t0
if capped:
    print(f"{name}: order exceeds cap {cap} (p={p}, {dt:.1f}s)")
else:
    n = len(seen)
    print(f"{name}: mod-p order {n} (claimed {spec.expected_order}, "
          f"ratio {n / spec.expected_order:.6g}, p={p}, {dt:.1f}s)")
