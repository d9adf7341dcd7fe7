"""Search for the correct reading of the R root list.

The printed roots generate a group of order > 3,000,000 (mod-p closure),
while the claimed order is 1,209,600.  Try small systematic edits
(complex conjugation, sqrt5 Galois twist, sign flips, per coordinate and
per root) and accept a variant iff its mod-p closure is exactly 1209600.

Cheap filters first: generator products must have orders whose prime
factors lie in {2,3,5,7}, and the mod-p orbit of e1 must divide 1209600.
"""
import itertools
import json
import sys
import time

import numpy as np

from sympref.cyclo import Cyclotomic, parse_literal, format_literal
from sympref.linalg import ExactVector, SymplecticSpace
from sympref.catalogue import reflection_from_root, QuaternionicStructure
from sympref._field import field_context, ModPContext

TARGET = 1209600
CAP = TARGET + 1

DATA = json.load(open("src/sympref/data/groups.json"))["groups"]
ROOTS = [
    [parse_literal(r["scale"]) * parse_literal(s) for s in r["coords"]]
    for r in DATA["R"]["roots"]
]
N = 6
SP = SymplecticSpace(N)
J = QuaternionicStructure(N)
CTX = field_context(20)
SHADOW = ModPContext(CTX)
P = SHADOW.p


def lift(c):
    if c.conductor == 20:
        return c
    return c * Cyclotomic(20, {0: 1}) if False else c


def variant_roots(edits):
    """edits: list of (op, root_idx, coord_idx or None)."""
    rows = [list(r) for r in ROOTS]
    for op, ri, ci in edits:
        if ci is None:
            cols = range(N)
        else:
            cols = [ci]
        for c in cols:
            v = rows[ri][c]
            if not v:
                continue
            if op == "conj":
                rows[ri][c] = v.conjugate()
            elif op == "sigma":
                rows[ri][c] = v.galois(17)
            elif op == "neg":
                rows[ri][c] = -v
            else:
                raise ValueError(op)
    return rows


def build_mats(rows):
    out = []
    for r in rows:
        try:
            em = reflection_from_root(ExactVector(r), SP, J)
            vm = CTX.vecmat([list(row) for row in em.rows])
        except (ValueError, ZeroDivisionError):
            return None
        m = SHADOW.vm_matrix(vm)
        if m is None:
            return None
        out.append(m)
    return out


def mat_order(m, cap=200):
    ident = np.eye(N, dtype=np.int64) % P
    acc = m.copy()
    for k in range(1, cap + 1):
        if np.array_equal(acc % P, ident):
            return k
        acc = (acc @ m) % P
    return cap + 1


def order_filter(mats):
    words = []
    for i, j in itertools.combinations(range(4), 2):
        words.append((mats[i] @ mats[j]) % P)
    words.append((mats[0] @ mats[1] @ mats[2]) % P)
    words.append((mats[1] @ mats[2] @ mats[3]) % P)
    words.append((mats[0] @ mats[1] @ mats[2] @ mats[3]) % P)
    for w in words:
        o = mat_order(w)
        if o > 120:
            return False
        x = o
        for p in (2, 3, 5, 7):
            while x % p == 0:
                x //= p
        if x != 1:
            return False
    return True


def orbit_filter(mats):
    v0 = np.zeros(N, dtype=np.int64)
    v0[0] = 1
    seen = {v0.tobytes()}
    frontier = [v0]
    while frontier:
        batch = np.stack(frontier)
        frontier = []
        for m in mats:
            nxt = (batch @ m) % P
            for row in nxt:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    frontier.append(row)
        if len(seen) > TARGET:
            return False
    return len(seen) <= TARGET and TARGET % len(seen) == 0


def closure_size(mats, cap=CAP):
    ident = (np.eye(N, dtype=np.int64) % P)
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        batch = np.stack(frontier)
        k = batch.shape[0]
        frontier = []
        flat = batch.reshape(k, N, N)
        for m in mats:
            nxt = (flat @ m) % P
            for row in nxt:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    frontier.append(row)
        if len(seen) > cap:
            return -1
    return len(seen)


def probe(label, edits, full=True):
    rows = variant_roots(edits)
    mats = build_mats(rows)
    if mats is None:
        return None
    if not order_filter(mats):
        return None
    if not orbit_filter(mats):
        return None
    if not full:
        print(f"  {label}: passed cheap filters")
        return None
    t0 = time.time()
    n = closure_size(mats)
    dt = time.time() - t0
    if n == TARGET:
        print(f"  HIT {label}: closure {n} ({dt:.1f}s)")
        return rows
    print(f"  near-miss {label}: closure {n} ({dt:.1f}s)")
    return None


def main():
    stages = sys.argv[1:] or ["subset", "coord"]
    nonzero = [[c for c in range(N) if ROOTS[r][c]] for r in range(4)]
    hits = []

    if "subset" in stages:
        print("stage A/B: per-root conj and sigma subsets")
        for op in ("conj", "sigma"):
            for mask in range(1, 16):
                edits = [(op, r, None) for r in range(4) if mask >> r & 1]
                label = f"{op} roots {[r for r in range(4) if mask >> r & 1]}"
                got = probe(label, edits)
                if got:
                    hits.append((label, got))

    if "coord" in stages:
        print("stage C/D/E: single-coordinate conj/neg/sigma")
        for op in ("conj", "neg", "sigma"):
            for r in range(4):
                for c in nonzero[r]:
                    label = f"{op} root{r} coord{c}"
                    got = probe(label, [(op, r, c)])
                    if got:
                        hits.append((label, got))

    if "pairs" in stages:
        print("stage F: conj on one root + sigma on another")
        for r1 in range(4):
            for r2 in range(4):
                label = f"conj root{r1} + sigma root{r2}"
                got = probe(label, [("conj", r1, None), ("sigma", r2, None)])
                if got:
                    hits.append((label, got))

    print(f"total hits: {len(hits)}")
    for label, rows in hits:
        print(f"== {label}")
        for r in rows:
            print("  [" + ", ".join(format_literal(c) for c in r) + "]")


if __name__ == "__main__":
    main()
