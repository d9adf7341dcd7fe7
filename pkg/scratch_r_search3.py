"""Cross-root search for the R misprint.

Stage "pattern": coherent sum <-> product swaps for the i+sqrt5 style
coordinates across roots 1,2,3 (16 cheap candidates).
Stage "single": replace any single nonzero coordinate of roots 1,2,3
with a value from an extended library (includes i*sqrt5 forms).
Stage "double": pairs of single-coordinate edits on DIFFERENT roots.
Accept iff mod-p closure is exactly 1209600.
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
N = 6
DATA = json.load(open("src/sympref/data/groups.json"))["groups"]
SP = SymplecticSpace(N)
J = QuaternionicStructure(N)
CTX = field_context(20)
SHADOW = ModPContext(CTX)
P = SHADOW.p
IDENT = np.eye(N, dtype=np.int64) % P

R5 = parse_literal("E(5)-E(5)^2-E(5)^3+E(5)^4")
I4 = parse_literal("E(4)")


def parse_root(rec):
    s = parse_literal(rec["scale"])
    return [s * parse_literal(c) for c in rec["coords"]]


ROOTS = [parse_root(r) for r in DATA["R"]["roots"]]


def refl_mat(root):
    try:
        em = reflection_from_root(ExactVector(root), SP, J)
    except (ValueError, ZeroDivisionError):
        return None
    return SHADOW.vm_matrix(CTX.vecmat([list(r) for r in em.rows]))


def mat_order(m, cap=130):
    acc = m.copy()
    for k in range(1, cap + 1):
        if np.array_equal(acc, IDENT):
            return k
        acc = (acc @ m) % P
    return 0


def good_order(o):
    if o == 0 or o > 120:
        return False
    for p in (2, 3, 5, 7):
        while o % p == 0:
            o //= p
    return o == 1


def order_filter(mats):
    for m in mats:
        if not good_order(mat_order(m)):
            return False
    for i, j in itertools.permutations(range(4), 2):
        if not good_order(mat_order((mats[i] @ mats[j]) % P)):
            return False
    for i, j, k in itertools.combinations(range(4), 3):
        if not good_order(mat_order((mats[i] @ mats[j] @ mats[k]) % P)):
            return False
    return good_order(mat_order((mats[0] @ mats[1] @ mats[2] @ mats[3]) % P))


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
    return TARGET % len(seen) == 0


def closure_size(mats, cap=TARGET + 1):
    seen = {IDENT.tobytes()}
    frontier = [IDENT]
    while frontier:
        batch = np.stack(frontier)
        frontier = []
        for m in mats:
            nxt = (batch.reshape(-1, N, N) @ m) % P
            for row in nxt:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    frontier.append(row)
        if len(seen) > cap:
            return -1
    return len(seen)


def probe(label, roots):
    mats = []
    for r in roots:
        m = refl_mat(r)
        if m is None:
            return False
        mats.append(m)
    if not order_filter(mats):
        return False
    if not orbit_filter(mats):
        print(f"  near(order-ok) {label}: orbit reject")
        return False
    t0 = time.time()
    got = closure_size(mats)
    dt = time.time() - t0
    if got == TARGET:
        print(f"  HIT {label} ({dt:.1f}s)")
        for r in roots:
            print("    [" + ", ".join(format_literal(2 * c) for c in r) + "] /2")
        return True
    print(f"  near-miss {label}: closure {got} ({dt:.1f}s)")
    return False


def build_library():
    lits = set()
    for g in ("Q", "R"):
        for rec in DATA[g]["roots"]:
            for c in rec["coords"]:
                v = parse_literal(c)
                if v:
                    lits.add(v)
    for extra in ("1", "2", "E(4)", "E(5)-E(5)^2-E(5)^3+E(5)^4",
                  "E(4)*(E(5)-E(5)^2-E(5)^3+E(5)^4)",
                  "E(4)*(E(5)-E(5)^2-E(5)^3+E(5)^4)+1",
                  "E(4)*(E(5)-E(5)^2-E(5)^3+E(5)^4)+E(4)",
                  "(E(5)-E(5)^2-E(5)^3+E(5)^4)+1",
                  "(1+E(5)-E(5)^2-E(5)^3+E(5)^4)/2",
                  "(E(4)+E(4)*(E(5)-E(5)^2-E(5)^3+E(5)^4))/2"):
        lits.add(parse_literal(extra))
    out = {}
    for v in lits:
        forms = [v, v.conjugate(), v.galois(17), v.conjugate().galois(17)]
        forms += [f * I4 for f in forms]
        for f in forms:
            for s in (f, -f):
                if s:
                    out[format_literal(s)] = s
    return out


def main():
    stage = sys.argv[1] if len(sys.argv) > 1 else "pattern"
    hits = 0
    checked = 0

    if stage == "pattern":
        # occurrences of the i/sqrt5 mixed literals, as (root, coord)
        half = parse_literal("1/2")
        spots = [(1, 3), (1, 4), (2, 5), (3, 2)]
        # choices per spot: printed value, sum form, product form, with signs
        one = Cyclotomic.from_rational(1)
        raw = {
            (1, 3): [-I4 * R5 + one, -I4 - R5 + one, -I4 + R5 + one],
            (1, 4): [-I4 - R5, -I4 * R5, -I4 + R5],
            (2, 5): [I4 + R5, I4 * R5, I4 - R5],
            (3, 2): [I4 + R5, I4 * R5, I4 - R5],
        }

        def alts(ri, ci):
            return [half * v for v in raw[(ri, ci)]]

        allalts = {sp: alts(*sp) for sp in spots}
        combos = itertools.product(*(range(len(allalts[sp])) for sp in spots))
        for combo in combos:
            roots = [list(r) for r in ROOTS]
            desc = []
            same = True
            for (ri, ci), ai in zip(spots, combo):
                v = allalts[(ri, ci)][ai]
                if v != ROOTS[ri][ci]:
                    same = False
                    desc.append(f"r{ri}c{ci}<-{format_literal(2 * v)}/2")
                roots[ri][ci] = v
            if same:
                continue
            checked += 1
            if probe(" ".join(desc), roots):
                hits += 1
        print(f"pattern stage: checked {checked}, hits {hits}")

    elif stage == "single":
        lib = build_library()
        vals = list(lib.items())
        print(f"library size {len(vals)}")
        half = parse_literal("1/2")
        for ri in (1, 2, 3):
            for ci in range(N):
                if not ROOTS[ri][ci]:
                    continue
                for lit, v in vals:
                    cand = half * v
                    if cand == ROOTS[ri][ci]:
                        continue
                    roots = [list(r) for r in ROOTS]
                    roots[ri][ci] = cand
                    checked += 1
                    if probe(f"r{ri}c{ci} <- ({lit})/2", roots):
                        hits += 1
            print(f"  .. root {ri} done, checked {checked}")
        print(f"single stage: checked {checked}, hits {hits}")


if __name__ == "__main__":
    main()
