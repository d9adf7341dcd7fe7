"""Focused search for the corrupt third root of R.

Evidence: <r0,r1,r3> has order 96 (divides 1209600) while every
3-subset containing r2 exceeds 1.3M mod p.  So scan replacements of
single coordinates (then pairs) of r2 against a library of plausible
values, keeping r0,r1,r3 fixed, accepting closure == 1209600 mod p.
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


def parse_root(rec):
    s = parse_literal(rec["scale"])
    return [s * parse_literal(c) for c in rec["coords"]]


ROOTS = [parse_root(r) for r in DATA["R"]["roots"]]
HALF = parse_literal("1/2")


def refl_mat(root):
    try:
        em = reflection_from_root(ExactVector(root), SP, J)
    except (ValueError, ZeroDivisionError):
        return None
    vm = CTX.vecmat([list(row) for row in em.rows])
    return SHADOW.vm_matrix(vm)


FIXED = [refl_mat(ROOTS[i]) for i in (0, 1, 3)]
IDENT = np.eye(N, dtype=np.int64) % P


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


def order_filter(m2):
    mats = [FIXED[0], FIXED[1], m2, FIXED[2]]
    if not good_order(mat_order(m2)):
        return False
    for i in range(4):
        for j in range(4):
            if i != j and not good_order(mat_order((mats[i] @ mats[j]) % P)):
                return False
    for w in (mats[0] @ mats[1] @ m2, mats[1] @ m2 @ mats[3],
              mats[0] @ m2 @ mats[3], mats[0] @ mats[1] @ m2 @ mats[3]):
        if not good_order(mat_order(w % P)):
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


def build_library(extended=False):
    lits = set()
    for g in ("Q", "R"):
        for rec in DATA[g]["roots"]:
            for c in rec["coords"]:
                v = parse_literal(c)
                if v:
                    lits.add(v)
    lits.add(parse_literal("1"))
    lits.add(parse_literal("E(4)"))
    lits.add(parse_literal("E(5)-E(5)^2-E(5)^3+E(5)^4"))
    out = {}
    work = list(lits)
    for v in work:
        forms = [v, v.conjugate(), v.galois(17), v.conjugate().galois(17)]
        if extended:
            forms += [f * Cyclotomic(4, {1: 1}) for f in forms]
        for f in forms:
            for s in (f, -f):
                out[format_literal(s)] = s
    return out


def probe(label, cand_root, verbose=False):
    m2 = refl_mat(cand_root)
    if m2 is None:
        return False
    if not order_filter(m2):
        return False
    mats = [FIXED[0], FIXED[1], m2, FIXED[2]]
    if not orbit_filter(mats):
        if verbose:
            print(f"  {label}: orbit filter reject")
        return False
    t0 = time.time()
    got = closure_size(mats)
    dt = time.time() - t0
    if got == TARGET:
        print(f"  HIT {label} ({dt:.1f}s)")
        print("    coords:", [format_literal(2 * c) for c in cand_root],
              " (scale 1/2)")
        return True
    print(f"  near-miss {label}: closure {got} ({dt:.1f}s)")
    return False


def main():
    stage = sys.argv[1] if len(sys.argv) > 1 else "single"
    lib = build_library(extended=(stage != "single"))
    vals = list(lib.items())
    print(f"library size {len(vals)}")
    base = list(ROOTS[2])
    hits = 0
    checked = 0

    if stage == "single":
        for pos in range(N):
            for lit, v in vals + [("0", Cyclotomic.from_rational(0))]:
                cand = list(base)
                cand[pos] = HALF * v
                if cand[pos] == base[pos]:
                    continue
                checked += 1
                if probe(f"pos{pos} <- ({lit})/2", cand):
                    hits += 1
        print(f"checked {checked}, hits {hits}")

    elif stage == "pairs":
        nz = [c for c in range(N) if base[c]]
        small = build_library(extended=False)
        svals = list(small.items())
        for p1, p2 in itertools.combinations(nz, 2):
            for l1, v1 in svals:
                for l2, v2 in svals:
                    cand = list(base)
                    cand[p1] = HALF * v1
                    cand[p2] = HALF * v2
                    if cand[p1] == base[p1] and cand[p2] == base[p2]:
                        continue
                    checked += 1
                    if probe(f"pos{p1}<-({l1})/2 pos{p2}<-({l2})/2", cand):
                        hits += 1
            print(f"  .. pair ({p1},{p2}) done, checked {checked}")
        print(f"checked {checked}, hits {hits}")


if __name__ == "__main__":
    main()
