"""Recover the corrupt third root of R from the true group.

The true W(R) is <Q roots, R root 3> (mod-p closure exactly 1209600).
Every nonzero vector of a reflection's moved plane spans the same
quaternionic line, so the corrected root is any vector of some moved
plane agreeing with the printed root outside one coordinate.  Solve
alpha*u + beta*v + x*e_c = w exactly for each reflection plane {u,v}
and coordinate c.
"""
import json
import time

import numpy as np

from sympref.cyclo import Cyclotomic, parse_literal, format_literal
from sympref.linalg import ExactVector, ExactMatrix, SymplecticSpace, image
from sympref.catalogue import reflection_from_root, QuaternionicStructure
from sympref.matgroup import FiniteMatrixGroup
from sympref._engine import conjugation_closure
from sympref._field import field_context, ModPContext

N = 6
ZERO = Cyclotomic.from_rational(0)
DATA = json.load(open("src/sympref/data/groups.json"))["groups"]
SP = SymplecticSpace(N)
J = QuaternionicStructure(N)
CTX = field_context(20)


def parse_root(rec):
    s = parse_literal(rec["scale"])
    return [s * parse_literal(c) for c in rec["coords"]]


def refl(root):
    return reflection_from_root(ExactVector(root), SP, J)


Q_ROOTS = [parse_root(r) for r in DATA["Q"]["roots"]]
R_ROOTS = [parse_root(r) for r in DATA["R"]["roots"]]

GENS = [refl(r) for r in Q_ROOTS] + [refl(R_ROOTS[3])]
GROUP = FiniteMatrixGroup(GENS, dim=N, form=SP, name="Rtrue")
ENG = GROUP._engine


def solve_combo(cols, w):
    """Solve sum_i t_i * cols[i] = w; return the t vector or None."""
    k = len(cols)
    rows = [[col[r] for col in cols] + [w[r]] for r in range(N)]
    piv = 0
    where = {}
    for col in range(k):
        pr = next((r for r in range(piv, N) if not rows[r][col].is_zero()),
                  None)
        if pr is None:
            continue
        rows[piv], rows[pr] = rows[pr], rows[piv]
        inv = rows[piv][col].inverse()
        rows[piv] = [e * inv for e in rows[piv]]
        for r in range(N):
            if r != piv and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv])]
        where[col] = piv
        piv += 1
    for r in range(piv, N):
        if not rows[r][k].is_zero():
            return None
    return [rows[where[c]][k] if c in where else ZERO for c in range(k)]


def main():
    import itertools

    t0 = time.time()
    refls = conjugation_closure(ENG, ENG.gens, cap=200000)
    print(f"reflection count: {len(refls)} ({time.time() - t0:.1f}s)")

    ident = ExactMatrix.identity(N)
    base = ExactVector(R_ROOTS[2])
    variants = [
        ("printed", base),
        ("conj", ExactVector([e.conjugate() for e in base])),
        ("sigma", ExactVector([e.galois(17) for e in base])),
        ("conj+sigma", ExactVector([e.conjugate().galois(17) for e in base])),
    ]
    basis_vecs = [ExactVector([ZERO] * k + [Cyclotomic.from_rational(1)]
                              + [ZERO] * (N - 1 - k)) for k in range(N)]

    planes = []
    for vm in refls:
        s = ExactMatrix(CTX.unvecmat(vm))
        moved = image(ident - s)
        if moved.dim == 2:
            planes.append(moved.basis)

    hits = []
    t0 = time.time()
    for tag, w in variants:
        for nfix in (1, 2):
            if hits and nfix == 2:
                break
            for combo in itertools.combinations(range(N), nfix):
                ecs = [basis_vecs[c] for c in combo]
                for idx, (u, v) in enumerate(planes):
                    sol = solve_combo([u, v] + ecs, w)
                    if sol is None:
                        continue
                    corrected = list(w)
                    for c, x in zip(combo, sol[2:]):
                        corrected[c] = corrected[c] + x
                    if all(e.is_zero() for e in corrected):
                        continue
                    if all(x.is_zero() for x in sol[2:]) and tag == "printed":
                        continue
                    hits.append((tag, idx, combo, corrected))
        print(f"  {tag}: cumulative hits {len(hits)} "
              f"({time.time() - t0:.1f}s)")
        if hits:
            break
    print(f"scan done, {len(hits)} hits")
    for tag, idx, combo, corrected in hits:
        print(f"  refl {idx} [{tag}] coords {combo}:")
        print("    root/2: [" +
              ", ".join(format_literal(2 * e) for e in corrected) + "]")

    if not hits:
        return

    shadow = ModPContext(CTX)
    ident_p = np.eye(N, dtype=np.int64) % shadow.p

    def closure(ms, cap):
        seen = {ident_p.tobytes()}
        frontier = [ident_p]
        while frontier:
            batch = np.stack(frontier)
            frontier = []
            for m in ms:
                nxt = (batch.reshape(-1, N, N) @ m) % shadow.p
                for row in nxt:
                    k = row.tobytes()
                    if k not in seen:
                        seen.add(k)
                        frontier.append(row)
            if len(seen) > cap:
                return -1
        return len(seen)

    for tag, idx, combo, corrected in hits:
        mats = []
        for root in (R_ROOTS[0], R_ROOTS[1], corrected, R_ROOTS[3]):
            em = refl(root)
            mats.append(shadow.vm_matrix(CTX.vecmat([list(r) for r in em.rows])))
        got = closure(mats, 1209601)
        print(f"  verify refl {idx} [{tag}] coords {combo}: root list "
              f"closure {got} (want 1209600)")


if __name__ == "__main__":
    main()
