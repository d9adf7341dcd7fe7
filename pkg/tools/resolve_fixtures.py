"""Probe candidate readings of the table-row vectors.

Each table row claims a stabilizer order, so by orbit-stabilizer the row
vector's orbit must have size |G| / order.  Candidates are probed with a
capped orbit walk: the cap sits one past the expected size, so a reading
with a smaller stabilizer aborts at the cap and a correct one finishes at
the exact count.  Entrywise conjugation need not normalize the group, so
rows are probed as printed and conjugated; coordinates with ambiguous
grouping get one candidate per reading.

The script prints PASS/FAIL per candidate and a FREEZE line (literals for
gen_data.py) for every winner that differs from the stored fixture.

Usage: python3 tools/resolve_fixtures.py Q R S3 T U
"""

import pathlib
import sys
import time
from collections import Counter

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from sympref._engine import OrbitCapError, conjugation_closure
from sympref._field import ModPContext
from sympref.catalogue import build_primitive
from sympref.cyclo import Cyclotomic, format_literal, parse_literal
from sympref.linalg import ExactMatrix, ExactVector, fixed_space

R5 = "E(5)-E(5)^2-E(5)^3+E(5)^4"
ZERO = Cyclotomic.from_rational(0)

_shadow_cache = {}


def conj(v):
    return ExactVector(e.conjugate() for e in v)


def gal(v, k=17):
    return ExactVector(e.galois(k) for e in v)


def _shadow(spec):
    if spec.name not in _shadow_cache:
        eng = spec.group._engine
        shadow = ModPContext(eng.ctx)
        try:
            mats = [shadow.vm_matrix(g) for g in eng.gens]
        except ValueError:
            mats = None
        _shadow_cache[spec.name] = (shadow, mats)
    return _shadow_cache[spec.name]


def _modp_orbit_exceeds(spec, v, cap):
    """True iff the mod-p orbit walk exceeds cap.

    The exact orbit is at least as large as its mod-p image, so hitting
    the cap refutes the candidate without an exact walk.  A completed
    mod-p walk proves nothing by itself; the caller still certifies with
    exact arithmetic.
    """
    shadow, mats = _shadow(spec)
    if mats is None:
        return False
    ctx = spec.group._engine.ctx
    try:
        arr, den = ctx.vec(list(v))
        vals = shadow.vec_values(np.asarray(arr), den)
    except ValueError:
        return False
    vals = np.asarray(vals % shadow.p, dtype=np.int64)
    seen = {vals.tobytes()}
    frontier = [vals]
    while frontier:
        batch = np.stack(frontier)
        frontier = []
        for m in mats:
            nxt = (batch @ m.T) % shadow.p
            for row in nxt:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    frontier.append(row)
        if len(seen) > cap:
            return True
    return False


def probe(spec, v, claimed_order):
    eng = spec.group._engine
    ctx = eng.ctx
    expected = spec.expected_order // claimed_order
    t0 = time.time()
    if _modp_orbit_exceeds(spec, v, expected):
        return False, -1, expected, time.time() - t0
    try:
        orb = eng.vector_orbit(ctx.vec(list(v)), cap=expected + 1,
                               edges=False)
        got = len(orb.points)
    except OrbitCapError:
        got = -1
    return got == expected, got, expected, time.time() - t0


def report(spec, tag, v, claimed_order):
    ok, got, expected, dt = probe(spec, v, claimed_order)
    got_s = f"{got}" if got >= 0 else f">{expected}"
    print(f"  {tag:34s} orbit {got_s:>8s} expected {expected:>8d} "
          f"{'PASS' if ok else 'fail'} ({dt:.1f}s)", flush=True)
    return ok


def freeze_line(group, label, v):
    lits = ", ".join(f'"{format_literal(e)}"' for e in v)
    print(f"FREEZE {group} {label}: {lits}")


def row_by_label(spec, label):
    return next(t for t in spec.table if t.label == label)


def probe_row_variants(spec, label, extra=()):
    """As printed first, then conjugated, then any extra (tag, vector)."""
    row = row_by_label(spec, label)
    if report(spec, f"{label}[as-printed]", row.vector, row.order):
        return
    cv = conj(row.vector)
    if report(spec, f"{label}[conjugate]", cv, row.order):
        freeze_line(spec.name, label, cv)
        return
    for tag, v in extra:
        if report(spec, f"{label}[{tag}]", v, row.order):
            freeze_line(spec.name, label, v)
            return
    print(f"  {label}: NO CANDIDATE PASSED — flag for analysis")


def run_Q(spec):
    for label in ("H1", "H2"):
        probe_row_variants(spec, label)


def run_R(spec):
    probe_row_variants(spec, "H2")
    # H1 coordinate 5 has an ambiguous parenthesis in the source; after
    # the stored row, probe one candidate per grouping, each as printed
    # and conjugated.
    groupings = {
        "half-all": f"(E(4)*({R5})-E(4)+({R5})-3)/2",
        "half-ipart": f"(E(4)*({R5})-E(4))/2+({R5})-3",
        "half-lead": f"(E(4)*({R5}))/2-E(4)+({R5})-3",
    }
    base = [parse_literal(s)
            for s in ("0", "1", f"({R5})-1", f"({R5})-1")]
    extra = []
    for gtag, lit in groupings.items():
        c5 = parse_literal(lit)
        for ctag, val in (("printed", c5), ("conj", c5.conjugate())):
            extra.append((f"{gtag},{ctag}",
                          ExactVector(base + [val, ZERO])))
    probe_row_variants(spec, "H1", extra)
    # H3: bracketing variants of the three composite source coordinates
    # crossed with conjugation and the sqrt5 Galois twist, then computed
    # witnesses.  The group contains the reflection with root e1, which
    # negates coordinates 0 and 3 and fixes the rest; a generic vector
    # with zeros there is fixed by exactly that reflection, and the
    # orbit count certifies the claimed stabilizer order 2.
    c2s = {"a": f"(({R5})+3)/2", "b": f"({R5})/2+3"}
    c3s = {"a": f"(-E(4)*({R5})-E(4)+({R5})+1)/2",
           "b": f"(-E(4)*({R5})-E(4))/2+({R5})+1",
           "c": f"(-E(4)*({R5}))/2-E(4)+({R5})+1"}
    c5s = {"a": f"(-E(4)*({R5})-3*E(4))/2",
           "b": f"(-E(4)*({R5}))/2-3*E(4)"}
    one = Cyclotomic.from_rational(1)
    extra = []
    for t2, l2 in c2s.items():
        for t3, l3 in c3s.items():
            for t5, l5 in c5s.items():
                v = ExactVector([ZERO, one, parse_literal(l2),
                                 parse_literal(l3), one,
                                 parse_literal(l5)])
                for ft, fv in (("printed", v), ("conj", conj(v)),
                               ("sigma", gal(v)),
                               ("conj+sigma", conj(gal(v)))):
                    extra.append((f"{t2}{t3}{t5},{ft}", fv))
    for tag, lits in (
            ("w1", ("0", "1", "1", "0", "2", f"{R5}")),
            ("w2", ("0", "1", "E(4)+1", "0", "2", f"({R5})-1")),
            ("w3", ("0", "2", "E(4)", "0", "1", f"E(4)*({R5})+1")),
            ("w4", ("0", "1", "2*E(4)", "0", f"{R5}", "1"))):
        extra.append((tag, ExactVector([parse_literal(s) for s in lits])))
    probe_row_variants(spec, "H3", extra)


def run_S3(spec):
    for label in ("H4", "H3", "H2", "H1"):
        probe_row_variants(spec, label)


_REFL_CACHE = {}


def _reflections(spec):
    if spec.name not in _REFL_CACHE:
        eng = spec.group._engine
        vms = conjugation_closure(eng, eng.gens, cap=200000)
        _REFL_CACHE[spec.name] = [ExactMatrix(eng.ctx.unvecmat(vm))
                                  for vm in vms]
    return _REFL_CACHE[spec.name]


def missing_coord_solutions(spec, v0, pos):
    """Values for an unknown coordinate consistent with reflections.

    v0 is the vector with a zero placeholder at index pos.  For each
    reflection r not fixing e_pos, r(v0 + x e_pos) = v0 + x e_pos pins
    x = -(r v0 - v0)_k / (r e_pos - e_pos)_k when consistent across k.
    The true vector is fixed by every reflection of its stabilizer, so
    the right x shows up with the largest multiplicity.
    """
    dim = spec.space.dim
    ep = ExactVector([ZERO] * pos + [Cyclotomic.from_rational(1)]
                     + [ZERO] * (dim - 1 - pos))
    votes = Counter()
    for r in _reflections(spec):
        u = r @ v0 - v0
        w = r @ ep - ep
        if w.is_zero():
            continue
        k = next(k for k, e in enumerate(w) if not e.is_zero())
        x = -(u[k] * w[k].inverse())
        if (u + x * w).is_zero():
            votes[x] += 1
    return votes.most_common()


def _sign_flip_variants(lits, token):
    """Vectors from flipping each textual occurrence of token in lits.

    Yields (tag, vector) for every nonempty subset of occurrences, each
    occurrence rewritten to (-token).
    """
    import itertools

    spots = []
    for ci, lit in enumerate(lits):
        start = 0
        while True:
            at = lit.find(token, start)
            if at < 0:
                break
            spots.append((ci, at))
            start = at + len(token)
    for rmask in range(1, 1 << len(spots)):
        out = list(lits)
        chosen = [spots[b] for b in range(len(spots)) if rmask >> b & 1]
        # apply right-to-left so earlier offsets stay valid
        for ci, at in sorted(chosen, key=lambda s: (s[0], -s[1])):
            lit = out[ci]
            out[ci] = lit[:at] + f"(-{token})" + lit[at + len(token):]
        tag = "flip" + "".join(str(b) for b in range(len(spots))
                               if rmask >> b & 1)
        yield tag, ExactVector([parse_literal(s) for s in out])


def _modp_order(m, p, cap=40):
    ident = np.eye(m.shape[0], dtype=np.int64)
    acc = m
    for k in range(1, cap + 1):
        if np.array_equal(acc, ident):
            return k
        acc = (acc @ m) % p
    return 0


def _modp_group_order(mats, p, cap):
    ident = np.eye(mats[0].shape[0], dtype=np.int64)
    seen = {ident.tobytes()}
    frontier = [ident]
    count = 1
    while frontier:
        nxt = []
        for g in frontier:
            for m in mats:
                h = (g @ m) % p
                kb = h.tobytes()
                if kb not in seen:
                    seen.add(kb)
                    nxt.append(h)
                    count += 1
                    if count > cap:
                        return count
        frontier = nxt
    return count


def synth_diagram_witness(spec, label, diagram, sub_order, claimed_order):
    """Witness vector for a parabolic pinned by a Coxeter diagram.

    Searches triples of involutive reflections whose pairwise product
    orders match the diagram, confirms the subgroup order by reduction
    mod p, then probes generic vectors of the common fixed space.  A
    generic fixed vector's stabilizer is the parabolic closure of that
    space, so the orbit count certifies whether the closure is the
    wanted subgroup.
    """
    refls = _reflections(spec)
    shadow, _ = _shadow(spec)
    p = shadow.p
    ctx = spec.group._engine.ctx
    rmats = [shadow.vm_matrix(ctx.vecmat([list(r) for r in em.rows]))
             for em in refls]
    ident = np.eye(rmats[0].shape[0], dtype=np.int64)
    invol = [i for i in range(len(refls))
             if np.array_equal((rmats[i] @ rmats[i]) % p, ident)]
    porder = {}

    def po(i, j):
        key = (i, j) if i < j else (j, i)
        if key not in porder:
            porder[key] = _modp_order((rmats[i] @ rmats[j]) % p, p)
        return porder[key]

    a, b, c = diagram
    two = Cyclotomic.from_rational(2)
    eye4 = parse_literal("E(4)")
    seen_spaces = set()
    spaces = 0
    for x in range(len(invol)):
        for y in range(x + 1, len(invol)):
            i, j = invol[x], invol[y]
            if po(i, j) != a:
                continue
            for k in invol:
                if k == i or k == j:
                    continue
                if po(j, k) != b or po(i, k) != c:
                    continue
                got = _modp_group_order(
                    [rmats[i], rmats[j], rmats[k]], p, sub_order + 1)
                if got != sub_order:
                    continue
                space = fixed_space([refls[i], refls[j], refls[k]])
                if space.dim != 2:
                    continue
                skey = tuple(format_literal(e)
                             for bv in space.basis for e in bv)
                if skey in seen_spaces:
                    continue
                seen_spaces.add(skey)
                spaces += 1
                f1, f2 = space.basis
                for tag, v in (("f1+f2", f1 + f2),
                               ("f1+2f2", f1 + (two * f2)),
                               ("f1+i*f2", f1 + (eye4 * f2))):
                    if report(spec, f"{label}[r{i},r{j},r{k},{tag}]",
                              v, claimed_order):
                        freeze_line(spec.name, label, v)
                        return v
                if spaces >= 12:
                    return None
    return None


def run_T(spec):
    for label in ("H6", "H4", "H3b", "H2", "H1"):
        probe_row_variants(spec, label)
    # H3a stabilizes a parabolic of the same type as H3b but in another
    # conjugacy class.  The printed row fails every plain reading, so
    # probe sign flips of each E(10)^3 occurrence, crossed with
    # conjugation and the Galois twist; exclude the H3b vector itself.
    rowa = row_by_label(spec, "H3a")
    vb = row_by_label(spec, "H3b").vector
    extra = [("sigma", gal(rowa.vector)),
             ("conj+sigma", conj(gal(rowa.vector)))]
    for tag, v in _sign_flip_variants(list(rowa.literal), "E(10)^3"):
        for ft, fv in (("", v), (",conj", conj(v)), (",sigma", gal(v)),
                       (",conj+sigma", conj(gal(v)))):
            if fv != vb:
                extra.append((tag + ft, fv))
    probe_row_variants(spec, "H3a", extra=extra)
    # H5 is missing one coordinate in the source, position unknown.
    # Probe the stored row first, then for each slot solve for the
    # inserted value from the reflections fixing the completed vector,
    # then certify by orbit.
    row = row_by_label(spec, "H5")
    printed = list(row.vector)[:7]
    done = report(spec, "H5[as-printed]", row.vector, row.order)
    for ctag, seven in (("printed", printed),
                        ("conj", [e.conjugate() for e in printed])):
        if done:
            break
        for pos in range(8):
            v0 = ExactVector(seven[:pos] + [ZERO] + seven[pos:])
            sols = missing_coord_solutions(spec, v0, pos)
            if not sols or sols[0][1] < 2:
                continue
            print(f"  H5[{ctag}] insert at {pos}: votes "
                  f"{[(format_literal(x), c) for x, c in sols[:3]]}",
                  flush=True)
            for x, cnt in sols[:3]:
                v = ExactVector(list(v0)[:pos] + [x] + list(v0)[pos + 1:])
                if report(spec, f"H5[{ctag},pos{pos}]", v, row.order):
                    freeze_line(spec.name, "H5", v)
                    done = True
                    break
            if done:
                break
    if not done:
        # No completion of the printed digits certifies, so synthesize
        # a witness: the claimed type is the icosahedral group, diagram
        # orders (5, 3, 2).
        v = synth_diagram_witness(spec, "H5", (5, 3, 2), 120, row.order)
        if v is None:
            print("  H5: NO CANDIDATE PASSED — flag for analysis")


def run_U(spec):
    for label in ("H5", "H3", "H2", "H1"):
        probe_row_variants(spec, label)
    # H4 fails as printed and conjugated.  The other rows certify
    # conjugated, so try one corrupted coordinate on top of that:
    # blank each slot in turn, re-solve it from the reflections, and
    # certify the repaired vector by orbit.
    row = row_by_label(spec, "H4")
    if report(spec, "H4[as-printed]", row.vector, row.order):
        return
    cv = conj(row.vector)
    if report(spec, "H4[conjugate]", cv, row.order):
        freeze_line(spec.name, "H4", cv)
        return
    dim = spec.space.dim
    for ctag, base in (("conj", list(cv)), ("printed", list(row.vector))):
        for pos in range(dim):
            v0 = ExactVector(base[:pos] + [ZERO] + base[pos + 1:])
            sols = missing_coord_solutions(spec, v0, pos)
            if not sols or sols[0][1] < 2:
                continue
            for x, cnt in sols[:2]:
                if x == base[pos]:
                    continue
                v = ExactVector(base[:pos] + [x] + base[pos + 1:])
                if report(spec, f"H4[{ctag},repair{pos}]", v, row.order):
                    freeze_line(spec.name, "H4", v)
                    return
    print("  H4: NO CANDIDATE PASSED — flag for analysis")


def run_all_rows(spec):
    for trow in sorted(spec.table, key=lambda t: -t.order):
        probe_row_variants(spec, trow.label)


RUNNERS = {"Q": run_Q, "R": run_R, "S1": run_all_rows, "S2": run_all_rows,
           "S3": run_S3, "T": run_T, "U": run_U}


def main():
    names = sys.argv[1:] or list(RUNNERS)
    for name in names:
        t0 = time.time()
        spec = build_primitive(name)
        print(f"{name}: order {spec.expected_order} "
              f"(built in {time.time()-t0:.1f}s)", flush=True)
        RUNNERS[name](spec)


if __name__ == "__main__":
    main()
