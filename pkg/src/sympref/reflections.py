"""Symplectic reflections, Steinberg verification and parabolic records.

A symplectic reflection is a group element g with rank(g - 1) = 2.  The
central check implemented here: a stabilizer subgroup equals the group
generated by the reflections it contains.  Parabolic subgroups are
classified either exhaustively, from the intersection lattice of element
fixed spaces, or for a supplied list of vectors.
"""

from collections import Counter, defaultdict, deque

import numpy as np

from ._engine import (EnumerationCapError, FixClassifier, element_order,
                      subspace_orbit)
from ._field import ModPContext
from ._lattice import intspace_from_subspace, subspace_from_intspace
from .cyclo import format_literal
from .linalg import ExactMatrix, fixed_space, kernel
from .matgroup import FiniteMatrixGroup

__all__ = ["Fingerprint", "ParabolicRecord", "classify_parabolics",
           "fingerprint", "fixed_space_lattice", "is_symplectic_reflection",
           "recognize", "reflections_in", "steinberg_check", "type_matches"]

_ENUM_CAP = 10**5
_SUBSPACE_CAP = 10**5


class Fingerprint:
    """Recognition invariants of a finite matrix group.

    rank is the dimension of the moved space (ambient minus fixed), so it
    does not depend on the ambient dimension; order_histogram maps element
    orders to multiplicities.
    """

    __slots__ = ("rank", "order", "reflection_count", "order_histogram",
                 "center_order")

    def __init__(self, rank, order, reflection_count, order_histogram,
                 center_order):
        self.rank = rank
        self.order = order
        self.reflection_count = reflection_count
        self.order_histogram = dict(order_histogram)
        self.center_order = center_order

    def _key(self):
        return (self.rank, self.order, self.reflection_count,
                tuple(sorted(self.order_histogram.items())),
                self.center_order)

    def __eq__(self, other):
        if not isinstance(other, Fingerprint):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"<Fingerprint rank {self.rank}, order {self.order}, "
                f"{self.reflection_count} reflections, "
                f"center {self.center_order}>")

    def to_json(self):
        return {"rank": self.rank, "order": self.order,
                "reflection_count": self.reflection_count,
                "order_histogram": {str(k): v for k, v in
                                    sorted(self.order_histogram.items())},
                "center_order": self.center_order}


class ParabolicRecord:
    """One verified parabolic subgroup."""

    __slots__ = ("fixed_space", "group", "steinberg_ok", "fingerprint",
                 "recognized_type", "is_maximal", "conjugacy_class_id",
                 "vector")

    def __init__(self, fixed_space, group, steinberg_ok, fingerprint,
                 recognized_type, is_maximal=None, conjugacy_class_id=None,
                 vector=None):
        self.fixed_space = fixed_space
        self.group = group
        self.steinberg_ok = steinberg_ok
        self.fingerprint = fingerprint
        self.recognized_type = recognized_type
        self.is_maximal = is_maximal
        self.conjugacy_class_id = conjugacy_class_id
        self.vector = vector

    def __repr__(self):
        return (f"<ParabolicRecord order {self.fingerprint.order}, "
                f"type {self.recognized_type}, fixed dim "
                f"{self.fixed_space.dim}, steinberg "
                f"{'ok' if self.steinberg_ok else 'FAILED'}>")


def is_symplectic_reflection(g):
    """True iff rank(g - identity) is exactly 2."""
    if not isinstance(g, ExactMatrix):
        g = ExactMatrix(g)
    if g.nrows != g.ncols:
        raise ValueError("matrix must be square")
    fix = kernel(g - ExactMatrix.identity(g.nrows))
    return g.nrows - fix.dim == 2


# -- streamed group surveys ---------------------------------------------------

class _Survey:
    """Everything learned from one pass over a group's elements."""

    __slots__ = ("dim", "classes", "members", "order")

    def __init__(self, dim, classes, members, order):
        self.dim = dim
        self.classes = classes
        self.members = members  # class index -> list of (vm, element order)
        self.order = order

    def reflection_vms(self, class_indices=None):
        target = self.dim - 2
        idxs = (range(len(self.classes)) if class_indices is None
                else class_indices)
        out = [vm for ci in idxs if self.classes[ci].space.dim == target
               for vm, _ in self.members[ci]]
        out.sort(key=lambda vm: vm.key())
        return out


def _survey(group, cap):
    cached = group.__dict__.get("_reflection_survey")
    if cached is not None:
        return cached
    n = group.order()
    if n > cap:
        raise EnumerationCapError(
            f"order {n} exceeds enumeration cap {cap}")
    eng = group._engine
    shadow = ModPContext(eng.ctx)
    clf = FixClassifier(eng.ctx, group.dim)
    members = defaultdict(list)
    for vm in eng.elements():
        ci = clf.add(vm)
        members[ci].append((vm, element_order(eng.ctx, shadow, vm)))
    out = _Survey(group.dim, clf.classes, dict(members), n)
    group._reflection_survey = out
    return out


def _count_center(ctx, elems, gens):
    """Number of elements commuting with every generator (exact).

    A mod-p shadow rejects non-commuting pairs cheaply; survivors are
    confirmed with exact products.
    """
    if not gens:
        return len(elems)
    shadow = ModPContext(ctx)
    p = shadow.p

    def shadow_of(vm):
        try:
            return shadow.vm_matrix(vm)
        except ValueError:
            return None  # denominator hit the prime; confirm exactly

    gshadows = [(g, shadow_of(g)) for g in gens]
    count = 0
    for vm, _ in elems:
        s = shadow_of(vm)
        candidate = True
        for g, gs in gshadows:
            if s is not None and gs is not None:
                if not np.array_equal((s @ gs) % p, (gs @ s) % p):
                    candidate = False
                    break
        if not candidate:
            continue
        if all(ctx.matmul(g, vm).key()
               == ctx.matmul(vm, g, cache_left=False).key() for g in gens):
            count += 1
    return count


def _steinberg_group(parent, refl_mats, expected_order, label):
    """The reflection-generated subgroup and whether it fills the order."""
    if not refl_mats:
        empty = FiniteMatrixGroup([], dim=parent.dim, form=parent.form,
                                  name=label)
        return empty, expected_order == 1
    sub = FiniteMatrixGroup(refl_mats, dim=parent.dim, form=parent.form,
                            base_hints=parent.base_hints, name=label)
    return sub, sub.order() == expected_order


def _light_subgroup(parent, gens, known_order, label):
    """A record-carrier subgroup of certified members.

    Generators are already verified elements of the parent, so the form
    check is inherited rather than recomputed; the order comes from the
    verified representative of the conjugacy class.
    """
    sub = FiniteMatrixGroup(gens, dim=parent.dim, form=None,
                            base_hints=parent.base_hints, name=label,
                            orbit_cap=parent.orbit_cap)
    sub.form = parent.form
    sub._known_order = known_order
    return sub


def reflections_in(group, cap=_ENUM_CAP):
    """All symplectic reflections in the group, canonically ordered."""
    sv = _survey(group, cap)
    ctx = group._engine.ctx
    return [ExactMatrix(ctx.unvecmat(vm)) for vm in sv.reflection_vms()]


def steinberg_check(group, cap=_ENUM_CAP):
    """Whether the group is generated by the reflections it contains.

    The trivial group passes: it is generated by the empty set of
    reflections.
    """
    refl = reflections_in(group, cap)
    nontrivial = [g for g in group.gens
                  if g != ExactMatrix.identity(group.dim)]
    if nontrivial and set(nontrivial) <= set(refl):
        return True  # every generator is itself a reflection
    _, ok = _steinberg_group(group, refl, group.order(), None)
    return ok


def fingerprint(group, cap=_ENUM_CAP):
    sv = _survey(group, cap)
    ctx = group._engine.ctx
    elems = [pair for lst in sv.members.values() for pair in lst]
    hist = Counter(order for _, order in elems)
    refl = sv.reflection_vms()
    rank = group.dim - fixed_space(group.gens, group.dim).dim
    center = _count_center(ctx, elems, group._engine.gens)
    return Fingerprint(rank=rank, order=sv.order,
                       reflection_count=len(refl),
                       order_histogram=hist, center_order=center)


def recognize(group_or_fp, refs=None, cap=_ENUM_CAP):
    """Match a group (or fingerprint) against the reference catalogue.

    Returns the unique matching type name, "unknown" when nothing
    matches, or "ambiguous: a, b" when several references share the
    fingerprint.
    """
    if isinstance(group_or_fp, Fingerprint):
        fp = group_or_fp
    else:
        fp = fingerprint(group_or_fp, cap)
    if refs is None:
        from .catalogue import reference_fingerprints
        refs = reference_fingerprints()
    matches = sorted(name for name, ref in refs.items() if ref == fp)
    if not matches:
        return "unknown"
    if len(matches) == 1:
        return matches[0]
    return "ambiguous: " + ", ".join(matches)


def type_matches(recognized, expected):
    """Whether a recognize() result is consistent with an expected type."""
    if recognized == expected:
        return True
    if recognized.startswith("ambiguous: "):
        return expected in recognized[len("ambiguous: "):].split(", ")
    return False


# -- lattices and classification ----------------------------------------------

def _space_sort_key(s):
    return (s.dim, tuple(tuple(format_literal(c) for c in v)
                         for v in s.basis))


def _lattice_orbits(group, sv, subspace_cap):
    """The intersection lattice of element fixed spaces, partitioned into
    G-orbits of subspaces.

    All arithmetic runs on canonical integer row spaces.  Closure only ever
    intersects one representative per orbit with the base fixed spaces: the
    base is G-stable, so t.X meet Z = t.(X meet t^-1 Z) lands in the orbit
    of a representative intersection.  Each orbit list starts at the
    representative the closure discovered first.
    """
    cached = group.__dict__.get("_fix_lattice")
    if cached is not None:
        return cached
    eng = group._engine
    ctx = eng.ctx
    class_isp = [intspace_from_subspace(ctx, cl.space) for cl in sv.classes]
    lins = [np.ascontiguousarray(ctx.linearize(g).T) for g in eng.gens]
    base = {}
    for isp in class_isp:
        base.setdefault(isp.key, isp)
    base = list(base.values())
    seen = set()
    orbits = []
    queue = deque(base)
    while queue:
        root = queue.popleft()
        if root.key in seen:
            continue
        seen.add(root.key)
        members = [root]
        qi = 0
        while qi < len(members):
            cur = members[qi]
            qi += 1
            for lt in lins:
                img = cur.apply(lt)
                if img.key not in seen:
                    if len(seen) >= subspace_cap:
                        raise EnumerationCapError(
                            f"fixed-space lattice exceeds cap {subspace_cap}")
                    seen.add(img.key)
                    members.append(img)
        orbits.append(members)
        for z in base:
            t = root.intersect(z)
            if t.key not in seen:
                queue.append(t)
    out = (class_isp, orbits)
    group._fix_lattice = out
    return out


def fixed_space_lattice(group, cap=_ENUM_CAP, subspace_cap=_SUBSPACE_CAP):
    """Element fixed spaces closed under intersection, including V."""
    sv = _survey(group, cap)
    ctx = group._engine.ctx
    _, orbits = _lattice_orbits(group, sv, subspace_cap)
    spaces = [subspace_from_intspace(ctx, group.dim, isp)
              for ms in orbits for isp in ms]
    return sorted(spaces, key=_space_sort_key)


def classify_parabolics(group, mode="full_lattice", vectors=None, refs=None,
                        enum_cap=_ENUM_CAP, subspace_cap=_SUBSPACE_CAP):
    """Parabolic subgroups of the group as verified records.

    full_lattice mode produces one record per fixed-space-lattice element
    (requires the group order within enum_cap); vectors mode produces one
    record per supplied vector using stabilizer chains only.  Conjugacy
    classes are decided by G-orbits of fixed spaces; maximality means a
    proper parabolic strictly contained in no other proper parabolic (in
    vectors mode, relative to the supplied records).
    """
    if refs is None:
        from .catalogue import reference_fingerprints
        refs = reference_fingerprints()
    if mode == "full_lattice":
        return _records_from_lattice(group, refs, enum_cap, subspace_cap)
    if mode == "vectors":
        if not vectors:
            raise ValueError("vectors mode needs a nonempty vector list")
        records = [_record_for_stabilizer(group, v, refs, enum_cap)
                   for v in vectors]
        _flag_maximality(records, group.order())
        _assign_conjugacy(group, records, subspace_cap)
        return records
    raise ValueError(f"unknown mode {mode!r}")


def _records_from_lattice(group, refs, enum_cap, subspace_cap):
    """One record per lattice element.

    Steinberg status, fingerprint, recognition and maximality are invariant
    under conjugation, so each is computed once on the orbit representative
    and shared across the orbit; reflections of the other members come from
    the per-class fixed spaces, not from fresh element scans.
    """
    sv = _survey(group, enum_cap)
    eng = group._engine
    ctx = eng.ctx
    n = group.dim
    d = ctx.degree
    class_isp, orbits = _lattice_orbits(group, sv, subspace_cap)
    refl_cls = [ci for ci, cl in enumerate(sv.classes)
                if cl.space.dim == n - 2]
    exact_cache = {}

    def exact_mats(vms):
        out = []
        for vm in vms:
            key = vm.key()
            m = exact_cache.get(key)
            if m is None:
                m = exact_cache[key] = ExactMatrix(ctx.unvecmat(vm))
            out.append(m)
        return out

    ident = ExactMatrix.identity(n)
    gen_set = {g for g in group.gens if g != ident}
    per_orbit = []
    bottom_key = None
    for oid, members in enumerate(orbits):
        rep = members[0]
        kdim = rep.qdim // d
        idxs = [ci for ci, isp in enumerate(class_isp) if isp.contains(rep)]
        elems = [pair for ci in idxs for pair in sv.members[ci]]
        order_p = len(elems)
        refl_vms = sv.reflection_vms(idxs)
        label = f"{group.name}|fix{kdim}.{oid}" if group.name else None
        rep_group = None
        if order_p == sv.order:
            bottom_key = rep.key
            rep_group = group
            st_ok = bool(gen_set) and gen_set <= set(exact_mats(refl_vms))
            if not st_ok:
                _, st_ok = _steinberg_group(group, exact_mats(refl_vms),
                                            order_p, label)
            st_ok = st_ok or order_p == 1
            center_gens = eng.gens
        elif order_p == 1:
            st_ok = True
            center_gens = []
        else:
            rep_group, st_ok = _steinberg_group(group, exact_mats(refl_vms),
                                                order_p, label)
            if st_ok:
                center_gens = refl_vms
            else:
                rep_group = None  # rebuilt below from the full member list
                center_gens = [vm for vm, _ in elems]
        hist = Counter(order for _, order in elems)
        center = _count_center(ctx, elems, center_gens)
        fp = Fingerprint(rank=n - kdim, order=order_p,
                         reflection_count=len(refl_vms),
                         order_histogram=hist, center_order=center)
        per_orbit.append([order_p, st_ok, fp, recognize(fp, refs),
                          rep_group, label])
    full_order = sv.order
    all_members = [isp for ms in orbits for isp in ms]
    records = []
    for oid, members in enumerate(orbits):
        order_p, st_ok, fp, rtype, rep_group, label = per_orbit[oid]
        if order_p >= full_order:
            maximal = False
        else:
            rep = members[0]
            maximal = not any(isp.qdim < rep.qdim and isp.key != bottom_key
                              and rep.contains(isp) for isp in all_members)
        for isp in members:
            space = subspace_from_intspace(ctx, n, isp)
            if rep_group is not None and isp is members[0]:
                sub = rep_group
            elif order_p == 1:
                sub = _light_subgroup(group, [], 1, label)
            else:
                idxs = refl_cls if st_ok else range(len(class_isp))
                vms = [vm for ci in idxs if class_isp[ci].contains(isp)
                       for vm, _ in sv.members[ci]]
                vms.sort(key=lambda vm: vm.key())
                sub = _light_subgroup(group, exact_mats(vms), order_p, label)
            records.append(ParabolicRecord(
                fixed_space=space, group=sub, steinberg_ok=st_ok,
                fingerprint=fp, recognized_type=rtype, is_maximal=maximal,
                conjugacy_class_id=oid))
    records.sort(key=lambda r: _space_sort_key(r.fixed_space))
    remap = {}
    for rec in records:
        if rec.conjugacy_class_id not in remap:
            remap[rec.conjugacy_class_id] = len(remap)
        rec.conjugacy_class_id = remap[rec.conjugacy_class_id]
    return records


def _record_for_stabilizer(group, v, refs, enum_cap):
    stab = group.stabilizer(v)
    sv = _survey(stab, enum_cap)
    ctx = stab._engine.ctx
    space = fixed_space(stab.gens, group.dim)
    elems = [pair for lst in sv.members.values() for pair in lst]
    refl_vms = sv.reflection_vms()
    refl = [ExactMatrix(ctx.unvecmat(vm)) for vm in refl_vms]
    label = f"{group.name}|stab" if group.name else None
    ident = ExactMatrix.identity(group.dim)
    gen_set = {g for g in stab.gens if g != ident}
    if gen_set and gen_set <= set(refl):
        st_ok = True
    else:
        _, st_ok = _steinberg_group(stab, refl, sv.order, label)
        st_ok = st_ok or sv.order == 1
    hist = Counter(order for _, order in elems)
    center = _count_center(ctx, elems, stab._engine.gens)
    fp = Fingerprint(rank=group.dim - space.dim, order=sv.order,
                     reflection_count=len(refl_vms), order_histogram=hist,
                     center_order=center)
    return ParabolicRecord(fixed_space=space, group=stab, steinberg_ok=st_ok,
                           fingerprint=fp,
                           recognized_type=recognize(fp, refs), vector=v)


def _flag_maximality(records, full_order):
    """Mark proper parabolics strictly contained in no other proper one.

    Containment of parabolics is reverse inclusion of fixed spaces.
    """
    proper = [r for r in records if r.fingerprint.order < full_order]
    for rec in records:
        if rec.fingerprint.order >= full_order:
            rec.is_maximal = False
            continue
        rec.is_maximal = not any(
            other is not rec
            and other.fixed_space.dim < rec.fixed_space.dim
            and rec.fixed_space.contains_subspace(other.fixed_space)
            for other in proper)


def _assign_conjugacy(group, records, subspace_cap):
    """Group records into G-orbits of their fixed spaces."""
    next_id = 0
    for i, rec in enumerate(records):
        if rec.conjugacy_class_id is not None:
            continue
        rec.conjugacy_class_id = next_id
        peers = [r for r in records[i + 1:]
                 if r.conjugacy_class_id is None
                 and r.fingerprint == rec.fingerprint
                 and r.fixed_space.dim == rec.fixed_space.dim]
        if peers:
            orbit = set(subspace_orbit(group.gens, rec.fixed_space,
                                       cap=subspace_cap))
            for r in peers:
                if r.fixed_space in orbit:
                    r.conjugacy_class_id = next_id
        next_id += 1
