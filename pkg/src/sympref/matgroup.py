"""Finite matrix groups over cyclotomic scalars.

Orders, membership and stabilizers come from a deterministic stabilizer
chain whose base points are vectors (caller-supplied small-orbit hints are
tried first, then standard basis vectors).  Enumeration is a separate
breadth-first closure, so the two order computations cross-check each
other.  Stabilizers carry an orbit-stabilizer certificate: the sweep over
Schreier generators stops only when the generated subgroup's order times
the orbit length equals the group order.
"""

from collections import Counter, deque
from functools import reduce

from ._engine import (EnumerationCapError, Engine, OrbitCapError,
                      conjugation_closure, element_order)
from ._field import ModPContext, field_context
from .cyclo import Cyclotomic, _lcm_conductor
from .linalg import ExactMatrix, ExactVector

__all__ = ["FiniteMatrixGroup", "OrbitData", "OrbitCapError",
           "EnumerationCapError"]

_DEFAULT_ORBIT_CAP = 10**7
_DEFAULT_ENUM_CAP = 10**5


class OrbitData:
    """Orbit of a vector (or line) with transversal and Schreier edges.

    transversal[p] maps the seed to p (up to a scalar in projective mode);
    schreier_edges[(p, g)] is the orbit point g moves p to.
    """

    __slots__ = ("seed", "points", "transversal", "schreier_edges")

    def __init__(self, seed, points, transversal, schreier_edges):
        self.seed = seed
        self.points = points
        self.transversal = transversal
        self.schreier_edges = schreier_edges

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"OrbitData({len(self.points)} points)"


class FiniteMatrixGroup:
    """A group of exact matrices given by generators."""

    def __init__(self, gens, dim=None, form=None, base_hints=(), name=None,
                 orbit_cap=_DEFAULT_ORBIT_CAP):
        gens = tuple(g if isinstance(g, ExactMatrix) else ExactMatrix(g)
                     for g in gens)
        if dim is None:
            if not gens:
                raise ValueError("dimension required for an empty generator list")
            dim = gens[0].nrows
        for g in gens:
            if g.nrows != g.ncols or g.nrows != dim:
                raise ValueError("generators must be square of equal dimension")
        if form is not None:
            for g in gens:
                if not form.is_symplectic_matrix(g):
                    raise ValueError("generator does not preserve the form")
        self.gens = gens
        self.dim = dim
        self.form = form
        self.name = name
        self.base_hints = tuple(ExactVector(h) if not isinstance(h, ExactVector)
                                else h for h in base_hints)
        self.orbit_cap = orbit_cap
        conductors = [e.conductor for g in gens for row in g.rows for e in row]
        self._ctx = field_context(reduce(_lcm_conductor, conductors, 1))
        hint_pairs = []
        for h in self.base_hints:
            if h.is_zero():
                continue
            try:
                hint_pairs.append(self._ctx.vec(list(h)))
            except ValueError:
                continue  # hint lies outside this group's field

        vm_gens = [self._ctx.vecmat([list(r) for r in g.rows]) for g in gens]
        self._engine = Engine(self._ctx, dim, vm_gens, hints=hint_pairs,
                              orbit_cap=orbit_cap)
        self._known_order = None
        self._shadow = None
        self._pool = False

    def __repr__(self):
        label = self.name or "FiniteMatrixGroup"
        return f"<{label}: dim {self.dim}, {len(self.gens)} generators>"

    # -- basic queries -----------------------------------------------------

    def order(self):
        if self._known_order is None:
            self._known_order = self._engine.order()
        return self._known_order

    def is_member(self, m):
        if not isinstance(m, ExactMatrix):
            m = ExactMatrix(m)
        if m.nrows != m.ncols or m.nrows != self.dim:
            raise ValueError("dimension mismatch")
        try:
            vm = self._ctx.vecmat([list(r) for r in m.rows])
        except ValueError:
            return False  # entries outside the group's field
        return self._engine.is_member(vm)

    def elements(self, cap=_DEFAULT_ENUM_CAP):
        """Deterministically ordered list of all elements."""
        n = self.order()
        if n > cap:
            raise EnumerationCapError(
                f"order {n} exceeds enumeration cap {cap}; "
                "use stabilizer-chain queries instead")
        ctx = self._ctx
        return [ExactMatrix(ctx.unvecmat(vm)) for vm in self._engine.elements()]

    def enumerate(self, cap=_DEFAULT_ENUM_CAP):
        """The full element set if the order is within cap."""
        return frozenset(self.elements(cap))

    def element_order_histogram(self, cap=_DEFAULT_ENUM_CAP):
        n = self.order()
        if n > cap:
            raise EnumerationCapError(
                f"order {n} exceeds enumeration cap {cap}")
        if self._shadow is None:
            self._shadow = ModPContext(self._ctx)
        hist = Counter()
        for vm in self._engine.elements():
            hist[element_order(self._ctx, self._shadow, vm)] += 1
        return dict(hist)

    # -- orbits -------------------------------------------------------------

    def orbit(self, seed, normalize="none", cap=None):
        if not isinstance(seed, ExactVector):
            seed = ExactVector(seed)
        if len(seed) != self.dim:
            raise ValueError("seed dimension mismatch")
        if normalize not in ("none", "projective"):
            raise ValueError(f"unknown normalization {normalize!r}")
        cap = self.orbit_cap if cap is None else cap
        if normalize == "projective":
            return self._line_orbit(seed, cap)
        orb = self._engine.vector_orbit(self._ctx.vec(list(seed)), cap)
        ctx = self._ctx
        points = [ExactVector(ctx.unvec(*p)) for p in orb.points]
        transversal = {}
        edges = {}
        for j, p in enumerate(points):
            transversal[p] = ExactMatrix(ctx.unvecmat(orb.transversal(j)))
            if orb.parent[j] is not None:
                pi, gi = orb.parent[j]
                edges[(points[pi], self.gens[gi])] = p
        for pi, gi, ji in orb.edges:
            edges[(points[pi], self.gens[gi])] = points[ji]
        return OrbitData(seed, tuple(points), transversal, edges)

    def _line_orbit(self, seed, cap):
        ctx = self._ctx
        start = _line_normalize(seed)
        key0 = ctx.vec(list(start))
        points = [start]
        index = {_bytes_key(key0): 0}
        trans = [ExactMatrix.identity(self.dim)]
        edges = {}
        queue = deque([0])
        while queue:
            pi = queue.popleft()
            for g in self.gens:
                img = _line_normalize(g @ points[pi])
                key = _bytes_key(ctx.vec(list(img)))
                ji = index.get(key)
                if ji is None:
                    if len(points) >= cap:
                        raise OrbitCapError(f"orbit exceeds cap {cap}")
                    ji = len(points)
                    index[key] = ji
                    points.append(img)
                    trans.append(g @ trans[pi])
                    queue.append(ji)
                edges[(points[pi], g)] = points[ji]
        transversal = dict(zip(points, trans))
        return OrbitData(start, tuple(points), transversal, edges)

    # -- stabilizers ---------------------------------------------------------

    def stabilizer(self, v):
        if not isinstance(v, ExactVector):
            v = ExactVector(v)
        if len(v) != self.dim:
            raise ValueError("vector dimension mismatch")
        pair = self._ctx.vec(list(v))
        if all(self._ctx.fixes_vector(g, *pair) for g in self._engine.gens):
            return self._subgroup(self._engine.gens, self.order(),
                                  name=_subname(self.name, "stab"))
        subgens, target, _orb = self._engine.stabilizer_pairs(
            pair, cap=self.orbit_cap, candidates=self._candidate_pool())
        return self._subgroup(subgens, target,
                              name=_subname(self.name, "stab"))

    def _candidate_pool(self, cap=100000):
        """Conjugates of the generators, used to seed stabilizer searches.

        Purely an accelerator: stabilizer_pairs certifies any subgroup built
        from the pool by the orbit-stabilizer identity and falls back to a
        Schreier sweep when the pool does not cover the stabilizer.
        """
        if self._pool is False:
            try:
                self._pool = conjugation_closure(
                    self._engine, self._engine.gens, cap=cap)
            except OrbitCapError:
                self._pool = None
        return self._pool

    def pointwise_stabilizer(self, space):
        cur = self
        for b in space.basis:
            cur = cur.stabilizer(b)
        return cur

    def _subgroup(self, vm_gens, known_order, name=None):
        ctx = self._ctx
        gens = [ExactMatrix(ctx.unvecmat(vm)) for vm in vm_gens]
        sub = FiniteMatrixGroup(gens, dim=self.dim, form=self.form,
                                base_hints=self.base_hints, name=name,
                                orbit_cap=self.orbit_cap)
        sub._known_order = known_order
        return sub


def _subname(name, tag):
    return f"{name}.{tag}" if name else None


def _bytes_key(pair):
    arr, den = pair
    if arr.dtype == object:
        return (den, tuple(int(x) for x in arr))
    return den.to_bytes(8, "big", signed=True) + arr.tobytes()


def _line_normalize(v):
    """Scale so the first nonzero coordinate is 1; zero stays zero."""
    for e in v:
        if not e.is_zero():
            return ExactVector(e.inverse() * x for x in v)
    return v
