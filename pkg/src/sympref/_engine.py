"""Deterministic Schreier-Sims machinery over VecMat forms.

A chain level consists of a base vector, the strong generators that fix all
earlier base vectors, the orbit of the base under those generators, and a
transversal (with inverses) mapping the base to each orbit point.  The group
order is the product of orbit lengths; membership is tested by sifting.
Everything is processed in a fixed order with no randomness, so chains,
orbits and element streams are reproducible.

Mod-p shadows are used to group elements by fixed space, but every grouping
decision is certified by an exact integer identity before it is trusted;
when certification is impossible the exact kernel is recomputed.
"""

import math
from collections import deque

import numpy as np

from ._field import ModPContext, igcd_reduce, imatmul
from .linalg import ExactMatrix, Subspace, kernel


class OrbitCapError(RuntimeError):
    """An orbit grew past the configured cap."""


class EnumerationCapError(RuntimeError):
    """Full enumeration would exceed the configured cap."""


def _pkey(point):
    arr, den = point
    if arr.dtype == object:
        return (den, tuple(int(x) for x in arr))
    return den.to_bytes(8, "big", signed=True) + arr.tobytes()


class _Level:
    """One stabilizer-chain level with lazy transversal matrices.

    Orbit points store only their BFS tree edge (parent index, generator
    index); transversals are rebuilt by walking to the deepest cached
    ancestor, so a level with a large orbit costs points, not matrices.
    The caches stop growing at cache_cap entries and walks only fill them
    in ancestor order, which keeps the shallow, heavily shared part of
    the tree resident.
    """

    __slots__ = ("base", "ctx", "gens", "geninv", "points", "index",
                 "parent", "applied", "pending", "cache_cap", "_trans",
                 "_tinv")

    def __init__(self, base, identity, ctx, cache_cap):
        self.base = base
        self.ctx = ctx
        self.gens = []
        self.geninv = []
        self.points = [base]
        self.index = {_pkey(base): 0}
        self.parent = [None]
        self.applied = []
        self.pending = deque()
        self.cache_cap = cache_cap
        self._trans = {0: identity}
        self._tinv = {0: identity}

    def _walk(self, i):
        path = []
        while i:
            path.append(i)
            i = self.parent[i][0]
        path.reverse()
        return path

    def trans_at(self, i):
        out = self._trans.get(i)
        if out is not None:
            return out
        path = self._walk(i)
        k = len(path) - 1
        while k >= 0 and path[k] not in self._trans:
            k -= 1
        acc = self._trans[path[k]] if k >= 0 else None
        for j in path[k + 1:]:
            gi = self.parent[j][1]
            g = self.gens[gi]
            acc = g if acc is None else self.ctx.matmul(g, acc)
            if len(self._trans) < self.cache_cap:
                self._trans[j] = acc
        return self._trans[0] if acc is None else acc

    def tinv_at(self, i):
        out = self._tinv.get(i)
        if out is not None:
            return out
        path = self._walk(i)
        k = len(path) - 1
        while k >= 0 and path[k] not in self._tinv:
            k -= 1
        acc = self._tinv[path[k]] if k >= 0 else None
        for j in path[k + 1:]:
            gi = self.parent[j][1]
            ginv = self.geninv[gi]
            acc = ginv if acc is None \
                else self.ctx.matmul(acc, ginv, cache_left=False)
            if len(self._tinv) < self.cache_cap:
                self._tinv[j] = acc
        return self._tinv[0] if acc is None else acc


class Engine:
    """Stabilizer chain for a finite group of VecMats acting on vectors."""

    def __init__(self, field, dim, gens, hints=(), orbit_cap=10**7):
        self.ctx = field
        self.n = dim
        self.orbit_cap = orbit_cap
        self.identity = field.identity(dim)
        self.idkey = self.identity.key()
        self.gens = []
        seen = {self.idkey}
        for g in gens:
            if g.key() not in seen:
                seen.add(g.key())
                self.gens.append(g)
        self.geninv = [self.vm_inverse(g) for g in self.gens]
        d = field.degree
        std = []
        for i in range(dim):
            arr = np.zeros(dim * d, dtype=np.int64)
            arr[i * d] = 1
            std.append((arr, 1))
        self.hints = [igcd_reduce(np.asarray(a), dd) for a, dd in hints] + std
        matbytes = (dim * d) ** 2 * 8
        self.level_cache_cap = min(50000, max(2000, (256 << 20) // matbytes))
        self.levels = None
        self._exact_gens = None

    # -- conversions -----------------------------------------------------

    def vm_inverse(self, vm):
        mat = ExactMatrix(self.ctx.unvecmat(vm)).inverse()
        return self.ctx.vecmat([list(r) for r in mat.rows])

    def exact_gens(self):
        if self._exact_gens is None:
            self._exact_gens = [ExactMatrix(self.ctx.unvecmat(g))
                                for g in self.gens]
        return self._exact_gens

    # -- chain construction ------------------------------------------------

    def chain(self):
        if self.levels is None:
            self._build()
        return self.levels

    def order(self):
        out = 1
        for lev in self.chain():
            out *= len(lev.points)
        return out

    def _build(self):
        self.levels = []
        for g, gi in zip(self.gens, self.geninv):
            res = self._sift_pair((g, gi), 0)
            if res is not None:
                self._install(*res)
        while True:
            lv = None
            for j in range(len(self.levels) - 1, -1, -1):
                if self.levels[j].pending:
                    lv = j
                    break
            if lv is None:
                break
            self._step(lv)

    def _sift_pair(self, pair, start):
        r, rinv = pair
        if r.key() == self.idkey:
            return None
        for l in range(start, len(self.levels)):
            lev = self.levels[l]
            img = self.ctx.matvec(r, *lev.base)
            idx = lev.index.get(_pkey(img))
            if idx is None:
                return l, (r, rinv)
            if idx:
                r = self.ctx.matmul(lev.tinv_at(idx), r, cache_left=False)
                rinv = self.ctx.matmul(rinv, lev.trans_at(idx))
                if r.key() == self.idkey:
                    return None
        if r.key() == self.idkey:
            return None
        return len(self.levels), (r, rinv)

    def _install(self, l, pair):
        if l == len(self.levels):
            base = None
            for h in self.hints:
                if not self.ctx.fixes_vector(pair[0], h[0], h[1]):
                    base = h
                    break
            if base is None:
                raise RuntimeError("non-identity element fixing a spanning set")
            self.levels.append(_Level(base, self.identity, self.ctx,
                                       self.level_cache_cap))
        # a strong generator introduced at level l also generates every
        # earlier level's group, so it joins their orbits and Schreier sets
        for j in range(l + 1):
            lev = self.levels[j]
            lev.gens.append(pair[0])
            lev.geninv.append(pair[1])
            lev.applied.append(0)
            self._close(j)

    def _close(self, l):
        lev = self.levels[l]
        progress = True
        while progress:
            progress = False
            for gi in range(len(lev.gens)):
                g = lev.gens[gi]
                while lev.applied[gi] < len(lev.points):
                    pi = lev.applied[gi]
                    lev.applied[gi] += 1
                    img = self.ctx.matvec(g, *lev.points[pi])
                    key = _pkey(img)
                    ji = lev.index.get(key)
                    if ji is None:
                        if len(lev.points) >= self.orbit_cap:
                            raise OrbitCapError(
                                f"chain orbit exceeds {self.orbit_cap}")
                        ji = len(lev.points)
                        lev.index[key] = ji
                        lev.points.append(img)
                        lev.parent.append((pi, gi))
                        progress = True
                    else:
                        lev.pending.append((pi, gi, ji))

    def _step(self, l):
        lev = self.levels[l]
        pi, gi, ji = lev.pending.popleft()
        g, ginv = lev.gens[gi], lev.geninv[gi]
        a = self.ctx.matmul(g, lev.trans_at(pi)) if pi else g
        r = self.ctx.matmul(lev.tinv_at(ji), a, cache_left=False) if ji else a
        if r.key() == self.idkey:
            return
        b = self.ctx.matmul(ginv, lev.trans_at(ji)) if ji else ginv
        rinv = self.ctx.matmul(lev.tinv_at(pi), b, cache_left=False) if pi else b
        res = self._sift_pair((r, rinv), l + 1)
        if res is not None:
            self._install(*res)

    # -- membership and streaming ----------------------------------------

    def residue(self, vm):
        """Sift a VecMat through the chain; identity residue means member."""
        r = vm
        for lev in self.chain():
            img = self.ctx.matvec(r, *lev.base)
            idx = lev.index.get(_pkey(img))
            if idx is None:
                return r
            if idx:
                r = self.ctx.matmul(lev.tinv_at(idx), r, cache_left=False)
        return r

    def is_member(self, vm):
        return self.residue(vm).key() == self.idkey

    def elements(self):
        """Yield every group element exactly once, deterministically."""
        levels = self.chain()
        if not levels:
            yield self.identity
            return

        def rec(l, acc):
            lev = levels[l]
            last = l + 1 == len(levels)
            for i in range(len(lev.points)):
                if i == 0:
                    part = acc
                elif acc is None:
                    part = lev.trans_at(i)
                else:
                    part = self.ctx.matmul(acc, lev.trans_at(i))
                if last:
                    yield part if part is not None else self.identity
                else:
                    yield from rec(l + 1, part)
                if part is not None and part is not acc and i and acc is not None:
                    part._lin = None

        yield from rec(0, None)

    # -- orbits and stabilizers --------------------------------------------

    def vector_orbit(self, seed, cap=None, edges=True):
        """BFS orbit of a vector (arr, den) under the original generators.

        Transversal matrices are reconstructed lazily from parent pointers,
        so large orbits only pay for their points.  Non-tree edges are only
        recorded when ``edges`` is set; orbits used purely for their size or
        point set should pass ``edges=False``.
        """
        cap = self.orbit_cap if cap is None else cap
        seed = igcd_reduce(np.asarray(seed[0]), seed[1])
        orb = VectorOrbit(self, seed)
        queue = deque([0])
        while queue:
            pi = queue.popleft()
            for gi, g in enumerate(self.gens):
                img = self.ctx.matvec(g, *orb.points[pi])
                key = _pkey(img)
                ji = orb.index.get(key)
                if ji is None:
                    if len(orb.points) >= cap:
                        raise OrbitCapError(f"orbit exceeds cap {cap}")
                    ji = len(orb.points)
                    orb.index[key] = ji
                    orb.points.append(img)
                    orb.parent.append((pi, gi))
                    queue.append(ji)
                elif edges:
                    orb.edges.append((pi, gi, ji))
        return orb

    def stabilizer_pairs(self, seed, cap=None, candidates=None):
        """Generators of the stabilizer of a vector, with order certificate.

        When a candidate pool is supplied (typically the closure of the
        generators under conjugation), the pool members fixing the vector are
        tried first: if the group they generate has order |G| / |orbit|, the
        orbit-stabilizer identity proves it is the full stabilizer and no
        Schreier sweep is run.  Otherwise Schreier generators are swept in
        discovery order, stopping as soon as the generated subgroup reaches
        the same certified order.
        """
        seed = igcd_reduce(np.asarray(seed[0]), seed[1])
        total = self.order()
        if candidates is not None:
            orb = self.vector_orbit(seed, cap, edges=False)
            size = len(orb.points)
            if total % size:
                raise RuntimeError("orbit size does not divide group order")
            target = total // size
            fixing = [c for c in candidates
                      if self.ctx.fixes_vector(c, *orb.points[0])]
            sub = Engine(self.ctx, self.n, fixing, hints=self.hints,
                         orbit_cap=self.orbit_cap)
            if sub.order() == target:
                return sub.gens, target, orb
        orb = self.vector_orbit(seed, cap)
        size = len(orb.points)
        if total % size:
            raise RuntimeError("orbit size does not divide group order")
        target = total // size
        subgens = []
        sub = Engine(self.ctx, self.n, [], hints=self.hints,
                     orbit_cap=self.orbit_cap)
        if target > 1:
            done = False
            for pi, gi, ji in orb.edges:
                r = self._schreier(orb, pi, gi, ji)
                if r.key() != self.idkey and not sub.is_member(r):
                    subgens.append(r)
                    sub = Engine(self.ctx, self.n, subgens, hints=self.hints,
                                 orbit_cap=self.orbit_cap)
                    if sub.order() == target:
                        done = True
                        break
            if not done and sub.order() != target:
                raise RuntimeError("stabilizer sweep incomplete")
        return subgens, target, orb

    def _schreier(self, orb, pi, gi, ji):
        g = self.gens[gi]
        a = self.ctx.matmul(g, orb.transversal(pi)) if pi else g
        if ji:
            return self.ctx.matmul(orb.inverse(ji), a, cache_left=False)
        return a


class VectorOrbit:
    """Orbit of a vector with lazy transversal matrices and inverses."""

    __slots__ = ("engine", "points", "index", "parent", "edges", "_trans",
                 "_tinv")

    def __init__(self, engine, seed):
        self.engine = engine
        self.points = [seed]
        self.index = {_pkey(seed): 0}
        self.parent = [None]
        self.edges = []
        self._trans = {0: engine.identity}
        self._tinv = {0: engine.identity}

    def __len__(self):
        return len(self.points)

    def transversal(self, i):
        ctx = self.engine.ctx
        for j in [k for k in self._walk(i) if k not in self._trans]:
            pi, gi = self.parent[j]
            g = self.engine.gens[gi]
            self._trans[j] = ctx.matmul(g, self._trans[pi]) if pi else g
        return self._trans[i]

    def inverse(self, i):
        ctx = self.engine.ctx
        for j in [k for k in self._walk(i) if k not in self._tinv]:
            pi, gi = self.parent[j]
            self._tinv[j] = ctx.matmul(self._tinv[pi],
                                       self.engine.geninv[gi],
                                       cache_left=False) \
                if pi else self.engine.geninv[gi]
        return self._tinv[i]

    def _walk(self, i):
        path = []
        while i:
            path.append(i)
            i = self.parent[i][0]
        path.reverse()
        return path


# -- element orders ------------------------------------------------------------


def vm_pow(ctx, vm, e):
    n = vm.arr.shape[1]
    out = ctx.identity(n)
    b = vm
    while e:
        if e & 1:
            out = ctx.matmul(b, out)
        e >>= 1
        if e:
            b = ctx.matmul(b, b)
    return out


def element_order(ctx, shadow, vm, cap=10**6):
    """Multiplicative order via the mod-p shadow, then confirmed exactly.

    The shadow order k divides the exact order, so only multiples of k
    need exact confirmation.
    """
    n = vm.arr.shape[1]
    gp = shadow.vm_matrix(vm)
    ident = np.eye(n, dtype=np.int64)
    cur = gp
    k = 1
    while not np.array_equal(cur, ident):
        cur = (cur @ gp) % shadow.p
        k += 1
        if k > cap:
            raise RuntimeError(f"element order exceeds cap {cap}")
    idkey = ctx.identity(n).key()
    mult = 1
    while mult * k <= cap:
        if vm_pow(ctx, vm, mult * k).key() == idkey:
            return mult * k
        mult += 1
    raise RuntimeError(f"element order exceeds cap {cap}")


# -- certified fixed-space classification ---------------------------------------


class _FixClass:
    __slots__ = ("space", "block", "count", "elements")

    def __init__(self, space, block):
        self.space = space
        self.block = block
        self.count = 0
        self.elements = []


class FixClassifier:
    """Group streamed elements by exact fixed space.

    Elements are bucketed by the mod-p kernel of g - 1.  A bucket hit is
    only trusted when the exact class dimension equals the shadow nullity
    and the element fixes the class basis by an exact integer identity;
    those two facts pin the exact fixed space (its dimension is squeezed
    between the certified lower bound and the shadow upper bound).  In all
    other cases the exact kernel is computed directly.
    """

    def __init__(self, ctx, dim, keep=None):
        self.ctx = ctx
        self.n = dim
        self.shadow = ModPContext(ctx)
        self.keep = keep
        self.classes = []
        self.buckets = {}

    def add(self, vm):
        p = self.shadow.p
        gp = self.shadow.vm_matrix(vm)
        diag = np.arange(self.n)
        gp[diag, diag] = (gp[diag, diag] - 1) % p
        ker = self.shadow.kernel(gp)
        nullity = ker.shape[0]
        key = ker.tobytes()
        bucket = self.buckets.get(key)
        if bucket is not None:
            if nullity == 0:
                return self._hit(bucket[0], vm)
            for ci in bucket:
                cl = self.classes[ci]
                if cl.space.dim != nullity or cl.block is None:
                    continue
                lin = self.ctx.linearize(vm, cache=False)
                prod = imatmul(lin, cl.block)
                ok = np.array_equal(prod, cl.block if vm.den == 1
                                    else cl.block * vm.den)
                if ok:
                    return self._hit(ci, vm)
        space = self._exact_fixed(vm) if nullity else Subspace.zero(self.n)
        if bucket is not None:
            for ci in bucket:
                if self.classes[ci].space == space:
                    return self._hit(ci, vm)
        ci = len(self.classes)
        self.classes.append(_FixClass(space, self._block(space)))
        self.buckets.setdefault(key, []).append(ci)
        return self._hit(ci, vm)

    def _hit(self, ci, vm):
        cl = self.classes[ci]
        cl.count += 1
        if self.keep is not None and self.keep(cl.space.dim):
            cl.elements.append(vm)
        return ci

    def _exact_fixed(self, vm):
        rows = self.ctx.unvecmat(vm)
        mat = ExactMatrix(rows) - ExactMatrix.identity(self.n)
        return kernel(mat)

    def _block(self, space):
        if not space.basis:
            return None
        cols = [self.ctx.vec(list(b)) for b in space.basis]
        if any(arr.dtype == object for arr, _ in cols):
            return None
        out = np.zeros((len(cols[0][0]), len(cols)), dtype=np.int64)
        for j, (arr, _) in enumerate(cols):
            out[:, j] = arr
        return out


# -- closures --------------------------------------------------------------


def conjugation_closure(engine, seeds, cap=200000):
    """Closure of seed elements under conjugation by the group generators."""
    ctx = engine.ctx
    seen = set()
    out = []
    queue = deque()
    for s in seeds:
        if s.key() not in seen:
            seen.add(s.key())
            out.append(s)
            queue.append(s)
    while queue:
        vm = queue.popleft()
        for g, gi in zip(engine.gens, engine.geninv):
            c = ctx.matmul(ctx.matmul(g, vm), gi, cache_left=False)
            if c.key() not in seen:
                if len(out) >= cap:
                    raise OrbitCapError(f"conjugation closure exceeds {cap}")
                seen.add(c.key())
                out.append(c)
                queue.append(c)
    return out


def subspace_orbit(mats, space, cap=100000):
    """Orbit of a Subspace under exact matrices, in BFS discovery order."""
    seen = {space}
    out = [space]
    queue = deque([space])
    while queue:
        s = queue.popleft()
        for m in mats:
            t = s.apply(m)
            if t not in seen:
                if len(out) >= cap:
                    raise OrbitCapError(f"subspace orbit exceeds {cap}")
                seen.add(t)
                out.append(t)
                queue.append(t)
    return out
