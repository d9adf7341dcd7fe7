"""Integer-domain subspace arithmetic for fixed-space lattices.

A subspace of K^n over the cyclotomic field K of degree d is stored as a
canonical integer matrix: the reduced row echelon form (over Q) of its
rational coordinate space inside Q^(n*d), with primitive rows and positive
leading entries.  The representation is exact, hashable and closed under
the group action and under intersection, which keeps lattice closures off
the slow exact-scalar path.
"""

import math

import numpy as np

_GUARD = 1 << 60


def _as_object(arr):
    out = np.empty(arr.shape, dtype=object)
    flat = out.reshape(-1)
    src = arr.reshape(-1)
    for i in range(src.size):
        flat[i] = int(src[i])
    return out


def _gcd_row(row):
    g = 0
    for x in row:
        g = math.gcd(g, abs(int(x)))
        if g == 1:
            break
    return g


def rref_int(mat):
    """Canonical RREF-over-Q of integer rows: primitive, leading entry > 0.

    Fraction-free elimination with per-row gcd reduction; upcasts to exact
    Python integers when int64 could overflow.
    """
    cols = mat.shape[1]
    if mat.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.int64)
    m = np.array(mat, copy=True)
    rows = m.shape[0]
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        sel = None
        for rr in range(r, rows):
            if m[rr, c]:
                sel = rr
                break
        if sel is None:
            continue
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        if m[r, c] < 0:
            m[r] = -m[r]
        g = _gcd_row(m[r])
        if g > 1:
            m[r] = m[r] // g
        piv = int(m[r, c])
        if m.dtype != object:
            hi = int(np.abs(m).max(initial=0))
            if hi and piv * hi * 2 > _GUARD:
                m = _as_object(m)
        for rr in range(rows):
            if rr != r and m[rr, c]:
                f = int(m[rr, c])
                m[rr] = m[rr] * piv - m[r] * f
                g = _gcd_row(m[rr])
                if g > 1:
                    m[rr] = m[rr] // g
        r += 1
    out = []
    for rr in range(rows):
        nz = np.nonzero(m[rr])[0]
        if len(nz):
            out.append((nz[0], m[rr]))
    out.sort(key=lambda t: t[0])
    if not out:
        return np.zeros((0, cols), dtype=np.int64)
    res = np.stack([row for _, row in out])
    if res.dtype == object:
        hi = max(abs(int(x)) for x in res.reshape(-1))
        if hi <= _GUARD:
            res = res.astype(np.int64)
    return res


def kernel_int(mat):
    """Canonical integer basis of {x : mat @ x = 0} over Q."""
    cols = mat.shape[1]
    red = rref_int(mat)
    pivots = [int(np.nonzero(row)[0][0]) for row in red]
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    if not free:
        return np.zeros((0, cols), dtype=np.int64)
    scale = 1
    for r, pc in enumerate(pivots):
        piv = int(red[r, pc])
        scale = scale * piv // math.gcd(scale, piv)
    out = np.zeros((len(free), cols), dtype=object)
    for k, f in enumerate(free):
        out[k, f] = scale
        for r, pc in enumerate(pivots):
            val = int(red[r, f])
            if val:
                out[k, pc] = -val * (scale // int(red[r, pc]))
        g = _gcd_row(out[k])
        if g > 1:
            out[k] = out[k] // g
    return rref_int(out)


class IntSpace:
    """Canonical integer representation of a K-subspace of K^n."""

    __slots__ = ("rows", "key", "qdim", "_eq")

    def __init__(self, rows):
        self.rows = rows
        self.qdim = rows.shape[0]
        if rows.dtype == object:
            self.key = (rows.shape[0], tuple(int(x) for x in rows.reshape(-1)))
        else:
            self.key = (rows.shape[0], rows.tobytes())
        self._eq = None

    def equations(self):
        """Integer rows E with self = {x : E x = 0}."""
        if self._eq is None:
            if self.qdim == 0:
                self._eq = np.eye(self.rows.shape[1], dtype=np.int64)
            else:
                self._eq = kernel_int(self.rows)
        return self._eq

    def contains(self, other):
        if other.qdim > self.qdim:
            return False
        eq = self.equations()
        if eq.shape[0] == 0:
            return True
        if other.qdim == 0:
            return True
        return not np.any(_imat(eq, other.rows.T))

    def intersect(self, other):
        n = self.rows.shape[1]
        if self.qdim == n:
            return other
        if other.qdim == n:
            return self
        if self.qdim == 0 or other.qdim == 0:
            return self if self.qdim == 0 else other
        eqs = _ivstack(self.equations(), other.equations())
        return IntSpace(kernel_int(eqs))

    def apply(self, lin_t):
        """Image under a group element given its transposed linearization."""
        return IntSpace(rref_int(_imat(self.rows, lin_t)))


def _imat(a, b):
    if a.dtype == object or b.dtype == object:
        return a.astype(object) @ b.astype(object)
    hi = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0))
    if hi and hi * a.shape[1] > _GUARD:
        return a.astype(object) @ b.astype(object)
    return a @ b


def _ivstack(a, b):
    if a.dtype == object or b.dtype == object:
        return np.vstack([a.astype(object), b.astype(object)])
    return np.vstack([a, b])


def _mult_by_basis(ctx, coords, j):
    """Coordinates of (field basis element j) * vector, per coordinate slot."""
    d = ctx.degree
    n = len(coords) // d
    mult = ctx.mult  # (d, d, d): e_a * e_b = sum_c mult[a, b, c] e_c
    out = np.zeros(n * d, dtype=object)
    for k in range(n):
        seg = coords[k * d:(k + 1) * d]
        out[k * d:(k + 1) * d] = seg.astype(object) @ mult[:, j, :].astype(object)
    return out


def intspace_from_subspace(ctx, space):
    """IntSpace of an exact Subspace: Q-rows spanning the K-span."""
    d = ctx.degree
    n = space.ambient_dim
    if not space.basis:
        return IntSpace(np.zeros((0, n * d), dtype=np.int64))
    rows = []
    for v in space.basis:
        arr, _ = ctx.vec(list(v))
        for j in range(d):
            rows.append(_mult_by_basis(ctx, np.asarray(arr), j))
    return IntSpace(rref_int(np.stack(rows)))


def subspace_from_intspace(ctx, n, ispace):
    """Exact Subspace from integer Q-rows, re-canonicalized over K."""
    from .linalg import Subspace
    vecs = [ctx.unvec(np.asarray(row, dtype=object), 1)
            for row in ispace.rows]
    return Subspace(n, vecs)
