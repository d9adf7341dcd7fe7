"""Internal integer-coordinate layer for cyclotomic matrix arithmetic.

A scalar in Q(zeta_m) is a length-d integer vector of power-basis
coordinates plus a positive denominator (d = phi(m)).  A matrix over the
field is stored in "vecmat" form: an (N*d, N) integer array whose column c
stacks the coordinate vectors of the entries of column c.  Multiplying on
the left requires the "linearized" (N*d, N*d) form, where each entry is
replaced by its d x d multiplication matrix; this realizes the field matrix
as a rational matrix acting on coordinate vectors, so products reduce to
integer matmuls.

All arrays are int64 with an overflow guard; computations that might exceed
the guard fall back to Python-integer (object dtype) arrays, which are slower
but still exact.  A mod-p companion context supplies fast shadows used only
for grouping and candidate generation; every shadow-derived fact is certified
by an exact integer identity before use.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import Symbol, cyclotomic_poly

from .cyclo import Cyclotomic

_GUARD = 2**62


def _as_exact(arr):
    """Promote to object dtype so numpy products use Python integers."""
    return np.array(arr, dtype=object)


def _fit_int64(arr):
    if arr.dtype == object:
        m = max((abs(int(x)) for x in arr.flat), default=0)
        if m < _GUARD:
            return arr.astype(np.int64)
    return arr


def imatmul(a, b):
    """Exact integer matrix product with int64 overflow protection."""
    if a.dtype == np.int64 and b.dtype == np.int64:
        ma = int(np.abs(a).max(initial=0))
        mb = int(np.abs(b).max(initial=0))
        k = a.shape[-1]
        if ma and mb and ma * mb > _GUARD // max(k, 1):
            return _fit_int64(_as_exact(a) @ _as_exact(b))
        return a @ b
    return _fit_int64(_as_exact(a) @ _as_exact(b))


def igcd_reduce(arr, den):
    """Divide an integer array and denominator by their common gcd."""
    den = int(den)
    if den < 0:
        arr = -arr
        den = -den
    if arr.dtype == object:
        g = 0
        for x in arr.flat:
            g = math.gcd(g, int(x))
            if g == 1:
                break
    else:
        g = int(np.gcd.reduce(np.abs(arr), axis=None, initial=0))
    g = math.gcd(g, den)
    if g > 1:
        arr = arr // g
        den //= g
    return _fit_int64(arr) if arr.dtype == object else arr, den


class VecMat:
    """Matrix over a cyclotomic field in stacked-coordinate integer form."""

    __slots__ = ("arr", "den", "_key", "_lin")

    def __init__(self, arr, den):
        self.arr = arr
        self.den = den
        self._key = None
        self._lin = None

    def key(self):
        if self._key is None:
            a = self.arr
            if a.dtype == object:
                a = _fit_int64(a)
                if a.dtype == object:
                    raise OverflowError("matrix coordinates exceed int64")
            self._key = self.den.to_bytes(16, "big", signed=True) + a.tobytes()
        return self._key

    def __eq__(self, other):
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


@lru_cache(maxsize=None)
def field_context(m):
    return FieldContext(m)


class FieldContext:
    """Precomputed reduction data for power-basis arithmetic in Q(zeta_m)."""

    def __init__(self, m):
        if m < 1 or m % 4 == 2:
            raise ValueError(f"invalid conductor {m}")
        self.m = m
        x = Symbol("x")
        poly = cyclotomic_poly(m, x).as_poly(x)
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]
        d = len(coeffs) - 1
        self.degree = d
        # REDM[j] = coordinates of x^j reduced mod the m-th cyclotomic poly
        redm = np.zeros((m, d), dtype=np.int64)
        for j in range(min(d, m)):
            redm[j, j] = 1
        head = np.array(coeffs[:d], dtype=np.int64)
        for j in range(d, m):
            prev = redm[j - 1]
            row = np.zeros(d, dtype=np.int64)
            row[1:] = prev[:-1]
            row -= prev[d - 1] * head
            redm[j] = row
        self.redm = redm
        # MULT[k, j] = coordinates of x^(k+j) mod m
        idx = (np.arange(d)[:, None] + np.arange(d)[None, :]) % m
        self.mult = self.redm[idx]
        self._to_cache = {}
        self._from_cache = {}

    # -- scalar conversion ---------------------------------------------------

    def scalar_coords(self, value):
        """Power-basis coordinates of a Cyclotomic as (int vector, den)."""
        c = Cyclotomic._coerce(value)
        hit = self._to_cache.get(c)
        if hit is not None:
            return hit
        if self.m % c.conductor != 0:
            raise ValueError(f"conductor {c.conductor} does not divide {self.m}")
        scale = self.m // c.conductor
        den = 1
        for _, q in c.items:
            den = den * q.denominator // math.gcd(den, q.denominator)
        vec = np.zeros(self.degree, dtype=np.int64)
        for j, q in c.items:
            vec += (q.numerator * (den // q.denominator)) * self.redm[(j * scale) % self.m]
        vec.setflags(write=False)
        self._to_cache[c] = (vec, den)
        return vec, den

    def coords_scalar(self, vec, den):
        if vec.dtype == object:
            return Cyclotomic(self.m, {k: Fraction(int(a), den)
                                       for k, a in enumerate(vec) if a})
        key = (den, vec.tobytes())
        hit = self._from_cache.get(key)
        if hit is None:
            coeffs = {k: Fraction(int(a), den) for k, a in enumerate(vec) if a}
            hit = self._from_cache[key] = Cyclotomic(self.m, coeffs)
        return hit

    # -- vectors and matrices ------------------------------------------------

    def vec(self, entries):
        """Stacked coordinates of a field vector: ((N*d,) ints, den)."""
        cols = [self.scalar_coords(e) for e in entries]
        den = 1
        for _, dd in cols:
            den = den * dd // math.gcd(den, dd)
        arr = np.concatenate([v * (den // dd) for v, dd in cols])
        return igcd_reduce(arr, den)

    def unvec(self, arr, den):
        d = self.degree
        n = len(arr) // d
        return [self.coords_scalar(arr[k * d:(k + 1) * d], den) for k in range(n)]

    def vecmat(self, rows):
        """VecMat of a square matrix given as rows of Cyclotomic entries."""
        n = len(rows)
        d = self.degree
        coords = np.zeros((n, n, d), dtype=np.int64)
        den = 1
        fracs = [[self.scalar_coords(e) for e in row] for row in rows]
        for row in fracs:
            for _, dd in row:
                den = den * dd // math.gcd(den, dd)
        for r in range(n):
            for c in range(n):
                v, dd = fracs[r][c]
                coords[r, c] = v * (den // dd)
        arr = coords.transpose(0, 2, 1).reshape(n * d, n)
        arr, den = igcd_reduce(arr, den)
        return VecMat(arr, den)

    def unvecmat(self, vm):
        d = self.degree
        n = vm.arr.shape[1]
        coords = vm.arr.reshape(n, d, n)
        return [[self.coords_scalar(coords[r, :, c], vm.den) for c in range(n)]
                for r in range(n)]

    def identity(self, n):
        arr = np.zeros((n * self.degree, n), dtype=np.int64)
        for r in range(n):
            arr[r * self.degree, r] = 1
        return VecMat(arr, 1)

    def linearize(self, vm, cache=True):
        """(N*d, N*d) rational-action form of a VecMat.

        Cached on the VecMat by default; pass cache=False for throwaway
        left factors (transversal elements) to keep memory flat.
        """
        if vm._lin is not None:
            return vm._lin
        d = self.degree
        n = vm.arr.shape[1]
        coords = vm.arr.reshape(n, d, n).transpose(0, 2, 1)
        if coords.dtype == object:
            t = np.tensordot(coords, _as_exact(self.mult), axes=([2], [0]))
        else:
            hi = int(np.abs(coords).max(initial=0))
            hm = int(np.abs(self.mult).max(initial=0))
            if hi and hm and hi * hm > _GUARD // max(d, 1):
                t = np.tensordot(_as_exact(coords), _as_exact(self.mult),
                                 axes=([2], [0]))
            else:
                t = np.tensordot(coords, self.mult, axes=([2], [0]))
        lin = t.transpose(0, 3, 1, 2).reshape(n * d, n * d)
        if lin.dtype == object:
            lin = _fit_int64(lin)
        if cache:
            vm._lin = lin
        return lin

    def matmul(self, a, b, cache_left=True):
        """Product of two VecMats (left factor is linearized on demand)."""
        arr = imatmul(self.linearize(a, cache_left), b.arr)
        arr, den = igcd_reduce(arr, a.den * b.den)
        return VecMat(arr, den)

    def matvec(self, a, vec, den):
        arr = imatmul(self.linearize(a), vec[:, None])[:, 0]
        return igcd_reduce(arr, a.den * den)

    def matvec_block(self, a, block, dens):
        """Apply a VecMat to many stacked coordinate vectors (columns)."""
        out = imatmul(self.linearize(a), block)
        cols = []
        for j in range(block.shape[1]):
            cols.append(igcd_reduce(out[:, j], a.den * dens[j]))
        return cols

    def fixes_vector(self, a, vec, den):
        """Exact check a * v == v via integer arithmetic."""
        arr = imatmul(self.linearize(a), vec[:, None])[:, 0]
        if a.den == 1:
            return bool(np.array_equal(arr, vec))
        return bool(np.array_equal(arr, vec * a.den))


# -- mod-p shadows -------------------------------------------------------------


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    dd = n - 1
    r = 0
    while dd % 2 == 0:
        dd //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, dd, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ModPContext:
    """Reduction of field data modulo a prime p = 1 (mod m).

    Everything computed here is advisory: callers must certify conclusions
    with exact integer checks before relying on them.
    """

    def __init__(self, field, start=1 << 20):
        self.field = field
        m = field.m
        p = start + m - start % m + 1
        while not _is_prime(p):
            p += m
        self.p = p
        z = None
        if m == 1:
            z = 1
        else:
            for h in range(2, p):
                cand = pow(h, (p - 1) // m, p)
                if cand != 1 and all(pow(cand, m // q, p) != 1
                                     for q in _prime_divisors(m)):
                    z = cand
                    break
        self.z = z
        self.zpows = np.array([pow(z, k, p) for k in range(field.degree)],
                              dtype=np.int64)

    def vm_matrix(self, vm):
        """(N, N) int64 image of a VecMat mod p."""
        if vm.den % self.p == 0:
            raise ValueError("denominator not invertible mod p")
        d = self.field.degree
        n = vm.arr.shape[1]
        coords = vm.arr.reshape(n, d, n)
        if coords.dtype == object:
            coords = np.array([[int(x) % self.p for x in row]
                               for row in coords.reshape(n * d, n)],
                              dtype=np.int64).reshape(n, d, n)
        else:
            coords = coords % self.p
        out = np.tensordot(self.zpows, coords, axes=([0], [1])) % self.p
        inv = pow(vm.den % self.p, self.p - 2, self.p)
        return (out * inv) % self.p

    def vec_values(self, arr, den):
        if den % self.p == 0:
            raise ValueError("denominator not invertible mod p")
        d = self.field.degree
        n = len(arr) // d
        coords = arr.reshape(n, d) % self.p
        vals = (coords @ self.zpows) % self.p
        inv = pow(int(den) % self.p, self.p - 2, self.p)
        return (vals * inv) % self.p

    def rref(self, mat):
        """Reduced row echelon form mod p; returns (rref, pivot columns)."""
        m = (mat % self.p).astype(np.int64)
        rows, cols = m.shape
        pivots = []
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
            m[r] = (m[r] * pow(int(m[r, c]), self.p - 2, self.p)) % self.p
            for rr in range(rows):
                if rr != r and m[rr, c]:
                    m[rr] = (m[rr] - m[rr, c] * m[r]) % self.p
            pivots.append(c)
            r += 1
        return m[:r], pivots

    def kernel(self, mat):
        """Canonical (rref) basis of the kernel mod p, shape (k, cols)."""
        red, pivots = self.rref(mat)
        cols = mat.shape[1]
        free = [c for c in range(cols) if c not in pivots]
        if not free:
            return np.zeros((0, cols), dtype=np.int64)
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for r, pc in enumerate(pivots):
                basis[i, pc] = (-int(red[r, f])) % self.p
        red2, _ = self.rref(basis)
        return red2


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
