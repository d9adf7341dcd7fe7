"""Exact dense linear algebra over cyclotomic scalars.

Vectors and matrices are immutable tuples of Cyclotomic entries.  Subspaces
are kept in reduced row echelon form, which makes equality, hashing, and
membership exact and canonical.  The symplectic operations (complements,
form-standardizing bases, isotropy tests) all preserve exactness; no square
roots are ever taken.
"""

import random
from fractions import Fraction

from .cyclo import Cyclotomic, format_literal, parse_literal, root_of_unity

_ZERO = Cyclotomic()
_ONE = Cyclotomic.from_rational(1)


def _coerce(x):
    c = Cyclotomic._coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot use {type(x).__name__} as a scalar")
    return c


class ExactVector:
    __slots__ = ("entries",)

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple(_coerce(e) for e in entries))

    def __setattr__(self, name, value):
        raise AttributeError("ExactVector is immutable")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, ExactVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        return ExactVector(a + b for a, b in zip(self.entries, other.entries, strict=True))

    def __sub__(self, other):
        return ExactVector(a - b for a, b in zip(self.entries, other.entries, strict=True))

    def __rmul__(self, scalar):
        s = _coerce(scalar)
        return ExactVector(s * e for e in self.entries)

    def __neg__(self):
        return ExactVector(-e for e in self.entries)

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def conjugate(self):
        return ExactVector(e.conjugate() for e in self.entries)

    def dot(self, other):
        total = _ZERO
        for a, b in zip(self.entries, other.entries, strict=True):
            total = total + a * b
        return total

    def hermitian(self, other):
        """Standard hermitian pairing, conjugate-linear in self."""
        total = _ZERO
        for a, b in zip(self.entries, other.entries, strict=True):
            total = total + a.conjugate() * b
        return total

    def __repr__(self):
        return "(" + ", ".join(format_literal(e) for e in self.entries) + ")"


class ExactMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        object.__setattr__(
            self, "rows", tuple(tuple(_coerce(e) for e in row) for row in rows))
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged rows")

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[_ONE if r == c else _ZERO for c in range(n)] for r in range(n)])

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[_ZERO] * ncols for _ in range(nrows)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return ExactMatrix([[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows, strict=True)])

    def __sub__(self, other):
        return ExactMatrix([[a - b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows, strict=True)])

    def __neg__(self):
        return ExactMatrix([[-a for a in row] for row in self.rows])

    def __rmul__(self, scalar):
        s = _coerce(scalar)
        return ExactMatrix([[s * a for a in row] for row in self.rows])

    def __matmul__(self, other):
        if isinstance(other, ExactVector):
            if self.ncols != len(other):
                raise ValueError("dimension mismatch")
            return ExactVector(
                sum((self.rows[r][k] * other[k] for k in range(self.ncols)), _ZERO)
                for r in range(self.nrows))
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        ot = other.transpose()
        return ExactMatrix(
            [[sum((a * b for a, b in zip(row, col)), _ZERO) for col in ot.rows]
             for row in self.rows])

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def transpose(self):
        return ExactMatrix(list(zip(*self.rows))) if self.rows else self

    def conjugate(self):
        return ExactMatrix([[a.conjugate() for a in row] for row in self.rows])

    def conjugate_transpose(self):
        return self.transpose().conjugate()

    def column(self, c):
        return ExactVector(row[c] for row in self.rows)

    def row(self, r):
        return ExactVector(self.rows[r])

    def trace(self):
        return sum((self.rows[k][k] for k in range(self.nrows)), _ZERO)

    def is_identity(self):
        return self == ExactMatrix.identity(self.nrows)

    def inverse(self):
        n = self.nrows
        if n != self.ncols:
            raise ValueError("not square")
        aug = [list(self.rows[r]) + [_ONE if c == r else _ZERO for c in range(n)]
               for r in range(n)]
        red, rank, _ = _eliminate(aug, n + n)
        if rank != n:
            raise ValueError("singular matrix")
        return ExactMatrix([row[n:] for row in red[:n]])

    def __repr__(self):
        return "ExactMatrix([" + ",\n             ".join(
            "[" + ", ".join(format_literal(e) for e in row) + "]"
            for row in self.rows) + "])"


def _eliminate(rows, ncols):
    """In-place reduced row echelon; returns (rows, rank, pivots)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        sel = None
        for rr in range(r, len(rows)):
            if not rows[rr][c].is_zero():
                sel = rr
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for rr in range(len(rows)):
            if rr != r and not rows[rr][c].is_zero():
                f = rows[rr][c]
                rows[rr] = [x - f * y for x, y in zip(rows[rr], rows[r])]
        pivots.append(c)
        r += 1
    return rows, len(pivots), pivots


def rref(matrix):
    """Reduced row echelon form: (R, rank, pivot columns)."""
    red, rank, pivots = _eliminate(matrix.rows, matrix.ncols)
    return ExactMatrix(red), rank, pivots


def solve(matrix, rhs):
    """One exact solution of M x = b, or None if inconsistent."""
    n = matrix.ncols
    aug = [list(row) + [rhs[r]] for r, row in enumerate(matrix.rows)]
    red, rank, pivots = _eliminate(aug, n + 1)
    if n in pivots:
        return None
    x = [_ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = red[r][n]
    return ExactVector(x)


class Subspace:
    """Canonical (RREF basis) subspace of the ambient coordinate space."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, vectors):
        rows = [list(v) for v in vectors]
        red, rank, _ = _eliminate(rows, ambient_dim) if rows else ([], 0, [])
        basis = tuple(ExactVector(red[r]) for r in range(rank))
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, ExactMatrix.identity(ambient_dim).rows)

    @property
    def dim(self):
        return len(self.basis)

    def basis_matrix(self):
        return ExactMatrix([list(v) for v in self.basis]) if self.basis \
            else ExactMatrix.zeros(0, self.ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def contains(self, vector):
        residue = list(vector)
        for bv in self.basis:
            lead = next(k for k, e in enumerate(bv) if not e.is_zero())
            f = residue[lead]
            if not f.is_zero():
                residue = [x - f * y for x, y in zip(residue, bv)]
        return all(x.is_zero() for x in residue)

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def equations(self):
        """Matrix E whose kernel is exactly this subspace."""
        if not self.basis:
            return ExactMatrix.identity(self.ambient_dim)
        return kernel(self.basis_matrix()).basis_matrix()

    def intersect(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.dim == self.ambient_dim:
            return other
        if other.dim == other.ambient_dim:
            return self
        eq1 = self.equations()
        eq2 = other.equations()
        stacked = ExactMatrix(list(eq1.rows) + list(eq2.rows))
        return kernel(stacked)

    def add(self, other):
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def apply(self, matrix):
        """Image of the subspace under an invertible matrix."""
        return Subspace(self.ambient_dim, [matrix @ v for v in self.basis])

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def kernel(matrix):
    """{x : M x = 0} as a canonical Subspace of the column space."""
    n = matrix.ncols
    red, rank, pivots = _eliminate(matrix.rows, n)
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for f in free:
        v = [_ZERO] * n
        v[f] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        vecs.append(v)
    return Subspace(n, vecs)


class SymplecticSpace:
    __slots__ = ("dim", "form")

    def __init__(self, dim, form=None):
        if dim % 2:
            raise ValueError("symplectic spaces are even dimensional")
        if form is None:
            form = standard_form(dim)
        if form.transpose() != -form:
            raise ValueError("form is not antisymmetric")
        red, rank, _ = _eliminate(form.rows, dim)
        if rank != dim:
            raise ValueError("form is degenerate")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "form", form)

    def __setattr__(self, name, value):
        raise AttributeError("SymplecticSpace is immutable")

    def omega(self, u, v):
        return u.dot(self.form @ v)

    def is_symplectic_matrix(self, g):
        return g.transpose() @ self.form @ g == self.form


def standard_form(dim):
    n = dim // 2
    rows = [[_ZERO] * dim for _ in range(dim)]
    for k in range(n):
        rows[k][k + n] = _ONE
        rows[k + n][k] = -_ONE
    return ExactMatrix(rows)


def fixed_space(gens, ambient_dim=None):
    """Common fixed space of the group generated by gens."""
    gens = list(gens)
    if not gens:
        if ambient_dim is None:
            raise ValueError("empty generator list needs an ambient dimension")
        return Subspace.full(ambient_dim)
    n = gens[0].nrows
    if any(g.nrows != n or g.ncols != n for g in gens):
        raise ValueError("dimension mismatch")
    ident = ExactMatrix.identity(n)
    stacked = []
    for g in gens:
        stacked.extend((g - ident).rows)
    return kernel(ExactMatrix(stacked))


def averaging_projector(elements):
    """(1/|H|) sum of a full group enumeration; idempotent by construction."""
    elements = list(elements)
    if not elements:
        raise ValueError("cannot average over an empty collection")
    n = elements[0].nrows
    total = ExactMatrix.zeros(n, n)
    for g in elements:
        total = total + g
    return Fraction(1, len(elements)) * total


def image(matrix):
    """Column space as a canonical Subspace."""
    return Subspace(matrix.nrows, matrix.transpose().rows)


def symplectic_complement(space, sp):
    if space.ambient_dim != sp.dim:
        raise ValueError("ambient dimension mismatch")
    if not space.basis:
        return Subspace.full(sp.dim)
    return kernel(space.basis_matrix() @ sp.form)


def restrict(gens, space, sp):
    """Action matrices on an invariant subspace, plus the restricted Gram.

    The restricted matrix A of g satisfies g b_j = sum_i A[i][j] b_i over the
    canonical basis, so restriction is a group homomorphism.
    """
    basis = space.basis
    bt = space.basis_matrix().transpose()
    out = []
    for g in gens:
        cols = []
        for b in basis:
            coords = solve(bt, g @ b)
            if coords is None:
                raise ValueError("subspace is not invariant under the generators")
            cols.append(coords)
        out.append(ExactMatrix(list(zip(*[list(c) for c in cols]))))
    gram = ExactMatrix([[sp.omega(a, b) for b in basis] for a in basis])
    red, rank, _ = _eliminate(gram.rows, gram.ncols)
    if rank != len(basis):
        raise ValueError("form is degenerate on the subspace")
    return out, gram


def symplectic_basis(gram):
    """Change of basis B with B^T gram B = c * standard block form.

    The scalar c is the first pairing value encountered and is reported, not
    absorbed: absorbing it would need a square root outside the field.
    Returns (B, c).
    """
    k = gram.nrows
    if k % 2 or gram.transpose() != -gram:
        raise ValueError("need an antisymmetric matrix of even size")
    remaining = [ExactVector([_ONE if i == j else _ZERO for j in range(k)])
                 for i in range(k)]
    pair_value = lambda u, v: u.dot(gram @ v)
    es, fs = [], []
    c = None
    while remaining:
        e = remaining.pop(0)
        partner = None
        for idx, v in enumerate(remaining):
            t = pair_value(e, v)
            if not t.is_zero():
                partner = idx
                break
        if partner is None:
            raise ValueError("form is degenerate")
        f = remaining.pop(partner)
        t = pair_value(e, f)
        if c is None:
            c = t
        else:
            f = (c / t) * f
        es.append(e)
        fs.append(f)
        reduced = []
        for v in remaining:
            a = pair_value(e, v) / c
            b = pair_value(f, v) / c
            reduced.append(v - a * f + b * e)
        remaining = [v for v in reduced if not v.is_zero()]
    cols = es + fs
    b = ExactMatrix(list(zip(*[list(v) for v in cols])))
    return b, c


def spin(seed, gens):
    """Smallest generator-invariant subspace containing the seed."""
    n = len(seed)
    space = Subspace(n, [seed])
    frontier = list(space.basis)
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = g @ v
                if not space.contains(w):
                    space = Subspace(n, list(space.basis) + [w])
                    new.append(w)
        frontier = new
        if space.dim == n:
            break
    return space


def is_isotropic(space, sp):
    if space.ambient_dim != sp.dim:
        raise ValueError("ambient dimension mismatch")
    for i, u in enumerate(space.basis):
        for v in space.basis[i:]:
            if not sp.omega(u, v).is_zero():
                return False
    return True


def is_lagrangian(space, sp):
    return space.dim * 2 == sp.dim and is_isotropic(space, sp)


def _element_order(g, cap=1000):
    power = g
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power @ g
    raise ValueError("element order exceeds cap")


def find_invariant_lagrangian(gens, sp, elements=None, extra_seeds=(),
                              attempts=32, seed=0):
    """Search for a gens-invariant Lagrangian subspace; None if not found.

    Seeds tried in order: standard basis vectors, supplied extra seeds,
    eigenvectors of supplied group elements for root-of-unity eigenvalues
    (eigenvalues of finite-order elements always lie in a cyclotomic field,
    so these kernels are exact), then seeded pseudo-random rational
    combinations.  This is a semi-decision procedure.
    """
    n = sp.dim
    ident = ExactMatrix.identity(n)

    def candidates():
        for k in range(n):
            yield ExactVector([_ONE if j == k else _ZERO for j in range(n)])
        yield from extra_seeds
        for g in elements or []:
            if g.is_identity():
                continue
            order = _element_order(g)
            for k in range(order):
                lam = root_of_unity(order, k)
                eig = kernel(g - lam * ident)
                if 0 < eig.dim < n:
                    yield from eig.basis
        rng = random.Random(seed)
        for _ in range(attempts):
            yield ExactVector([Fraction(rng.randint(-3, 3)) for _ in range(n)])

    seen = set()
    for cand in candidates():
        if cand.is_zero() or cand in seen:
            continue
        seen.add(cand)
        space = spin(cand, gens)
        if is_lagrangian(space, sp):
            return space
    return None


# -- serialization --------------------------------------------------------------


def vector_to_json(v):
    return [format_literal(e) for e in v]


def vector_from_json(data):
    return ExactVector([parse_literal(s) for s in data])


def matrix_to_json(m):
    return [[format_literal(e) for e in row] for row in m.rows]


def matrix_from_json(data):
    return ExactMatrix([[parse_literal(s) for s in row] for row in data])


def subspace_to_json(s):
    return {"ambient_dim": s.ambient_dim,
            "basis": [vector_to_json(v) for v in s.basis]}


def subspace_from_json(data):
    return Subspace(data["ambient_dim"],
                    [vector_from_json(v) for v in data["basis"]])
