"""Constructors for the symplectic reflection group catalogue.

The seven exceptional groups named Q, R, S1, S2, S3, T and U are built
from reflection root lines stored in data/groups.json; the imprimitive
families, doubled complex reflection groups and SL2 subgroups are built
programmatically.  data/tables.json carries the stabilizer fixtures the
verifier checks against.
"""

import json
from fractions import Fraction
from functools import lru_cache
from hashlib import sha256
from importlib import resources
from math import factorial

from .cyclo import Cyclotomic, parse_literal, root_of_unity
from .linalg import ExactMatrix, ExactVector, SymplecticSpace
from .matgroup import FiniteMatrixGroup

__all__ = [
    "GroupSpec", "QuaternionicStructure", "RootLine", "TableRow",
    "build_gmpn", "build_imprimitive", "build_primitive",
    "build_sl2_subgroup", "build_trivial", "coxeter_h3", "data_checksums",
    "direct_sum", "double", "group_names", "imprimitive_reference",
    "reference_collisions", "reference_fingerprints", "reference_groups",
    "reflection_from_root", "worked_subgroup",
]

_SQRT5 = "E(5)-E(5)^2-E(5)^3+E(5)^4"


# -- data files -------------------------------------------------------------

@lru_cache(maxsize=None)
def _data(name):
    raw = resources.files("sympref.data").joinpath(name).read_bytes()
    return json.loads(raw.decode()), sha256(raw).hexdigest()


def data_checksums():
    """sha256 hex digests of the embedded data files."""
    return {name: _data(name)[1] for name in ("groups.json", "tables.json")}


def group_names():
    return list(_data("groups.json")[0]["groups"])


def _vector(spec):
    scale = parse_literal(spec.get("scale", "1"))
    return ExactVector(scale * parse_literal(c) for c in spec["coords"])


def _matrix(spec):
    scale = parse_literal(spec.get("scale", "1"))
    return ExactMatrix([[scale * parse_literal(c) for c in row]
                        for row in spec["rows"]])


def _normalize_line(v):
    for c in v:
        if not c.is_zero():
            return c.inverse() * v
    raise ValueError("zero vector spans no line")


# -- structures -------------------------------------------------------------

class RootLine:
    """A reflection root: the spanned line plus the literal it came from.

    vector is normalized so its first nonzero coordinate is 1; raw keeps
    the literal's own scale.
    """

    __slots__ = ("vector", "raw", "literal", "source")

    def __init__(self, raw, literal, source=""):
        self.raw = raw if isinstance(raw, ExactVector) else ExactVector(raw)
        self.vector = _normalize_line(self.raw)
        self.literal = literal
        self.source = source

    def __repr__(self):
        return f"<RootLine {self.source or self.literal}>"


class TableRow:
    """One stabilizer fixture: a vector with its expected type and order."""

    __slots__ = ("group", "label", "type_name", "order", "vector", "literal")

    def __init__(self, group, label, type_name, order, vector, literal):
        self.group = group
        self.label = label
        self.type_name = type_name
        self.order = order
        self.vector = vector
        self.literal = literal

    def __repr__(self):
        return (f"<TableRow {self.group} {self.label}: {self.type_name} "
                f"of order {self.order}>")


class QuaternionicStructure:
    """The antilinear map J(x, y) = (-conj(y), conj(x)) on stacked blocks.

    Vectors split as (x, y) with x the first dim/2 coordinates.  J squares
    to -1 and relates to the standard symplectic form by
    omega(u, v) = herm(J u, v), so J-compatible hermitian geometry and the
    symplectic geometry agree.
    """

    __slots__ = ("dim", "_matrix")

    def __init__(self, dim):
        if dim % 2:
            raise ValueError("quaternionic structure needs even dimension")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_matrix", None)

    def __setattr__(self, name, value):
        raise AttributeError("QuaternionicStructure is immutable")

    def apply(self, v):
        n = self.dim // 2
        head = [-(v[k + n].conjugate()) for k in range(n)]
        tail = [v[k].conjugate() for k in range(n)]
        return ExactVector(head + tail)

    def matrix(self):
        """The linear matrix [[0, -I], [I, 0]], so J(v) = matrix @ conj(v)."""
        if self._matrix is None:
            n = self.dim // 2
            rows = [[0] * self.dim for _ in range(self.dim)]
            for k in range(n):
                rows[k][k + n] = -1
                rows[k + n][k] = 1
            object.__setattr__(self, "_matrix", ExactMatrix(rows))
        return self._matrix

    def commutes_with(self, g):
        """Whether g J = J conj(g), i.e. g is quaternion-linear."""
        jm = self.matrix()
        return g @ jm == jm @ g.conjugate()


class GroupSpec:
    """A catalogue group bundled with its fixtures."""

    __slots__ = ("name", "space", "group", "expected_order",
                 "factored_order", "roots", "quaternionic",
                 "crosscheck_generators", "table", "worked_example")

    def __init__(self, **kw):
        for slot in self.__slots__:
            setattr(self, slot, kw.pop(slot))
        if kw:
            raise TypeError(f"unexpected fields {sorted(kw)}")

    def __repr__(self):
        return (f"<GroupSpec {self.name}: dim {self.space.dim}, "
                f"order {self.expected_order}>")


# -- reflections from roots --------------------------------------------------

def reflection_from_root(root, sp=None, j=None):
    """The symplectic reflection acting as -1 on span{a, J a}.

    Takes a RootLine or vector a and returns I - 2 P where P is the
    hermitian projection onto the J-stable plane spanned by a and J(a).
    The result has order two and 2-dimensional moved space, and preserves
    the standard symplectic form because the hermitian complement of a
    J-stable subspace is also its symplectic complement.
    """
    a = root.vector if isinstance(root, RootLine) else ExactVector(root)
    if a.is_zero():
        raise ValueError("zero vector is not a root")
    dim = len(a)
    jmap = j if j is not None else QuaternionicStructure(dim)
    b = jmap.apply(a)
    norm = a.hermitian(a)
    rows = []
    for k in range(dim):
        row = []
        ak, bk = a[k], b[k]
        for l in range(dim):
            val = -((2 * (ak * a[l].conjugate() + bk * b[l].conjugate()))
                    / norm)
            if k == l:
                val = val + Cyclotomic.from_rational(1)
            row.append(val)
        rows.append(row)
    g = ExactMatrix(rows)
    if sp is not None and not sp.is_symplectic_matrix(g):
        raise ValueError("reflection does not preserve the given form")
    return g


# -- monomial and doubled groups ---------------------------------------------

def build_gmpn(m, p, n):
    """The monomial complex reflection group G(m, p, n) on n coordinates.

    Generated by coordinate transpositions, diag(z^p, 1, ..., 1) and
    diag(z, z^-1, 1, ..., 1) for z a primitive m-th root of unity; the
    order is m^n n! / p.
    """
    if m < 1 or n < 1 or p < 1 or m % p:
        raise ValueError("need m, p, n >= 1 with p dividing m")
    gens = []
    for k in range(n - 1):
        rows = [[1 if c == (k + 1 if r == k else k if r == k + 1 else r)
                 else 0 for c in range(n)] for r in range(n)]
        gens.append(ExactMatrix(rows))
    if m > 1:
        z = root_of_unity(m)
        if p != m:
            gens.append(_diagonal(n, {0: z ** p}))
        if n > 1:
            gens.append(_diagonal(n, {0: z, 1: z ** (m - 1)}))
    return FiniteMatrixGroup(gens, dim=n, name=f"G({m},{p},{n})")


def gmpn_order(m, p, n):
    return m ** n * factorial(n) // p


def _diagonal(n, entries):
    rows = [[0] * n for _ in range(n)]
    for k in range(n):
        rows[k][k] = entries.get(k, 1)
    return ExactMatrix(rows)


def double(group, name=None):
    """Embed a linear group symplectically via g -> diag(g, transpose(g)^-1).

    The image preserves the standard form on twice the dimension and is
    isomorphic to the input.
    """
    d = group.dim
    sp = SymplecticSpace(2 * d)
    gens = []
    for g in group.gens:
        h = g.inverse().transpose()
        rows = [[g[r, c] if r < d and c < d
                 else h[r - d, c - d] if r >= d and c >= d
                 else Cyclotomic.from_rational(0)
                 for c in range(2 * d)] for r in range(2 * d)]
        gens.append(ExactMatrix(rows))
    label = name or (f"2x{group.name}" if group.name else None)
    return FiniteMatrixGroup(gens, dim=2 * d, form=sp, name=label)


def direct_sum(a, b, name=None):
    """Symplectic direct sum keeping the standard coordinate pairing.

    Both factors must act on standard symplectic coordinates; their x
    blocks are concatenated, then their y blocks.
    """
    if a.dim % 2 or b.dim % 2:
        raise ValueError("direct_sum needs even-dimensional factors")
    da, db = a.dim // 2, b.dim // 2
    dim = a.dim + b.dim

    def embed(g, offset, half):
        ix = {k: k + offset for k in range(half)}
        ix.update({half + k: da + db + offset + k for k in range(half)})
        rows = [[0] * dim for _ in range(dim)]
        for r in range(dim):
            rows[r][r] = 1
        for r in range(2 * half):
            for c in range(2 * half):
                rows[ix[r]][ix[c]] = g[r, c]
        return ExactMatrix(rows)

    gens = [embed(g, 0, da) for g in a.gens]
    gens += [embed(g, da, db) for g in b.gens]
    label = name or (f"{a.name}x{b.name}" if a.name and b.name else None)
    return FiniteMatrixGroup(gens, dim=dim, form=SymplecticSpace(dim),
                             name=label)


def coxeter_h3():
    """The rank-3 icosahedral Coxeter group as a rational-sqrt5 matrix group."""
    tau = parse_literal(f"(1+{_SQRT5})/2")
    zero = Cyclotomic.from_rational(0)
    one = Cyclotomic.from_rational(1)
    two = Cyclotomic.from_rational(2)
    cartan = [[two, -tau, zero], [-tau, two, -one], [zero, -one, two]]
    gens = []
    for i in range(3):
        rows = [[one if r == c else zero for c in range(3)]
                for r in range(3)]
        for c in range(3):
            rows[i][c] = (one if i == c else zero) - cartan[i][c]
        gens.append(ExactMatrix(rows))
    return FiniteMatrixGroup(gens, dim=3, name="H3")


# -- SL2 subgroups and imprimitive groups ------------------------------------

def _quaternion(x, y, z, w):
    """The 2x2 matrix of the unit quaternion x + yi + zj + wk."""
    i = root_of_unity(4)
    vals = [Cyclotomic._coerce(t) for t in (x, y, z, w)]
    return ExactMatrix([[vals[0] + vals[1] * i, vals[2] + vals[3] * i],
                        [-vals[2] + vals[3] * i, vals[0] - vals[1] * i]])


def build_sl2_subgroup(kind, m=None):
    """A finite subgroup of SL2: cyclic, binary dihedral or binary polyhedral.

    kinds: "cyclic" (order m), "binary_dihedral" (order 4m),
    "binary_tetrahedral" (24), "binary_octahedral" (48),
    "binary_icosahedral" (120).
    """
    sp = SymplecticSpace(2)
    half = Fraction(1, 2)
    if kind == "cyclic":
        if m is None or m < 1:
            raise ValueError("cyclic kind needs m >= 1")
        z = root_of_unity(m)
        gens = [] if m == 1 else [_diagonal(2, {0: z, 1: z ** (m - 1)})]
        return FiniteMatrixGroup(gens, dim=2, form=sp, name=f"C{m}")
    if kind == "binary_dihedral":
        if m is None or m < 1:
            raise ValueError("binary_dihedral kind needs m >= 1")
        z = root_of_unity(2 * m)
        gens = [_diagonal(2, {0: z, 1: z ** (2 * m - 1)}),
                _quaternion(0, 0, 1, 0)]
        return FiniteMatrixGroup(gens, dim=2, form=sp, name=f"BD{4 * m}")
    if m is not None:
        raise ValueError(f"kind {kind!r} takes no parameter")
    c = _quaternion(half, half, half, half)
    if kind == "binary_tetrahedral":
        gens = [_quaternion(0, 1, 0, 0), _quaternion(0, 0, 1, 0), c]
        return FiniteMatrixGroup(gens, dim=2, form=sp, name="2T")
    if kind == "binary_octahedral":
        z = root_of_unity(8)
        gens = [_quaternion(0, 1, 0, 0), c, _diagonal(2, {0: z, 1: z ** 7})]
        return FiniteMatrixGroup(gens, dim=2, form=sp, name="2O")
    if kind == "binary_icosahedral":
        tau = parse_literal(f"(1+{_SQRT5})/2")
        gens = [c, _quaternion(tau / 2, (tau - 1) / 2, half, 0)]
        return FiniteMatrixGroup(gens, dim=2, form=sp, name="2I")
    raise ValueError(f"unknown SL2 subgroup kind {kind!r}")


def build_imprimitive(sl2_group, normal_gens, copies, name=None):
    """The wreath-like group G_n(K, H) on n = copies symplectic planes.

    Elements permute the planes and act on them by elements of K with the
    product of the block entries lying in H.  Block i occupies coordinates
    (i, i + n) so the standard form is preserved.  Requires H <= K with
    [K, K] <= H; the order is |H| |K|^(n-1) n!.
    """
    k_group = sl2_group
    n = copies
    if k_group.dim != 2:
        raise ValueError("K must consist of 2x2 matrices")
    if n < 1:
        raise ValueError("need at least one block")
    sp2 = SymplecticSpace(2)
    h_list = [g if isinstance(g, ExactMatrix) else ExactMatrix(g)
              for g in normal_gens]
    for h in h_list:
        if not sp2.is_symplectic_matrix(h):
            raise ValueError("H generator is not in SL2")
        if not k_group.is_member(h):
            raise ValueError("H generator is not in K")
    h_group = FiniteMatrixGroup(h_list, dim=2, form=sp2)
    for x in k_group.gens:
        for y in k_group.gens:
            comm = x @ y @ x.inverse() @ y.inverse()
            if not h_group.is_member(comm):
                raise ValueError("H does not contain the commutators of K")

    dim = 2 * n
    zero = Cyclotomic.from_rational(0)

    def block(matrices):
        rows = [[zero] * dim for _ in range(dim)]
        for r in range(dim):
            rows[r][r] = Cyclotomic.from_rational(1)
        for b, g in matrices.items():
            rows[b][b] = g[0, 0]
            rows[b][b + n] = g[0, 1]
            rows[b + n][b] = g[1, 0]
            rows[b + n][b + n] = g[1, 1]
        return ExactMatrix(rows)

    gens = []
    for k in range(n - 1):
        rows = [[zero] * dim for _ in range(dim)]
        swap = {k: k + 1, k + 1: k, n + k: n + k + 1, n + k + 1: n + k}
        for r in range(dim):
            rows[swap.get(r, r)][r] = Cyclotomic.from_rational(1)
        gens.append(ExactMatrix(rows))
    if n > 1:
        for g in k_group.gens:
            gens.append(block({0: g, 1: g.inverse()}))
    for h in h_group.gens:
        gens.append(block({0: h}))
    label = name or f"G{n}({k_group.name},H)"
    return FiniteMatrixGroup(gens, dim=dim, form=SymplecticSpace(dim),
                             name=label)


def imprimitive_order(k_order, h_order, copies):
    return h_order * k_order ** (copies - 1) * factorial(copies)


def _named_subgroup_gens(k_group, which):
    i = root_of_unity(4)
    if which == "center":
        return [-ExactMatrix.identity(2)]
    if which == "cyclic":
        return [_diagonal(2, {0: i, 1: -i})]
    if which == "full":
        return list(k_group.gens)
    raise ValueError(f"unknown subgroup selector {which!r}")


def imprimitive_reference(name):
    """Build a named imprimitive type from data/tables.json parameters."""
    params = _data("tables.json")[0]["imprimitive_types"][name]
    k_group = build_sl2_subgroup(params["kind"], params.get("m"))
    h_gens = _named_subgroup_gens(k_group, params["subgroup"])
    return build_imprimitive(k_group, h_gens, params["copies"], name=name)


def build_trivial(dim=2):
    return FiniteMatrixGroup([], dim=dim, form=SymplecticSpace(dim),
                             name="trivial")


# -- the seven exceptional groups --------------------------------------------

def build_primitive(name):
    """Build one of the groups Q, R, S1, S2, S3, T, U from its root lines."""
    doc = _data("groups.json")[0]["groups"]
    if name not in doc:
        raise ValueError(f"unknown group {name!r}; choose from "
                         f"{', '.join(doc)}")
    info = doc[name]
    dim = info["dim"]
    sp = SymplecticSpace(dim)
    jmap = QuaternionicStructure(dim)
    roots = [RootLine(_vector(r), r, source=f"{name} root {k + 1}")
             for k, r in enumerate(info["roots"])]
    gens = [reflection_from_root(r, sp=sp, j=jmap) for r in roots]
    cross = [_matrix(m) for m in info.get("crosscheck_generators", ())]
    tdoc = _data("tables.json")[0]
    table = [TableRow(name, r["label"], r["type"], r["order"],
                      _vector({"coords": r["coords"]}), r["coords"])
             for r in tdoc["tables"][name]["rows"]]
    # Chain bases: vectors with the largest stabilizers keep the top orbit
    # small, so try the table vectors (largest order first) before the
    # roots.  Rotate the generators so the first one moves the best hint;
    # the chain then actually bases its top level on it.
    hint_rows = sorted(table, key=lambda r: (-r.order, r.label))
    hints = [r.vector for r in hint_rows] + [r.raw for r in roots]
    best = hints[0]
    k = next((i for i, g in enumerate(gens) if g @ best != best), 0)
    gens = gens[k:] + gens[:k]
    group = FiniteMatrixGroup(gens, dim=dim, form=sp, base_hints=hints,
                              name=f"W({name})")
    worked = None
    wdoc = tdoc.get("worked_example")
    if wdoc and wdoc["group"] == name:
        worked = dict(wdoc)
        worked["vector"] = _vector(wdoc["vector"])
        worked["fixed_vector"] = _vector(wdoc["fixed_vector"])
    return GroupSpec(name=name, space=sp, group=group,
                     expected_order=info["order"],
                     factored_order=info["factored_order"], roots=roots,
                     quaternionic=jmap, crosscheck_generators=cross,
                     table=table, worked_example=worked)


def worked_subgroup(spec):
    """The subgroup generated by the worked example's generator words."""
    if not spec.worked_example:
        raise ValueError(f"group {spec.name} has no worked example")
    cross = spec.crosscheck_generators
    gens = []
    for word in spec.worked_example["subgroup_words"]:
        g = ExactMatrix.identity(spec.space.dim)
        for k in word:
            g = g @ cross[k - 1]
        gens.append(g)
    return FiniteMatrixGroup(gens, dim=spec.space.dim, form=spec.space,
                             name=f"W({spec.name}) worked subgroup")


# -- reference fingerprints ---------------------------------------------------

def _reference_builders():
    def c2():
        return build_sl2_subgroup("cyclic", 2)

    builders = {
        "trivial": lambda: build_trivial(2),
        "C2": c2,
        "G(3,3,2)": lambda: double(build_gmpn(3, 3, 2)),
        "G(4,2,2)": lambda: double(build_gmpn(4, 2, 2)),
        "G(5,5,2)": lambda: double(build_gmpn(5, 5, 2)),
        "C2xC2xC2": lambda: direct_sum(c2(), direct_sum(c2(), c2())),
        "G(2,2,3)": lambda: double(build_gmpn(2, 2, 3)),
        "G(3,3,3)": lambda: double(build_gmpn(3, 3, 3)),
        "C2xG(3,3,2)": lambda: direct_sum(c2(), double(build_gmpn(3, 3, 2))),
        "G(2,1,3)": lambda: double(build_gmpn(2, 1, 3)),
        "G(4,4,3)": lambda: double(build_gmpn(4, 4, 3)),
        "C2xG(5,5,2)": lambda: direct_sum(c2(), double(build_gmpn(5, 5, 2))),
        "G23": lambda: double(coxeter_h3(), name="G23"),
        "G(5,5,3)": lambda: double(build_gmpn(5, 5, 3)),
        "C2xG(2,2,3)": lambda: direct_sum(c2(), double(build_gmpn(2, 2, 3))),
        "C2xG(3,3,3)": lambda: direct_sum(c2(), double(build_gmpn(3, 3, 3))),
        "S5": lambda: double(build_gmpn(1, 1, 5), name="S5"),
        "G(3,3,4)": lambda: double(build_gmpn(3, 3, 4)),
        "W(S1)": lambda: build_primitive("S1").group,
        "G(D2,C2,1)": lambda: imprimitive_reference("G(D2,C2,1)"),
        "G3(D2,C2)": lambda: imprimitive_reference("G3(D2,C2)"),
    }
    return builders


def reference_groups(names=None):
    """Build the reference groups used for parabolic type recognition."""
    builders = _reference_builders()
    if names is None:
        names = list(builders)
    return {name: builders[name]() for name in names}


@lru_cache(maxsize=1)
def reference_fingerprints():
    """Fingerprints of all reference types, for recognize()."""
    from .reflections import fingerprint
    builders = _reference_builders()
    return {name: fingerprint(make()) for name, make in builders.items()}


def reference_collisions():
    """Sets of reference names sharing a fingerprint (ideally none)."""
    refs = reference_fingerprints()
    by_fp = {}
    for name, fp in refs.items():
        by_fp.setdefault(fp, []).append(name)
    return sorted(sorted(names) for names in by_fp.values() if len(names) > 1)
