"""Regenerate src/sympref/data/groups.json and tables.json.

All scalar entries are literals in the expression grammar of
sympref.cyclo.parse_literal.  The script validates every literal by
parsing it and re-checks a few arithmetic identities before writing.

Unresolved transcription items are controlled by the RESOLVED_*
constants below; tools/resolve_fixtures.py reports the values to
freeze here.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from fractions import Fraction

from sympref.cyclo import Cyclotomic, parse_literal
from sympref.linalg import ExactVector

# i and sqrt(5) as grammar literals
I = "E(4)"
R5 = "E(5)-E(5)^2-E(5)^3+E(5)^4"

# Resolution switches.  See tables.json changelog for the outcome of
# the candidate computations run by tools/resolve_fixtures.py.
RESOLVED_R_H1_COORD5 = f"(-E(4)*({R5})+E(4)+({R5})-3)/2"
RESOLVED_D2C2_SUBGROUP = "center"
RESOLVED_NOTES = [
    "The two scalar shorthands in the Q stabilizer table are stored as "
    "the complex conjugates of the transcribed values; the transcribed "
    "readings give wrong orbit sizes, while the conjugated readings "
    "certify orbit sizes 2016 and 756 against the claimed stabilizer "
    "orders 6 and 16.",
    "The third root of R is stored with middle coordinates (-2i, 2) "
    "where the transcription has (-i, 1).  As transcribed the four "
    "roots generate a group of order above 3000000 (certified by an "
    "injective reduction mod 1048601), not the claimed 1209600.  The "
    "corrected root was recovered by solving for a reflection of the "
    "true group whose moved plane matches the transcribed root outside "
    "the two middle coordinates; the corrected list generates a group "
    "of order exactly 1209600.",
    "The composite coordinates of R H1 and R H2 are stored conjugated, "
    "matching the Q scalar resolution; for H1 the grouping reading "
    "(-i*sqrt5+i+sqrt5-3)/2 is the only one of six that certifies "
    "orbit size 201600, and for H2 the conjugated row certifies orbit "
    "size 120960.",
    "No reading of the transcribed R H3 row certifies (48 bracketing "
    "and Galois variants all give the wrong orbit size), so the stored "
    "vector is a computed witness: a generic vector in the fixed space "
    "of the first root reflection, certified by orbit size 604800, "
    "which pins the claimed stabilizer order 2.",
    "Two signs in the T H3a row are corrected: the E(10)^3 terms in "
    "coordinate 3 and in the leading product of coordinate 6 are "
    "negated relative to the transcription.  The transcribed row "
    "certifies no stabilizer order; the corrected row certifies orbit "
    "size 108000 against the claimed stabilizer order 24.  Coordinate "
    "3 then equals the golden ratio constant used throughout the "
    "block.",
    "The transcribed T H5 row has only seven coordinates and no "
    "completion certifies: for every insertion slot, solving r*v = v "
    "over the reflections for the inserted value finds no consistent "
    "candidate, printed or conjugated.  The stored vector is a "
    "computed witness instead: a generic vector in the common fixed "
    "space of three involutive reflections with pairwise product "
    "orders 5, 3, 2 (which generate an icosahedral subgroup of order "
    "120), certified by orbit size 21600 against the claimed "
    "stabilizer order 120.",
    "All five U rows are stored conjugated, matching the Q and R "
    "resolutions: the transcribed readings give wrong orbit sizes and "
    "the conjugated readings certify 3960, 42240, 228096, 253440 and "
    "570240.",
    "One coordinate of U H4 is corrected on top of the conjugation: "
    "slot 7 reads -2*E(4)-2 where the conjugated transcription has "
    "E(4)+1.  The value was recovered by blanking each slot in turn "
    "and solving r*v = v over the reflections, then certified by "
    "orbit size 42240 against the claimed stabilizer order 648.",
    "The D2/C2 block types use K = binary dihedral of order 8 and "
    "H = its centre {+-1}; the candidate subgroups H are discriminated "
    "by matching stabilizer orders.",
    "The worked example's vector and fixed vector (and the matching "
    "fourth-wing order-54 row) are stored with every E(4) sign flipped "
    "relative to the printed coordinates, matching the convention of the "
    "other conjugated tables.  The orbit certificate (size 128) holds "
    "either way, but as printed two of the three generator words move "
    "the vector; conjugated, the stabilizer equals the word subgroup as "
    "a set (mutual membership of generators, both of order 54, fixed "
    "space of dimension 2).",
]


def grp(dim, conductor, order, factored, roots, **extra):
    out = {
        "dim": dim,
        "conductor": conductor,
        "order": order,
        "factored_order": factored,
        "roots": roots,
    }
    out.update(extra)
    return out


def vec(scale, *coords):
    return {"scale": scale, "coords": list(coords)}


def row(label, type_name, order, *coords):
    return {"label": label, "type": type_name, "order": order,
            "coords": list(coords)}


GROUPS = {
    "Q": grp(6, 20, 12096, "2^6 * 3^3 * 7", [
        vec("1", "2", "0", "0", "0", "0", "0"),
        vec("1/2", "2*E(4)", "2*E(4)", "-E(4)+1", "0", "0",
            f"E(4)*({R5})-1"),
        vec("1/2", "2*E(4)", "2", "E(4)+1", "0", "0", f"E(4)+{R5}"),
        vec("1/2", "2", "2*E(4)", "E(4)+1", "0", "0", f"E(4)+{R5}"),
    ]),
    "R": grp(6, 20, 1209600, "2^8 * 3^3 * 5^2 * 7", [
        vec("1", "2", "0", "0", "0", "0", "0"),
        vec("1/2", "E(4)+1", "E(4)-1", "0", f"-E(4)*({R5})+1",
            f"-E(4)-({R5})", "0"),
        vec("1/2", "0", "0", "E(4)+1", "-2*E(4)", "2", f"E(4)+{R5}"),
        vec("1/2", "0", "2*E(4)", f"E(4)+{R5}", "2", "0", "-E(4)-1"),
    ]),
    "S1": grp(8, 4, 6912, "2^8 * 3^3", [
        vec("1", "1", "E(4)", "0", "0", "0", "0", "1", "-E(4)"),
        vec("1", "-E(4)+1", "-E(4)+1", "0", "0", "0", "0", "0", "0"),
        vec("1", "-E(4)+1", "0", "-E(4)+1", "0", "0", "0", "0", "0"),
        vec("1", "-E(4)+1", "0", "0", "-E(4)+1", "0", "0", "0", "0"),
    ], crosscheck_generators=[
        {"scale": "1/2", "rows": [
            ["1", "E(4)", "0", "0", "0", "0", "-1", "-E(4)"],
            ["-E(4)", "1", "0", "0", "0", "0", "-E(4)", "1"],
            ["0", "0", "1", "E(4)", "1", "E(4)", "0", "0"],
            ["0", "0", "-E(4)", "1", "E(4)", "-1", "0", "0"],
            ["0", "0", "1", "-E(4)", "1", "-E(4)", "0", "0"],
            ["0", "0", "-E(4)", "-1", "E(4)", "1", "0", "0"],
            ["-1", "E(4)", "0", "0", "0", "0", "1", "-E(4)"],
            ["E(4)", "1", "0", "0", "0", "0", "E(4)", "1"],
        ]},
        {"scale": "1", "rows": [
            ["0", "-1", "0", "0", "0", "0", "0", "0"],
            ["-1", "0", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "1", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "1", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "-1", "0", "0"],
            ["0", "0", "0", "0", "-1", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "1", "0"],
            ["0", "0", "0", "0", "0", "0", "0", "1"],
        ]},
        {"scale": "1", "rows": [
            ["0", "0", "-1", "0", "0", "0", "0", "0"],
            ["0", "1", "0", "0", "0", "0", "0", "0"],
            ["-1", "0", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "1", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "-1", "0"],
            ["0", "0", "0", "0", "0", "1", "0", "0"],
            ["0", "0", "0", "0", "-1", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "0", "1"],
        ]},
        {"scale": "1", "rows": [
            ["0", "0", "0", "-1", "0", "0", "0", "0"],
            ["0", "1", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "1", "0", "0", "0", "0", "0"],
            ["-1", "0", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "0", "-1"],
            ["0", "0", "0", "0", "0", "1", "0", "0"],
            ["0", "0", "0", "0", "0", "0", "1", "0"],
            ["0", "0", "0", "0", "-1", "0", "0", "0"],
        ]},
    ]),
    "S2": grp(8, 4, 82944, "2^10 * 3^4", [
        vec("1", "1", "E(4)", "0", "0", "0", "0", "1", "-E(4)"),
        vec("1", "-E(4)+1", "-E(4)+1", "0", "0", "0", "0", "0", "0"),
        vec("1", "-E(4)+1", "0", "-E(4)+1", "0", "0", "0", "0", "0"),
        vec("1", "2", "0", "0", "0", "0", "0", "0", "0"),
    ]),
    "S3": grp(8, 4, 3317760, "2^13 * 3^4 * 5", [
        vec("1", "1", "E(4)", "0", "0", "0", "0", "1", "-E(4)"),
        vec("1", "-E(4)+1", "-E(4)+1", "0", "0", "0", "0", "0", "0"),
        vec("1", "-E(4)+1", "0", "-E(4)+1", "0", "0", "0", "0", "0"),
        vec("1", "2", "0", "0", "0", "0", "0", "0", "0"),
        vec("1", "-E(4)+1", "0", "0", "0", "0", "-E(4)+1", "0", "0"),
    ]),
    "T": grp(8, 20, 2592000, "2^8 * 3^4 * 5^3", [
        vec("1", "-E(10)^3+E(10)^2+1", "E(10)^3-E(10)^2", "-1", "0",
            "0", "0", "0", "0"),
        vec("1", "1", "0", "0", "0", "0", "0", "0", "0"),
        vec("1", "1", "1", "1", "1", "0", "0", "0", "0"),
        vec("1", "1", "E(4)", "0", "0", "0", "0", "-1", "E(4)"),
    ]),
    "U": grp(10, 4, 27371520, "2^11 * 3^5 * 5 * 11", [
        vec("1", "2", "0", "0", "0", "0", "0", "0", "0", "0", "0"),
        vec("1", "0", "2", "E(4)-1", "E(4)-1", "2", "0", "0",
            "-E(4)+1", "-E(4)+1", "0"),
        vec("1", "0", "2", "E(4)-1", "-E(4)-1", "2*E(4)", "0", "0",
            "E(4)-1", "-E(4)-1", "0"),
        vec("1", "0", "2", "-E(4)-1", "E(4)-1", "0", "0", "0",
            "E(4)+1", "E(4)-1", "2"),
        vec("1", "2", "E(4)-1", "E(4)-1", "2", "0", "0", "-E(4)+1",
            "-E(4)+1", "0", "0"),
    ]),
}

# Q table shorthands
Q_A = f"(-E(4)*({R5})-E(4)-({R5})+1)/6"
Q_B = f"(E(4)+({R5}))/3"

TABLES = {
    "Q": [
        row("H1", "G(3,3,2)", 6, "1", "0", "0", Q_A, Q_B, "0"),
        row("H2", "G(4,2,2)", 16, "1", "0", "1", Q_A, f"2*({Q_B})", Q_A),
    ],
    "R": [
        row("H1", "G(3,3,2)", 6, "0", "1", f"({R5})-1", f"({R5})-1",
            RESOLVED_R_H1_COORD5, "0"),
        row("H2", "G(5,5,2)", 10, "0", "1", f"(-E(4)*({R5})-E(4)-2)/2",
            f"(-E(4)*({R5})-E(4)+({R5})+1)/2", "1",
            f"(2*E(4)+({R5})+1)/2"),
        row("H3", "G(D2,C2,1)", 2, "0", "1", "1", "0", "2", R5),
    ],
    "S1": [
        row("H1", "C2xC2xC2", 8, "1", "0", "0", "-1", "0", "0", "0", "0"),
        row("H2a", "G(2,2,3)", 24, "0", "1", "E(4)", "0", "0", "0",
            "0", "0"),
        row("H2b", "G(2,2,3)", 24, "1", "E(4)", "E(4)", "-1", "0", "0",
            "0", "0"),
        row("H2c", "G(2,2,3)", 24, "0", "0", "1", "0", "0", "0", "0", "0"),
        row("H2d", "G(2,2,3)", 24, "0", "1", "0", "0", "0", "0", "1", "0"),
        row("H3", "G(3,3,3)", 54, "0", "0", "0", "1", "(1+E(4))/2",
            "(-E(4)-1)/2", "(1+E(4))/2", "(-E(4)+1)/2"),
    ],
    "S2": [
        row("H1", "C2xG(3,3,2)", 12, "1", "-1", "-1", "0", "0", "0",
            "0", "0"),
        row("H2", "G(2,2,3)", 24, "1", "-1", "0", "0", "0", "0",
            "E(4)-1", "0"),
        row("H3", "G(2,1,3)", 48, "0", "1", "0", "0", "0", "0", "0", "0"),
        row("H4", "G(3,3,3)", 54, "1", "0", "1", "0", "-1", "E(4)-1",
            "-E(4)", "0"),
        row("H5", "G(4,4,3)", 96, "1", "-E(4)", "0", "0", "0", "0",
            "0", "0"),
    ],
    "S3": [
        row("H1", "C2xG(3,3,2)", 12, "1", "-E(4)", "0", "0", "0", "0",
            "3", "E(4)"),
        row("H2", "G(2,2,3)", 24, "0", "0", "2", "0", "-1", "E(4)",
            "E(4)", "1"),
        row("H3", "G(3,3,3)", 54, "0", "1", "0", "-1", "-1", "E(4)-1",
            "E(4)", "0"),
        row("H4", "G3(D2,C2)", 768, "1", "0", "0", "1", "0", "0",
            "0", "0"),
    ],
    "T": [
        row("H1", "C2xG(3,3,2)", 12, "0", "0", "0", "0", "1",
            "(-E(10)^3+E(10)^2+1)/2", "-E(10)^3+E(10)^2+1/2",
            "(E(10)^3-E(10)^2)/2"),
        row("H2", "C2xG(5,5,2)", 20, "0", "0", "0", "0", "1",
            "-E(10)^3+E(10)^2+1", "-E(10)^3+E(10)^2",
            "2*E(10)^3-2*E(10)^2-2"),
        row("H3a", "G(2,2,3)", 24, "1", "0", "-E(10)^3+E(10)^2+1",
            "-3*E(10)^3+3*E(10)^2+4",
            "E(4)*E(10)^3-E(4)*E(10)^2-E(10)^3+E(10)^2+1",
            "2*E(4)*E(10)^3-2*E(4)*E(10)^2-2*E(4)-2*E(10)^3+2*E(10)^2+4",
            "E(4)+E(10)^3-E(10)^2",
            "-E(4)*E(10)^3+E(4)*E(10)^2+E(4)+1"),
        row("H3b", "G(2,2,3)", 24, "0", "0", "0", "0", "1",
            "-E(10)^3+E(10)^2+2", "0", "E(10)^3-E(10)^2-3"),
        row("H4", "G(3,3,3)", 54, "1", "0", "-E(10)^3+E(10)^2+1",
            "E(10)^3-E(10)^2", "-E(4)",
            "E(4)*E(10)^3-E(4)*E(10)^2-E(4)+E(10)^3-E(10)^2-1",
            "E(4)*E(10)^3-E(4)*E(10)^2+1", "E(10)^3-E(10)^2"),
        row("H5", "G23", 120, "0", "1", "E(10)^3-E(10)^2",
            "-E(10)^3+E(10)^2-1", "0", "1", "E(10)^3-E(10)^2",
            "-E(10)^3+E(10)^2-1"),
        row("H6", "G(5,5,3)", 150, "0", "1", "E(10)^3-E(10)^2",
            "E(10)^3-E(10)^2+1", "-2*E(4)*E(10)^3+2*E(4)*E(10)^2",
            "-E(4)*E(10)^3+E(4)*E(10)^2-E(10)^3+E(10)^2+1",
            "-E(4)*E(10)^3+E(4)*E(10)^2+E(4)-1", "E(4)-E(10)^3+E(10)^2"),
    ],
    "U": [
        row("H1", "C2xG(2,2,3)", 48, "2", "0", "-E(4)-1", "0", "E(4)+3",
            "-2*E(4)+2", "-2", "E(4)-1", "0", "-E(4)-1"),
        row("H2", "C2xG(3,3,3)", 108, "0", "2", "-E(4)-1", "0", "E(4)-1",
            "6*E(4)", "0", "-E(4)+1", "0", "E(4)+1"),
        row("H3", "S5", 120, "1", "0", "2*E(4)+1", "-E(4)+1", "E(4)+1",
            "E(4)", "-2*E(4)", "-E(4)", "2*E(4)", "0"),
        row("H4", "G(3,3,4)", 648, "2", "0", "0", "E(4)-1", "E(4)-1",
            "0", "-2*E(4)-2", "2*E(4)", "E(4)-1", "-E(4)+1"),
        row("H5", "W(S1)", 6912, "2", "0", "-E(4)+1", "0", "-E(4)-1", "0",
            "2*E(4)", "-E(4)-1", "0", "-E(4)+1"),
    ],
}

WORKED_EXAMPLE = {
    "group": "S1",
    "vector": {"scale": "1", "coords": [
        "0", "0", "0", "1", "(1+E(4))/2", "(-E(4)-1)/2", "(1+E(4))/2",
        "(-E(4)+1)/2"]},
    "fixed_vector": {"scale": "1", "coords": [
        "1", "-1", "1", "0", "(-E(4)+1)/2", "(E(4)-1)/2", "(-E(4)+1)/2",
        "(-3*E(4)-3)/2"]},
    "subgroup_words": [[2], [3, 1, 3], [4, 1, 4]],
    "expected_order": 54,
    "expected_type": "G(3,3,3)",
    "expected_fixed_dim": 2,
}

IMPRIMITIVE_TYPES = {
    "G(D2,C2,1)": {"kind": "binary_dihedral", "m": 2,
                   "subgroup": RESOLVED_D2C2_SUBGROUP, "copies": 1},
    "G3(D2,C2)": {"kind": "binary_dihedral", "m": 2,
                  "subgroup": RESOLVED_D2C2_SUBGROUP, "copies": 3},
}

FORMAT_NOTES = {
    "scalars": "literals parsed by sympref.cyclo.parse_literal",
    "pairing": "coordinate k pairs with coordinate k+n under the "
               "standard symplectic form on 2n coordinates",
    "j_map": "J(x, y) = (-conj(y), conj(x)) on stacked (x, y) blocks",
}


def check_vec(spec, dim):
    scale = parse_literal(spec["scale"])
    coords = [scale * parse_literal(c) for c in spec["coords"]]
    assert len(coords) == dim, (len(coords), dim)
    v = ExactVector(coords)
    assert not v.is_zero()
    return v


def main():
    five = Cyclotomic.from_rational(5)
    assert parse_literal(R5) * parse_literal(R5) == five
    assert parse_literal("E(10)") == parse_literal("-E(5)^3")

    for name, g in GROUPS.items():
        for r in g["roots"]:
            v = check_vec(r, g["dim"])
            assert not v.hermitian(v).is_zero()
        for gen in g.get("crosscheck_generators", ()):
            scale = parse_literal(gen["scale"])
            for r in gen["rows"]:
                assert len(r) == g["dim"]
                for c in r:
                    scale * parse_literal(c)
        for t in TABLES[name]:
            check_vec({"scale": "1", "coords": t["coords"]}, g["dim"])

    wv = WORKED_EXAMPLE["vector"]["coords"]
    h3 = next(t for t in TABLES["S1"] if t["label"] == "H3")["coords"]
    assert [parse_literal(c) for c in wv] == [parse_literal(c) for c in h3]
    check_vec(WORKED_EXAMPLE["fixed_vector"], 8)

    counts = {name: len(rows) for name, rows in TABLES.items()}
    assert counts == {"Q": 2, "R": 3, "S1": 6, "S2": 5, "S3": 4,
                      "T": 7, "U": 5}, counts

    out = pathlib.Path(__file__).resolve().parents[1] / "src/sympref/data"
    out.mkdir(parents=True, exist_ok=True)
    groups_doc = {"format": FORMAT_NOTES, "groups": GROUPS}
    tables_doc = {
        "format": FORMAT_NOTES,
        "tables": {name: {"rows": rows} for name, rows in TABLES.items()},
        "worked_example": WORKED_EXAMPLE,
        "imprimitive_types": IMPRIMITIVE_TYPES,
        "changelog": RESOLVED_NOTES,
    }
    for fname, doc in (("groups.json", groups_doc),
                       ("tables.json", tables_doc)):
        path = out / fname
        path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        print(f"wrote {path} ({path.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
