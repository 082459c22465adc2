"""Regenerate the bundled example corpus under src/charvar/corpus/.

Usage:  python3 tools/build_corpus.py

The sextic entry needs sympy (through tools/braid_monodromy.py); every other
entry is written from the literal data below.  Each expectation block carries
a "basis" map saying where its numbers come from: "published" values are the
ones stated for the example in the literature, "derived" values come from an
independent computation recorded in this repository, and "direct" values are
immediate from the definitions.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from braid_monodromy import presentation as braid_presentation  # noqa: E402
from find_sum_rule_witness import relator_text  # noqa: E402

OUT = Path(__file__).resolve().parent.parent / "src" / "charvar" / "corpus"
SCHEMA = "charvar-input/1"


def entries() -> dict[str, dict]:
    e: dict[str, dict] = {}

    e["free_group_rank2"] = {
        "schema": SCHEMA, "name": "free group of rank 2",
        "description": "Complement of two points in the affine line; the whole torus is the first stratum.",
        "orbifold": {"compact": False, "rank": 2, "multiplicities": []},
        "characters": {"zeta5": ["1/5", "4/5"], "trivial": ["0", "0"]},
        "components": {"torus": {"translation": ["0", "0"], "exponents": [[1, 0], [0, 1]], "depth": 1}},
        "expect": {
            "basis": {"dims": "published", "generic_dims": "published", "sigma": "published"},
            "dims": {"zeta5": 1, "trivial": 2},
            "generic_dims": {"torus": 1},
            "sigma": [{"depth": 1, "contains_trivial": True, "labels": 1},
                      {"depth": 2, "contains_trivial": True, "labels": 0}],
        },
    }

    e["orbifold_line_2_3"] = {
        "schema": SCHEMA, "name": "affine orbifold line with points of multiplicity 2 and 3",
        "orbifold": {"compact": False, "rank": 0, "multiplicities": [2, 3]},
        "characters": {"xi6": ["1/2", "1/3"], "xi6bar": ["1/2", "2/3"], "trivial": ["0", "0"]},
        "expect": {
            "basis": {"dims": "published", "scan": "published", "sigma": "derived"},
            "dims": {"xi6": 1, "xi6bar": 1, "trivial": 0},
            "scan": [{"order": 6, "depth": 1, "count": 2,
                      "rows": [{"values": ["1/2", "1/3"], "dim": 1}, {"values": ["1/2", "2/3"], "dim": 1}]}],
            "sigma": [{"depth": 1, "contains_trivial": False, "labels": 2, "length": 2},
                      {"depth": 2, "contains_trivial": False, "labels": 0}],
        },
    }

    for n, count in ((3, 2), (5, 12)):
        e[f"fermat_pencil_{n}"] = {
            "schema": SCHEMA, "name": f"projective line with three points of multiplicity {n}",
            "description": "Target of the Fermat pencil of degree n.",
            "orbifold": {"compact": True, "genus": 0, "multiplicities": [n, n, n]},
            "expect": {
                "basis": {"sigma": "published; label count derived by enumeration"},
                "sigma": [{"depth": 1, "contains_trivial": False, "labels": count, "length": 3},
                          {"depth": 2, "contains_trivial": False, "labels": 0}],
            },
        }

    artin_comp = {"translation": ["0", "0", "1/2"], "depth": 1}
    e["artin_2_4_4"] = {
        "schema": SCHEMA, "name": "Artin group of type (2,4,4)",
        "presentation": {"generators": ["a", "b", "c"],
                         "relators": ["a b a^-1 b^-1", "(a c)^2 (c a)^-2", "(b c)^2 (c b)^-2"]},
        "characters": {"xi": ["0", "0", "1/2"], "trivial": ["0", "0", "0"]},
        "components": {
            "V1": dict(artin_comp, exponents=[[1], [0], [-1]]),
            "V2": dict(artin_comp, exponents=[[0], [1], [-1]]),
            "V3": dict(artin_comp, exponents=[[1], [1], [-1]]),
        },
        "expect": {
            "basis": {"dims": "published", "scan": "published", "generic_dims": "derived",
                      "report": "published"},
            "dims": {"xi": 2, "trivial": 3},
            "scan": [{"order": 4, "depth": 2, "count": 1, "rows": [{"values": ["0", "0", "1/2"], "dim": 2}]},
                     {"order": 4, "depth": 3, "count": 0}],
            "generic_dims": {"V1": 1, "V2": 1, "V3": 1},
            "report": {"overall": "satisfied", "satisfied": ["sum-rule", "pair-geometry"]},
        },
    }

    sx = braid_presentation("sextic", 1)
    pencil_target = {"compact": False, "rank": 0, "multiplicities": [2, 3]}
    e["sextic_nine_cusps"] = {
        "schema": SCHEMA, "name": "complement of the sextic with nine cusps",
        "source": ("Zariski-van Kampen presentation of the complement of the dual of a smooth cubic, "
                   "x^6+y^6+z^6-2(x^3y^3+y^3z^3+z^3x^3)=0, computed by tools/braid_monodromy.py "
                   f"(seed {sx['seed']}, {sx['critical_values']} critical values)"),
        "presentation": {"generators": sx["generators"], "relators": sx["relators"]},
        "characters": {"xi6": ["1/6"] * 6, "xi6bar": ["5/6"] * 6},
        "components": {
            "xi6": {"translation": ["1/6"] * 6, "exponents": [[]] * 6, "depth": 3},
            "xi6bar": {"translation": ["5/6"] * 6, "exponents": [[]] * 6, "depth": 3},
        },
        "morphisms": {
            "cubic_pencil": {
                "description": "[f_2^3 : f_3^2] onto the orbifold line with points of multiplicity 2 and 3; "
                               "every meridian of the sextic maps to the loop around the image of the curve",
                "target": pencil_target,
                "images": ["mu1 mu2"] * 6,
                "pullbacks": [{"target_values": ["1/2", "2/3"], "character": "xi6"},
                              {"target_values": ["1/2", "1/3"], "character": "xi6bar"}],
            }
        },
        "expect": {
            "basis": {"gate": "published", "dims": "published", "scan": "published",
                      "report": "derived"},
            "gate": {"free_rank": 0, "torsion": [6]},
            "dims": {"xi6": {"min": 3}, "xi6bar": {"min": 3}},
            "scan": [{"order": 6, "depth": 0,
                      "by_order": {"2": 0, "3": 0, "6": {"min": 3}}}],
            "report": {"overall": "satisfied", "scan": [6, 1], "unexplained": 0,
                       "satisfied": ["pullback", "sum-rule"]},
        },
    }

    e["torus_knot_2_5"] = {
        "schema": SCHEMA, "name": "torus knot T(2,5) group, isolated points without orbifold data",
        "description": ("Stand-in for an isolated torsion point of the second kind: the scan finds the four "
                        "primitive 10th-root characters and, with no component or morphism data, lists "
                        "them as unexplained."),
        "presentation": {"generators": ["x", "y"], "relators": ["x^2 y^-5"]},
        "characters": {"xi": ["1/2", "1/5"]},
        "expect": {
            "basis": {"dims": "derived", "report": "derived"},
            "dims": {"xi": 1},
            "scan": [{"order": 10, "depth": 1, "count": 4, "by_order": {"10": 1}}],
            "report": {"overall": "satisfied", "scan": [10, 1], "unexplained": 4},
        },
    }

    e["synthetic_sum_rule_violation"] = {
        "schema": SCHEMA, "name": "one-relator group failing the sum rule",
        "description": ("Alexander polynomial (t1 t2 - 1)(t1 - t2): two lines through 1 meeting again at "
                        "(-1,-1), where dim H^1 is only 1.  Built by tools/find_sum_rule_witness.py."),
        "presentation": {"generators": ["x", "y"], "relators": [relator_text()]},
        "characters": {"crossing": ["1/2", "1/2"]},
        "components": {
            "V1": {"translation": ["0", "0"], "exponents": [[1], [-1]], "depth": 1},
            "V2": {"translation": ["0", "0"], "exponents": [[1], [1]], "depth": 1},
        },
        "expect": {
            "basis": {"dims": "derived", "generic_dims": "derived", "report": "derived"},
            "dims": {"crossing": 1},
            "generic_dims": {"V1": 1, "V2": 1},
            "report": {"overall": "obstructed", "violated": ["sum-rule", "depth-through-one"]},
        },
    }

    e["concurrent_lines_pencil"] = {
        "schema": SCHEMA, "name": "three concurrent affine lines, pencil onto a twice-punctured line",
        "presentation": {"generators": ["a", "b", "c"], "relators": ["a c a^-1 c^-1", "b c b^-1 c^-1"]},
        "characters": {"xi": ["1/3", "1/5", "0"]},
        "components": {"pencil": {"translation": ["0", "0", "0"],
                                  "exponents": [[1, 0], [0, 1], [0, 0]], "depth": 1}},
        "morphisms": {
            "pencil": {"target": {"compact": False, "rank": 2, "multiplicities": []},
                       "images": ["a1", "a2", ""],
                       "pullbacks": [{"target_values": ["1/3", "1/5"], "character": "xi"}]}
        },
        "expect": {
            "basis": {"dims": "direct", "generic_dims": "direct", "report": "derived"},
            "dims": {"xi": 1},
            "generic_dims": {"pencil": 1},
            "report": {"overall": "satisfied", "satisfied": ["pullback", "depth-through-one"]},
        },
    }
    return e


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in entries().items():
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print("wrote", name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
