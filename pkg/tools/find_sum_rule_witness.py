"""Build a two-generator one-relator group whose first characteristic variety
is {1} together with the lines {(t, 1/t)} and {(t, t)}, and confirm with the
Fox engine that the crossing point (-1, -1) only has dim H^1 = 1.

For a relator with zero exponent sums, dR/dx = (t_y - 1) A(t_x, t_y), where A
records the winding number of the relator's lattice path around each unit
cell.  A product of conjugated commutators x^i y^j [x, y]^e y^-j x^-i
therefore realises A = sum e * t_x^i t_y^j, and here
A = (t_x t_y - 1)(t_x - t_y) = t_x^2 t_y - t_x t_y^2 - t_x + t_y.
"""

import sys
from fractions import Fraction

from charvar.fox import dim_h1, generic_dim
from charvar.presentation import Presentation, character_from_assignment
from charvar.torus import TranslatedSubtorus

CELLS = [((2, 1), 1), ((1, 2), -1), ((1, 0), -1), ((0, 1), 1)]


def relator_text(cells=CELLS) -> str:
    parts = []
    for (i, j), e in cells:
        comm = "x y x^-1 y^-1" if e > 0 else "y x y^-1 x^-1"
        parts.append(f"x^{i} y^{j} {comm} y^{-j} x^{-i}")
    return " ".join(parts)


def main() -> int:
    p = Presentation.from_strings(["x", "y"], [relator_text()])
    whole = TranslatedSubtorus.build(p, [0, 0], [[1, 0], [0, 1]])
    v1 = TranslatedSubtorus.build(p, [0, 0], [[1, -1]])
    v2 = TranslatedSubtorus.build(p, [0, 0], [[1, 1]])
    xi = character_from_assignment(p, [Fraction(1, 2), Fraction(1, 2)])
    dims = (generic_dim(p, whole), generic_dim(p, v1), generic_dim(p, v2), dim_h1(p, xi))
    print("relator:", p.format(p.relators[0]))
    print("generic dims (torus, V1, V2) and dim at (-1,-1):", dims)
    return 0 if dims == (0, 1, 1, 1) else 1


if __name__ == "__main__":
    sys.exit(main())
