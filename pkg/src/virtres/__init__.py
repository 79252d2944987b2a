"""Exact bigraded commutative algebra over k[x0, x1, y0, y1].

Constructs and certifies virtual resolutions of ideals of finite point sets
in P1 x P1.
"""

from .scalar import GF, QQ
from .biring import BiDegree, BiPoly, Monomial, graded_piece_basis, poly
from .gb import (Ideal, Submodule, buchberger, colon, intersect, normal_form, power,
                 saturate, saturate_B, syzygies)
from .points import (Point, PointSet, certified_random_points, check_sufficiently_general,
                     diff2, hilbert_eval, hilbert_gb, ideal_of_points, load_points,
                     random_points)
from .resolve import FreeComplex, BettiTable, betti, min_free_resolution, projective_dimension
from .virtual import (conjectural_trim, formula_shape, is_virtual, keylemma_check,
                      min_sat_exponent, trim, vres_saturation)
from .kernel import backend_name

__version__ = "0.1.0"

__all__ = ["GF", "QQ", "BiDegree", "BiPoly", "Monomial", "graded_piece_basis", "poly",
           "Ideal", "Submodule", "buchberger", "colon", "intersect", "normal_form", "power",
           "saturate", "saturate_B", "syzygies", "Point", "PointSet",
           "certified_random_points", "check_sufficiently_general", "diff2", "hilbert_eval",
           "hilbert_gb", "ideal_of_points", "load_points", "random_points", "FreeComplex",
           "BettiTable", "betti", "min_free_resolution", "projective_dimension",
           "conjectural_trim", "formula_shape", "is_virtual", "keylemma_check",
           "min_sat_exponent", "trim", "vres_saturation", "backend_name"]
