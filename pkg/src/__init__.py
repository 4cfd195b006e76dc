"""
friezelab - Exact computations with frieze patterns and their relatives

Features:
- Conway-Coxeter friezes from quiddity rows, zig-zags and triangulations
- Perfect matching models, Kuo condensation and path-counting transforms
- Snake graphs, continuants and 2x2 matrix products
- Markoff numbers from lattice snakes and the topograph
- Tropical friezes from laminations and tree metrics
- The variant recurrence and its bounded enumeration
"""

__version__ = "1.0.0"
__author__ = "friezelab contributors"

# Exact arithmetic and triangulations
from .exact import LaurentPoly, Mat2, divide, laurent_variables
from .polygon import (
    Triangulation,
    Zigzag,
    catalan,
    diagonal_flip,
    ear_counts,
    enumerate_triangulations,
    flip_graph,
)

# Matchings and friezes
from .matchings import MatchGraph, build_graph, kuo_check, matching_count, matching_sum
from .frieze import (
    FriezeReport,
    FriezeTable,
    classify_friezes,
    continuant,
    frieze_from_quiddity,
    frieze_from_triangulation,
    frieze_from_zigzag,
    verify_frieze,
)

# Snakes and Markoff numbers
from .snake import ab_product, lr_paths_count, model_values, snake_matchings
from .markoff import LatticeVector, M_num, M_poly, scott_sequence, topograph_expand

# Tropical and variant friezes
from .tropical import Lamination, MaxPlus, tropical_table, verify_tropical
from .variant import (
    DoubleZigzag,
    VariantTable,
    variant_enumerate,
    variant_from_double_zigzag,
    variant_symbolic,
    variant_verify,
)

__all__ = [
    # Exact arithmetic and triangulations
    "LaurentPoly",
    "Mat2",
    "divide",
    "laurent_variables",
    "Triangulation",
    "Zigzag",
    "catalan",
    "diagonal_flip",
    "ear_counts",
    "enumerate_triangulations",
    "flip_graph",
    # Matchings and friezes
    "MatchGraph",
    "build_graph",
    "kuo_check",
    "matching_count",
    "matching_sum",
    "FriezeReport",
    "FriezeTable",
    "classify_friezes",
    "continuant",
    "frieze_from_quiddity",
    "frieze_from_triangulation",
    "frieze_from_zigzag",
    "verify_frieze",
    # Snakes and Markoff numbers
    "ab_product",
    "lr_paths_count",
    "model_values",
    "snake_matchings",
    "LatticeVector",
    "M_num",
    "M_poly",
    "scott_sequence",
    "topograph_expand",
    # Tropical and variant friezes
    "Lamination",
    "MaxPlus",
    "tropical_table",
    "verify_tropical",
    "DoubleZigzag",
    "VariantTable",
    "variant_enumerate",
    "variant_from_double_zigzag",
    "variant_symbolic",
    "variant_verify",
]
