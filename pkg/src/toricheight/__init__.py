"""Exact arithmetic invariants of projective toric varieties.

Degrees, Chow weights, normalized heights and multiheights, and heights of
intersections with monomial divisors, computed from a lattice configuration
and the place-wise weights of a point with exact rational and logarithmic
arithmetic.
"""

from .envelope import (Cell, RoofFunction, WeightedConfig, evaluate, integrate,
                       mixed_integral, roof, sup_convolution, upper_envelope, verify_roof)
from .instance import (Instance, InstanceError, load_instance, parse_instance, render)
from .invariants import (BezoutReport, MinimaReport, MultiInstance, ProductFormulaError,
                         ToricError, ToricInstance, chow_weight, degree, minima_report,
                         monomial_bezout, normalized_height, normalized_multiheight,
                         orbit_point_height)
from .lattice import LatticeData, lattice_data
from .logvalue import LogValue, PrecisionExhausted, parse_logvalue, precision_cap
from .places import (Coordinate, PlaceWeights, product_formula_check,
                     weights_from_point)
from .polytope import Polytope, convex_hull, minkowski_sum, volume

__version__ = "0.1.0"

__all__ = [
    "Cell", "RoofFunction", "WeightedConfig", "evaluate", "integrate", "mixed_integral",
    "roof", "sup_convolution", "upper_envelope", "verify_roof",
    "Instance", "InstanceError", "load_instance", "parse_instance", "render",
    "BezoutReport", "MinimaReport", "MultiInstance", "ProductFormulaError", "ToricError",
    "ToricInstance", "chow_weight", "degree", "minima_report", "monomial_bezout",
    "normalized_height", "normalized_multiheight", "orbit_point_height",
    "LatticeData", "lattice_data",
    "LogValue", "PrecisionExhausted", "parse_logvalue", "precision_cap",
    "Coordinate", "PlaceWeights", "product_formula_check", "weights_from_point",
    "Polytope", "convex_hull", "minkowski_sum", "volume",
]
