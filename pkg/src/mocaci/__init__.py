"""Correlation-immune Boolean functions from mutually orthogonal cellular automata."""

from .boolfun import (AnfPolynomial, BooleanFunction, WalshSpectrum, algebraic_degree, anf,
                      correlation_immunity_order, function_from_support, nonlinearity,
                      walsh_transform, walsh_transform_naive)
from .ca import LocalRule, apply_ca, enumerate_bipermutive, is_bipermutive, rule_from_wolfram
from .debruijn import build_labeling, count_paths_with_label, fusion, labelings_orthogonal
from .latin import LatinSquare, are_orthogonal, index_bijection, mols_to_oa, square_from_ca
from .oa import (MocaFamily, OrthogonalArray, binary_expansion_from_moca, ci_function_from_moca,
                 expurgate, strength)
from .search import classify_families, enumerate_moca, enumerate_oca_pairs

__version__ = "0.1.0"
