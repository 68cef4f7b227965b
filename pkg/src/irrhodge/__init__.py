"""Exact spectrum at infinity and irregular Hodge numbers of Laurent polynomials."""
from .chart import (ChartSection, ChartSpec, OperatorPolynomial, Truncation, decompose_Vbeta,
                    filtration_compare, in_V_strictly_less, p_poly, p_poly_hbar, plus_norm,
                    pq_convert, precision_lemma_check, reexpand, vpartial_apply)
from .errors import *  # noqa: F401,F403
from .groebner import (GroebnerBasis, Ideal, QuotientRing, groebner_basis, laurent_class_vector,
                       quotient_ring, saturate_torus)
from .hodge import (BundleType, IrregularHodgeTable, bundle_degree, hn_jumps,
                    irregular_hodge_numbers, kontsevich_bundle_type, mirror_check,
                    nearby_cycle_dimension, residue_classes, toric_hodge_numbers)
from .laurent import LaurentPolynomial, format_laurent, log_derivative, parse_laurent
from .newton import (NewtonPolytope, is_convenient, is_nondegenerate, newton_degree,
                     newton_polytope, normalized_volume)
from .report import AnalysisReport, analyze
from .spectrum import (SpectrumTable, check_spectrum_symmetry, jacobian_ideal, milnor_number,
                       spectral_multiplicity, spectrum_at_infinity)

__version__ = "0.1.0"
