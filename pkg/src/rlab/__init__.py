"""rlab: exact and numerical laboratory for Ramanujan expansions."""

from .arith import (ArithmeticFunction, FactoredInteger, d_k, dirichlet_convolve,
                    divisors, factor, function_from_spec, function_to_spec,
                    mu, omega, phi)
from .finite import (FiniteExpansion, TruncatedDivisorSum, fre_to_tds,
                     high_coefficient_check, low_coefficient_report,
                     tds_to_fre, truncate)
from .kernels import BACKEND
from .limits import LimitEstimate
from .ramanujan import (RamanujanSumTable, csum, csum_divisor_form,
                        csum_trig_form, delange_bound_check,
                        divisibility_indicator_check, orthogonality_estimate)
from .rational import Rational, exact_sum, format_rational, parse_rational
from .transforms import (CoefficientSeq, ConditionReport, EratosthenesTransform,
                         carmichael_estimate, condition_check, cw_formula_check,
                         eratosthenes, nonneg_carmichael_bound,
                         vanishing_tail_search, wintner_cm_shortcut,
                         wintner_coefficient, wintner_table)
from .expansions import (RamanujanExpansion, ZeroCloudElement,
                         carmichael_formula_check, divisor_power_coefficient,
                         evaluate_partial, invert_pure_coefficients,
                         lucht_evaluate, standard_finite_expansion,
                         wintner_delange_reconstruct, zero_cloud_partial)
from .shift import (Correlation, CutCorrelation, FairnessError,
                    ShiftCoefficients, cc_coefficients, carmichael_vs_cc,
                    correlate, cut_correlation, l_estimate, qrc,
                    shift_expansion_check, short_average, weak_reef_check)

__version__ = "0.1.0"
