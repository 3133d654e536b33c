"""Kreiss-type, fractional and strong resolvent constants for power bounded
matrices, together with the rational-function and model-space machinery
(Hardy/Wiener norms, Blaschke products, Malmquist bases) used to bound them.
"""

from .bernstein import SearchResult, bernstein_lower_search
from .blaschke import (MalmquistBasis, SpectrumInDisk, blaschke_factor,
                       blaschke_product, lemma9_constants, lemma9_ratio,
                       malmquist_derivative, malmquist_eval, project_kernel_power)
from .bounds import (INEQUALITY_IDS, thm3_constant, thm3_sharpness_probe,
                     thmA_constant, verify, z3_constant)
from .errors import (ConditioningWarning, HypothesisViolation, NonConvergence,
                     PoleHit, SingularResolvent, SpectrumOnCircle)
from .gallery import (InstanceSpec, bidiagonal, cot_matrix, jordan_nilpotent,
                      lambda_nu_of_r, mobius_of_nilpotent, random_contraction,
                      random_rational, random_spectrum)
from .hardy import (RationalFunction, TaylorSeries, boundary_samples,
                    hardy_inequality_check, hardy_norm, taylor_coefficients,
                    wiener_norm)
from .linalg import (Spectrum, analytic_of_nilpotent, as_matrix, matrix_power_norms,
                     operator_norm, resolvent_power, spectrum)
from .records import BoundRecord
from .resolvent import (Iterated, Kreiss, PowerBound, Strong, SupResult,
                        lemma2_bound, power_bound, scaling_reduction_check,
                        sup_weighted_resolvent)

__all__ = [
    "BoundRecord", "ConditioningWarning", "HypothesisViolation", "INEQUALITY_IDS",
    "InstanceSpec", "Iterated", "Kreiss", "MalmquistBasis", "NonConvergence",
    "PoleHit", "PowerBound", "RationalFunction", "SearchResult", "SingularResolvent",
    "Spectrum", "SpectrumInDisk", "SpectrumOnCircle", "Strong", "SupResult",
    "TaylorSeries", "analytic_of_nilpotent", "as_matrix", "bernstein_lower_search",
    "bidiagonal", "blaschke_factor", "blaschke_product", "boundary_samples",
    "cot_matrix", "hardy_inequality_check", "hardy_norm", "jordan_nilpotent",
    "lambda_nu_of_r", "lemma2_bound", "lemma9_constants", "lemma9_ratio",
    "malmquist_derivative", "malmquist_eval", "matrix_power_norms",
    "mobius_of_nilpotent", "operator_norm", "power_bound", "project_kernel_power",
    "random_contraction", "random_rational", "random_spectrum", "resolvent_power",
    "scaling_reduction_check", "spectrum", "sup_weighted_resolvent",
    "taylor_coefficients", "thm3_constant", "thm3_sharpness_probe", "thmA_constant",
    "verify", "wiener_norm", "z3_constant",
]

__version__ = "0.1.0"
