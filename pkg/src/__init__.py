"""
Pacote popcheck.

Numerical checks of Popoviciu-type inequalities: special functions, means,
convexity classification, residual evaluators and counterexample search.

Uso:
    from src import function, popoviciu_residual
    popoviciu_residual(function("power", 2), (0, 0, 3)).residual  # 1.0
"""
# Exportar a API pública do pacote
from .convexity import (HSpec, aczel_transform, h_convexity_defect, h_eval, h_property_check,
                        midpoint_convexity_defect, mn_convexity_check)
from .errors import ConvergenceError, DomainError, PopcheckError, RegistryError, SearchError
from .functions import FunctionSpec, function
from .inequalities import (ResidualReport, agm_log_corollary, al_popoviciu_gap, h_jensen, h_jensen_pair_defect,
                           h_jensen_pair_pop, h_ratio_popoviciu, hpop_residual, hypergeometric_popoviciu,
                           popoviciu_residual, qa_popoviciu, semiconvex_sandwich, strong_convexity_residual,
                           volume_popoviciu)
from .interval import Interval
from .means import Generator, PointSet, Triple, identric_mean, log_mean2, log_mean3, power_mean, qa_mean
from .search import Certificate, SearchRegion, find_counterexample, grid_scan, refine, sweep
from .specfun import curvature_bounds, gamma, hyp2f1, ln_gamma, lp_ball_volume, second_derivative

__all__ = [
    "Certificate", "ConvergenceError", "DomainError", "FunctionSpec", "Generator", "HSpec", "Interval",
    "PointSet", "PopcheckError", "RegistryError", "ResidualReport", "SearchError", "SearchRegion", "Triple",
    "aczel_transform", "agm_log_corollary", "al_popoviciu_gap", "curvature_bounds", "find_counterexample",
    "function", "gamma", "grid_scan", "h_convexity_defect", "h_eval", "h_jensen", "h_jensen_pair_defect",
    "h_jensen_pair_pop", "h_property_check", "h_ratio_popoviciu", "hpop_residual", "hyp2f1",
    "hypergeometric_popoviciu", "identric_mean", "ln_gamma", "log_mean2", "log_mean3", "lp_ball_volume",
    "midpoint_convexity_defect", "mn_convexity_check", "popoviciu_residual", "power_mean", "qa_mean",
    "qa_popoviciu", "refine", "second_derivative", "semiconvex_sandwich", "strong_convexity_residual",
    "sweep", "volume_popoviciu",
]
__version__ = "0.1.0"
