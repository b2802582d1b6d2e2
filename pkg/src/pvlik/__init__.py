"""P-values as indices of likelihood functions for Student's t-test.

Core pieces: non-central t primitives (tdist), t-tests and tail handling
(significance), power curves and P-quantiles (power), P-value densities
(pdensity), likelihood functions indexed by observed P-values
(likelihood), a seeded Monte Carlo cloud engine with stopping rules
(montecarlo), and the binomial / negative-binomial coin example (coin).
"""

from ._backend import BACKEND
from .coin import CoinOutcome, Sampling, binomial_p, coin_likelihood, negative_binomial_p
from .errors import (BudgetError, ConvergenceError, DegenerateInputError,
                     DomainError, EmptySliceError)
from .likelihood import (LikelihoodCurve, likelihood_curve, likelihood_from_p,
                         likelihood_ratio)
from .montecarlo import (PCloud, SimConfig, SliceHistogram, StoppingRule,
                         ThetaFixed, ThetaUniform, horizontal_slice,
                         run_cloud, vertical_slice)
from .pdensity import PDensityCurve, p_density, p_density_curve
from .power import p_quantile, power
from .significance import (Family, PValue, Tails, TestSpec, convert_tails,
                           p_from_t, t_test)
from .tdist import (central_t_cdf, central_t_pdf, central_t_quantile,
                    noncentral_t_cdf, noncentral_t_pdf)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "__version__",
    "central_t_cdf", "central_t_pdf", "central_t_quantile",
    "noncentral_t_cdf", "noncentral_t_pdf",
    "Family", "Tails", "TestSpec", "PValue", "t_test", "p_from_t",
    "convert_tails",
    "power", "p_quantile",
    "p_density", "p_density_curve", "PDensityCurve",
    "likelihood_from_p", "likelihood_ratio", "likelihood_curve",
    "LikelihoodCurve",
    "SimConfig", "StoppingRule", "ThetaFixed", "ThetaUniform", "PCloud",
    "SliceHistogram", "run_cloud", "vertical_slice", "horizontal_slice",
    "CoinOutcome", "Sampling", "binomial_p", "negative_binomial_p",
    "coin_likelihood",
    "DomainError", "DegenerateInputError", "ConvergenceError",
    "EmptySliceError", "BudgetError",
]
