"""Power of the t-test as a function of effect size, and its inverse in
the significance level (P-quantiles, e.g. median P)."""

from .errors import DomainError
from .significance import Tails, TestSpec
from .tdist import central_t_quantile, noncentral_t_cdf

_PQ_TOL = 1e-13  # interval width; keeps |power(x) - q| comfortably under 1e-9


def power(alpha: float, theta: float, spec: TestSpec) -> float:
    """Pr(P <= alpha | theta). At theta = 0 this is alpha itself.

    Two-tailed power is the sum of both rejection-region masses under the
    noncentral distribution, not twice one tail.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1) (got {alpha})")
    df = spec.df
    delta = spec.ncp(theta)
    if spec.tails is Tails.ONE:
        crit = central_t_quantile(1.0 - alpha, df)
        return 1.0 - noncentral_t_cdf(crit, df, delta)
    crit = central_t_quantile(1.0 - alpha / 2.0, df)
    return (1.0 - noncentral_t_cdf(crit, df, delta)
            + noncentral_t_cdf(-crit, df, delta))


def p_quantile(q: float, theta: float, spec: TestSpec) -> float:
    """Inverse of ``power`` in alpha: the q-quantile of the P-value
    distribution at effect size theta (median P for q = 0.5)."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie in (0, 1) (got {q})")
    lo, hi = 0.0, 1.0
    # power is strictly increasing in alpha, so plain bisection is safe
    while hi - lo > _PQ_TOL:
        mid = 0.5 * (lo + hi)
        if power(mid, theta, spec) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
