"""Central and non-central Student-t distribution primitives.

All functions are pure and operate on scalars. The non-central CDF is a
two-sided (mode-centred) sum of incomplete-beta terms with Poisson-type
weights carried in log space, so it stays usable for large noncentrality
parameters where a naive sum from j=0 underflows.
"""

import math

from .errors import ConvergenceError, DomainError
from .special import betainc, lbeta, norm_cdf

_T_HUGE = 1e6          # |t| beyond this short-circuits to the CDF limit
_SERIES_RTOL = 1e-12
_SERIES_MAX_TERMS = 20000
_QUANTILE_TOL = 1e-12


def _check_df(df: float) -> None:
    if not (df > 0.0) or math.isinf(df):
        raise DomainError(f"degrees of freedom must be positive and finite (got {df})")


def _check_t(t: float) -> None:
    if math.isnan(t) or math.isinf(t):
        raise DomainError(f"t must be finite (got {t})")


def central_t_cdf(t: float, df: float) -> float:
    _check_df(df)
    _check_t(t)
    if t > _T_HUGE:
        return 1.0
    if t < -_T_HUGE:
        return 0.0
    x = df / (df + t * t)
    xc = t * t / (df + t * t)  # exact complement, no cancellation
    half_tail = 0.5 * betainc(0.5 * df, 0.5, x, xc)
    return half_tail if t < 0.0 else 1.0 - half_tail


def central_t_pdf(t: float, df: float) -> float:
    _check_df(df)
    _check_t(t)
    lognorm = math.lgamma(0.5 * (df + 1.0)) - math.lgamma(0.5 * df) \
        - 0.5 * math.log(df * math.pi)
    return math.exp(lognorm - 0.5 * (df + 1.0) * math.log1p(t * t / df))


def central_t_quantile(p: float, df: float) -> float:
    """Inverse central-t CDF by bracketed Newton iteration."""
    _check_df(df)
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile requires 0 < p < 1 (got {p})")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -central_t_quantile(1.0 - p, df)
    # bracket [lo, hi] with cdf(lo) <= p <= cdf(hi)
    lo, hi = 0.0, 1.0
    while central_t_cdf(hi, df) < p:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            raise ConvergenceError("quantile bracket expansion failed")
    q = 0.5 * (lo + hi)
    for _ in range(200):
        err = central_t_cdf(q, df) - p
        if err > 0.0:
            hi = q
        else:
            lo = q
        step = err / max(central_t_pdf(q, df), 1e-300)
        q_new = q - step
        if not lo < q_new < hi:
            q_new = 0.5 * (lo + hi)
        if abs(err) < _QUANTILE_TOL and abs(q_new - q) <= 1e-12 * (1.0 + abs(q)):
            return q_new
        q = q_new
    return q


def noncentral_t_cdf(t: float, df: float, ncp: float) -> float:
    _check_df(df)
    _check_t(t)
    if math.isnan(ncp) or math.isinf(ncp):
        raise DomainError(f"noncentrality parameter must be finite (got {ncp})")
    if 0.5 * ncp * ncp < 1e-300:  # Poisson weight machinery would underflow
        return central_t_cdf(t, df)
    if t > _T_HUGE:
        return 1.0
    if t < -_T_HUGE:
        return 0.0
    if t < 0.0:
        return 1.0 - _nct_cdf_nonneg(-t, df, -ncp)
    return _nct_cdf_nonneg(t, df, ncp)


def _nct_cdf_nonneg(t: float, df: float, delta: float) -> float:
    """Non-central t CDF for t >= 0, any sign of delta."""
    if t == 0.0:
        return norm_cdf(-delta)
    tt = t * t
    x = tt / (tt + df)
    xc = df / (tt + df)          # 1 - x without cancellation
    b = 0.5 * df
    lam = 0.5 * delta * delta
    j0 = int(lam)
    logx = math.log(x)
    logxc = math.log(xc)

    # Poisson-type weights at the starting index, in log space.
    loglam = math.log(lam)
    lp = -lam + j0 * loglam - math.lgamma(j0 + 1.0)
    lq = -lam + j0 * loglam + math.log(abs(delta)) - 0.5 * math.log(2.0) \
        - math.lgamma(j0 + 1.5)
    p_w = math.exp(lp)
    q_w = math.copysign(math.exp(lq), delta)

    # Incomplete-beta values and their increment terms at a_p=j0+1/2, a_q=j0+1.
    ap = j0 + 0.5
    aq = j0 + 1.0
    ibp = betainc(ap, b, x, xc)
    ibq = betainc(aq, b, x, xc)
    # T(a) = x^a (1-x)^b / (a * B(a, b)) satisfies I_x(a+1,b) = I_x(a,b) - T(a)
    tp = math.exp(ap * logx + b * logxc - lbeta(ap, b)) / ap
    tq = math.exp(aq * logx + b * logxc - lbeta(aq, b)) / aq

    s = p_w * ibp + q_w * ibq
    # upward sweep
    pj, qj, ibpj, ibqj, tpj, tqj = p_w, q_w, ibp, ibq, tp, tq
    for j in range(j0, j0 + _SERIES_MAX_TERMS):
        ibpj -= tpj
        ibqj -= tqj
        tpj *= x * (j + 0.5 + b) / (j + 1.5)
        tqj *= x * (j + 1.0 + b) / (j + 2.0)
        pj *= lam / (j + 1.0)
        qj *= lam / (j + 1.5)
        term = pj * ibpj + qj * ibqj
        s += term
        if abs(term) <= _SERIES_RTOL * max(abs(s), 1e-30) and j + 1 > lam:
            break
    else:
        raise ConvergenceError("non-central t series hit the iteration cap")
    # downward sweep; terms can still be growing when x is tiny, so only
    # stop once they are small AND shrinking
    pj, qj, ibpj, ibqj, tpj, tqj = p_w, q_w, ibp, ibq, tp, tq
    prev = 0.0
    for j in range(j0, 0, -1):
        # step the increment terms down: T(a-1) = T(a) * a / (x * (a+b-1))
        ap_j = j + 0.5
        aq_j = float(j + 1)
        tpj *= ap_j / (x * (ap_j + b - 1.0))
        tqj *= aq_j / (x * (aq_j + b - 1.0))
        ibpj += tpj
        ibqj += tqj
        pj *= j / lam
        qj *= (j + 0.5) / lam
        term = pj * ibpj + qj * ibqj
        s += term
        if abs(term) <= _SERIES_RTOL * max(abs(s), 1e-30) and abs(term) < prev:
            break
        prev = abs(term)
    cdf = norm_cdf(-delta) + 0.5 * s
    return min(1.0, max(0.0, cdf))


def noncentral_t_pdf(t: float, df: float, ncp: float) -> float:
    _check_df(df)
    _check_t(t)
    if math.isnan(ncp) or math.isinf(ncp):
        raise DomainError(f"noncentrality parameter must be finite (got {ncp})")
    if t == 0.0:
        lognorm = math.lgamma(0.5 * (df + 1.0)) - math.lgamma(0.5 * df) \
            - 0.5 * math.log(df * math.pi)
        return math.exp(lognorm - 0.5 * ncp * ncp)
    if 0.5 * ncp * ncp < 1e-300:
        return central_t_pdf(t, df)
    if abs(t) > _T_HUGE:
        return 0.0
    if t < 0.0:
        return _nct_pdf_pos(-t, df, -ncp)
    return _nct_pdf_pos(t, df, ncp)


def _nct_pdf_pos(t: float, df: float, delta: float) -> float:
    """Derivative of the CDF series with respect to t, for t > 0.

    Term-by-term: d/dt I_x(a, b) = g(a) * dx/dt with
    g(a) = x^(a-1) (1-x)^(b-1) / B(a, b).
    """
    if delta == 0.0:
        return central_t_pdf(t, df)
    tt = t * t
    x = tt / (tt + df)
    xc = df / (tt + df)
    b = 0.5 * df
    dxdt = 2.0 * t * df / ((tt + df) * (tt + df))
    lam = 0.5 * delta * delta
    j0 = int(lam)
    logx = math.log(x)
    logxc = math.log(xc)

    loglam = math.log(lam)
    lp = -lam + j0 * loglam - math.lgamma(j0 + 1.0)
    lq = -lam + j0 * loglam + math.log(abs(delta)) - 0.5 * math.log(2.0) \
        - math.lgamma(j0 + 1.5)
    p_w = math.exp(lp)
    q_w = math.copysign(math.exp(lq), delta)

    ap = j0 + 0.5
    aq = j0 + 1.0
    gp = math.exp((ap - 1.0) * logx + (b - 1.0) * logxc - lbeta(ap, b))
    gq = math.exp((aq - 1.0) * logx + (b - 1.0) * logxc - lbeta(aq, b))

    s = p_w * gp + q_w * gq
    pj, qj, gpj, gqj = p_w, q_w, gp, gq
    for j in range(j0, j0 + _SERIES_MAX_TERMS):
        # g(a+1) = g(a) * x * (a+b) / a
        gpj *= x * (j + 0.5 + b) / (j + 0.5)
        gqj *= x * (j + 1.0 + b) / (j + 1.0)
        pj *= lam / (j + 1.0)
        qj *= lam / (j + 1.5)
        term = pj * gpj + qj * gqj
        s += term
        if abs(term) <= _SERIES_RTOL * max(abs(s), 1e-30) and j + 1 > lam:
            break
    else:
        raise ConvergenceError("non-central t density series hit the iteration cap")
    pj, qj, gpj, gqj = p_w, q_w, gp, gq
    prev = 0.0
    for j in range(j0, 0, -1):
        # g(a-1) = g(a) * (a-1) / (x * (a+b-1))
        gpj *= (j - 0.5) / (x * (j - 0.5 + b))
        gqj *= float(j) / (x * (j + b))
        pj *= j / lam
        qj *= (j + 0.5) / lam
        term = pj * gpj + qj * gqj
        s += term
        if abs(term) <= _SERIES_RTOL * max(abs(s), 1e-30) and abs(term) < prev:
            break
        prev = abs(term)
    return max(0.0, 0.5 * s * dxdt)
