"""Likelihood functions of effect size indexed by an observed P-value.

An observed P-value, together with the test's sample size and tail mode,
picks out one likelihood function over effect sizes: L(theta) is
proportional to the density of the observed P at theta, i.e. the slope of
the power curve in the significance level. Likelihoods are meaningful
only through ratios, so curves can be left on the raw density scale or
rescaled to a maximum of one.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DomainError
from .pdensity import p_density
from .power import power
from .significance import PValue, Tails, TestSpec

DEFAULT_GRID = 0.01 * np.arange(-100, 501)  # -1..5 step 0.01
_P_EDGE = 1e-12
_L_FLOOR = 1e-300


def _p_value_of(observed_p: Union[float, PValue], spec: TestSpec) -> float:
    if isinstance(observed_p, PValue):
        if observed_p.tails is not spec.tails:
            raise DomainError(
                "observed P-value tail mode does not match the test spec")
        return observed_p.value
    p = float(observed_p)
    if not _P_EDGE < p < 1.0 - _P_EDGE:
        raise DomainError(
            f"observed P must lie in ({_P_EDGE}, 1-{_P_EDGE}); clamp it first "
            f"(got {p})")
    return p


def likelihood_from_p(observed_p: Union[float, PValue], theta: float,
                      spec: TestSpec, method: str = "exact",
                      h: float = 1e-7,
                      force_one_sided: bool = False) -> float:
    """Likelihood of effect size theta given an observed P-value.

    Raw density scale: the value is the P-density at the observed P, so
    L(0) = 1. ``method="finite_diff"`` reproduces the power-slope
    construction literally (central difference with step ``h``).
    ``force_one_sided`` evaluates the one-sided density regardless of the
    spec's tail mode (compatibility with treating a two-tailed P as if it
    were one-tailed); two-tailed curves are bimodal only without it.
    """
    p = _p_value_of(observed_p, spec)
    eff_spec = spec
    if force_one_sided and spec.tails is not Tails.ONE:
        eff_spec = TestSpec(family=spec.family, n=spec.n, tails=Tails.ONE)
    if method == "finite_diff":
        return (power(p + h, theta, eff_spec)
                - power(p - h, theta, eff_spec)) / (2.0 * h)
    return p_density(p, theta, eff_spec, method=method)


def likelihood_ratio(observed_p: Union[float, PValue], theta1: float,
                     theta2: float, spec: TestSpec) -> float:
    """Relative support for theta1 over theta2 given the observed P."""
    l1 = likelihood_from_p(observed_p, theta1, spec)
    l2 = likelihood_from_p(observed_p, theta2, spec)
    if l2 < _L_FLOOR:
        raise DomainError(
            f"denominator likelihood underflows at theta={theta2}")
    return l1 / l2


@dataclass(frozen=True)
class LikelihoodCurve:
    spec: TestSpec
    observed_p: float
    grid: np.ndarray
    values: np.ndarray
    normalization: str  # "raw_density_scale" | "max_one"

    def mode(self) -> float:
        """Grid location of the (first) maximum."""
        return float(self.grid[int(np.argmax(self.values))])

    def half_max_width(self) -> float:
        """Width of the region where the curve exceeds half its maximum,
        by linear interpolation of the outermost crossings."""
        v = self.values
        half = 0.5 * float(v.max())
        above = np.flatnonzero(v >= half)
        if above.size == 0:
            return 0.0
        g = self.grid
        i0, i1 = int(above[0]), int(above[-1])
        left = g[i0]
        if i0 > 0:
            left = g[i0 - 1] + (g[i0] - g[i0 - 1]) * (half - v[i0 - 1]) / (v[i0] - v[i0 - 1])
        right = g[i1]
        if i1 < v.size - 1:
            right = g[i1] + (g[i1 + 1] - g[i1]) * (v[i1] - half) / (v[i1] - v[i1 + 1])
        return float(right - left)


def likelihood_curve(observed_p: Union[float, PValue], spec: TestSpec,
                     grid: Optional[Sequence[float]] = None,
                     normalization: str = "max_one",
                     method: str = "exact",
                     force_one_sided: bool = False) -> LikelihoodCurve:
    """Likelihood over a grid of effect sizes (default -1..5, step 0.01)."""
    if normalization not in ("max_one", "raw_density_scale"):
        raise DomainError(f"unknown normalization {normalization!r}")
    g = DEFAULT_GRID.copy() if grid is None else np.asarray(grid, dtype=np.float64)
    if g.size == 0:
        raise DomainError("grid must be nonempty")
    if np.any(np.diff(g) <= 0):
        raise DomainError("grid must be strictly increasing")
    p = _p_value_of(observed_p, spec)
    vals = np.array([
        likelihood_from_p(p, float(th), spec, method=method,
                          force_one_sided=force_one_sided)
        for th in g
    ])
    if normalization == "max_one":
        peak = vals.max()
        if peak <= 0.0 or not math.isfinite(peak):
            raise DomainError("cannot rescale a degenerate likelihood curve")
        vals = vals / peak
    return LikelihoodCurve(spec=spec, observed_p=p, grid=g, values=vals,
                           normalization=normalization)
