"""Student t-tests, P-values, and tail-convention conversion.

Two-sample tests use the classic pooled-variance statistic with equal
group sizes (df = 2n-2). The one-tailed orientation is "effect > 0": a
positive t statistic gives a one-tailed P below 0.5.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateInputError, DomainError
from .tdist import central_t_cdf

P_CLAMP = 1e-15  # P-values are kept inside [P_CLAMP, 1 - P_CLAMP]


class Family(str, enum.Enum):
    ONE_SAMPLE = "one_sample"
    TWO_SAMPLE = "two_sample"
    PAIRED = "paired"


class Tails(str, enum.Enum):
    ONE = "one_tailed"
    TWO = "two_tailed"


@dataclass(frozen=True)
class TestSpec:
    """Test family, per-group sample size and tail mode.

    Fixes the degrees of freedom and the effect-size -> noncentrality
    mapping used throughout the package.
    """

    __test__ = False  # keep pytest from collecting this as a test class

    family: Family = Family.TWO_SAMPLE
    n: int = 10
    tails: Tails = Tails.TWO

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"sample size must be >= 2 (got {self.n})")

    @property
    def df(self) -> float:
        if self.family is Family.TWO_SAMPLE:
            return float(2 * self.n - 2)
        return float(self.n - 1)

    def ncp(self, theta: float) -> float:
        """Noncentrality parameter for a standardized effect size."""
        if not math.isfinite(theta):
            raise DomainError(f"effect size must be finite (got {theta})")
        if self.family is Family.TWO_SAMPLE:
            return theta * math.sqrt(self.n / 2.0)
        return theta * math.sqrt(self.n)


@dataclass(frozen=True)
class PValue:
    """A P-value with its tail convention.

    ``direction`` is the sign of the observed t statistic; it is required
    for two-tailed values so conversion to one-tailed is possible.
    """

    value: float
    tails: Tails
    direction: int = 0  # -1, 0 (unknown/ambiguous) or +1

    def __post_init__(self):
        if not 0.0 < self.value < 1.0:
            raise DomainError(f"P-value must lie in (0, 1) (got {self.value})")


def clamp_p(p: float) -> float:
    return min(max(p, P_CLAMP), 1.0 - P_CLAMP)


def t_test(group_a: Sequence[float],
           group_b: Optional[Sequence[float]] = None,
           spec: TestSpec = TestSpec()) -> tuple[float, PValue]:
    """t statistic and P-value for raw samples under ``spec``.

    For ``paired``, ``group_a`` and ``group_b`` are the paired columns and
    the test is a one-sample test on their differences; alternatively the
    differences may be passed directly as ``group_a``.
    """
    a = np.asarray(group_a, dtype=np.float64)
    if a.ndim != 1 or a.size != spec.n:
        raise DomainError(f"group_a must have length n={spec.n} (got {a.size})")

    if spec.family is Family.TWO_SAMPLE:
        if group_b is None:
            raise DomainError("two_sample test needs a second group")
        b = np.asarray(group_b, dtype=np.float64)
        if b.ndim != 1 or b.size != spec.n:
            raise DomainError(f"group_b must have length n={spec.n} (got {b.size})")
        va = a.var(ddof=1)
        vb = b.var(ddof=1)
        if va + vb == 0.0:
            raise DegenerateInputError("both groups have zero variance")
        sp2 = 0.5 * (va + vb)  # pooled, equal n
        t = float((a.mean() - b.mean()) / math.sqrt(sp2 * 2.0 / spec.n))
    else:
        if spec.family is Family.PAIRED and group_b is not None:
            b = np.asarray(group_b, dtype=np.float64)
            if b.size != a.size:
                raise DomainError("paired groups must have equal length")
            a = a - b
        v = a.var(ddof=1)
        if v == 0.0:
            raise DegenerateInputError("sample has zero variance")
        t = float(a.mean() / math.sqrt(v / spec.n))

    return t, p_from_t(t, spec)


def p_from_t(t: float, spec: TestSpec) -> PValue:
    """P-value of an already-computed t statistic."""
    two = clamp_p(2.0 * (1.0 - central_t_cdf(abs(t), spec.df)))
    sign = 1 if t > 0 else (-1 if t < 0 else 0)
    if spec.tails is Tails.TWO:
        return PValue(two, Tails.TWO, direction=sign)
    one = two / 2.0 if t >= 0 else 1.0 - two / 2.0
    return PValue(clamp_p(one), Tails.ONE, direction=sign)


def convert_tails(p: PValue, t_sign: Optional[int] = None) -> PValue:
    """Convert between one- and two-tailed conventions.

    Two- to one-tailed: p/2 when t > 0, 1 - p/2 when t < 0. One- to
    two-tailed: 2p (positive direction) when p < 0.5, 2(1-p) (negative
    direction) when p > 0.5. Round trip is the identity.
    """
    if p.tails is Tails.TWO:
        sign = t_sign if t_sign is not None else p.direction
        if sign == 0:
            raise DomainError("converting a two-tailed P needs the sign of t")
        one = p.value / 2.0 if sign > 0 else 1.0 - p.value / 2.0
        return PValue(clamp_p(one), Tails.ONE, direction=sign)
    if p.value < 0.5:
        return PValue(clamp_p(2.0 * p.value), Tails.TWO, direction=1)
    if p.value > 0.5:
        return PValue(clamp_p(2.0 * (1.0 - p.value)), Tails.TWO, direction=-1)
    # p == 0.5 exactly: direction is ambiguous
    return PValue(1.0 - P_CLAMP, Tails.TWO, direction=0)
