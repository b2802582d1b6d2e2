"""The two-statisticians coin experiment.

The same toss record (e.g. five tails then one head) has different
P-values under fixed-n binomial and toss-until-first-head (negative
binomial) designs, yet the two likelihood functions over the head
probability are exactly proportional. Note the numeric labels sometimes
quoted with this example are swapped relative to what the two formulas
give: the fixed-n tail sum is 0.109375 and the geometric tail is 0.03125
for the canonical 6-toss outcome. This module reports the formula
values.
"""

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError


class Sampling(str, enum.Enum):
    FIXED_N = "fixed_n"
    UNTIL_FIRST_HEAD = "until_first_head"


@dataclass(frozen=True)
class CoinOutcome:
    tosses: int
    heads: int
    sampling: Sampling = Sampling.FIXED_N

    def __post_init__(self):
        if self.tosses < 1:
            raise DomainError("tosses must be positive")
        if not 0 <= self.heads <= self.tosses:
            raise DomainError("heads must lie in [0, tosses]")
        if self.sampling is Sampling.UNTIL_FIRST_HEAD and self.heads != 1:
            raise DomainError(
                "until_first_head outcomes have exactly one head (the last toss)")


def _check_p0(p0: float) -> None:
    if not 0.0 < p0 < 1.0:
        raise DomainError(f"p0 must lie in (0, 1) (got {p0})")


def binomial_p(outcome: CoinOutcome, p0: float = 0.5) -> float:
    """Lower-tail binomial P-value: Pr(heads <= observed | tosses, p0)."""
    _check_p0(p0)
    if outcome.sampling is not Sampling.FIXED_N:
        raise DomainError("binomial_p applies to fixed_n outcomes")
    n, k = outcome.tosses, outcome.heads
    return sum(math.comb(n, j) * p0 ** j * (1.0 - p0) ** (n - j)
               for j in range(k + 1))


def negative_binomial_p(outcome: CoinOutcome, p0: float = 0.5) -> float:
    """Pr(first head needs >= observed tosses | p0) = (1-p0)^(tosses-1)."""
    _check_p0(p0)
    if outcome.sampling is not Sampling.UNTIL_FIRST_HEAD:
        raise DomainError("negative_binomial_p applies to until_first_head outcomes")
    return (1.0 - p0) ** (outcome.tosses - 1)


def coin_likelihood(outcome: CoinOutcome, grid: Sequence[float]) -> np.ndarray:
    """Likelihood of each head probability in ``grid`` for the outcome.

    fixed_n: C(n, k) p^k (1-p)^(n-k); until_first_head: p (1-p)^(n-1).
    The two differ only by the binomial coefficient, so the designs'
    likelihood functions are exactly proportional.
    """
    g = np.asarray(grid, dtype=np.float64)
    if g.size == 0 or (g <= 0.0).any() or (g >= 1.0).any():
        raise DomainError("grid must be nonempty and inside (0, 1)")
    n, k = outcome.tosses, outcome.heads
    base = g ** k * (1.0 - g) ** (n - k)
    if outcome.sampling is Sampling.FIXED_N:
        return math.comb(n, k) * base
    return base
