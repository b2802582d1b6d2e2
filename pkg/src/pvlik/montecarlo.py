"""Seeded Monte Carlo engine for P-value clouds and stopping-rule runs.

Each run draws a true effect size, generates normal samples with that
standardized mean difference and unit variance, runs the t-test, and
applies the stopping rule. Clouds are reproducible bit-for-bit given the
seed, the declared partition (worker) count, and the kernel backend.
"""

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, TextIO, Union

import numpy as np

from ._backend import kernels
from .errors import BudgetError, DomainError, EmptySliceError
from .significance import P_CLAMP, Family, Tails, TestSpec

DEFAULT_BUDGET = 500_000_000  # total simulated observations
_BLOCK = 100_000              # runs per vectorized block


@dataclass(frozen=True)
class ThetaFixed:
    theta: float


@dataclass(frozen=True)
class ThetaUniform:
    lo: float = -4.0
    hi: float = 4.0

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError("uniform theta mode needs lo < hi")


@dataclass(frozen=True)
class StoppingRule:
    """Fixed-n rule, or a two-stage rule that adds observations and
    retests when the interim P lands inside the continuation band."""

    kind: str = "fixed_n"  # "fixed_n" | "two_stage"
    continue_band: tuple[float, float] = (0.05, 0.15)
    stage2_increment: int = 5

    def __post_init__(self):
        if self.kind not in ("fixed_n", "two_stage"):
            raise DomainError(f"unknown stopping rule kind {self.kind!r}")
        lo, hi = self.continue_band
        if not lo < hi:
            raise DomainError("continuation band needs low < high")
        if self.stage2_increment < 1:
            raise DomainError("stage-two increment must be positive")


@dataclass(frozen=True)
class SimConfig:
    spec: TestSpec
    runs: int
    theta_mode: Union[ThetaFixed, ThetaUniform] = field(default_factory=ThetaUniform)
    seed: int = 0
    rule: StoppingRule = field(default_factory=StoppingRule)

    def __post_init__(self):
        if self.runs < 1:
            raise DomainError("runs must be >= 1")

    def max_observations(self) -> int:
        """Worst-case total observations over all runs (budget check)."""
        n = self.spec.n
        if self.rule.kind == "two_stage":
            n += self.rule.stage2_increment
        per_run = 2 * n if self.spec.family is Family.TWO_SAMPLE else n
        return self.runs * per_run


@dataclass(frozen=True)
class PCloud:
    """(theta, p, stage, final_n) records from a simulation."""

    theta: np.ndarray
    p: np.ndarray
    stage: np.ndarray
    final_n: np.ndarray
    config: Optional[SimConfig] = None

    def __len__(self) -> int:
        return self.theta.size

    def to_csv(self, dest: Union[str, TextIO]) -> None:
        close = False
        if isinstance(dest, str):
            dest = open(dest, "w", newline="")
            close = True
        try:
            w = csv.writer(dest, lineterminator="\n")
            w.writerow(["theta", "p", "stage", "final_n"])
            for th, p, st, fn in zip(self.theta, self.p, self.stage, self.final_n):
                w.writerow([f"{th:.17g}", f"{p:.17g}", int(st), int(fn)])
        finally:
            if close:
                dest.close()

    @classmethod
    def from_csv(cls, src: Union[str, TextIO]) -> "PCloud":
        close = False
        if isinstance(src, str):
            src = open(src, newline="")
            close = True
        try:
            r = csv.reader(src)
            header = next(r, None)
            if header != ["theta", "p", "stage", "final_n"]:
                raise DomainError(f"not a cloud CSV (header {header!r})")
            theta, p, stage, final_n = [], [], [], []
            for row in r:
                theta.append(float(row[0]))
                p.append(float(row[1]))
                stage.append(int(row[2]))
                final_n.append(int(row[3]))
        finally:
            if close:
                src.close()
        return cls(theta=np.array(theta), p=np.array(p),
                   stage=np.array(stage, dtype=np.int64),
                   final_n=np.array(final_n, dtype=np.int64))


def _t_stats(rng: np.random.Generator, theta: np.ndarray, spec: TestSpec,
             n: int, carry: Optional[tuple] = None):
    """t statistics for a block of runs; returns (t, samples) so stage two
    can pool new observations with the stage-one data."""
    m = theta.size
    if spec.family is Family.TWO_SAMPLE:
        a = theta[:, None] + rng.standard_normal((m, n))
        b = rng.standard_normal((m, n))
        if carry is not None:
            a = np.hstack([carry[0], a])
            b = np.hstack([carry[1], b])
        ntot = a.shape[1]
        va = a.var(axis=1, ddof=1)
        vb = b.var(axis=1, ddof=1)
        sp2 = 0.5 * (va + vb)
        t = (a.mean(axis=1) - b.mean(axis=1)) / np.sqrt(sp2 * 2.0 / ntot)
        return t, (a, b)
    x = theta[:, None] + rng.standard_normal((m, n))
    if carry is not None:
        x = np.hstack([carry[0], x])
    ntot = x.shape[1]
    t = x.mean(axis=1) / np.sqrt(x.var(axis=1, ddof=1) / ntot)
    return t, (x,)


def _p_values(t: np.ndarray, df: float, tails: Tails) -> np.ndarray:
    p2 = np.clip(kernels.two_tailed_p(t, df), P_CLAMP, 1.0 - P_CLAMP)
    if tails is Tails.TWO:
        return p2
    p1 = np.where(t >= 0.0, p2 / 2.0, 1.0 - p2 / 2.0)
    return np.clip(p1, P_CLAMP, 1.0 - P_CLAMP)


def _run_partition(seed_seq: np.random.SeedSequence, runs: int,
                   config: SimConfig) -> tuple:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    spec = config.spec
    rule = config.rule
    out_theta = np.empty(runs)
    out_p = np.empty(runs)
    out_stage = np.ones(runs, dtype=np.int64)
    out_n = np.full(runs, spec.n, dtype=np.int64)
    done = 0
    while done < runs:
        m = min(_BLOCK, runs - done)
        if isinstance(config.theta_mode, ThetaFixed):
            theta = np.full(m, config.theta_mode.theta)
        else:
            theta = rng.uniform(config.theta_mode.lo, config.theta_mode.hi, m)
        t, samples = _t_stats(rng, theta, spec, spec.n)
        p = _p_values(t, spec.df, spec.tails)
        sl = slice(done, done + m)
        out_theta[sl] = theta
        out_p[sl] = p

        if rule.kind == "two_stage":
            lo, hi = rule.continue_band
            cont = (p > lo) & (p < hi)
            if cont.any():
                idx = np.flatnonzero(cont)
                carry = tuple(s[idx] for s in samples)
                n2 = spec.n + rule.stage2_increment
                spec2 = TestSpec(family=spec.family, n=n2, tails=spec.tails)
                t2, _ = _t_stats(rng, theta[idx], spec, rule.stage2_increment,
                                 carry=carry)
                p2 = _p_values(t2, spec2.df, spec.tails)
                out_p[sl][idx] = p2
                out_stage[sl][idx] = 2
                out_n[sl][idx] = n2
        done += m
    return out_theta, out_p, out_stage, out_n


def run_cloud(config: SimConfig, workers: int = 1,
              budget: int = DEFAULT_BUDGET) -> PCloud:
    """Run the simulation described by ``config``.

    ``workers`` is a declared partition count that is part of the
    determinism contract: identical (seed, workers, backend) gives a
    bit-identical cloud regardless of how partitions are scheduled.
    """
    if workers < 1:
        raise DomainError("workers must be >= 1")
    if config.max_observations() > budget:
        raise BudgetError(
            f"simulation needs up to {config.max_observations()} observations,"
            f" over the budget of {budget}")
    children = np.random.SeedSequence(config.seed).spawn(workers)
    sizes = [config.runs // workers] * workers
    for i in range(config.runs % workers):
        sizes[i] += 1
    jobs = [(ss, sz) for ss, sz in zip(children, sizes) if sz > 0]
    if len(jobs) == 1:
        parts = [_run_partition(jobs[0][0], jobs[0][1], config)]
    else:
        with ThreadPoolExecutor(max_workers=len(jobs)) as ex:
            parts = list(ex.map(lambda j: _run_partition(j[0], j[1], config),
                                jobs))
    return PCloud(
        theta=np.concatenate([p[0] for p in parts]),
        p=np.concatenate([p[1] for p in parts]),
        stage=np.concatenate([p[2] for p in parts]),
        final_n=np.concatenate([p[3] for p in parts]),
        config=config,
    )


@dataclass(frozen=True)
class SliceHistogram:
    """Normalized histogram of one cloud slice (integrates to 1)."""

    axis: str  # "p" for vertical slices, "theta" for horizontal
    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    n_selected: int

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


def vertical_slice(cloud: PCloud, theta_band: tuple[float, float],
                   bins: int) -> SliceHistogram:
    """Histogram over P of the runs whose true effect size lies in the
    band; comparable to a P-density curve."""
    lo, hi = theta_band
    if not lo < hi:
        raise DomainError("theta band needs lo < hi")
    if bins < 2:
        raise DomainError("need at least 2 bins")
    sel = (cloud.theta >= lo) & (cloud.theta <= hi)
    n = int(sel.sum())
    if n == 0:
        raise EmptySliceError(f"no runs with theta in [{lo}, {hi}]")
    counts, edges = np.histogram(cloud.p[sel], bins=bins, range=(0.0, 1.0))
    width = edges[1] - edges[0]
    return SliceHistogram(axis="p", edges=edges, counts=counts,
                          density=counts / (n * width), n_selected=n)


def horizontal_slice(cloud: PCloud, p_band: tuple[float, float], bins: int,
                     stage: Optional[int] = None,
                     theta_range: Optional[tuple[float, float]] = None
                     ) -> SliceHistogram:
    """Histogram over theta of the runs whose P landed in the band;
    comparable to a (normalized) likelihood curve."""
    lo, hi = p_band
    if not lo < hi:
        raise DomainError("P band needs lo < hi")
    if bins < 2:
        raise DomainError("need at least 2 bins")
    sel = (cloud.p >= lo) & (cloud.p <= hi)
    if stage is not None:
        sel &= cloud.stage == stage
    n = int(sel.sum())
    if n == 0:
        raise EmptySliceError(f"no runs with P in [{lo}, {hi}]")
    if theta_range is None:
        theta_range = (float(cloud.theta.min()), float(cloud.theta.max()))
    if not theta_range[0] < theta_range[1]:
        raise DomainError("degenerate theta range; pass theta_range explicitly")
    counts, edges = np.histogram(cloud.theta[sel], bins=bins, range=theta_range)
    width = edges[1] - edges[0]
    return SliceHistogram(axis="theta", edges=edges, counts=counts,
                          density=counts / (n * width), n_selected=n)
