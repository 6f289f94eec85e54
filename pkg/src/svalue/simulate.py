"""Monte Carlo validation of P-value uniformity and conservativeness claims.

A valid (uniform) P-value turns into an exponentially distributed surprisal
with mean 1 nat = 1.443 bits, and the rule "reject if p <= alpha" rejects at
rate alpha. Exact discrete tests are only conservatively valid: their P-value
stochastically dominates the uniform, Pr(P <= alpha) <= alpha, and the mean
surprisal reads as minimum information. This module checks all of that by
simulation, plus the e-value condition E[-ln P] <= 1 and a one-sample
Kolmogorov-Smirnov fit report.

Reproducibility contract: draws come from numpy's PCG64 bit generator seeded
with SeedSequence(entropy=seed, spawn_key=(stream,)). The same (seed, stream)
pair yields bit-identical sequences across runs and platforms; parallel
workers should take substreams (seed, stream + worker_index).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from math import comb

import numpy as np

LOW_N = 1000  # below this, summary statistics are flagged as unreliable
KS_CRITICAL_COEF = 1.63  # asymptotic one-sample KS critical value at the 1% level

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class RngSpec:
    """Seed and substream index for a reproducible PCG64 stream."""

    seed: int
    stream: int = 0

    def __post_init__(self) -> None:
        for name, v in (("seed", self.seed), ("stream", self.stream)):
            if not isinstance(v, int) or isinstance(v, bool) or not (0 <= v < 2**64):
                raise ValueError(f"{name} must be an integer in [0, 2^64), got {v!r}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(seq))

    def substream(self, index: int) -> "RngSpec":
        return RngSpec(self.seed, self.stream + index)


@dataclass(frozen=True)
class SimulationSummary:
    n: int
    mean_s_nats: float
    mean_s_bits: float
    se_of_mean: float  # standard error of mean_s_nats; NaN when n = 1
    empirical_type1: dict[float, float]  # alpha -> rejection rate
    dominance_violations: int  # alphas with rate > alpha + 3 binomial SEs
    low_n: bool


@dataclass(frozen=True)
class EValueCheck:
    n: int
    generator: str
    mean_e_condition: float  # sample mean of -ln P
    se_of_mean: float
    passed: bool  # mean - 3 SE does not exceed 1
    low_n: bool


@dataclass(frozen=True)
class DistributionReport:
    n: int
    reference: str
    ks_statistic: float
    critical_value: float  # 1.63 / sqrt(n)
    passed: bool


def _check_alphas(alphas: Sequence[float]) -> list[float]:
    out = []
    for a in alphas:
        a = float(a)
        if math.isnan(a) or not (0.0 < a < 1.0):
            raise ValueError(f"alpha levels must lie in (0, 1), got {a!r}")
        out.append(a)
    return out


def _summarize(p: np.ndarray, alphas: list[float]) -> SimulationSummary:
    n = p.size
    s_nats = -np.log(p)
    mean_nats = float(s_nats.mean())
    se = float(s_nats.std(ddof=1) / math.sqrt(n)) if n > 1 else math.nan
    rates: dict[float, float] = {}
    violations = 0
    for a in alphas:
        rate = float(np.count_nonzero(p <= a) / n)
        rates[a] = rate
        if rate > a + 3.0 * math.sqrt(a * (1.0 - a) / n):
            violations += 1
    return SimulationSummary(
        n=n,
        mean_s_nats=mean_nats,
        mean_s_bits=mean_nats / _LN2,
        se_of_mean=se,
        empirical_type1=rates,
        dominance_violations=violations,
        low_n=n < LOW_N,
    )


def _uniform_pvalues(n: int, rng: RngSpec) -> np.ndarray:
    # 1 - U keeps the draw in (0, 1]; numpy's random() can return exactly 0.
    return 1.0 - rng.generator().random(n)


def simulate_uniform_p(
    n: int, rng: RngSpec, alphas: Sequence[float] = (0.01, 0.05, 0.1)
) -> SimulationSummary:
    """Draw n uniform P-values and summarize their surprisal distribution.

    Under uniformity the mean surprisal targets 1 nat (1.443 bits) and the
    rejection rate at each alpha targets alpha itself.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"replicate count must be a positive integer, got {n!r}")
    alphas = _check_alphas(list(alphas))
    return _summarize(_uniform_pvalues(n, rng), alphas)


def binomial_upper_tail_pvalues(trials: int, theta0: float) -> list[float]:
    """Exact one-sided upper-tail P-values Pr(X >= x) for x = 0 .. trials.

    Direct summation of exact binomial probabilities, smallest terms first;
    no normal approximation anywhere.
    """
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    if math.isnan(theta0) or not (0.0 < theta0 < 1.0):
        raise ValueError(f"theta0 must lie in (0, 1), got {theta0!r}")
    pmf = [
        comb(trials, x) * theta0**x * (1.0 - theta0) ** (trials - x)
        for x in range(trials + 1)
    ]
    tails = [0.0] * (trials + 1)
    acc = 0.0
    for x in range(trials, 0, -1):
        acc += pmf[x]
        tails[x] = min(acc, 1.0)
    tails[0] = 1.0
    return tails


def exact_rejection_probability(trials: int, theta0: float, alpha: float) -> float:
    """Exact Pr(P <= alpha) under the null, by enumeration of the sample space.

    Because the upper-tail P-value decreases in x, this is the tail
    probability at the smallest x whose P-value clears alpha; 0 when no
    outcome does. Conservative validity means this never exceeds alpha.
    """
    tails = binomial_upper_tail_pvalues(trials, theta0)
    return next((t for t in tails if t <= alpha), 0.0)


def simulate_exact_binomial(
    n_reps: int,
    trials: int,
    theta0: float,
    rng: RngSpec,
    alphas: Sequence[float] = (0.01, 0.05, 0.1),
) -> SimulationSummary:
    """Simulate the exact one-sided binomial test under its own null.

    Checks conservative validity: at every alpha the empirical Pr(P <= alpha)
    must stay within 3 binomial standard errors of being <= alpha
    (dominance_violations counts the failures), and the mean surprisal is at
    most ~1 nat, read as minimum information against the null.
    """
    if not isinstance(n_reps, int) or isinstance(n_reps, bool) or n_reps < 1:
        raise ValueError(f"replicate count must be a positive integer, got {n_reps!r}")
    alphas = _check_alphas(list(alphas))
    tails = np.asarray(binomial_upper_tail_pvalues(trials, theta0))
    x = rng.generator().binomial(trials, theta0, size=n_reps)
    return _summarize(tails[x], alphas)


def evalue_check(
    n: int,
    rng: RngSpec,
    generator: str = "uniform",
    trials: int | None = None,
    theta0: float | None = None,
) -> EValueCheck:
    """Check the e-value condition: E[-ln P] <= 1 under the null generator.

    Equality holds for exactly uniform P; conservatively valid generators sit
    below 1. Passes when the sample mean minus 3 standard errors does not
    exceed 1. Small n is flagged, not failed.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"replicate count must be a positive integer, got {n!r}")
    if generator == "uniform":
        p = _uniform_pvalues(n, rng)
        label = "uniform"
    elif generator == "binomial":
        if trials is None or theta0 is None:
            raise ValueError("binomial generator requires trials and theta0")
        tails = np.asarray(binomial_upper_tail_pvalues(trials, theta0))
        x = rng.generator().binomial(trials, theta0, size=n)
        p = tails[x]
        label = f"binomial(trials={trials}, theta0={theta0})"
    else:
        raise ValueError(f"unknown generator {generator!r}; expected uniform or binomial")
    s = -np.log(p)
    mean = float(s.mean())
    se = float(s.std(ddof=1) / math.sqrt(n)) if n > 1 else math.nan
    margin = 3.0 * se if math.isfinite(se) else 0.0
    return EValueCheck(
        n=n,
        generator=label,
        mean_e_condition=mean,
        se_of_mean=se,
        passed=mean - margin <= 1.0,
        low_n=n < LOW_N,
    )


def distribution_report(samples, reference: str) -> DistributionReport:
    """One-sample Kolmogorov-Smirnov fit report against a fixed reference CDF.

    reference is "exponential_1" or "uniform_01"; passes when the KS statistic
    stays under the asymptotic 1% critical value 1.63 / sqrt(n).
    """
    data = np.sort(np.asarray(samples, dtype=float))
    n = data.size
    if n < 100:
        raise ValueError(f"distribution_report needs at least 100 samples, got {n}")
    if np.isnan(data).any():
        raise ValueError("samples must not contain NaN")
    if reference == "exponential_1":
        cdf = -np.expm1(-np.clip(data, 0.0, None))
    elif reference == "uniform_01":
        cdf = np.clip(data, 0.0, 1.0)
    else:
        raise ValueError(
            f"unknown reference {reference!r}; expected exponential_1 or uniform_01"
        )
    i = np.arange(1, n + 1)
    d_plus = float(np.max(i / n - cdf))
    d_minus = float(np.max(cdf - (i - 1) / n))
    d_stat = max(d_plus, d_minus)
    critical = KS_CRITICAL_COEF / math.sqrt(n)
    return DistributionReport(
        n=n,
        reference=reference,
        ks_statistic=d_stat,
        critical_value=critical,
        passed=d_stat < critical,
    )
