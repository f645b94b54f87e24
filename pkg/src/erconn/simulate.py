"""Monte Carlo engines validating the exact machinery at scale.

Three samplers:

  - the vertex-exploration process for G(n, p): breadth-style growth of the
    component of vertex 1, drawing only the binomial counts of newly
    activated vertices (O(n) per sample, no graph materialized);
  - the conditioned-bridge sampler: given that the cumulated walk ends at
    n-1, jump locations are multinomial with cell probabilities
    lambda_i / sum(lambda), so one multinomial draw per sample yields an
    exact bridge trajectory;
  - trajectory sampling, free (raw Poisson steps) or bridge-conditioned.

Reproducibility contract: sample i draws from a counter-based Philox
stream keyed by (seed, i), so results are bit-identical for a given
(seed, samples) regardless of batching or parallel scheduling, and the
numpy binomial/poisson/multinomial generators are exact-distribution
samplers (inversion or rejection, never normal approximation).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .walk import IntensityProfile, _resolve_lambdas

_U64 = 1 << 64


@dataclass(frozen=True)
class McEstimate:
    """Indicator-mean Monte Carlo estimate with its binomial standard error."""

    mean: float
    std_error: float
    samples: int
    seed: int


@dataclass(frozen=True)
class TrajectoryRecord:
    """One sampled walk path: steps[k] = (k, S_k), starting at S_0 = 0.

    Conditioned records end at S_n = -1 by construction; free records are
    unconstrained.  ``c`` is the profile parameter when known.
    """

    n: int
    c: float
    steps: np.ndarray
    conditioned: bool


def _check_seed_samples(seed: int, samples: int) -> tuple[int, int]:
    if int(samples) != samples or samples < 1:
        raise DomainError(f"samples must be a positive integer, got {samples!r}")
    if int(seed) != seed or not 0 <= seed < _U64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed), int(samples)


def _stream(seed: int, index: int) -> np.random.Generator:
    """Counter-based per-sample stream; key = (seed, index) packed into 128 bits."""
    return np.random.Generator(np.random.Philox(key=(seed << 64) | index))


def _estimate(hits: int, samples: int, seed: int) -> McEstimate:
    mean = hits / samples
    return McEstimate(mean=mean,
                      std_error=math.sqrt(mean * (1.0 - mean) / samples),
                      samples=samples, seed=seed)


def explore_connectivity_mc(n: int, p: float, samples: int, seed: int) -> McEstimate:
    """Unbiased estimate of P_connected(n, p) from the exploration process.

    Each step activates W ~ Binomial(inactive, p) new vertices; the graph is
    connected exactly when the running activation total stays at or above
    the step index through step n-1.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not (math.isfinite(p) and 0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    seed, samples = _check_seed_samples(seed, samples)
    n = int(n)
    if n == 1:
        return McEstimate(mean=1.0, std_error=0.0, samples=samples, seed=seed)
    hits = 0
    for i in range(samples):
        rng = _stream(seed, i)
        inactive = n - 1
        activated = 0
        ok = True
        for t in range(1, n):
            w = int(rng.binomial(inactive, p))
            activated += w
            if activated < t:
                ok = False
                break
            inactive -= w
        if ok:
            hits += 1
    return _estimate(hits, samples, seed)


def bridge_excursion_mc(profile, samples: int, seed: int) -> McEstimate:
    """Unbiased estimate of the bridge-to-excursion conditional probability.

    Conditional on the cumulated walk ending at n-1, the n-1 jumps fall
    into cells with probabilities lambda_i / sum(lambda); a multinomial
    draw gives the whole bridge, and the indicator checks T_k >= k for all
    k < n.  The intensity sum must equal n (the bridge calibration).
    """
    lam = _resolve_lambdas(profile)
    n = lam.size
    total = float(np.sum(lam))
    if abs(total - n) > 1e-6 * n:
        raise DomainError(
            f"intensities must sum to n={n} (bridge calibration), got {total!r}")
    seed, samples = _check_seed_samples(seed, samples)
    pvals = lam / total
    ks = np.arange(1, n)
    hits = 0
    for i in range(samples):
        rng = _stream(seed, i)
        counts = rng.multinomial(n - 1, pvals)
        if np.all(np.cumsum(counts[:-1]) >= ks):
            hits += 1
    return _estimate(hits, samples, seed)


def sample_trajectories(profile, count: int, conditioned: bool, seed: int) -> list:
    """Sample walk paths from an intensity profile.

    Free paths draw each jump from Poisson(lambda_i) independently; the
    mean of S_k is then eta_k - k.  Conditioned paths use the multinomial
    bridge device and always end at S_n = -1.
    """
    lam = _resolve_lambdas(profile)
    n = lam.size
    c = profile.c if isinstance(profile, IntensityProfile) else float("nan")
    seed, count = _check_seed_samples(seed, count)
    if conditioned:
        total = float(np.sum(lam))
        if abs(total - n) > 1e-6 * n:
            raise DomainError(
                f"intensities must sum to n={n} for bridge sampling, got {total!r}")
        pvals = lam / total
    ks = np.arange(1, n + 1)
    records = []
    for i in range(count):
        rng = _stream(seed, i)
        if conditioned:
            jumps = rng.multinomial(n - 1, pvals)
        else:
            jumps = rng.poisson(lam)
        s = np.cumsum(jumps) - ks
        steps = np.empty((n + 1, 2), dtype=np.int64)
        steps[:, 0] = np.arange(n + 1)
        steps[0, 1] = 0
        steps[1:, 1] = s
        steps.setflags(write=False)
        records.append(TrajectoryRecord(n=n, c=c, steps=steps,
                                        conditioned=bool(conditioned)))
    return records
