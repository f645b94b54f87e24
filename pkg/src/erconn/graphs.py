"""Graph-side connectivity oracles, independent of the walk reduction.

Three mutually independent routes to P_connected(n, p):

  - brute-force enumeration of all 2^C(n,2) edge subsets (n <= 8), with
    union-find connectivity and exact integer counting by edge number;
  - the classical recursion on the component of vertex 1,
        P_n = 1 - sum_{k<n} C(n-1, k-1) * P_k * (1-p)^(k(n-k));
  - direct summation of the exploration-process probability over all
    prefix-feasible jump sequences (n <= 12; the index set grows like the
    Catalan numbers).

These triangulate each other and the walk engine.
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, RefusalError
from .numerics import ProbabilityValue, log_factorial

BRUTE_FORCE_MAX_N = 8    # 2^28 edge subsets; already minutes of work
PCON_SUM_MAX_N = 12      # Catalan-like index set, 58786 sequences at n=12


class CancellationWarning(RuntimeWarning):
    """The recursion lost more than 1e-8 of the result to cancellation."""


@dataclass(frozen=True)
class GraphEnumSpec:
    """Parameters for brute-force enumeration; n is capped hard at 8."""

    n: int
    p: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if self.n > BRUTE_FORCE_MAX_N:
            raise RefusalError(
                f"brute-force enumeration is capped at n={BRUTE_FORCE_MAX_N} "
                f"(2^C(n,2) subsets), got n={self.n}")
        _validate_p(self.p)


def _validate_p(p: float) -> None:
    if not (isinstance(p, (int, float)) and math.isfinite(p) and 0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p!r}")


@lru_cache(maxsize=None)
def _connected_counts_by_edges(n: int) -> tuple:
    """counts[m] = number of connected labeled graphs on n vertices with m
    edges, by enumerating every edge subset once (exact integers)."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m_total = len(edges)
    counts = [0] * (m_total + 1)
    if n == 1:
        counts[0] = 1
        return tuple(counts)
    for mask in range(1 << m_total):
        bits = mask.bit_count()
        if bits < n - 1:
            continue
        parent = list(range(n))
        comps = n
        mm = mask
        while mm:
            low = mm & -mm
            mm ^= low
            u, v = edges[low.bit_length() - 1]
            while parent[u] != u:          # find with path halving
                parent[u] = parent[parent[u]]
                u = parent[u]
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            if u != v:
                parent[u] = v
                comps -= 1
                if comps == 1:
                    break
        if comps == 1:
            counts[bits] += 1
    return tuple(counts)


def connectivity_brute_force(spec: GraphEnumSpec, shards: int = 1) -> ProbabilityValue:
    """Exact P_connected by full enumeration: sum over edge counts of
    counts[m] * p^m * (1-p)^(M-m).

    ``shards`` partitions the subset range; the per-shard tallies are exact
    integers, so the result is identical for any shard count (kept at 1 by
    default; enumeration is CPU-bound either way).
    """
    if shards < 1:
        raise DomainError(f"shards must be >= 1, got {shards}")
    counts = _connected_counts_by_edges(spec.n)
    m_total = len(counts) - 1
    logp = math.log(spec.p)
    logq = math.log1p(-spec.p)
    total = math.fsum(
        cnt * math.exp(m * logp + (m_total - m) * logq)
        for m, cnt in enumerate(counts) if cnt
    )
    return ProbabilityValue.from_linear(min(total, 1.0))


def connectivity_recursive(n: int, p: float) -> ProbabilityValue:
    """P_connected via the component-of-vertex-1 recursion.

    Terms are assembled in log space (the binomials overflow long before
    the practical ceiling of n ~ 400) and summed exactly with fsum; when
    the subtraction 1 - sum cancels more than 1e-8 of the result, a
    CancellationWarning carries the estimated relative error.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    _validate_p(p)
    n = int(n)
    logq = math.log1p(-p)
    log_pk = np.empty(n + 1)
    log_pk[1] = 0.0
    linear_last = 1.0
    for nn in range(2, n + 1):
        term_logs = [
            (log_factorial(nn - 1) - log_factorial(k - 1) - log_factorial(nn - k))
            + log_pk[k] + k * (nn - k) * logq
            for k in range(1, nn)
        ]
        terms = [math.exp(t) for t in term_logs]
        s = math.fsum(terms)
        linear_last = math.fsum([1.0] + [-t for t in terms])
        if linear_last <= 0.0:
            warnings.warn(
                f"recursion fully cancelled at n={nn} (sum of split terms "
                f"reached {s!r}); result underflows to 0",
                CancellationWarning, stacklevel=2)
            linear_last = 0.0
            log_pk[nn] = -math.inf
        else:
            cancel = len(terms) * 2.2e-16 * s / linear_last
            if cancel > 1e-8:
                warnings.warn(
                    f"recursion at n={nn} is ill-conditioned: estimated "
                    f"relative error {cancel:.2e}",
                    CancellationWarning, stacklevel=2)
            log_pk[nn] = math.log(linear_last)
    if n == 1:
        return ProbabilityValue.one()
    if linear_last <= 0.0:
        return ProbabilityValue.zero()
    return ProbabilityValue(float(log_pk[n]), min(linear_last, 1.0))


def connectivity_pcon_sum(n: int, p: float) -> ProbabilityValue:
    """P_connected by summing the exploration-process probability over every
    jump sequence (j_1..j_n) with all prefix sums >= their index and total
    n-1; each sequence contributes a product of binomial step probabilities,
    accumulated in log space."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if n > PCON_SUM_MAX_N:
        raise RefusalError(
            f"direct summation is capped at n={PCON_SUM_MAX_N} "
            f"(index set grows like Catalan numbers), got n={n}")
    _validate_p(p)
    n = int(n)
    logp = math.log(p)
    logq = math.log1p(-p)
    leaves: list = []

    def descend(t: int, sigma: int, logw: float) -> None:
        remaining = n - 1 - sigma
        if t == n:
            # last step draws 0 new vertices from an empty pool when remaining=0
            if remaining == 0:
                leaves.append(math.exp(logw))
            return
        jmin = max(0, t - sigma)
        for j in range(jmin, remaining + 1):
            pool = n - 1 - sigma
            logbin = log_factorial(pool) - log_factorial(j) - log_factorial(pool - j)
            left_after = n - 1 - sigma - j
            descend(t + 1, sigma + j,
                    logw + logbin + j * logp + left_after * logq)

    descend(1, 0, 0.0)
    return ProbabilityValue.from_linear(min(math.fsum(leaves), 1.0))
