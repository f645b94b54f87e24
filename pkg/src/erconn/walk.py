"""Inhomogeneous Poisson random walks: exact bridge/excursion dynamic
programming, meander closed forms, bridge domination, and mid-trajectory
hitting probabilities.

The central object is the walk S_k = sum_{i<=k} X_i with independent steps
X_i + 1 ~ Poisson(lambda_i), where the intensity profile

    lambda_i = (c / b_n) * (1 - c/n)^(i-1),      b_n = 1 - (1 - c/n)^n,

ties the walk to the G(n, p) exploration process with p = c/n.  The graph
is connected exactly when the walk, conditioned to end at S_n = -1 (a
bridge), stays nonnegative before the final step (an excursion), and

    P_connected(n, p) = b_n^(n-1) * P(S_k >= 0, 0 < k < n | S_n = -1).

All dynamic programming runs in the cumulated coordinates T_k = S_k + k =
sum of the Poisson jumps.  T is nondecreasing, and pinning T_n = y caps the
state space at y, so the DP is finite and exact up to certified truncation
errors carried in ``ProbabilityValue.error_bound``:

    S_k >= 0 for k < n  and  S_n = -1
        <=>  T_k >= k for k < n  and  T_n = n - 1.

Every operation is a pure function; a single DP invocation is sequential,
but distinct invocations can run concurrently and profiles are immutable.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import (
    ProbabilityValue,
    lambert_w0,
    log_poisson_pmf,
    log_stable_bn,
    poisson_pmf_window,
    stable_bn,
)

# Linear DP entries below this are dropped and accounted into the error bound.
_DROP_EPS = 1e-300


@dataclass(frozen=True)
class IntensityProfile:
    """Step intensities lambda_1..lambda_n of the exploration walk and their
    running sums eta_i = lambda_1 + ... + lambda_i (eta_n = n identically)."""

    n: int
    c: float
    lambdas: np.ndarray
    etas: np.ndarray


@dataclass(frozen=True)
class BridgeDpTable:
    """Forward DP layers for the pinned walk, after constraint filtering.

    ``layers[k][t]`` is the probability that T_k = t with every constraint
    up to step k satisfied; index t runs over 0..y.  Layer masses are
    nonincreasing in k because each step only convolves (mass preserving)
    and removes (constraints, cap at y).
    """

    n: int
    y: int
    layers: list
    error_bound: float


@dataclass(frozen=True)
class DominationResult:
    """Outcome of a bridge comparison: whether the normalized cumulative
    intensities of side a dominate side b, plus both conditional
    probabilities computed by the exact DP."""

    check: bool
    p_a: ProbabilityValue
    p_b: ProbabilityValue


def make_profile(n: int, c: float) -> IntensityProfile:
    """Build the geometric intensity profile for G(n, p) with p = c/n."""
    b = stable_bn(n, c)  # validates 0 < c < n, n >= 1
    n = int(n)
    qlog = math.log1p(-c / n)
    lambdas = (c / b) * np.exp(np.arange(n) * qlog)
    etas = np.cumsum(lambdas)
    lambdas.setflags(write=False)
    etas.setflags(write=False)
    return IntensityProfile(n=n, c=float(c), lambdas=lambdas, etas=etas)


def _resolve_lambdas(profile) -> np.ndarray:
    if isinstance(profile, IntensityProfile):
        return profile.lambdas
    arr = np.asarray(profile, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise DomainError("intensities must be a nonempty 1-D sequence")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("intensities must be positive and finite")
    return arr


def log_bridge_prob(lambdas, y: int) -> float:
    """log P(T_n = y) for the cumulated walk; T_n ~ Poisson(sum of intensities)."""
    lam = _resolve_lambdas(lambdas)
    return log_poisson_pmf(y, float(np.sum(lam)))


def _bridge_event_dp(lambdas, y, min_thresholds=None, forbidden=None,
                     audit=None, capture_layers=None):
    """Forward DP over the nondecreasing walk T_j pinned to T_n = y.

    Computes P(T_n = y, and for every j < n: T_j >= min_thresholds[j-1]
    and T_j != forbidden.get(j)).  Returns ``(numerator, error_bound)``
    where the error bound certifies one-sided mass lost to the per-step
    Poisson jump window and to dropping entries below 1e-300; removal of
    mass above y or by constraints is exact.

    ``audit``, if a list, receives per-step tuples
    ``(j, live_mass, excluded_mass, constraint_removed_mass)`` measured
    right after the convolution (live) and cumulatively (other two); live +
    excluded + removed stays 1 up to rounding.  ``capture_layers``, if a
    list, receives the filtered layer vectors padded over t = 0..y.
    """
    lam = _resolve_lambdas(lambdas)
    n = lam.size
    y = int(y)
    if y < 0:
        raise DomainError(f"terminal value must be >= 0, got {y}")
    if min_thresholds is not None and len(min_thresholds) != n - 1:
        raise DomainError("min_thresholds must have one entry per step 1..n-1")
    forbidden = forbidden or {}

    lo = 0
    vec = np.array([1.0])
    err = 0.0              # certified one-sided numerator error
    excluded = 0.0         # all exactly-excluded or error mass (audit only)
    removed = 0.0          # mass removed by threshold/forbidden constraints
    if capture_layers is not None:
        base = np.zeros(y + 1)
        base[0] = 1.0
        capture_layers.append(base)

    for j in range(1, n + 1):
        kern, tail = poisson_pmf_window(float(lam[j - 1]), y - lo)
        err += tail
        excluded += tail
        vec = np.convolve(vec, kern)
        hi = lo + vec.size - 1
        if hi > y:
            cut = y - lo + 1
            excluded += float(np.sum(vec[cut:]))
            vec = vec[:cut]
        if audit is not None:
            audit.append((j, float(np.sum(vec)), excluded, removed))
        if j < n:
            if min_thresholds is not None:
                xj = int(min_thresholds[j - 1])
                if xj > lo:
                    cut = min(xj - lo, vec.size)
                    removed += float(np.sum(vec[:cut]))
                    vec = vec[cut:]
                    lo += cut
            fj = forbidden.get(j)
            if fj is not None and lo <= fj < lo + vec.size:
                removed += float(vec[fj - lo])
                vec[fj - lo] = 0.0
            small = (vec > 0.0) & (vec < _DROP_EPS)
            if np.any(small):
                dropped = float(np.sum(vec[small]))
                err += dropped
                excluded += dropped
                vec[small] = 0.0
        if vec.size == 0:
            vec = np.zeros(1)
        if capture_layers is not None:
            padded = np.zeros(y + 1)
            top = min(lo + vec.size, y + 1)
            if top > lo >= 0:
                padded[lo:top] = vec[:top - lo]
            capture_layers.append(padded)

    idx = y - lo
    numerator = float(vec[idx]) if 0 <= idx < vec.size else 0.0
    return numerator, err


def _conditional_from_dp(lambdas, y, **kwargs) -> ProbabilityValue:
    num, err = _bridge_event_dp(lambdas, y, **kwargs)
    logden = log_bridge_prob(lambdas, y)
    den = math.exp(logden)
    if num <= 0.0:
        return ProbabilityValue.zero() if err == 0.0 else \
            ProbabilityValue(-math.inf, 0.0, err / den)
    log_cond = math.log(num) - logden
    return ProbabilityValue.from_log(min(log_cond, 0.0), error_bound=err / den)


def excursion_given_bridge_dp(profile) -> ProbabilityValue:
    """P(S_k >= 0 for 0 < k < n | S_n = -1), the bridge-to-excursion
    conditional probability, computed exactly by forward DP.

    Accepts an IntensityProfile or any positive intensity vector (e.g. all
    ones, for which the answer is the ballot value 1/n).
    """
    lam = _resolve_lambdas(profile)
    n = lam.size
    thresholds = np.arange(1, n)  # T_j >= j  <=>  S_j >= 0
    return _conditional_from_dp(lam, n - 1, min_thresholds=thresholds)


def excursion_bridge_table(profile) -> BridgeDpTable:
    """The full DP table behind :func:`excursion_given_bridge_dp`."""
    lam = _resolve_lambdas(profile)
    n = lam.size
    layers: list = []
    _, err = _bridge_event_dp(lam, n - 1, min_thresholds=np.arange(1, n),
                              capture_layers=layers)
    return BridgeDpTable(n=n, y=n - 1, layers=layers, error_bound=err)


def ballot_conditional(n: int, k: int) -> ProbabilityValue:
    """Conditional stay-nonnegative probability of the unit-rate walk started
    at height k-1 and pinned to end at -1; equals k/n exactly (ballot
    problem).  Serves as a closed-form anchor for the generalized DP."""
    n, k = int(n), int(k)
    if n < 1 or not 1 <= k <= n:
        raise DomainError(f"need n >= 1 and 1 <= k <= n, got n={n}, k={k}")
    thresholds = np.arange(1, n) - (k - 1)  # S_j >= 0 from start height k-1
    return _conditional_from_dp(np.ones(n), n - k, min_thresholds=thresholds)


def conditional_threshold_prob(lambdas, thresholds, y: int) -> ProbabilityValue:
    """P(T_j >= thresholds[j-1] for all j <= n | T_n = y) for the
    nondecreasing walk T with independent Poisson jumps.

    ``thresholds`` has length n; the last entry is checked against the
    pinned terminal value y directly.
    """
    lam = _resolve_lambdas(lambdas)
    n = lam.size
    thresholds = np.asarray(thresholds, dtype=int)
    if thresholds.shape != (n,):
        raise DomainError(f"thresholds must have length n={n}")
    if thresholds[-1] > y:
        return ProbabilityValue.zero()
    return _conditional_from_dp(lam, int(y), min_thresholds=thresholds[:-1])


def domination_compare(profile_a, profile_b, y: int, thresholds) -> DominationResult:
    """Compare two Poisson bridges of equal length against common thresholds.

    ``check`` reports whether the normalized cumulative intensities of side
    a dominate side b at every prefix; when they do, the conditional
    threshold probability of side a provably dominates side b, and this
    implementation asserts that ordering (within 1e-12 slack) on the two
    exactly computed values.
    """
    lam_a = _resolve_lambdas(profile_a)
    lam_b = _resolve_lambdas(profile_b)
    if lam_a.size != lam_b.size:
        raise DomainError(
            f"profiles must have equal length, got {lam_a.size} and {lam_b.size}")
    y = int(y)
    if y < 0:
        raise DomainError(f"terminal value must be >= 0, got {y}")
    share_a = np.cumsum(lam_a) / float(np.sum(lam_a))
    share_b = np.cumsum(lam_b) / float(np.sum(lam_b))
    check = bool(np.all(share_a >= share_b - 1e-12))
    p_a = conditional_threshold_prob(lam_a, thresholds, y)
    p_b = conditional_threshold_prob(lam_b, thresholds, y)
    if check:
        assert p_a.linear_value >= p_b.linear_value - 1e-12, \
            "cumulative-share domination must imply conditional-probability domination"
    return DominationResult(check=check, p_a=p_a, p_b=p_b)


def connectivity_via_walk(n: int, p: float) -> ProbabilityValue:
    """Exact connectivity probability of G(n, p) through the walk reduction:
    b_n^(n-1) times the bridge-to-excursion conditional probability.

    Edge shortcuts: n=1 and p=1 return 1; p=0 returns 0 for n >= 2.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if math.isnan(p) or p < 0.0 or p > 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    if n == 1 or p == 1.0:
        return ProbabilityValue.one()
    if p == 0.0:
        return ProbabilityValue.zero()
    c = p * n
    profile = make_profile(n, c)
    cond = excursion_given_bridge_dp(profile)
    log_env = (n - 1) * log_stable_bn(n, c)
    env = math.exp(log_env) if log_env > -745.0 else 0.0
    if cond.linear_value == 0.0 and math.isinf(cond.log_value):
        return ProbabilityValue(-math.inf, 0.0, env * cond.error_bound)
    return ProbabilityValue.from_log(min(log_env + cond.log_value, 0.0),
                                     error_bound=env * cond.error_bound)


def meander_prob_supercritical(gamma: float) -> float:
    """P(S_k >= 0 for all k > 0) for steps X + 1 ~ Poisson(gamma), gamma > 1:
    1 + W0(-gamma * e^-gamma) / gamma.

    Equivalently 1 - q where q in (0, 1) solves exp(gamma*(q-1)) = q, the
    ruin probability of the upward-drifting walk.
    """
    if not (math.isfinite(gamma) and gamma > 1.0):
        raise DomainError(f"gamma must be > 1, got {gamma!r}")
    w = lambert_w0(-gamma * math.exp(-gamma))
    return min(max(1.0 + w / gamma, 0.0), 1.0)


def meander_prob_subcritical_strict(gamma: float) -> float:
    """P(S_k > 0 for all k > 0) for steps 1 - Y ~ Poisson(gamma), gamma < 1:
    exactly 1 - gamma (the return count to zero is geometric(gamma))."""
    if not (math.isfinite(gamma) and 0.0 < gamma < 1.0):
        raise DomainError(f"gamma must lie in (0, 1), got {gamma!r}")
    return 1.0 - gamma


def finite_meander_dp(intensities, horizon: int, strict: bool = False,
                      descending: bool = False, audit=None) -> ProbabilityValue:
    """Exact finite-horizon stay-positive probability of an unconditioned walk.

    With ``descending=False`` the steps are V - 1 with V ~ Poisson(gamma_k)
    (down-jumps of size one, unbounded up-jumps); with ``descending=True``
    they are 1 - V (up-jumps of size one, unbounded down-jumps).  Computes
    P(S_k >= 0 for 0 < k <= horizon), or with ``strict`` P(S_k > 0 ...).

    ``intensities`` may be a scalar rate, a vector with at least ``horizon``
    entries, or an IntensityProfile.  States far above the mean path are
    pruned and per-step jump windows are finite; all pruned mass goes into
    the returned ``error_bound`` (the result is certified to undershoot by
    at most that much).
    """
    horizon = int(horizon)
    if horizon < 1:
        raise DomainError(f"horizon must be >= 1, got {horizon}")
    if isinstance(intensities, IntensityProfile):
        gam = intensities.lambdas
    elif np.isscalar(intensities):
        g = float(intensities)
        if not (math.isfinite(g) and g > 0.0):
            raise DomainError(f"intensity must be positive, got {intensities!r}")
        gam = np.full(horizon, g)
    else:
        gam = _resolve_lambdas(intensities)
    if gam.size < horizon:
        raise DomainError(
            f"need at least {horizon} intensities, got {gam.size}")

    floor = 1 if strict else 0
    lo = 0
    vec = np.array([1.0])
    err = 0.0
    removed = 0.0
    cum = 0.0
    for k in range(1, horizon + 1):
        g = float(gam[k - 1])
        cum += g
        kern, tail = poisson_pmf_window(g, 10 ** 9)
        err += tail
        if descending:
            vec = np.convolve(vec, kern[::-1])
            lo = lo + 1 - (kern.size - 1)
            cap = k - cum + 12.0 * math.sqrt(cum) + 50.0
        else:
            vec = np.convolve(vec, kern)
            lo = lo - 1
            cap = cum - k + 12.0 * math.sqrt(cum) + 50.0
        if audit is not None:
            audit.append((k, float(np.sum(vec)), err, removed))
        if lo < floor:
            cut = min(floor - lo, vec.size)
            removed += float(np.sum(vec[:cut]))
            vec = vec[cut:]
            lo = floor
        cap_idx = int(math.floor(cap)) - lo + 1
        if cap_idx < vec.size:
            pruned = float(np.sum(vec[max(cap_idx, 0):]))
            err += pruned
            vec = vec[:max(cap_idx, 0)]
        small = (vec > 0.0) & (vec < _DROP_EPS)
        if np.any(small):
            err += float(np.sum(vec[small]))
            vec[small] = 0.0
        if vec.size == 0:
            return ProbabilityValue(-math.inf, 0.0, err)
    total = float(np.sum(vec))
    return ProbabilityValue.from_linear(min(total, 1.0), error_bound=err)


def mid_hitting_bound(n: int, m: int, c: float) -> float:
    """Upper bound on the probability that the pinned exploration walk
    returns to -1 somewhere in the middle window [m, n-m]:

        400 * 0.99^m                          for 1 <= c < n,
        (500 / (c^2 sqrt(m))) * exp(-m c^2 / 200)   for c < 1.

    The bound may exceed 1; callers clamp for display only.
    """
    n, m = int(n), int(m)
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    if not 1 <= m:
        raise DomainError(f"m must be >= 1, got {m}")
    if not m < n / 2:
        raise DomainError(f"m must be < n/2, got m={m}, n={n}")
    if not (math.isfinite(c) and 0.0 < c < n):
        raise DomainError(f"c must satisfy 0 < c < n, got {c!r}")
    if c >= 1.0:
        return 400.0 * 0.99 ** m
    return (500.0 / (c * c * math.sqrt(m))) * math.exp(-m * c * c / 200.0)


def mid_hitting_exact(profile, m: int) -> ProbabilityValue:
    """Exact P(exists i in [m, n-m] with S_i = -1 | S_n = -1): one minus the
    DP that forbids T_i = i - 1 throughout the window, pinned at T_n = n-1."""
    lam = _resolve_lambdas(profile)
    n = lam.size
    m = int(m)
    if not 1 <= m:
        raise DomainError(f"m must be >= 1, got {m}")
    if not m < n / 2:
        raise DomainError(f"m must be < n/2, got m={m}, n={n}")
    forbidden = {i: i - 1 for i in range(m, n - m + 1)}
    num, err = _bridge_event_dp(lam, n - 1, forbidden=forbidden)
    logden = log_bridge_prob(lam, n - 1)
    avoid = num / math.exp(logden)
    hit = min(max(1.0 - avoid, 0.0), 1.0)
    return ProbabilityValue.from_linear(hit, error_bound=err / math.exp(logden))
