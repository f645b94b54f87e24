"""Numerically stable scalar kernels used by every other module.

Everything here is a pure function of its arguments (the cached
log-factorial table is filled once at import time and never mutated), so
all operations are safe to call concurrently.

Conventions:
  - probabilities are carried as :class:`ProbabilityValue`, which keeps the
    natural log alongside the linear value and pins down the underflow
    behaviour of the linear form;
  - ``log`` means natural log throughout.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

# Below this log value the linear form of a probability is a hard 0.0
# (double-precision denormals end near exp(-745)); the log form is retained.
UNDERFLOW_LOG_FLOOR = -745.0

_BRANCH_POINT = -1.0 / math.e          # -1/e, left end of the W0 domain used here
_BRANCH_TOL = 1e-15                    # accepted undershoot below -1/e

# log k! for k = 0..170 (171! overflows double); hot path of the DP kernels.
_LOG_FACTORIAL = tuple(math.lgamma(k + 1) for k in range(171))


@dataclass(frozen=True)
class ProbabilityValue:
    """A probability carried in both log and linear form.

    ``linear_value == exp(log_value)`` whenever the log is above the
    underflow floor; below the floor the linear value is exactly 0.0 while
    the log form keeps the information.  ``error_bound`` is an optional
    certified absolute error of the linear value (0.0 means exact up to
    floating-point rounding).
    """

    log_value: float
    linear_value: float
    error_bound: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if math.isnan(self.log_value) or math.isnan(self.linear_value):
            raise DomainError("probability fields must not be NaN")
        if not 0.0 <= self.linear_value <= 1.0:
            raise DomainError(
                f"linear_value must lie in [0, 1], got {self.linear_value!r}")
        if self.log_value > 1e-9:
            raise DomainError(
                f"log_value must be <= 0 for a probability, got {self.log_value!r}")

    @classmethod
    def from_log(cls, log_value: float, error_bound: float = 0.0) -> "ProbabilityValue":
        if math.isnan(log_value):
            raise DomainError("log probability must not be NaN")
        if log_value > 1e-9:
            raise DomainError(f"log probability must be <= 0, got {log_value!r}")
        log_value = min(log_value, 0.0)
        linear = math.exp(log_value) if log_value > UNDERFLOW_LOG_FLOOR else 0.0
        return cls(log_value, min(linear, 1.0), error_bound)

    @classmethod
    def from_linear(cls, linear_value: float, error_bound: float = 0.0) -> "ProbabilityValue":
        if math.isnan(linear_value) or not -1e-12 <= linear_value <= 1.0 + 1e-12:
            raise DomainError(f"probability must lie in [0, 1], got {linear_value!r}")
        linear = min(max(linear_value, 0.0), 1.0)
        log_value = math.log(linear) if linear > 0.0 else -math.inf
        return cls(log_value, linear, error_bound)

    @classmethod
    def zero(cls) -> "ProbabilityValue":
        return cls(-math.inf, 0.0)

    @classmethod
    def one(cls) -> "ProbabilityValue":
        return cls(0.0, 1.0)

    def __float__(self) -> float:
        return self.linear_value


def log_factorial(k: int) -> float:
    """log k!, table-backed for k <= 170."""
    if k < 0:
        raise DomainError(f"factorial argument must be >= 0, got {k}")
    if k < len(_LOG_FACTORIAL):
        return _LOG_FACTORIAL[k]
    return math.lgamma(k + 1)


def log_poisson_pmf(k: int, lam: float) -> float:
    """log P(X = k) for X ~ Poisson(lam): k*log(lam) - lam - log k!."""
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"Poisson rate must be positive and finite, got {lam!r}")
    k = int(k)
    if k < 0:
        raise DomainError(f"Poisson count must be >= 0, got {k}")
    return k * math.log(lam) - lam - log_factorial(k)


def poisson_pmf_window(lam: float, jcap: int) -> tuple[np.ndarray, float]:
    """Poisson pmf values for j = 0..J plus a certified bound on the cut tail.

    J is ``min(jcap, ceil(lam + 12*sqrt(lam) + 30))``.  The second return
    value bounds P(X > J) from above *only when* the probabilistic cutoff
    bites (J < jcap); a cut at jcap means the caller's state space ends
    there and larger jumps are excluded exactly, so no error is reported.
    """
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"Poisson rate must be positive and finite, got {lam!r}")
    if jcap < 0:
        return np.zeros(0), 0.0
    jmax = int(math.ceil(lam + 12.0 * math.sqrt(lam) + 30.0))
    J = min(jmax, jcap)
    if lam < 600.0:
        ratios = lam / np.arange(1.0, J + 1.0)
        pmf = np.empty(J + 1)
        pmf[0] = math.exp(-lam)
        if J > 0:
            np.cumprod(ratios, out=pmf[1:])
            pmf[1:] *= pmf[0]
    else:
        # exp(-lam) underflows; build each term in log space instead
        js = np.arange(J + 1.0)
        logs = np.concatenate(([0.0], np.cumsum(np.log(lam) - np.log(js[1:]))))
        pmf = np.exp(logs - lam)
    tail = 0.0
    if J == jmax and jmax < jcap:
        # geometric-ratio majorant: P(X > J) <= pmf(J) * r / (1 - lam/(J+2))
        r = lam / (J + 1.0)
        tail = float(pmf[J]) * r / (1.0 - lam / (J + 2.0))
    return pmf, tail


def lambert_w0(x: float) -> float:
    """Principal Lambert W on [-1/e, 0]: the w in [-1, 0] with w*exp(w) = x.

    Initial guess from the square-root series at the branch point (or x*e
    for small |x|), refined by Halley iteration until the step drops below
    1e-15.  Accurate to ~1e-14 residual in w*exp(w) over the whole segment.
    """
    if math.isnan(x):
        raise DomainError("lambert_w0 argument must not be NaN")
    if x > 0.0 or x < _BRANCH_POINT - _BRANCH_TOL:
        raise DomainError(
            f"lambert_w0 argument must lie in [-1/e, 0], got {x!r}")
    if x == 0.0:
        return 0.0
    s = 1.0 + math.e * x
    if s <= 0.0:
        return -1.0
    if s < 0.5:
        # series around the branch point in p = sqrt(2*(1 + e*x))
        p = math.sqrt(2.0 * s)
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0
             + p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))))
    else:
        w = x * math.e
    for _ in range(50):
        if w <= -1.0:
            w = -1.0 + 1e-12
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0 or not math.isfinite(denom):
            break
        dw = f / denom
        w -= dw
        if abs(dw) < 1e-15:
            break
    return min(max(w, -1.0), 0.0)


def stable_bn(n: int, c: float) -> float:
    """b_n = 1 - (1 - c/n)^n, evaluated without cancellation for tiny c/n."""
    _validate_n_c(n, c)
    return -math.expm1(n * math.log1p(-c / n))


def log_stable_bn(n: int, c: float) -> float:
    """log b_n, accurate both when b_n is tiny and when b_n is near 1."""
    _validate_n_c(n, c)
    u = n * math.log1p(-c / n)          # log (1 - c/n)^n, always < 0
    if u > -math.log(2.0):
        return math.log(-math.expm1(u))  # b_n small: 1 - e^u cancels in linear form
    return math.log1p(-math.exp(u))      # b_n near 1: e^u is the small quantity


def _validate_n_c(n: int, c: float) -> None:
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not (math.isfinite(c) and 0.0 < c < n):
        raise DomainError(f"c must satisfy 0 < c < n, got c={c!r}, n={n}")
