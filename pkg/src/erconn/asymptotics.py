"""Asymptotic connectivity formulas by parameter regime, classical reference
formulas, and a finite-n regime classifier.

With p = c/n the four covered regimes and their formulas are

  diverging           c -> infinity:   b_n^(n-1)
  constant            c -> c in (0,inf): (1 - e^-c - c e^-c) * b_n^(n-1)
  vanishing_root_n    c -> 0 with c sqrt(n)/log n -> infinity:
                                       (c^2 / 2) * b_n^(n-1)
  below_one_over_n    c = o(1/n):      (1/n) * b_n^(n-1)  ~  c^(n-1)/n

where b_n = 1 - (1 - c/n)^n.  The parameter region between the last two is
not covered by any claimed formula; the classifier reports it as
``uncovered`` and the evaluator refuses it rather than guessing.

The limit statements carry no rates, so finite-n classification is an
explicit, documented heuristic with overridable thresholds.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, RefusalError
from .numerics import ProbabilityValue, log_stable_bn


class Regime(Enum):
    DIVERGING = "diverging"
    CONSTANT = "constant"
    VANISHING_ABOVE_ROOT_N = "vanishing_root_n"
    BELOW_ONE_OVER_N = "below_one_over_n"
    UNCOVERED = "uncovered"


@dataclass(frozen=True)
class ClassifierThresholds:
    """Finite-n cutoffs for the regime heuristic (all overridable).

    c at or above ``k_hi`` (or at the connectivity threshold scale log n)
    counts as diverging; c in [k_lo, k_hi) as constant; below k_lo the
    vanishing formula applies when c*sqrt(n)/log(n) >= k3, and the
    ultra-sparse one when c*n <= k4.
    """

    k_lo: float = 0.1
    k_hi: float = 20.0
    k3: float = 10.0
    k4: float = 0.1


@dataclass(frozen=True)
class RegimeReport:
    """A classified regime plus, when a formula applies, its value.

    ``raw_value`` keeps the unclamped formula output (asymptotic formulas
    can exceed 1 at small n); ``value`` is clamped into [0, 1].
    """

    regime: Regime
    value: ProbabilityValue | None
    raw_value: float | None
    formula_id: str | None
    applicability_note: str


_NOTES = {
    Regime.DIVERGING:
        "envelope b_n^(n-1); exact as c grows (already sharp at the "
        "connectivity threshold c ~ log n)",
    Regime.CONSTANT:
        "bracket (1 - e^-c - c e^-c) times b_n^(n-1); limit for fixed c",
    Regime.VANISHING_ABOVE_ROOT_N:
        "prefactor c^2/2 times b_n^(n-1); needs c -> 0 with "
        "c*sqrt(n)/log(n) -> infinity, an extremely slow approach",
    Regime.BELOW_ONE_OVER_N:
        "prefactor 1/n times b_n^(n-1), i.e. ~ c^(n-1)/n; needs c = o(1/n)",
    Regime.UNCOVERED:
        "no formula claimed between the vanishing and ultra-sparse regimes",
}


def classify_regime(n: int, c: float,
                    thresholds: ClassifierThresholds | None = None) -> RegimeReport:
    """Heuristically classify (n, c) into the regime whose formula applies.

    Total and deterministic: every valid (n, c) maps to exactly one regime,
    with ``uncovered`` as the honest fallback.
    """
    th = thresholds or ClassifierThresholds()
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not (math.isfinite(c) and 0.0 < c < n):
        raise DomainError(f"c must satisfy 0 < c < n, got {c!r}")
    n = int(n)
    threshold_scale = math.log(n) if n >= 2 else 0.0
    if c >= th.k_hi or c >= threshold_scale:
        regime = Regime.DIVERGING
    elif c >= th.k_lo:
        regime = Regime.CONSTANT
    elif n >= 2 and c * math.sqrt(n) / math.log(n) >= th.k3:
        regime = Regime.VANISHING_ABOVE_ROOT_N
    elif c * n <= th.k4:
        regime = Regime.BELOW_ONE_OVER_N
    else:
        regime = Regime.UNCOVERED
    return RegimeReport(regime=regime, value=None, raw_value=None,
                        formula_id=None, applicability_note=_NOTES[regime])


_FORMULA_IDS = {
    Regime.DIVERGING: "envelope_power",
    Regime.CONSTANT: "constant_c_bracket",
    Regime.VANISHING_ABOVE_ROOT_N: "half_c_squared",
    Regime.BELOW_ONE_OVER_N: "reciprocal_n",
}


def asymptotic_connectivity(n: int, c: float, regime: Regime | None = None,
                            thresholds: ClassifierThresholds | None = None
                            ) -> RegimeReport:
    """Evaluate the asymptotic connectivity formula for (n, c).

    The regime is classified unless given explicitly; an ``uncovered``
    classification without an override raises RefusalError naming the gap.
    """
    if regime is None:
        regime = classify_regime(n, c, thresholds).regime
    elif not isinstance(regime, Regime):
        raise DomainError(f"regime must be a Regime value, got {regime!r}")
    if regime is Regime.UNCOVERED:
        raise RefusalError(
            "no asymptotic formula applies between the vanishing regime "
            "(c*sqrt(n)/log n large) and the ultra-sparse regime (c*n small); "
            "pass an explicit regime to force a formula")
    n = int(n)
    log_env = (n - 1) * log_stable_bn(n, c)
    if regime is Regime.DIVERGING:
        log_raw = log_env
    elif regime is Regime.CONSTANT:
        bracket = -math.expm1(-c) - c * math.exp(-c)  # (1-e^-c)(1 - c e^-c/(1-e^-c))
        if bracket <= 0.0:
            raise DomainError(
                f"constant-regime bracket vanishes at c={c!r}; value too small")
        log_raw = math.log(bracket) + log_env
    elif regime is Regime.VANISHING_ABOVE_ROOT_N:
        log_raw = math.log(0.5 * c * c) + log_env
    elif regime is Regime.BELOW_ONE_OVER_N:
        log_raw = -math.log(n) + log_env
    else:  # pragma: no cover - exhaustive above
        raise DomainError(f"unhandled regime {regime!r}")
    raw = math.exp(log_raw) if log_raw > -745.0 else 0.0
    value = ProbabilityValue.from_log(min(log_raw, 0.0))
    return RegimeReport(regime=regime, value=value, raw_value=raw,
                        formula_id=_FORMULA_IDS[regime],
                        applicability_note=_NOTES[regime])


def stepanov_reference(n: int, p: float, case: str) -> ProbabilityValue:
    """Classical reference asymptotics for P_connected(n, p).

    ``case`` selects the formula:
      - "threshold":   with alpha = p*n - log n,  exp(-exp(-alpha));
      - "constant_c":  (1 - c/(e^c - 1)) * b_n^n with c = p*n;
      - "ultrasparse": n^(n-2) * p^(n-1).
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not (math.isfinite(p) and 0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    n = int(n)
    if case == "threshold":
        if n < 2:
            raise DomainError("threshold case needs n >= 2 to set the scale log n")
        alpha = p * n - math.log(n)
        return ProbabilityValue.from_log(-math.exp(-alpha))
    if case == "constant_c":
        c = p * n
        factor = 1.0 - c / math.expm1(c)
        if factor <= 0.0:
            raise DomainError(f"reference factor vanishes at c={c!r}")
        log_val = math.log(factor) + n * log_stable_bn(n, c)
        return ProbabilityValue.from_log(min(log_val, 0.0))
    if case == "ultrasparse":
        log_val = (n - 2) * math.log(n) + (n - 1) * math.log(p)
        return ProbabilityValue.from_log(min(log_val, 0.0))
    raise DomainError(
        f"case must be 'threshold', 'constant_c' or 'ultrasparse', got {case!r}")
