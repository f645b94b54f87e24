"""Independent test oracles: enumeration and root-finding routes that never
touch the production DP/closed-form code paths they are used to check."""

import math

import numpy as np


def log_pmf(k: int, lam: float) -> float:
    return k * math.log(lam) - lam - math.lgamma(k + 1)


def excursion_conditional_enum(lambdas) -> float:
    """Bridge-to-excursion conditional probability by brute enumeration of
    every prefix-feasible jump sequence (feasible only for small n)."""
    lambdas = np.asarray(lambdas, dtype=float)
    n = lambdas.size
    total = []

    def rec(t, sigma, logw):
        if t == n:
            j = n - 1 - sigma
            if j >= 0:
                total.append(math.exp(logw + log_pmf(j, lambdas[t - 1])))
            return
        for j in range(max(0, t - sigma), n - 1 - sigma + 1):
            rec(t + 1, sigma + j, logw + log_pmf(j, lambdas[t - 1]))

    rec(1, 0, 0.0)
    return math.fsum(total) / math.exp(log_pmf(n - 1, float(np.sum(lambdas))))


def conditional_threshold_enum(lambdas, thresholds, y) -> float:
    """P(T_j >= x_j for j <= n | T_n = y) by enumerating jump sequences."""
    lambdas = np.asarray(lambdas, dtype=float)
    n = lambdas.size
    total = []

    def rec(t, sigma, logw):
        if t == n:
            j = y - sigma
            if j >= 0 and y >= thresholds[n - 1]:
                total.append(math.exp(logw + log_pmf(j, lambdas[t - 1])))
            return
        for j in range(0, y - sigma + 1):
            if sigma + j >= thresholds[t - 1]:
                rec(t + 1, sigma + j, logw + log_pmf(j, lambdas[t - 1]))

    rec(1, 0, 0.0)
    return math.fsum(total) / math.exp(log_pmf(y, float(np.sum(lambdas))))


def mid_hitting_enum(lambdas, m) -> float:
    """P(exists i in [m, n-m]: T_i = i-1 | T_n = n-1) by enumeration."""
    lambdas = np.asarray(lambdas, dtype=float)
    n = lambdas.size
    hit_terms = []

    def rec(t, sigma, logw, hit):
        if t == n:
            j = n - 1 - sigma
            if j >= 0 and hit:
                hit_terms.append(math.exp(logw + log_pmf(j, lambdas[t - 1])))
            return
        for j in range(0, n - 1 - sigma + 1):
            s = sigma + j
            rec(t + 1, s, logw + log_pmf(j, lambdas[t - 1]),
                hit or (m <= t <= n - m and s == t - 1))

    rec(1, 0, 0.0, False)
    return math.fsum(hit_terms) / math.exp(log_pmf(n - 1, float(np.sum(lambdas))))


def supercritical_meander_bisection(gamma: float, tol: float = 1e-13) -> float:
    """1 - q where q in (0, 1) solves exp(gamma*(q-1)) = q, by bisection."""
    assert gamma > 1.0
    f = lambda q: math.exp(gamma * (q - 1.0)) - q
    lo, hi = 0.0, 1.0 - 1e-9
    assert f(lo) > 0.0 > f(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 1.0 - 0.5 * (lo + hi)


def chi_square_stat(observed, expected) -> float:
    observed = np.asarray(observed, dtype=float)
    expected = np.asarray(expected, dtype=float)
    return float(np.sum((observed - expected) ** 2 / expected))


# 0.999 quantiles of chi-square, frozen from an offline high-precision table.
CHI2_Q999 = {
    3: 16.26623619623813,
    4: 18.466826952903173,
    5: 20.515005652432876,
    6: 22.457744484825323,
    7: 24.321886347856854,
    8: 26.124481558376143,
    9: 27.877164871256575,
    10: 29.58829844507442,
    11: 31.26413362023999,
    12: 32.90949040736021,
    13: 34.52817897487089,
    14: 36.12327368039814,
    15: 37.69729821835383,
    16: 39.25235479076848,
}
