"""Partial-sum operators by two routes, conditional expectations, plain and
weighted maximal operators, strong-convergence sums, and logarithmic means."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NAIVE_CAP, BaseSequence, FiniteFunction
from .kernels import dirichlet
from .transform import (
    Spectrum,
    analyze_fast,
    character_matrix,
    character_values,
    synthesize,
)


@dataclass(frozen=True)
class WeightSpec:
    """Divisor weight(n) = (n+1)^{1/p-1} * log^{[p]}(n+1) of the weighted
    maximal operator; [p] is the integer part of p (0 for p < 1, 1 at p = 1)."""

    p: float

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise ValueError("p must lie in (0, 1]")

    @property
    def bracket_p(self) -> int:
        return 1 if self.p == 1 else 0

    def weight(self, n: int) -> float:
        return float((n + 1) ** (1.0 / self.p - 1.0)
                     * math.log(n + 1) ** self.bracket_p)

    def weights(self, nmax: int) -> np.ndarray:
        n = np.arange(1, nmax + 1, dtype=np.float64)
        return (n + 1) ** (1.0 / self.p - 1.0) * np.log(n + 1) ** self.bracket_p


def partial_sum(f: FiniteFunction, n: int) -> FiniteFunction:
    """S_n f: synthesis of the spectrum truncated to the first n coefficients."""
    if not 0 <= n <= f.base.size:
        raise ValueError(f"partial sum order must be in [0, {f.base.size}]")
    coeffs = np.array(analyze_fast(f).coeffs)
    coeffs[n:] = 0.0
    return synthesize(Spectrum(f.base, coeffs))


_SUB_TABLE_CACHE: dict = {}


def _sub_table(base: BaseSequence) -> np.ndarray:
    """(M_N, M_N) table of rank(x - t); oracle path, capped at NAIVE_CAP."""
    if base.size > NAIVE_CAP:
        raise ValueError(f"subtraction table capped at {NAIVE_CAP} points")
    table = _SUB_TABLE_CACHE.get(base.bases)
    if table is None:
        digits = base.digit_table()
        table = np.zeros((base.size, base.size), dtype=np.int64)
        for k, m in enumerate(base.bases):
            table += ((digits[k][:, None] - digits[k][None, :]) % m) * base.powers[k]
        table.flags.writeable = False
        _SUB_TABLE_CACHE[base.bases] = table
    return table


def partial_sum_conv(f: FiniteFunction, n: int) -> FiniteFunction:
    """S_n f by convolution with the Dirichlet kernel:
    S_n f(x) = integral of f(t) D_n(x - t) dmu(t). Oracle route."""
    if not 0 <= n <= f.base.size:
        raise ValueError(f"partial sum order must be in [0, {f.base.size}]")
    if n == 0:
        return FiniteFunction(f.base, np.zeros(f.base.size))
    kernel = dirichlet(f.base, n).values
    diff = _sub_table(f.base)
    return FiniteFunction(f.base, kernel[diff] @ f.values / f.base.size)


def conditional_expectation(f: FiniteFunction, level: int) -> FiniteFunction:
    """Replace values on each I_level coset by the coset mean (= S_{M_level} f)."""
    if not 0 <= level <= f.base.resolution:
        raise ValueError("level out of range")
    Mj = f.base.powers[level]
    blocks = f.values.reshape(f.base.size // Mj, Mj)
    return FiniteFunction(f.base, np.tile(blocks.mean(axis=0), f.base.size // Mj))


def _partial_sum_rows(f: FiniteFunction) -> np.ndarray:
    """(M_N, M_N) array whose row n-1 is S_n f; uses the cached character
    matrix, so capped at NAIVE_CAP points."""
    coeffs = analyze_fast(f).coeffs
    psi = character_matrix(f.base)
    return np.cumsum(coeffs[:, None] * psi, axis=0)


def _abs_partial_sums(f: FiniteFunction):
    """Yield (n, |S_n f| as an array) for n = 1..M_N."""
    if f.base.size <= NAIVE_CAP:
        rows = _partial_sum_rows(f)
        for n in range(1, f.base.size + 1):
            yield n, np.abs(rows[n - 1])
    else:
        coeffs = analyze_fast(f).coeffs
        running = np.zeros(f.base.size, dtype=np.complex128)
        for n in range(1, f.base.size + 1):
            running += coeffs[n - 1] * character_values(f.base, n - 1)
            yield n, np.abs(running)


def maximal_S(f: FiniteFunction) -> FiniteFunction:
    """S* f: pointwise sup of |S_n f| over n = 1..M_N (exhausts the sup for
    resolution-N functions, since S_n f = f for all n >= M_N)."""
    best = np.zeros(f.base.size)
    for _, mags in _abs_partial_sums(f):
        np.maximum(best, mags, out=best)
    return FiniteFunction(f.base, best)


def weighted_maximal(f: FiniteFunction, w: WeightSpec) -> FiniteFunction:
    """Weighted maximal operator: sup_n |S_n f| / weight(n). The finite sup
    over n <= M_N is exact because weight is nondecreasing."""
    best = np.zeros(f.base.size)
    for n, mags in _abs_partial_sums(f):
        np.maximum(best, mags / w.weight(n), out=best)
    return FiniteFunction(f.base, best)


def strong_sum(f: FiniteFunction, p: float, K: int):
    """Partial totals of sum_{k=1}^{K} ||S_k f||_p^p / k^{2-p}.

    Returns (total, running) where running[k-1] is the total through k."""
    if not 0 < p < 1:
        raise ValueError("strong sum requires 0 < p < 1")
    if not 1 <= K <= f.base.size:
        raise ValueError(f"K must be in [1, {f.base.size}]")
    terms = np.zeros(K)
    for n, mags in _abs_partial_sums(f):
        if n > K:
            break
        terms[n - 1] = np.mean(mags ** p) / n ** (2.0 - p)
    running = np.cumsum(terms)
    return float(running[-1]), running


def gat_log_mean(f: FiniteFunction, n: int) -> float:
    """(1/log n) * sum_{k=1}^{n} ||S_k f - f||_1 / k."""
    if n < 2:
        raise ValueError("log mean needs n >= 2")
    if n > f.base.size:
        raise ValueError(f"n must be at most {f.base.size}")
    if f.base.size <= NAIVE_CAP:
        rows = _partial_sum_rows(f)
        diffs = np.abs(rows[:n] - f.values[None, :]).mean(axis=1)
        total = float(np.sum(diffs / np.arange(1, n + 1)))
    else:
        coeffs = analyze_fast(f).coeffs
        running = np.zeros(f.base.size, dtype=np.complex128)
        total = 0.0
        for k in range(1, n + 1):
            running += coeffs[k - 1] * character_values(f.base, k - 1)
            total += float(np.mean(np.abs(running - f.values))) / k
    return total / math.log(n)
