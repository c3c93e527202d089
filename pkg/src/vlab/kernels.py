"""Dirichlet kernels by three routes (definition, closed form at n = M_j,
factored digit identity), Lebesgue constants, the special sparse indices q,
and shell-wise kernel integral profiles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BaseSequence, FiniteFunction, index_digits, lp_norm
from .transform import _unit_roots, character_values


def dirichlet(base: BaseSequence, n: int) -> FiniteFunction:
    """D_n = sum of the first n characters, by direct pointwise summation."""
    if not 0 < n <= base.size:
        raise ValueError(f"kernel index must be in [1, {base.size}]")
    values = np.zeros(base.size, dtype=np.complex128)
    for k in range(n):
        values += character_values(base, k)
    return FiniteFunction(base, values)


def dirichlet_sweep(base: BaseSequence, nmax: int):
    """Yield (n, D_n values) for n = 1..nmax by running accumulation."""
    if not 0 < nmax <= base.size:
        raise ValueError(f"kernel index must be in [1, {base.size}]")
    values = np.zeros(base.size, dtype=np.complex128)
    for n in range(1, nmax + 1):
        values += character_values(base, n - 1)
        yield n, values


def dirichlet_paley(base: BaseSequence, j: int) -> FiniteFunction:
    """Closed form of D_{M_j}: M_j on the coset I_j, zero elsewhere."""
    if not 0 <= j <= base.resolution:
        raise ValueError("level out of range")
    Mj = base.powers[j]
    values = np.zeros(base.size, dtype=np.complex128)
    values[::Mj] = Mj
    return FiniteFunction(base, values)


def dirichlet_factored(base: BaseSequence, n: int) -> FiniteFunction:
    """D_n from the factored digit identity
    D_n(x) = psi_n(x) * sum_j D_{M_j}(x) * sum_{u=m_j-n_j}^{m_j-1} r_j^u(x)."""
    if not 0 < n <= base.size:
        raise ValueError(f"kernel index must be in [1, {base.size}]")
    if n == base.size:
        # n has no digit expansion inside the resolution; fall back on the
        # completeness identity D_{M_N} = M_N * indicator of the zero point.
        return dirichlet_paley(base, base.resolution)
    digits = base.digit_table()
    inner = np.zeros(base.size, dtype=np.complex128)
    for j, nj in enumerate(index_digits(base, n)):
        if nj == 0:
            continue
        m = base.bases[j]
        roots = _unit_roots(m)
        rad_powers = np.zeros(base.size, dtype=np.complex128)
        for u in range(m - nj, m):
            rad_powers += roots[(u * digits[j]) % m]
        paley = np.zeros(base.size)
        Mj = base.powers[j]
        paley[::Mj] = Mj
        inner += paley * rad_powers
    return FiniteFunction(base, character_values(base, n) * inner)


def lebesgue_constant(base: BaseSequence, n: int) -> float:
    """The Lebesgue constant ||D_n||_1."""
    return lp_norm(dirichlet(base, n), 1.0)


@dataclass(frozen=True)
class KernelReport:
    n: int
    l1_norm: float
    route_agreement: float


def kernel_report(base: BaseSequence, n: int) -> KernelReport:
    """L1 norm of D_n plus the max pointwise discrepancy between the direct
    and factored routes (relative to the kernel's peak n)."""
    direct = dirichlet(base, n)
    factored = dirichlet_factored(base, n)
    gap = float(np.max(np.abs(direct.values - factored.values))) / n
    return KernelReport(n, lp_norm(direct, 1.0), gap)


def q_index(base: BaseSequence, k: int, variant: str = "even_sum") -> int:
    """Sparse index with nonzero digit 1 at even positions.

    even_sum: sum_{l=0}^{k} M_{2l}.  literal: the displayed four-term sum
    M_{2k} + M_{2k-2} + M_2 + M_0 (distinct terms only)."""
    if k < 0 or 2 * k > base.resolution:
        raise ValueError("2k exceeds resolution")
    if variant == "even_sum":
        return sum(base.powers[2 * l] for l in range(k + 1))
    if variant == "literal":
        terms = {base.powers[2 * k], base.powers[max(2 * k - 2, 0)],
                 base.powers[2] if base.resolution >= 2 else base.powers[0],
                 base.powers[0]}
        return sum(terms)
    raise ValueError(f"unknown q variant {variant!r}")


def lemma2_profile(base: BaseSequence, n: int, depth: int,
                   reps_per_shell: int = 3, seed: int = 0) -> list:
    """For representatives x of each shell I_s \\ I_{s+1}, s < depth, compute
    K(x) = integral over I_depth of |D_n(x - t)| and report the ratio
    K(x) / (M_s / M_depth), maximized over the representatives.

    Returns a list of (s, max_ratio)."""
    if not 0 <= depth <= base.resolution:
        raise ValueError("depth out of range")
    if not 0 < n <= base.size:
        raise ValueError(f"kernel index must be in [1, {base.size}]")
    kernel = np.abs(dirichlet(base, n).values)
    return _lemma2_ratios(base, kernel, depth, reps_per_shell, seed)


def _lemma2_ratios(base: BaseSequence, abs_kernel: np.ndarray, depth: int,
                   reps_per_shell: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    Md = base.powers[depth]
    coset = np.arange(base.size // Md) * Md  # ranks of I_depth
    out = []
    for s in range(depth):
        reps = [_shell_anchor_rank(base, s)]
        for _ in range(reps_per_shell):
            reps.append(_random_shell_rank(base, s, rng))
        best = 0.0
        for xr in reps:
            diff = _sub_ranks(base, xr, coset)
            K = float(np.sum(abs_kernel[diff])) / base.size
            best = max(best, K / (base.powers[s] / Md))
        out.append((s, best))
    return out


def _shell_anchor_rank(base: BaseSequence, s: int) -> int:
    # digits (0,...,0,1,0,...): the canonical member of I_s \ I_{s+1}
    return base.powers[s]


def _random_shell_rank(base: BaseSequence, s: int, rng) -> int:
    r = base.powers[s] * int(rng.integers(1, base.bases[s]))
    for j in range(s + 1, base.resolution):
        r += base.powers[j] * int(rng.integers(0, base.bases[j]))
    return r


def _sub_ranks(base: BaseSequence, x_rank: int, t_ranks: np.ndarray) -> np.ndarray:
    """Ranks of x - t for a fixed x and an array of t."""
    digits = base.digit_table()
    out = np.zeros(t_ranks.shape, dtype=np.int64)
    for k, xd in enumerate(index_digits(base, int(x_rank))):
        m = base.bases[k]
        out += ((xd - digits[k][t_ranks]) % m) * base.powers[k]
    return out
