"""Reproducible CSV experiments binding the library modules together.

Every experiment is a pure function of (base, parameters, seed) writing one
RFC-4180 style CSV with dot decimals and 12 significant digits, so a fixed
seed gives byte-identical output."""

from __future__ import annotations

import csv
import math

import numpy as np

from .core import BaseSequence, FiniteFunction, lp_norm, weak_lp_norm
from .counterexamples import (
    get_phi,
    theorem1b_ratio,
    theorem1b_ratio_L1,
    theorem3b_martingale,
    theorem3b_modulus_bound,
    theorem3b_residuals,
    theorem4b_martingale,
    theorem4b_residuals,
)
from .hardy import hardy_norm, modulus, random_atom
from .kernels import _lemma2_ratios, dirichlet_sweep, kernel_report, q_index
from .sums import WeightSpec, gat_log_mean, partial_sum, strong_sum, weighted_maximal
from .transform import Spectrum, analyze_fast, analyze_naive, synthesize


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _random_function(base: BaseSequence, rng) -> FiniteFunction:
    return FiniteFunction(
        base, rng.normal(size=base.size) + 1j * rng.normal(size=base.size)
    )


def transform_selftest(base: BaseSequence, out, seed=0, trials=20) -> float:
    """Naive vs fast transform and round-trip error on random functions.
    Returns the worst relative error."""
    rng = np.random.default_rng(seed)
    rows, worst = [], 0.0
    for t in range(trials):
        f = _random_function(base, rng)
        s_naive = analyze_naive(f)
        s_fast = analyze_fast(f)
        scale = float(np.max(np.abs(s_naive.coeffs)))
        gap = float(np.max(np.abs(s_naive.coeffs - s_fast.coeffs))) / scale
        back = float(np.max(np.abs(synthesize(s_fast).values - f.values)))
        back /= float(np.max(np.abs(f.values)))
        rows.append((t, gap, back))
        worst = max(worst, gap, back)
    write_csv(out, ("trial", "naive_vs_fast", "roundtrip"), rows)
    return worst


def kernels_table(base: BaseSequence, out, nmax=None) -> float:
    """Lebesgue constants and three-route agreement for n = 1..nmax.
    Returns the worst route discrepancy."""
    nmax = base.size if nmax is None else min(nmax, base.size)
    rows, worst = [], 0.0
    for n in range(1, nmax + 1):
        rep = kernel_report(base, n)
        rows.append((rep.n, rep.l1_norm, rep.route_agreement))
        worst = max(worst, rep.route_agreement)
    write_csv(out, ("n", "l1_norm", "route_agreement"), rows)
    return worst


def lemma2_sweep(base: BaseSequence, out, depth=None, seed=0) -> float:
    """Shell-ratio profile of the kernel integral bound for every n <= M_N.
    Returns the max ratio."""
    depth = base.resolution if depth is None else depth
    rows, worst = [], 0.0
    for n, D in dirichlet_sweep(base, base.size):
        for s, ratio in _lemma2_ratios(base, np.abs(D), depth, 3, seed):
            rows.append((n, s, ratio))
            worst = max(worst, ratio)
    write_csv(out, ("n", "shell", "ratio"), rows)
    return worst


def maximal_atoms(base: BaseSequence, out, p, levels=(2, 4, 6),
                  atoms_per_level=100, seed=0) -> dict:
    """Integral of |weighted-maximal(a)|^p over the complement of each random
    atom's support. Returns {level: max integral}."""
    rng = np.random.default_rng(seed)
    w = WeightSpec(p)
    rows, maxima = [], {}
    for level in levels:
        best = 0.0
        for i in range(atoms_per_level):
            a = random_atom(base, level, p, rng)
            sm = weighted_maximal(a.function, w)
            outside = np.ones(base.size, dtype=bool)
            outside[a.support.ranks()] = False
            integral = float(np.sum(np.abs(sm.values[outside]) ** p)) / base.size
            rows.append((i, level, integral))
            best = max(best, integral)
        maxima[level] = best
    write_csv(out, ("atom_id", "level", "integral"), rows)
    return maxima


def divergence(base: BaseSequence, out, p, phi_name="const1", kmax=3) -> list:
    """Divergence-witness ratios across block indices k. Returns the ratios."""
    phi = get_phi(p, phi_name)
    rows, ratios = [], []
    for k in range(1, kmax + 1):
        if 2 * k + 1 > base.resolution:
            break
        M2k = base.powers[2 * k]
        if p < 1:
            ratio = theorem1b_ratio(base, k, p, phi)
            bound = (M2k + 2) ** (1.0 / p - 1.0) / phi(M2k + 2)
        else:
            ratio = theorem1b_ratio_L1(base, k, phi)
            q = q_index(base, k, "even_sum")
            bound = math.log(q) / phi(q)
        rows.append((k, M2k, phi.name, ratio, bound))
        ratios.append(ratio)
    write_csv(out, ("k", "M_2k", "phi", "ratio", "paper_lower_bound"), rows)
    return ratios


def strong_sum_atoms(base: BaseSequence, out, p=0.5, levels=(1, 2, 3, 4),
                     atoms_per_level=10, seed=0) -> list:
    """Strong-convergence totals for random atoms: total, ratio to the Hardy
    norm, and last-half increment fractions. Returns the row tuples."""
    rng = np.random.default_rng(seed)
    rows = []
    for level in levels:
        for i in range(atoms_per_level):
            a = random_atom(base, level, p, rng)
            total, running = strong_sum(a.function, p, base.size)
            hp = hardy_norm(a.function, p) ** p
            mid = base.size // 2
            tail = float(running[-1] - running[mid - 1]) / total
            step = float(np.max(np.diff(running)[mid - 1:])) / total
            rows.append((i, level, total, total / hp, tail, step))
    write_csv(out, ("atom_id", "level", "total", "ratio_to_hardy",
                    "tail_fraction", "max_step_fraction"), rows)
    return rows


def approximation(base: BaseSequence, out, p=0.5, trials=5, seed=0) -> float:
    """Partial-sum approximation rate: ||S_n f - f||_p over the modulus bound
    n^{1/p-1} log^{[p]}(n) * omega(1/M_k, f)_{H_p} for M_k < n <= M_{k+1}.
    Returns the max ratio."""
    rng = np.random.default_rng(seed)
    bp = 1 if p == 1 else 0
    rows, worst = [], 0.0
    for t in range(trials):
        f = _random_function(base, rng)
        for k in range(base.resolution - 1):
            omega = modulus(f, k, "hp", p)
            if omega == 0.0:
                continue
            n = (base.powers[k] + base.powers[k + 1] + 1) // 2
            err = lp_norm(f - partial_sum(f, n), p)
            denom = n ** (1.0 / p - 1.0) * math.log(n) ** bp * omega
            ratio = err / denom
            rows.append((t, k, n, ratio))
            worst = max(worst, ratio)
    write_csv(out, ("trial", "k", "n", "ratio"), rows)
    return worst


def modulus_convergence(base: BaseSequence, out, p=0.5, decay=0.25) -> list:
    """Positive-direction convergence: residuals of a geometrically decaying
    spectrum in weak-L_p and L_1 along doubling k. Returns the rows."""
    coeffs = decay ** np.arange(base.size, dtype=np.float64)
    f = synthesize(Spectrum(base, coeffs))
    rows = []
    k = 2
    while k <= base.size:
        resid = f - partial_sum(f, k)
        rows.append((k, weak_lp_norm(resid, p), lp_norm(resid, 1.0)))
        k *= 2
    write_csv(out, ("k", "weak_lp_residual", "l1_residual"), rows)
    return rows


def counterexample_3b(base: BaseSequence, out, p=0.5, A=None) -> list:
    """Slow-modulus martingale for 0 < p < 1: residual weak norms, moduli,
    and the coefficient-mass modulus bounds across blocks. Returns rows."""
    if A is None:
        A = (base.resolution - 1) // 2
    f = theorem3b_martingale(base, A, p)
    residuals = theorem3b_residuals(base, A, p)
    rows = []
    for k in range(A + 1):
        mod = modulus(f, 2 * k, "hp", p)
        bound = theorem3b_modulus_bound(base, 2 * k, A, p)
        rows.append((k, residuals[k], mod, bound))
    write_csv(out, ("k", "residual_weak_norm", "modulus", "modulus_bound"), rows)
    return rows


def counterexample_4b(base: BaseSequence, out, A=None,
                      coeff_variant="inv_Mi") -> list:
    """Slow-modulus martingale for p = 1: L_1 residuals at the sparse q
    indices and the H_1 moduli at the realized block scales. Returns rows."""
    if A is None:
        A = 1
        while A + 1 <= base.resolution and 2 * base.powers[A + 1] + 1 <= base.resolution:
            A += 1
    f = theorem4b_martingale(base, A, coeff_variant)
    rows = []
    for k, resid in theorem4b_residuals(base, A, coeff_variant):
        mod = modulus(f, min(2 * base.powers[k], base.resolution), "hp", 1.0)
        rows.append((k, resid, mod))
    write_csv(out, ("k", "residual_l1", "modulus"), rows)
    return rows


def gat_log_mean_sweep(base: BaseSequence, out, seed=0) -> list:
    """Logarithmic strong means of a random function along doubling n."""
    rng = np.random.default_rng(seed)
    f = _random_function(base, rng)
    rows = []
    n = 4
    while n <= base.size:
        rows.append((n, gat_log_mean(f, n)))
        n *= 2
    write_csv(out, ("n", "value"), rows)
    return rows
