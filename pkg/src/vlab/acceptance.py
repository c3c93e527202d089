"""Release-gate checks: every acceptance criterion as an executable check
returning a pass/fail result with a one-line detail. Used both by the
`vlab verify` command and the test suite."""

from __future__ import annotations

import filecmp
import os
import tempfile
import time
from dataclasses import dataclass

import numpy as np

from .core import BaseSequence, lp_norm
from .counterexamples import (
    get_phi,
    theorem1b_ratio,
    theorem1b_ratio_L1,
    theorem3b_residuals,
    theorem4b_residuals,
)
from .experiments import (
    divergence,
    kernels_table,
    lemma2_sweep,
    maximal_atoms,
    modulus_convergence,
    strong_sum_atoms,
    transform_selftest,
)
from .hardy import hardy_norm
from .kernels import (
    dirichlet,
    dirichlet_paley,
    lebesgue_constant,
    q_index,
)

REL_TOL = 1e-9
EXACT_TOL = 1e-12

WALSH8 = "walsh:8"
MIXED6 = "2,3,2,3,2,3"


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _result(number, name, passed, detail) -> CriterionResult:
    return CriterionResult(number, name, bool(passed), detail)


def criterion_1_transform(tmpdir) -> CriterionResult:
    t0 = time.time()
    worst = 0.0
    for spec, trials in (("walsh:12", 100), (MIXED6, 100)):
        base = BaseSequence.from_spec(spec)
        out = os.path.join(tmpdir, f"selftest_{base.size}.csv")
        worst = max(worst, transform_selftest(base, out, seed=1, trials=trials))
    elapsed = time.time() - t0
    return _result(
        1, "transform correctness", worst < REL_TOL and elapsed < 10.0,
        f"worst rel err {worst:.3e}, {elapsed:.1f}s",
    )


def criterion_2_kernel_identities(tmpdir) -> CriterionResult:
    worst_gap, worst_paley, worst_l1 = 0.0, 0.0, 0.0
    for spec in (WALSH8, MIXED6):
        base = BaseSequence.from_spec(spec)
        out = os.path.join(tmpdir, f"kernels_{base.size}.csv")
        worst_gap = max(worst_gap, kernels_table(base, out))
        for j in range(base.resolution + 1):
            Mj = base.powers[j]
            paley = dirichlet_paley(base, j)
            gap = np.max(np.abs(dirichlet(base, Mj).values - paley.values)) / Mj
            worst_paley = max(worst_paley, float(gap))
            worst_l1 = max(worst_l1, abs(lp_norm(paley, 1.0) - 1.0))
    ok = worst_gap < REL_TOL and worst_paley < REL_TOL and worst_l1 < EXACT_TOL
    return _result(
        2, "kernel identities", ok,
        f"factored gap {worst_gap:.2e}, paley gap {worst_paley:.2e}, "
        f"|‖D_Mj‖₁-1| {worst_l1:.2e}",
    )


def criterion_3_exact_anchors() -> CriterionResult:
    w3 = BaseSequence.walsh(3)
    d3 = lebesgue_constant(w3, 3)
    d5 = lebesgue_constant(w3, 5)
    w4 = BaseSequence.walsh(4)
    block = dirichlet_paley(w4, 3) - dirichlet_paley(w4, 2)
    hp = hardy_norm(block, 0.5)
    ok = (abs(d3 - 1.5) < EXACT_TOL and abs(d5 - 1.75) < EXACT_TOL
          and abs(hp - 0.25) < EXACT_TOL)
    return _result(
        3, "exact anchors", ok,
        f"‖D_3‖₁={d3}, ‖D_5‖₁={d5}, block H_1/2 norm={hp}",
    )


def criterion_4_lemma2(tmpdir) -> CriterionResult:
    maxima = {}
    for N in (6, 8):
        base = BaseSequence.walsh(N)
        out = os.path.join(tmpdir, f"lemma2_walsh{N}.csv")
        maxima[N] = lemma2_sweep(base, out, seed=0)
    growth = maxima[8] / maxima[6]
    return _result(
        4, "lemma 2 shell bound", growth <= 1.1,
        f"max ratio walsh:6={maxima[6]:.4f}, walsh:8={maxima[8]:.4f}, "
        f"growth {growth:.3f}",
    )


def criterion_5_maximal_atoms(tmpdir) -> CriterionResult:
    t0 = time.time()
    base = BaseSequence.from_spec(WALSH8)
    ok = True
    details = []
    for p in (0.5, 0.75, 1.0):
        out = os.path.join(tmpdir, f"maximal_atoms_p{p}.csv")
        maxima = maximal_atoms(base, out, p, levels=(2, 4, 6),
                               atoms_per_level=100, seed=5)
        top = max(maxima.values())
        if top > 2.0 * maxima[2]:
            ok = False
        details.append(f"p={p}: " + ",".join(
            f"j{j}={v:.3f}" for j, v in maxima.items()))
    elapsed = time.time() - t0
    ok = ok and elapsed < 60.0
    return _result(
        5, "weighted maximal on atoms (no growth in level)", ok,
        "; ".join(details) + f"; {elapsed:.1f}s",
    )


def criterion_6_divergence_p_half(tmpdir) -> CriterionResult:
    base = BaseSequence.from_spec(WALSH8)
    p = 0.5
    out = os.path.join(tmpdir, "divergence_const1.csv")
    ratios = divergence(base, out, p, "const1", kmax=3)
    # closed form M_{2k}^{1/p-1}: the stated digits 4, 64, 1024 contradict
    # this form and the block construction; the closed form is asserted
    closed = [base.powers[2 * k] ** (1.0 / p - 1.0) for k in (1, 2, 3)]
    exact = all(abs(r - c) <= REL_TOL * c for r, c in zip(ratios, closed))
    grow = [theorem1b_ratio(base, k, p, get_phi(p, "full_weight_over_loglog"))
            for k in (1, 2, 3)]
    increasing = all(a < b for a, b in zip(grow, grow[1:]))
    ctrl = [theorem1b_ratio(base, k, p, get_phi(p, "full_weight"))
            for k in (1, 2, 3)]
    bounded = max(ctrl) / min(ctrl) <= 2.0
    return _result(
        6, "divergence ratios, p=1/2", exact and increasing and bounded,
        f"const1 ratios {ratios} vs closed form {closed}; "
        f"loglog increasing={increasing}; control spread "
        f"{max(ctrl) / min(ctrl):.2f}",
    )


def criterion_7_divergence_p_one() -> CriterionResult:
    base = BaseSequence.walsh(12)
    phi = get_phi(1.0, "const1")
    lebesgue_ok = True
    ratios = []
    for k in range(1, 6):
        q = q_index(base, k, "even_sum")
        if lebesgue_constant(base, q) / k < 0.25:
            lebesgue_ok = False
        ratios.append(theorem1b_ratio_L1(base, k, phi))
    increasing = all(a < b for a, b in zip(ratios, ratios[1:]))
    return _result(
        7, "divergence, p=1", lebesgue_ok and increasing,
        f"L(q_k)/k >= 0.25: {lebesgue_ok}; L1 ratios "
        + ",".join(f"{r:.3f}" for r in ratios),
    )


def criterion_8_strong_sum(tmpdir) -> CriterionResult:
    base = BaseSequence.from_spec(WALSH8)
    out = os.path.join(tmpdir, "strong_sum.csv")
    rows = strong_sum_atoms(base, out, p=0.5, levels=(1, 2, 3, 4),
                            atoms_per_level=25, seed=8)
    ratios = [r[3] for r in rows]
    tails = [r[4] for r in rows]
    spread = max(ratios) / min(ratios)
    ok = spread <= 10.0 and max(tails) < 1e-2
    return _result(
        8, "strong convergence sum", ok,
        f"ratio spread {spread:.2f} (<=10), max last-half increment "
        f"{max(tails):.3f} (<1e-2)",
    )


def criterion_9_residual_floors(tmpdir) -> CriterionResult:
    w8 = BaseSequence.from_spec(WALSH8)
    res3b = theorem3b_residuals(w8, 3, 0.5)
    floor_3b = min(res3b)
    w9 = BaseSequence.walsh(9)
    res4b = [r for _, r in theorem4b_residuals(w9, 2, "inv_Mi")]
    floor_4b = min(res4b)
    out = os.path.join(tmpdir, "modulus_convergence.csv")
    rows = modulus_convergence(w8, out, p=0.5)
    weak = [r[1] for r in rows]
    l1 = [r[2] for r in rows]
    # monotone decay up to the floating-point noise floor
    def monotone(seq):
        return all(a >= b or b < 1e-12 for a, b in zip(seq, seq[1:]))

    decay = (monotone(weak) and monotone(l1)
             and weak[-1] < 1e-3 and l1[-1] < 1e-3)
    ok = floor_3b >= 0.9 and floor_4b >= 0.5 and decay
    return _result(
        9, "counterexample residual floors vs positive-direction decay", ok,
        f"3b floor {floor_3b:.3f} (>=0.9), 4b floor {floor_4b:.3f} (>=0.5), "
        f"decay to {max(weak[-1], l1[-1]):.1e}",
    )


def criterion_10_determinism(tmpdir) -> CriterionResult:
    base = BaseSequence.from_spec(WALSH8)
    identical = True
    for name, runner in (
        ("kernels", lambda out: kernels_table(base, out, nmax=64)),
        ("divergence", lambda out: divergence(base, out, 0.5, "const1", 3)),
    ):
        a = os.path.join(tmpdir, f"det_{name}_a.csv")
        b = os.path.join(tmpdir, f"det_{name}_b.csv")
        runner(a)
        runner(b)
        identical = identical and filecmp.cmp(a, b, shallow=False)
    return _result(10, "deterministic CSV output", identical,
                   f"byte-identical reruns: {identical}")


def run_all(tmpdir=None) -> list:
    """Run every criterion; returns the list of CriterionResult."""
    own = None
    if tmpdir is None:
        own = tempfile.TemporaryDirectory()
        tmpdir = own.name
    try:
        results = [
            criterion_1_transform(tmpdir),
            criterion_2_kernel_identities(tmpdir),
            criterion_3_exact_anchors(),
            criterion_4_lemma2(tmpdir),
            criterion_5_maximal_atoms(tmpdir),
            criterion_6_divergence_p_half(tmpdir),
            criterion_7_divergence_p_one(),
            criterion_8_strong_sum(tmpdir),
            criterion_9_residual_floors(tmpdir),
            criterion_10_determinism(tmpdir),
        ]
    finally:
        if own is not None:
            own.cleanup()
    return results
