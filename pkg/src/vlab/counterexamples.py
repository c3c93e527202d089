"""Explicit divergence constructions: kernel-difference blocks, the weighted
partial-sum divergence ratios for 0 < p < 1 and for p = 1, the slow-modulus
martingales exhibiting non-convergent residuals, and weight presets for the
divergence condition."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BaseSequence, FiniteFunction, lp_norm, weak_lp_norm
from .hardy import Martingale, hardy_norm
from .kernels import dirichlet_paley, q_index
from .sums import WeightSpec, partial_sum


@dataclass(frozen=True)
class PhiWeight:
    """Nondecreasing divisor weight phi: N+ -> [1, inf)."""

    name: str
    fn: object

    def __call__(self, n: int) -> float:
        return float(self.fn(n))


def phi_presets(p: float) -> list:
    """Weight presets bracketing the divergence condition: the limsup of
    weight(n)/phi(n) must be infinite for divergence.

    const1, log: divergence witnesses. full_weight_over_loglog: satisfies
    the condition with the slowest growth. full_weight: negative control
    (the quotient is bounded, so the ratios stay bounded)."""
    w = WeightSpec(p)
    return [
        PhiWeight("const1", lambda n: 1.0),
        PhiWeight("log", lambda n: max(1.0, math.log(n + 1))),
        PhiWeight("full_weight_over_loglog",
                  lambda n: max(1.0, w.weight(n) / math.log(math.log(n + 16)))),
        PhiWeight("full_weight", lambda n: max(1.0, w.weight(n))),
    ]


def get_phi(p: float, name: str) -> PhiWeight:
    for phi in phi_presets(p):
        if phi.name == name:
            return phi
    raise ValueError(f"unknown phi preset {name!r}")


def kernel_block(base: BaseSequence, k: int) -> Martingale:
    """The block f_k = D_{M_{2k+1}} - D_{M_{2k}}, whose spectrum is the 0/1
    indicator of [M_{2k}, M_{2k+1})."""
    if 2 * k + 1 > base.resolution:
        raise ValueError("block exceeds resolution")
    f = dirichlet_paley(base, 2 * k + 1) - dirichlet_paley(base, 2 * k)
    return Martingale(f)


def theorem1b_ratio(base: BaseSequence, k: int, p: float, phi: PhiWeight) -> float:
    """Weak-L_p size of the divergence witness, normalized by the block's
    Hardy norm: ||S_{M_{2k}+1} f_k / phi(M_{2k}+2)||_{p,inf} / ||f_k||_{H_p}.

    With phi = 1 this equals M_{2k}^{1/p-1} exactly."""
    if not 0 < p < 1:
        raise ValueError("use theorem1b_ratio_L1 for p = 1")
    block = kernel_block(base, k)
    n = base.powers[2 * k] + 1
    s = partial_sum(block.terminal, n)
    numerator = weak_lp_norm(s, p) / phi(n + 1)
    return numerator / hardy_norm(block, p)


def theorem1b_ratio_L1(base: BaseSequence, k: int, phi: PhiWeight) -> float:
    """L_1 divergence witness at the sparse index q_k:
    (1/||f_k||_{H_1}) * integral of |S_{q_k} f_k| / phi(q_k)."""
    if 2 * k + 1 > base.resolution:
        raise ValueError("block exceeds resolution")
    block = kernel_block(base, k)
    q = q_index(base, k, "even_sum")
    s = partial_sum(block.terminal, q)
    return lp_norm(s, 1.0) / phi(q) / hardy_norm(block, 1.0)


def theorem3b_martingale(base: BaseSequence, A: int, p: float) -> Martingale:
    """Truncated slow-modulus martingale for 0 < p < 1: the sum of the
    kernel blocks k = 0..A (unit spectrum on each [M_{2i}, M_{2i+1}))."""
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if 2 * A + 1 > base.resolution:
        raise ValueError("A exceeds resolution")
    values = np.zeros(base.size, dtype=np.complex128)
    for i in range(A + 1):
        values += kernel_block(base, i).terminal.values
    return Martingale(FiniteFunction(base, values))


def theorem3b_residuals(base: BaseSequence, A: int, p: float) -> list:
    """Weak-L_p residuals r_k = ||f - S_{M_{2k+1}-1} f||_{p,inf}, k = 0..A.
    These stay bounded away from zero: the missing top character alone has
    weak norm 1."""
    f = theorem3b_martingale(base, A, p).terminal
    out = []
    for k in range(A + 1):
        s = partial_sum(f, base.powers[2 * k + 1] - 1)
        out.append(weak_lp_norm(f - s, p))
    return out


def theorem3b_modulus_bound(base: BaseSequence, level: int, A: int, p: float) -> float:
    """Coefficient-mass bound sum_{i>=ceil(level/2)} M_{2i}^{1-1/p} on the
    H_p modulus at scale 1/M_level, including the truncation remainder of
    blocks realized up to A."""
    return sum(base.powers[2 * i] ** (1.0 - 1.0 / p)
               for i in range(level // 2, A + 1)
               if 2 * i >= level)


def theorem4b_martingale(base: BaseSequence, A: int,
                         coeff_variant: str = "inv_Mi") -> Martingale:
    """Truncated slow-modulus martingale for p = 1: blocks at the doubly
    sparse levels 2M_i, i = 1..A, with coefficients 1/M_i ('inv_Mi', the
    displayed sum) or 1/M_{2i} ('inv_M2i', the stated spectrum)."""
    if coeff_variant not in ("inv_Mi", "inv_M2i"):
        raise ValueError(f"unknown coefficient variant {coeff_variant!r}")
    if A < 1:
        raise ValueError("A must be at least 1")
    if 2 * base.powers[A] + 1 > base.resolution:
        raise ValueError(
            f"block A={A} needs resolution {2 * base.powers[A] + 1}"
        )
    values = np.zeros(base.size, dtype=np.complex128)
    for i in range(1, A + 1):
        mu = 1.0 / (base.powers[i] if coeff_variant == "inv_Mi"
                    else base.powers[2 * i])
        block = (dirichlet_paley(base, 2 * base.powers[i] + 1)
                 - dirichlet_paley(base, 2 * base.powers[i]))
        values += mu * block.values
    return Martingale(FiniteFunction(base, values))


def theorem4b_residuals(base: BaseSequence, A: int,
                        coeff_variant: str = "inv_Mi") -> list:
    """L_1 residuals ||f - S_{q_{M_k}} f||_1 at the sparse indices q_{M_k}
    for every k = 1..A with 2*M_k <= resolution."""
    f = theorem4b_martingale(base, A, coeff_variant).terminal
    out = []
    for k in range(1, A + 1):
        if 2 * base.powers[k] > base.resolution:
            break
        q = q_index(base, base.powers[k], "even_sum")
        if q >= base.size:
            break
        out.append((k, lp_norm(f - partial_sum(f, q), 1.0)))
    return out
