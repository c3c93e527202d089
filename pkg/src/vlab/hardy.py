"""Martingale Hardy-space machinery: the martingale maximal function, H_p
quasi-norms, p-atom validation and assembly, and moduli of continuity in the
sup norm, L_1, and H_p."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import (
    BaseSequence,
    FiniteFunction,
    GroupPoint,
    IntervalSpec,
    linf_norm,
    load_function,
    lp_norm,
    translate,
)
from .sums import conditional_expectation

MEAN_ZERO_TOL = 1e-12
SUP_SLACK = 1e-12


@dataclass(frozen=True)
class Martingale:
    """A martingale represented by its terminal resolution-N function; the
    levels f^(j) = E_j(terminal) are derived on demand."""

    terminal: FiniteFunction

    @property
    def base(self) -> BaseSequence:
        return self.terminal.base

    def level(self, j: int) -> FiniteFunction:
        return conditional_expectation(self.terminal, j)

    def levels(self):
        for j in range(self.base.resolution + 1):
            yield j, self.level(j)


def maximal_function(f: Martingale) -> FiniteFunction:
    """f* = pointwise sup over the levels |f^(j)|, j = 0..N."""
    best = np.zeros(f.base.size)
    for _, fj in f.levels():
        np.maximum(best, np.abs(fj.values), out=best)
    return FiniteFunction(f.base, best)


def _as_martingale(f) -> Martingale:
    return f if isinstance(f, Martingale) else Martingale(f)


def hardy_norm(f, p: float) -> float:
    """||f||_{H_p} = ||f*||_p. Accepts a Martingale or a FiniteFunction."""
    if p <= 0:
        raise ValueError("p must be positive")
    return lp_norm(maximal_function(_as_martingale(f)), p)


@dataclass(frozen=True)
class AtomSpec:
    """Candidate p-atom: mean zero on the support interval I with
    ||a||_inf <= mu(I)^{-1/p}."""

    support: IntervalSpec
    p: float
    function: FiniteFunction

    def __post_init__(self):
        if self.support.base != self.function.base:
            raise ValueError("base mismatch between support and function")
        if not 0 < self.p <= 1:
            raise ValueError("p must lie in (0, 1]")


@dataclass(frozen=True)
class AtomCheck:
    ok: bool
    mean_residual: float     # |integral of a over I|
    sup_excess: float        # max(0, ||a||_inf - mu(I)^{-1/p})
    leakage: float           # max |a| outside I


def validate_atom(a: AtomSpec) -> AtomCheck:
    values = a.function.values
    inside = a.support.ranks()
    mask = np.zeros(a.function.base.size, dtype=bool)
    mask[inside] = True
    leakage = float(np.max(np.abs(values[~mask]))) if (~mask).any() else 0.0
    mean_residual = abs(np.sum(values[inside])) / a.function.base.size
    bound = a.support.measure ** (-1.0 / a.p)
    sup_excess = max(0.0, linf_norm(a.function) - bound)
    ok = (leakage == 0.0 and mean_residual <= MEAN_ZERO_TOL
          and sup_excess <= SUP_SLACK)
    return AtomCheck(ok, mean_residual, sup_excess, leakage)


def random_atom(base: BaseSequence, depth: int, p: float, rng,
                anchor: tuple = None) -> AtomSpec:
    """Maximal-norm random p-atom on I_depth(anchor): i.i.d. uniform values
    on the support, recentred to mean zero, rescaled to the sup bound."""
    support = IntervalSpec(base, depth, anchor)
    ranks = support.ranks()
    vals = rng.uniform(-1.0, 1.0, size=ranks.size)
    vals -= vals.mean()
    peak = np.max(np.abs(vals))
    if peak == 0.0:
        vals[:] = 0.0
    else:
        vals *= support.measure ** (-1.0 / p) / peak
    values = np.zeros(base.size, dtype=np.complex128)
    values[ranks] = vals
    return AtomSpec(support, p, FiniteFunction(base, values))


def atomic_assemble(coefficients, atoms, base: BaseSequence = None) -> Martingale:
    """Assemble the martingale with terminal sum_k mu_k a_k. All atoms must
    share a base and validate. An empty list yields the zero martingale
    (base must then be given)."""
    atoms = list(atoms)
    coefficients = [float(c) for c in coefficients]
    if len(coefficients) != len(atoms):
        raise ValueError("coefficient/atom count mismatch")
    if not atoms:
        if base is None:
            raise ValueError("cannot infer base from an empty atom list")
        return Martingale(FiniteFunction(base, np.zeros(base.size)))
    base = atoms[0].function.base
    values = np.zeros(base.size, dtype=np.complex128)
    for mu, atom in zip(coefficients, atoms):
        if atom.function.base != base:
            raise ValueError("mixed bases in atom list")
        check = validate_atom(atom)
        if not check.ok:
            raise ValueError(f"invalid atom: {check}")
        values += mu * atom.function.values
    return Martingale(FiniteFunction(base, values))


def modulus(f, n: int, space: str, p: float = None) -> float:
    """Modulus of continuity at scale 1/M_n.

    space 'hp': ||f - S_{M_n} f||_{H_p} via the tail martingale
    (0,...,0, f^(n+1) - f^(n), ...). space 'l1' or 'c': exhaustive sup over
    translations h in I_n of ||f(.+h) - f||."""
    mart = _as_martingale(f)
    base = mart.base
    if not 0 <= n <= base.resolution:
        raise ValueError("level out of range")
    if space == "hp":
        if p is None:
            raise ValueError("space 'hp' needs p")
        tail = mart.terminal - mart.level(n)
        return hardy_norm(Martingale(tail), p)
    if space not in ("l1", "c"):
        raise ValueError(f"unknown space {space!r}")
    terminal = mart.terminal
    Mn = base.powers[n]
    best = 0.0
    for j in range(base.size // Mn):
        h = GroupPoint.unrank(base, j * Mn)
        diff = translate(terminal, h) - terminal
        best = max(best, lp_norm(diff, 1.0) if space == "l1"
                   else linf_norm(diff))
    return best


def load_decomposition(path) -> tuple:
    """Read an atom decomposition file: JSON {"p": ..., "atoms": [{"interval":
    {"depth": j, "anchor": [...]}, "mu": ..., "values_file": ...}]}.

    Returns (coefficients, atoms)."""
    import os

    with open(path) as fh:
        payload = json.load(fh)
    p = float(payload["p"])
    coefficients, atoms = [], []
    for entry in payload["atoms"]:
        f = load_function(os.path.join(os.path.dirname(str(path)),
                                       entry["values_file"]))
        spec = IntervalSpec(f.base, int(entry["interval"]["depth"]),
                            tuple(entry["interval"]["anchor"]))
        coefficients.append(float(entry["mu"]))
        atoms.append(AtomSpec(spec, p, f))
    return coefficients, atoms
