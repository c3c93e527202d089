"""Generalized Rademacher functions, the Vilenkin character system, and the
forward/inverse Vilenkin-Chrestenson transform.

Two routes are provided: a definitional O(M_N^2) summation (the oracle) and
an axis-wise fast path applying one small DFT matrix per coordinate,
O(M_N * sum_k m_k). Analysis conjugates the characters, synthesis does not.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import NAIVE_CAP, BaseSequence, FiniteFunction, GroupPoint, index_digits


@dataclass(frozen=True)
class Spectrum:
    """Vilenkin-Fourier coefficients coeffs[k] of a resolution-N function."""

    base: BaseSequence
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        if coeffs.shape != (self.base.size,):
            raise ValueError(
                f"expected {self.base.size} coefficients, got {coeffs.shape}"
            )
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)


_ROOT_CACHE: dict = {}


def _unit_roots(m: int) -> np.ndarray:
    """The m-th roots of unity exp(2*pi*i*u/m), u = 0..m-1."""
    roots = _ROOT_CACHE.get(m)
    if roots is None:
        roots = np.exp(2j * np.pi * np.arange(m) / m)
        roots.flags.writeable = False
        _ROOT_CACHE[m] = roots
    return roots


def rademacher(base: BaseSequence, k: int, x: GroupPoint) -> complex:
    """r_k(x) = exp(2*pi*i*x_k/m_k)."""
    if not 0 <= k < base.resolution:
        raise ValueError("coordinate out of range")
    return complex(_unit_roots(base.bases[k])[x.digits[k]])


def vilenkin(base: BaseSequence, n: int, x: GroupPoint) -> complex:
    """psi_n(x), the product of Rademacher powers over the digits of n."""
    value = 1.0 + 0.0j
    for k, (nk, xk) in enumerate(zip(index_digits(base, n), x.digits)):
        if nk:
            m = base.bases[k]
            value *= _unit_roots(m)[(nk * xk) % m]
    return value


def character_values(base: BaseSequence, n: int) -> np.ndarray:
    """psi_n evaluated at every rank, vectorized."""
    digits = base.digit_table()
    values = np.ones(base.size, dtype=np.complex128)
    for k, nk in enumerate(index_digits(base, n)):
        if nk:
            m = base.bases[k]
            values *= _unit_roots(m)[(nk * digits[k]) % m]
    return values


_MATRIX_CACHE: dict = {}


def character_matrix(base: BaseSequence) -> np.ndarray:
    """Full (M_N, M_N) matrix Psi[n, x] = psi_n(x). Oracle-path only; capped
    at NAIVE_CAP points."""
    if base.size > NAIVE_CAP:
        raise ValueError(f"character matrix capped at {NAIVE_CAP} points")
    psi = _MATRIX_CACHE.get(base.bases)
    if psi is None:
        digits = base.digit_table().astype(np.float64)
        phase = np.zeros((base.size, base.size))
        for k, m in enumerate(base.bases):
            phase += np.outer(digits[k] / m, digits[k])
        psi = np.exp(2j * np.pi * phase)
        psi.flags.writeable = False
        _MATRIX_CACHE[base.bases] = psi
    return psi


def analyze_naive(f: FiniteFunction) -> Spectrum:
    """Definitional transform: coeffs[n] = (1/M_N) sum_x f(x) conj(psi_n(x)).

    O(M_N^2); serves as the oracle for the fast path."""
    psi = character_matrix(f.base)
    coeffs = np.conj(psi @ np.conj(f.values)) / f.base.size
    return Spectrum(f.base, coeffs)


def _as_tensor(base: BaseSequence, flat: np.ndarray) -> np.ndarray:
    # C-order reshape to (m_{N-1}, ..., m_0): the last axis is digit 0.
    return flat.reshape(tuple(reversed(base.bases)))


def _apply_axiswise(base: BaseSequence, flat: np.ndarray, conjugate: bool) -> np.ndarray:
    tensor = _as_tensor(base, np.asarray(flat, dtype=np.complex128))
    ndim = base.resolution
    for k, m in enumerate(base.bases):
        roots = _unit_roots(m)
        dft = roots[np.outer(np.arange(m), np.arange(m)) % m]
        if conjugate:
            dft = dft.conj()
        axis = ndim - 1 - k
        tensor = np.moveaxis(
            np.tensordot(tensor, dft, axes=([axis], [1])), -1, axis
        )
    return tensor.reshape(-1)


def analyze_fast(f: FiniteFunction) -> Spectrum:
    """Axis-wise factored transform; equals analyze_naive to rounding."""
    return Spectrum(f.base, _apply_axiswise(f.base, f.values, True) / f.base.size)


def synthesize(s: Spectrum) -> FiniteFunction:
    """Inverse transform: f(x) = sum_n coeffs[n] psi_n(x)."""
    return FiniteFunction(s.base, _apply_axiswise(s.base, s.coeffs, False))


def save_spectrum(s: Spectrum, path) -> None:
    import json

    payload = {
        "bases": list(s.base.bases),
        "coeffs": [[float(c.real), float(c.imag)] for c in s.coeffs],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_spectrum(path) -> Spectrum:
    import json

    with open(path) as fh:
        payload = json.load(fh)
    base = BaseSequence(tuple(payload["bases"]))
    coeffs = np.array([complex(re, im) for re, im in payload["coeffs"]])
    return Spectrum(base, coeffs)
