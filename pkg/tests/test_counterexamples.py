import numpy as np
import pytest

from vlab.core import BaseSequence
from vlab.counterexamples import (
    get_phi,
    kernel_block,
    phi_presets,
    theorem1b_ratio,
    theorem1b_ratio_L1,
    theorem3b_martingale,
    theorem3b_modulus_bound,
    theorem3b_residuals,
    theorem4b_martingale,
    theorem4b_residuals,
)
from vlab.hardy import modulus
from vlab.transform import analyze_fast

W8 = BaseSequence.from_spec("walsh:8")


def test_phi_presets_are_at_least_one_and_nondecreasing():
    for p in (0.5, 1.0):
        for phi in phi_presets(p):
            vals = [phi(n) for n in range(1, 200)]
            assert min(vals) >= 1.0
            assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_get_phi_unknown_name():
    with pytest.raises(ValueError):
        get_phi(0.5, "nope")


def test_kernel_block_spectrum_is_unit_indicator():
    for k in (1, 2):
        block = kernel_block(W8, k)
        coeffs = analyze_fast(block.terminal).coeffs
        expected = np.zeros(W8.size)
        expected[W8.powers[2 * k]:W8.powers[2 * k + 1]] = 1.0
        assert np.max(np.abs(coeffs - expected)) < 1e-12


def test_kernel_block_beyond_resolution():
    with pytest.raises(ValueError):
        kernel_block(W8, 4)


def test_theorem1b_closed_form_with_unit_phi():
    phi = get_phi(0.5, "const1")
    for k in (1, 2, 3):
        expected = float(W8.powers[2 * k])  # M_{2k}^{1/p-1} with p = 1/2
        assert theorem1b_ratio(W8, k, 0.5, phi) == pytest.approx(expected)


def test_theorem1b_rejects_p_one():
    with pytest.raises(ValueError):
        theorem1b_ratio(W8, 1, 1.0, get_phi(1.0, "const1"))


def test_theorem1b_dichotomy_between_presets():
    grow = [theorem1b_ratio(W8, k, 0.5, get_phi(0.5, "full_weight_over_loglog"))
            for k in (1, 2, 3)]
    assert all(a < b for a, b in zip(grow, grow[1:]))
    ctrl = [theorem1b_ratio(W8, k, 0.5, get_phi(0.5, "full_weight"))
            for k in (1, 2, 3)]
    assert max(ctrl) / min(ctrl) <= 2.0


def test_theorem1b_L1_increases():
    base = BaseSequence.walsh(12)
    phi = get_phi(1.0, "const1")
    ratios = [theorem1b_ratio_L1(base, k, phi) for k in range(1, 6)]
    assert ratios[0] == pytest.approx(1.0)
    assert all(a < b for a, b in zip(ratios, ratios[1:]))


def test_theorem3b_residuals_stay_at_unit_floor():
    residuals = theorem3b_residuals(W8, 3, 0.5)
    assert len(residuals) == 4
    for r in residuals:
        assert r == pytest.approx(1.0, abs=1e-9)


def test_theorem3b_modulus_within_constant_of_bound():
    f = theorem3b_martingale(W8, 3, 0.5)
    for level in (0, 2, 4, 6):
        mod = modulus(f, level, "hp", 0.5)
        bound = theorem3b_modulus_bound(W8, level, 3, 0.5)
        assert mod <= 2.0 * bound + 1e-12
        assert bound > 0


def test_theorem3b_rejects_bad_parameters():
    with pytest.raises(ValueError):
        theorem3b_martingale(W8, 3, 1.0)
    with pytest.raises(ValueError):
        theorem3b_martingale(W8, 4, 0.5)


def test_theorem4b_residual_floor():
    base = BaseSequence.walsh(9)
    residuals = theorem4b_residuals(base, 2, "inv_Mi")
    assert [k for k, _ in residuals] == [1, 2]
    for _, r in residuals:
        assert r >= 0.5


def test_theorem4b_variants_and_limits():
    base = BaseSequence.walsh(9)
    with pytest.raises(ValueError):
        theorem4b_martingale(base, 2, "bogus")
    with pytest.raises(ValueError):
        theorem4b_martingale(base, 0)
    with pytest.raises(ValueError):
        # A = 3 needs resolution 2*M_3 + 1 = 17
        theorem4b_martingale(base, 3)
    alt = theorem4b_martingale(base, 2, "inv_M2i")
    assert np.max(np.abs(alt.terminal.values)) > 0
