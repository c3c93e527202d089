import math

import numpy as np
import pytest

from vlab.core import BaseSequence, FiniteFunction, lp_norm
from vlab.hardy import random_atom
from vlab.sums import (
    WeightSpec,
    conditional_expectation,
    gat_log_mean,
    maximal_S,
    partial_sum,
    partial_sum_conv,
    strong_sum,
    weighted_maximal,
)
from vlab.transform import character_values

MIXED = BaseSequence.from_spec("2,3,2")
W4 = BaseSequence.walsh(4)


def _random_function(base, seed=0):
    rng = np.random.default_rng(seed)
    return FiniteFunction(
        base, rng.normal(size=base.size) + 1j * rng.normal(size=base.size)
    )


def test_weight_spec_values():
    w1 = WeightSpec(1.0)
    assert w1.bracket_p == 1
    assert w1.weight(1) == pytest.approx(math.log(2.0))
    w_half = WeightSpec(0.5)
    assert w_half.bracket_p == 0
    assert w_half.weight(3) == pytest.approx(4.0)


def test_weight_spec_rejects_bad_p():
    with pytest.raises(ValueError):
        WeightSpec(0.0)
    with pytest.raises(ValueError):
        WeightSpec(1.5)


def test_partial_sum_truncates_characters():
    f = FiniteFunction(MIXED, character_values(MIXED, 7))
    zero = partial_sum(f, 7)
    assert np.max(np.abs(zero.values)) < 1e-12
    kept = partial_sum(f, 8)
    assert np.max(np.abs(kept.values - f.values)) < 1e-12


def test_full_partial_sum_is_identity():
    f = _random_function(MIXED, seed=1)
    s = partial_sum(f, MIXED.size)
    assert np.max(np.abs(s.values - f.values)) < 1e-12


def test_partial_sum_matches_convolution_route():
    f = _random_function(MIXED, seed=2)
    for n in (1, 3, 5, 11, 12):
        a = partial_sum(f, n).values
        b = partial_sum_conv(f, n).values
        assert np.max(np.abs(a - b)) < 1e-12


def test_conditional_expectation_tower_property():
    f = _random_function(W4, seed=3)
    for j in range(W4.resolution + 1):
        for k in range(W4.resolution + 1):
            lhs = conditional_expectation(conditional_expectation(f, k), j)
            rhs = conditional_expectation(f, min(j, k))
            assert np.max(np.abs(lhs.values - rhs.values)) < 1e-12


def test_conditional_expectation_endpoints():
    f = _random_function(W4, seed=4)
    top = conditional_expectation(f, W4.resolution)
    assert np.max(np.abs(top.values - f.values)) < 1e-12
    bottom = conditional_expectation(f, 0)
    assert np.max(np.abs(bottom.values - f.values.mean())) < 1e-12


def test_atom_partial_sums_vanish_below_support_scale():
    rng = np.random.default_rng(5)
    level = 2
    a = random_atom(W4, level, 0.5, rng)
    # mean zero on a depth-2 coset kills every coefficient below M_2
    s = partial_sum(a.function, W4.powers[level])
    assert np.max(np.abs(s.values)) < 1e-12


def test_maximal_dominates_each_partial_sum():
    f = _random_function(W4, seed=6)
    m = maximal_S(f).values
    for n in (1, 5, 9, 16):
        assert np.all(np.abs(partial_sum(f, n).values) <= m + 1e-12)


def test_weighted_maximal_on_single_character():
    # f = psi_2 on walsh:4, p = 1/2: S_n f = f for n >= 3, else 0, so the
    # weighted sup is |f| / weight(3) = 1/4 everywhere
    f = FiniteFunction(W4, character_values(W4, 2))
    sm = weighted_maximal(f, WeightSpec(0.5))
    assert np.max(np.abs(sm.values - 0.25)) < 1e-12


def test_strong_sum_anchor_and_monotonicity():
    # f = psi_1 on walsh:3, p = 1/2: ||S_k f||_p = 1 for k >= 2, 0 for k = 1
    f = FiniteFunction(BaseSequence.walsh(3), character_values(BaseSequence.walsh(3), 1))
    total, running = strong_sum(f, 0.5, 8)
    expected = sum(1.0 / k ** 1.5 for k in range(2, 9))
    assert total == pytest.approx(expected, abs=1e-6)
    assert np.all(np.diff(running) >= -1e-12)
    assert running[-1] == pytest.approx(total)


def test_gat_log_mean_zero_for_low_resolution_functions():
    f = FiniteFunction(W4, character_values(W4, 1))
    # S_k f = f for every k >= 2, so only the k = 1 residual survives
    assert gat_log_mean(f, W4.size) == pytest.approx(1.0 / math.log(16.0))
    assert gat_log_mean(FiniteFunction.constant(W4, 1.0), W4.size) == pytest.approx(0.0)
