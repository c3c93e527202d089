import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlab.core import BaseSequence, FiniteFunction, GroupPoint
from vlab.transform import (
    Spectrum,
    analyze_fast,
    analyze_naive,
    character_values,
    load_spectrum,
    rademacher,
    save_spectrum,
    synthesize,
    vilenkin,
)

MIXED = BaseSequence.from_spec("2,3,2")
W4 = BaseSequence.walsh(4)


def _random_function(base, seed=0):
    rng = np.random.default_rng(seed)
    return FiniteFunction(
        base, rng.normal(size=base.size) + 1j * rng.normal(size=base.size)
    )


def test_characters_are_orthonormal():
    M = MIXED.size
    psi = np.array([character_values(MIXED, n) for n in range(M)])
    gram = psi @ psi.conj().T / M
    assert np.max(np.abs(gram - np.eye(M))) < 1e-12


def test_character_values_match_pointwise_definition():
    for n in (0, 1, 5, 11):
        vals = character_values(MIXED, n)
        for r in range(MIXED.size):
            x = GroupPoint.unrank(MIXED, r)
            assert vals[r] == pytest.approx(vilenkin(MIXED, n, x), abs=1e-14)


def test_rademacher_is_coordinate_character():
    x = GroupPoint(MIXED, (0, 2, 1))
    assert rademacher(MIXED, 1, x) == pytest.approx(np.exp(4j * np.pi / 3))
    assert rademacher(MIXED, 2, x) == pytest.approx(-1.0)


def test_analyze_of_character_is_delta():
    for n in (0, 3, 7):
        f = FiniteFunction(MIXED, character_values(MIXED, n))
        coeffs = analyze_fast(f).coeffs
        expected = np.zeros(MIXED.size)
        expected[n] = 1.0
        assert np.max(np.abs(coeffs - expected)) < 1e-12


@pytest.mark.parametrize("base", [MIXED, W4], ids=["mixed", "walsh4"])
def test_naive_matches_fast_and_roundtrip(base):
    f = _random_function(base, seed=3)
    s_naive = analyze_naive(f)
    s_fast = analyze_fast(f)
    assert np.max(np.abs(s_naive.coeffs - s_fast.coeffs)) < 1e-12
    back = synthesize(s_fast)
    assert np.max(np.abs(back.values - f.values)) < 1e-12


def test_plancherel():
    f = _random_function(W4, seed=4)
    coeffs = analyze_fast(f).coeffs
    lhs = np.sum(np.abs(f.values) ** 2) / W4.size
    assert np.sum(np.abs(coeffs) ** 2) == pytest.approx(lhs)


@settings(max_examples=20)
@given(st.floats(-3, 3, allow_nan=False), st.floats(-3, 3, allow_nan=False))
def test_analyze_is_linear(a, b):
    f = _random_function(MIXED, seed=5)
    g = _random_function(MIXED, seed=6)
    lhs = analyze_fast(f * a + g * b).coeffs
    rhs = a * analyze_fast(f).coeffs + b * analyze_fast(g).coeffs
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_spectrum_save_load_roundtrip(tmp_path):
    s = analyze_fast(_random_function(MIXED, seed=7))
    path = tmp_path / "s.json"
    save_spectrum(s, path)
    t = load_spectrum(path)
    assert t.base == s.base
    assert np.allclose(t.coeffs, s.coeffs)


def test_spectrum_length_checked():
    with pytest.raises(ValueError):
        Spectrum(MIXED, np.zeros(5))
