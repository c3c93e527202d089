import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlab.core import (
    BaseSequence,
    FiniteFunction,
    GroupPoint,
    IntervalSpec,
    haar_integral,
    linf_norm,
    load_function,
    lp_norm,
    save_function,
    shell_decomposition,
    translate,
    weak_lp_norm,
)

MIXED = BaseSequence.from_spec("2,3,2")
W3 = BaseSequence.walsh(3)


def test_from_spec_walsh():
    base = BaseSequence.from_spec("walsh:4")
    assert base.bases == (2, 2, 2, 2)
    assert base.size == 16
    assert base.resolution == 4


def test_from_spec_comma_list():
    assert MIXED.bases == (2, 3, 2)
    assert MIXED.powers == (1, 2, 6, 12)
    assert MIXED.size == 12


@pytest.mark.parametrize("bad", ["", "walsh:0", "1,2", "2,x", "walsh:-3"])
def test_from_spec_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        BaseSequence.from_spec(bad)


def test_unrank_digits_little_endian():
    # rank 5 = 1*1 + 2*2 in bases (2,3,2)
    assert GroupPoint.unrank(MIXED, 5).digits == (1, 2, 0)


def test_rank_unrank_roundtrip_exhaustive():
    for r in range(MIXED.size):
        assert GroupPoint.unrank(MIXED, r).rank == r


def test_group_addition_is_coordinatewise_modular():
    x = GroupPoint(MIXED, (1, 2, 0))
    y = GroupPoint(MIXED, (1, 2, 1))
    assert (x + y).digits == (0, 1, 1)


def test_group_add_base_mismatch():
    with pytest.raises(ValueError):
        GroupPoint.zero(MIXED) + GroupPoint.zero(W3)


@given(st.integers(0, 11), st.integers(0, 11))
def test_group_sub_inverts_add(rx, ry):
    x = GroupPoint.unrank(MIXED, rx)
    y = GroupPoint.unrank(MIXED, ry)
    assert ((x + y) - y).digits == x.digits


def test_interval_measure_and_ranks():
    iv = IntervalSpec(MIXED, 2)
    assert iv.measure == pytest.approx(1.0 / 6.0)
    # coset of the identity at depth 2: ranks congruent to 0 mod M_2 = 6
    assert list(iv.ranks()) == [0, 6]
    assert iv.indicator().sum() == 2


def test_interval_contains():
    iv = IntervalSpec(MIXED, 1, (1, 0, 0))
    assert iv.contains(GroupPoint(MIXED, (1, 2, 1)))
    assert not iv.contains(GroupPoint.zero(MIXED))


def test_haar_integral_of_constant():
    f = FiniteFunction.constant(W3, 2.5 - 1j)
    assert haar_integral(f) == pytest.approx(2.5 - 1j)


def test_lp_and_linf_norms_of_constant():
    f = FiniteFunction.constant(W3, -3.0)
    assert lp_norm(f, 0.5) == pytest.approx(3.0)
    assert lp_norm(f, 2.0) == pytest.approx(3.0)
    assert linf_norm(f) == pytest.approx(3.0)


def test_weak_lp_order_statistics_anchor():
    # values (3,1,1,1) on a 4-point group, p = 1/2:
    # max over k of v_(k) * (k/4)^2 = max(3/16, 1/4, 9/16, 1) = 1
    base = BaseSequence.walsh(2)
    f = FiniteFunction(base, np.array([3.0, 1.0, 1.0, 1.0]))
    assert weak_lp_norm(f, 0.5) == pytest.approx(1.0)


def test_weak_lp_of_zero_function():
    assert weak_lp_norm(FiniteFunction.constant(W3, 0.0), 0.5) == 0.0


@settings(max_examples=30)
@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=8, max_size=8),
       st.sampled_from([0.5, 1.0, 2.0]))
def test_weak_lp_below_lp(vals, p):
    f = FiniteFunction(W3, np.array(vals))
    assert weak_lp_norm(f, p) <= lp_norm(f, p) + 1e-12


def test_shell_decomposition_partitions_complement():
    shells = shell_decomposition(W3, 2)
    # shells I_s \ I_{s+1} for s = 0..1 partition the complement of I_2
    seen = sorted(np.concatenate(shells))
    core = IntervalSpec(W3, 2).ranks()
    assert seen == sorted(set(range(W3.size)) - set(core))
    assert [len(s) for s in shells] == [4, 2]


def test_translate_by_zero_and_measure_invariance():
    rng = np.random.default_rng(0)
    f = FiniteFunction(MIXED, rng.normal(size=MIXED.size))
    assert np.array_equal(translate(f, GroupPoint.zero(MIXED)).values, f.values)
    h = GroupPoint.unrank(MIXED, 7)
    assert haar_integral(translate(f, h)) == pytest.approx(haar_integral(f))


def test_save_load_roundtrip(tmp_path):
    rng = np.random.default_rng(1)
    f = FiniteFunction(MIXED, rng.normal(size=12) + 1j * rng.normal(size=12))
    path = tmp_path / "f.json"
    save_function(f, path)
    g = load_function(path)
    assert g.base == MIXED
    assert np.allclose(g.values, f.values)
    payload = json.loads(path.read_text())
    assert payload["bases"] == [2, 3, 2]
