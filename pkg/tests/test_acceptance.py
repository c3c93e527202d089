"""Release gate: run every acceptance criterion at its stated tolerance and
report one pass/fail line per criterion."""

import pytest

from vlab import acceptance

CRITERIA = [
    (1, acceptance.criterion_1_transform, True),
    (2, acceptance.criterion_2_kernel_identities, True),
    (3, acceptance.criterion_3_exact_anchors, False),
    (4, acceptance.criterion_4_lemma2, True),
    (5, acceptance.criterion_5_maximal_atoms, True),
    (6, acceptance.criterion_6_divergence_p_half, True),
    (7, acceptance.criterion_7_divergence_p_one, False),
    (8, acceptance.criterion_8_strong_sum, True),
    (9, acceptance.criterion_9_residual_floors, True),
    (10, acceptance.criterion_10_determinism, True),
]


@pytest.fixture(scope="module")
def results(tmp_path_factory):
    tmpdir = tmp_path_factory.mktemp("acceptance")
    out = {}
    for number, fn, needs_dir in CRITERIA:
        out[number] = fn(str(tmpdir)) if needs_dir else fn()
    return out


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(results, number, capsys):
    r = results[number]
    status = "PASS" if r.passed else "FAIL"
    with capsys.disabled():
        print(f"[{status}] criterion {r.number}: {r.name} — {r.detail}")
    assert r.passed, f"criterion {r.number} ({r.name}): {r.detail}"
