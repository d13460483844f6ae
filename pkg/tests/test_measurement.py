import numpy as np
import pytest
from scipy.optimize import nnls as scipy_nnls

from locc_ops import measurement
from locc_ops.errors import ParameterError
from locc_ops.linalg import basis, ket
from locc_ops.measurement import (
    Measurement, apply, complete_local_discrimination, completeness_check, cover_povm,
    eq12_povm, identity_measurement, outcome_probabilities, pair_split,
    preserves_orthogonality, projective_split, span_split, theorem4_measurements,
    theorem4_success,
)
from locc_ops.states import FamilyParams, family_eq2
from locc_ops.synthesis import synthesize


def test_incomplete_povm_is_rejected():
    with pytest.raises(ParameterError):
        Measurement(0, (np.diag([1.0, 0.0]),))


def test_non_square_kraus_rejected():
    with pytest.raises(ParameterError):
        Measurement(0, (np.eye(2), np.zeros((3, 3))))


def test_identity_measurement_is_trivial():
    m = identity_measurement(1, 3)
    assert m.is_identity()
    assert m.outcomes == 1


def test_eq12_povm_is_complete():
    m = eq12_povm()
    assert m.party == 2
    assert m.outcomes == 4
    assert completeness_check(m) <= 1e-12
    for e in m.elements:
        assert np.linalg.matrix_rank(e, tol=1e-12) == 1


def test_eq12_outcomes_each_rule_out_two_states(eq11):
    m = eq12_povm()
    for o in range(m.outcomes):
        update = apply(eq11, m, o)
        assert len(update.dropped) == 2
        assert preserves_orthogonality(eq11, m, o).preserved


def test_projective_split_probabilities(eq11):
    m = projective_split(0, basis(1, 3))
    probs = outcome_probabilities(eq11, m, 0)
    assert probs == pytest.approx([0.0, 1 / 3, 0.0, 1.0, 0.5], abs=1e-12)


def test_projective_split_breaks_a_single_party_pair(eq11):
    m = projective_split(0, basis(1, 3))
    check = preserves_orthogonality(eq11, m, 0)
    assert not check.preserved
    assert check.offending == ((2, 5),)


def test_projective_split_needs_unit_vector():
    with pytest.raises(ParameterError):
        projective_split(0, np.zeros(3))
    with pytest.raises(ParameterError):
        projective_split(0, np.array([1.0, 1.0, 0.0]))


def test_pair_split_requires_orthogonal_vectors():
    with pytest.raises(ParameterError):
        pair_split(0, basis(0, 3), ket(1, 1, 0))
    m = pair_split(0, basis(0, 3), basis(1, 3))
    assert m.outcomes == 3
    assert np.allclose(m.elements[2], np.diag([0, 0, 1]))


def test_span_split_projects_onto_span():
    m = span_split(0, [basis(0, 3), ket(1, 1, 0)])
    assert np.allclose(m.elements[0], np.diag([1, 1, 0]))


def test_complete_local_discrimination(eq11):
    from locc_ops.states import restrict

    sub = restrict(eq11, [2, 4])                     # orthogonal on party 3
    m = complete_local_discrimination(sub, 2)
    assert m.labels[:2] == ("state 2", "state 4")
    assert apply(sub, m, 0).post_set.labels == (2,)
    assert apply(sub, m, 1).post_set.labels == (4,)
    with pytest.raises(ParameterError):
        complete_local_discrimination(sub, 0)


def test_apply_renormalizes_post_states(eq11):
    m = projective_split(0, ket(1, 1, 0))
    update = apply(eq11, m, 1)
    for s in update.post_set.states:
        for v in s.locals:
            assert abs(np.linalg.norm(v) - 1.0) < 1e-12


def test_apply_rejects_dimension_mismatch(eq11):
    with pytest.raises(ParameterError):
        apply(eq11, projective_split(0, basis(0, 2)), 0)


def test_probabilities_over_outcomes_sum_to_one(eq11):
    m = eq12_povm()
    totals = np.sum([outcome_probabilities(eq11, m, o) for o in range(m.outcomes)], axis=0)
    assert np.allclose(totals, 1.0, atol=1e-12)


def test_cover_povm_on_eq11_is_the_qutrit_povm(eq11):
    m = cover_povm(eq11, 2)
    assert m is not None
    assert m.outcomes == 4
    for e in m.elements:
        assert np.isclose(np.trace(e).real, 0.75)
    for o in range(m.outcomes):
        assert preserves_orthogonality(eq11, m, o).preserved
        assert len(apply(eq11, m, o).dropped) == 2


@pytest.mark.parametrize("party", [0, 1])
def test_cover_povm_absent_on_other_eq11_parties(eq11, party):
    assert cover_povm(eq11, party) is None


def _nnls_with(residual=None, scale=1.0):
    def fake(a, b):
        weights, exact = scipy_nnls(a, b)
        return weights * scale, exact if residual is None else residual
    return fake


@pytest.mark.parametrize("fake", [
    _nnls_with(residual=5e-8),
    _nnls_with(residual=0.0, scale=1 + 1e-7),
], ids=["residual-above-tol", "weights-off-by-1e-7"])
def test_near_cover_is_refused(eq11, monkeypatch, fake):
    monkeypatch.setattr(measurement, "nnls", fake)
    assert cover_povm(eq11, 2) is None
    # search falls through instead of raising
    verdict = synthesize(eq11)
    assert verdict.name in {"Perfect", "Probabilistic", "Unknown"}


# ── Probabilistic measurements on the (5-4) family ────────────────────────────

def test_theorem4_case1_probabilities():
    params = FamilyParams(d=1)
    per, overall = theorem4_success(params, 1)
    assert per == {3: pytest.approx(0.25)}
    assert overall == pytest.approx(0.05)

    states = family_eq2(params)
    m = theorem4_measurements(params, 1)
    probs = outcome_probabilities(states, m, 0)
    assert probs[2] == pytest.approx(0.25)
    assert [p for j, p in enumerate(probs) if j != 2] == pytest.approx([0, 0, 0, 0], abs=1e-12)


def test_theorem4_case2_probabilities():
    per, _ = theorem4_success(FamilyParams(g=1), 2)
    assert per == {4: pytest.approx(1 / 3)}


def test_theorem4_case3_probabilities():
    params = FamilyParams(d=1, g=1)
    per, overall = theorem4_success(params, 3)
    assert per[5] == pytest.approx(0.5)
    assert per[4] == pytest.approx(0.0, abs=1e-15)
    assert overall == pytest.approx(0.1)


def test_theorem4_case3_second_outcome_keeps_orthogonality():
    params = FamilyParams(d=1, g=1)
    states = family_eq2(params)
    m = theorem4_measurements(params, 3)
    assert preserves_orthogonality(states, m, 1).preserved


@pytest.mark.parametrize("params, case", [
    (FamilyParams(), 1),
    (FamilyParams(d=1), 2),
    (FamilyParams(g=1), 3),
    (FamilyParams(d=1, h=1), 1),
])
def test_theorem4_preconditions(params, case):
    with pytest.raises(ParameterError):
        theorem4_measurements(params, case)


def test_theorem4_unknown_case():
    with pytest.raises(ParameterError):
        theorem4_success(FamilyParams(d=1), 4)
