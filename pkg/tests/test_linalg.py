import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from locc_ops.errors import DimensionMismatch, ParameterError
from locc_ops.linalg import (
    basis, constraint_residual, hermitian_solution_space, inner, ket, orthonormal_complement,
    projector, psd_residual, psd_sqrt, random_unit, random_unitary, rank_of, span_projector,
)

amplitudes = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def vectors(dim):
    return arrays(np.complex128, dim, elements=amplitudes).filter(lambda v: np.linalg.norm(v) > 1e-2)


def test_ket_normalizes_and_pads():
    v = ket(1, 0, 1, dim=4)
    assert v.shape == (4,)
    assert np.allclose(v, [1 / np.sqrt(2), 0, 1 / np.sqrt(2), 0])


def test_ket_rejects_zero_and_overflow():
    with pytest.raises(ParameterError):
        ket(0, 0)
    with pytest.raises(DimensionMismatch):
        ket(1, 0, 1, dim=2)


def test_frozen_values_are_read_only():
    v = basis(0, 3)
    with pytest.raises(ValueError):
        v[0] = 2.0


def test_inner_is_conjugate_linear_in_first_argument():
    u = np.array([1j, 0])
    v = np.array([1, 0])
    assert inner(u, v) == -1j


@given(vectors(4))
@settings(max_examples=50, deadline=None)
def test_projector_is_idempotent_and_hermitian(v):
    p = projector(v / np.linalg.norm(v))
    assert np.allclose(p @ p, p, atol=1e-9)
    assert np.allclose(p, p.conj().T)


def test_projector_needs_unit_vector():
    with pytest.raises(ParameterError):
        projector(np.array([2.0, 0.0]))


@given(arrays(np.complex128, (3, 3), elements=amplitudes))
@settings(max_examples=50, deadline=None)
def test_psd_sqrt_squares_back(a):
    e = a.conj().T @ a
    root = psd_sqrt(e)
    assert np.allclose(root @ root, e, atol=1e-6 * max(1.0, np.abs(e).max()))
    assert psd_residual(root, 1e-6) <= 1e-6


def test_psd_residual_reports_negative_eigenvalue():
    assert psd_residual(np.diag([1.0, -0.25])) == pytest.approx(0.25)


def test_rank_and_span_projector():
    vs = [basis(0, 3), ket(1, 1, 0), basis(1, 3)]
    assert rank_of(vs) == 2
    p = span_projector(vs, 3)
    assert np.allclose(p, np.diag([1, 1, 0]))


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("dim, r", [(3, 1), (3, 2), (5, 3), (5, 5)])
def test_rank_is_invariant_under_unitaries(seed, dim, r):
    rng = np.random.default_rng(seed)
    directions = [random_unit(rng, dim) for _ in range(r)]
    vs = [sum(c * u for c, u in zip(rng.normal(size=r), directions)) for _ in range(6)]
    u = random_unitary(rng, dim)
    assert np.allclose(u.conj().T @ u, np.eye(dim), atol=1e-12)
    assert rank_of(vs) == r
    assert rank_of([u @ v for v in vs]) == r


def test_orthonormal_complement_spans_the_rest():
    comp = orthonormal_complement([basis(0, 3), basis(1, 3)], 3)
    assert len(comp) == 1
    assert abs(abs(comp[0][2]) - 1.0) < 1e-12


def test_hermitian_solution_space_without_constraints_is_everything():
    assert len(hermitian_solution_space([], 3)) == 9


@given(vectors(3), vectors(3))
@settings(max_examples=30, deadline=None)
def test_hermitian_solutions_satisfy_their_constraints(u, w):
    u = u / np.linalg.norm(u)
    w = w - np.vdot(u, w) * u
    if np.linalg.norm(w) < 1e-3:
        return
    w = w / np.linalg.norm(w)
    sols = hermitian_solution_space([(u, w)], 3)
    # one complex condition removes two real dimensions
    assert len(sols) == 7
    for m in sols:
        assert np.allclose(m, m.conj().T)
        assert constraint_residual(m, [(u, w)]) <= 1e-8
