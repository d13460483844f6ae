"""
linalg.py
Dense complex linear algebra primitives used by every other module.

Vectors (CVec) are 1-D complex numpy arrays, matrices (CMat) are square
2-D complex arrays. Everything returned from here is marked read-only so
values can be shared freely between states, measurements and reports.
"""
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy import linalg as sla
from scipy.stats import unitary_group

from .errors import DimensionMismatch, ParameterError

CVec = np.ndarray
CMat = np.ndarray

DEFAULT_TOL = 1e-9


# ── Construction helpers ──────────────────────────────────────────────────────

def frozen(a) -> np.ndarray:
    """Return a read-only complex copy of a."""
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


def basis(index: int, dim: int) -> CVec:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return frozen(v)


def ket(*amplitudes, dim: int = None) -> CVec:
    """
    Normalized ket from raw amplitudes, zero-padded (or zero-trimmed) to dim.
    ket(1, 0, 1) == (|0⟩+|2⟩)/√2
    """
    v = np.zeros(max(dim or 0, len(amplitudes)), dtype=complex)
    v[:len(amplitudes)] = amplitudes
    if dim is not None and len(v) > dim:
        if np.any(v[dim:] != 0):
            raise DimensionMismatch(f"nonzero amplitude beyond dim {dim}")
        v = v[:dim]
    n = np.linalg.norm(v)
    if n == 0:
        raise ParameterError("cannot normalize the zero vector")
    return frozen(v / n)


def embed(v: CVec, dim: int) -> CVec:
    """Zero-pad v into a larger space."""
    if len(v) > dim:
        raise DimensionMismatch(f"cannot embed a {len(v)}-dim vector into dim {dim}")
    out = np.zeros(dim, dtype=complex)
    out[:len(v)] = v
    return frozen(out)


def identity(dim: int) -> CMat:
    return frozen(np.eye(dim, dtype=complex))


def random_unit(rng: np.random.Generator, dim: int) -> CVec:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return frozen(v / np.linalg.norm(v))


def random_unitary(rng: np.random.Generator, dim: int) -> CMat:
    return frozen(unitary_group.rvs(dim, random_state=rng))


# ── Basic operations ──────────────────────────────────────────────────────────

def _check_same_dim(u: np.ndarray, v: np.ndarray):
    if u.shape[-1] != v.shape[-1]:
        raise DimensionMismatch(f"dimension mismatch: {u.shape[-1]} vs {v.shape[-1]}")


def inner(u: CVec, v: CVec) -> complex:
    """⟨u|v⟩, conjugate-linear in u and linear in v."""
    _check_same_dim(u, v)
    return complex(np.vdot(u, v))


def norm(v: CVec) -> float:
    return float(np.linalg.norm(v))


def is_normalized(v: CVec, tol: float = DEFAULT_TOL) -> bool:
    return abs(norm(v) - 1.0) <= tol


def projector(v: CVec, tol: float = DEFAULT_TOL) -> CMat:
    """|v⟩⟨v| for a normalized v."""
    n = norm(v)
    if n <= tol:
        raise ParameterError("projector onto the zero vector")
    if abs(n - 1.0) > tol:
        raise ParameterError(f"projector needs a normalized vector (norm {n:.6g})")
    return frozen(np.outer(v, np.conj(v)))


def is_hermitian(m: CMat, tol: float = DEFAULT_TOL) -> bool:
    return m.ndim == 2 and m.shape[0] == m.shape[1] and sla.ishermitian(m, atol=tol)


def psd_residual(e: CMat, tol: float = DEFAULT_TOL) -> float:
    """max(0, −λ_min(E)); zero within tol iff E is positive semidefinite."""
    if not is_hermitian(e, tol):
        raise ParameterError("psd_residual needs a Hermitian matrix")
    lam_min = float(np.linalg.eigvalsh((e + e.conj().T) / 2)[0])
    return max(0.0, -lam_min)


def psd_sqrt(e: CMat) -> CMat:
    """PSD square root E^½ (tiny negative eigenvalues are clipped)."""
    h = (e + e.conj().T) / 2
    lam, vecs = np.linalg.eigh(h)
    root = (vecs * np.sqrt(np.clip(lam, 0.0, None))) @ vecs.conj().T
    return frozen(root)


# ── Spans and ranks ───────────────────────────────────────────────────────────

def _stack(vs: Sequence[CVec], dim: int = None) -> np.ndarray:
    """Matrix whose columns are vs."""
    if not vs:
        return np.zeros((dim or 0, 0), dtype=complex)
    d = len(vs[0])
    for v in vs:
        if len(v) != d:
            raise DimensionMismatch(f"dimension mismatch: {len(v)} vs {d}")
    if dim is not None and d != dim:
        raise DimensionMismatch(f"vectors live in dim {d}, expected {dim}")
    return np.column_stack(vs).astype(complex)


def rank_of(vs: Sequence[CVec], tol: float = DEFAULT_TOL) -> int:
    """Numerical rank of the Gram matrix: singular values > tol × largest."""
    if not vs:
        return 0
    a = _stack(vs)
    gram = a.conj().T @ a
    s = np.linalg.svd(gram, compute_uv=False)
    if s[0] <= 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def orthonormal_basis(vs: Sequence[CVec], dim: int, tol: float = DEFAULT_TOL) -> List[CVec]:
    """Orthonormal basis of span(vs)."""
    a = _stack(vs, dim)
    if a.shape[1] == 0:
        return []
    q = sla.orth(a, rcond=tol)
    return [frozen(q[:, i]) for i in range(q.shape[1])]


def orthonormal_complement(vs: Sequence[CVec], dim: int, tol: float = DEFAULT_TOL) -> List[CVec]:
    """Orthonormal basis of span(vs)^⊥ in C^dim; empty input gives a full basis."""
    a = _stack(vs, dim)
    if a.shape[1] == 0:
        return [basis(i, dim) for i in range(dim)]
    ns = sla.null_space(a.conj().T, rcond=tol)
    return [frozen(ns[:, i]) for i in range(ns.shape[1])]


def span_projector(vs: Sequence[CVec], dim: int, tol: float = DEFAULT_TOL) -> CMat:
    """Orthogonal projector onto span(vs)."""
    p = np.zeros((dim, dim), dtype=complex)
    for q in orthonormal_basis(vs, dim, tol):
        p += np.outer(q, np.conj(q))
    return frozen(p)


# ── Hermitian constraint solving ──────────────────────────────────────────────

def hermitian_coordinates(dim: int) -> List[CMat]:
    """
    Real-linear basis of dim×dim Hermitian matrices: the diagonal units,
    then E_kl+E_lk and i(E_kl−E_lk) for k<l. dim² elements.
    """
    out = []
    for k in range(dim):
        m = np.zeros((dim, dim), dtype=complex)
        m[k, k] = 1.0
        out.append(m)
    for k in range(dim):
        for l in range(k + 1, dim):
            re = np.zeros((dim, dim), dtype=complex)
            re[k, l] = re[l, k] = 1.0
            im = np.zeros((dim, dim), dtype=complex)
            im[k, l], im[l, k] = 1j, -1j
            out.extend([re, im])
    return out


def hermitian_solution_space(constraints: Iterable[Tuple[CVec, CVec]], dim: int,
                             tol: float = DEFAULT_TOL) -> List[CMat]:
    """
    Basis (over the reals) of {E Hermitian : ⟨u|E|w⟩ = 0 for every (u, w)}.

    Each complex condition contributes two real rows over the dim² real
    coordinates; the null space is taken from an SVD.
    """
    coords = hermitian_coordinates(dim)
    rows = []
    for u, w in constraints:
        if len(u) != dim or len(w) != dim:
            raise DimensionMismatch(f"constraint vectors must live in dim {dim}")
        vals = np.array([np.vdot(u, h @ w) for h in coords])
        rows.append(vals.real)
        rows.append(vals.imag)

    if not rows:
        return [frozen(h) for h in coords]

    a = np.array(rows)
    scale = max(1.0, float(np.abs(a).max()))
    ns = sla.null_space(a / scale, rcond=tol)
    out = []
    for col in range(ns.shape[1]):
        m = sum(x * h for x, h in zip(ns[:, col], coords))
        out.append(frozen(m))
    return out


def constraint_residual(m: CMat, constraints: Iterable[Tuple[CVec, CVec]]) -> float:
    """Largest |⟨u|M|w⟩| over the constraints (0.0 when there are none)."""
    return max((abs(np.vdot(u, m @ w)) for u, w in constraints), default=0.0)
