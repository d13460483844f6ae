"""
measurement.py
Local POVMs: the measurement gadgets the discrimination proofs use, their
application to state sets, and orthogonality-preservation checks.

Parties are 0-based in this API.
"""
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import nnls
from scipy import linalg as sla

from .errors import ParameterError
from .linalg import (
    DEFAULT_TOL, CMat, CVec, basis, frozen, identity, inner, is_normalized,
    norm, orthonormal_basis, projector, psd_residual, psd_sqrt, span_projector,
)
from .states import FamilyParams, StateSet, family_eq1_locals, product_inner

log = logging.getLogger(__name__)


# ── Types ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Measurement:
    party:  int
    kraus:  Tuple[CMat, ...]
    labels: Tuple[str, ...] = ()
    tol:    float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "kraus", tuple(frozen(k) for k in self.kraus))
        if not self.kraus:
            raise ParameterError("a measurement needs at least one outcome")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"M{i + 1}" for i in range(len(self.kraus))))
        if len(self.labels) != len(self.kraus):
            raise ParameterError("one label per Kraus operator is required")
        dim = self.kraus[0].shape[0]
        if any(k.shape != (dim, dim) for k in self.kraus):
            raise ParameterError("Kraus operators must be square and of equal size")
        residual = self.completeness_residual()
        if residual > self.tol:
            raise ParameterError(f"POVM is not complete: ‖Σ M†M − I‖ = {residual:.3g}")
        worst = max(psd_residual(e, self.tol) for e in self.elements)
        if worst > self.tol:
            raise ParameterError(f"POVM element is not PSD (λ_min = {-worst:.3g})")

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    @property
    def outcomes(self) -> int:
        return len(self.kraus)

    @property
    def elements(self) -> List[CMat]:
        return [k.conj().T @ k for k in self.kraus]

    def completeness_residual(self) -> float:
        total = sum(self.elements)
        return float(np.linalg.norm(total - np.eye(self.dim), ord=2))

    def is_identity(self) -> bool:
        return self.outcomes == 1 and np.allclose(self.kraus[0], np.eye(self.dim), atol=self.tol)


@dataclass(frozen=True)
class OutcomeUpdate:
    """Outcome probabilities per input position and the surviving post-measurement set."""
    probabilities: Tuple[float, ...]
    post_set:      StateSet
    dropped:       Tuple[int, ...]


@dataclass(frozen=True)
class OrthogonalityCheck:
    preserved: bool
    offending: Tuple[Tuple[int, int], ...] = ()


def completeness_check(meas: Measurement) -> float:
    return meas.completeness_residual()


def _require_unit(v: CVec, tol: float, name: str = "α"):
    if norm(v) <= tol:
        raise ParameterError(f"{name} is the zero vector")
    if not is_normalized(v, tol):
        raise ParameterError(f"{name} must be normalized")


# ── Gadgets ───────────────────────────────────────────────────────────────────

def identity_measurement(party: int, dim: int) -> Measurement:
    return Measurement(party, (identity(dim),), ("I",))


def projective_split(party: int, alpha: CVec, tol: float = DEFAULT_TOL) -> Measurement:
    """{|α⟩⟨α|, I − |α⟩⟨α|}."""
    _require_unit(alpha, tol)
    p = projector(alpha, tol)
    return Measurement(party, (p, np.eye(len(alpha)) - p), ("P", "I-P"), tol)


def pair_split(party: int, alpha: CVec, beta: CVec, tol: float = DEFAULT_TOL) -> Measurement:
    """{|α⟩⟨α|, |β⟩⟨β|, (I − |α⟩⟨α| − |β⟩⟨β|)^½} for orthogonal α, β."""
    _require_unit(alpha, tol)
    _require_unit(beta, tol, "β")
    if abs(inner(alpha, beta)) > tol:
        raise ParameterError("pair_split needs orthogonal α and β; use span_split instead")
    pa, pb = projector(alpha, tol), projector(beta, tol)
    rest = psd_sqrt(np.eye(len(alpha)) - pa - pb)
    return Measurement(party, (pa, pb, rest), ("Pα", "Pβ", "rest"), tol)


def span_split(party: int, vs: Sequence[CVec], tol: float = DEFAULT_TOL) -> Measurement:
    """{P_span(vs), I − P_span(vs)}."""
    if not vs:
        raise ParameterError("span_split needs at least one vector")
    dim = len(vs[0])
    p = span_projector(vs, dim, tol)
    return Measurement(party, (p, np.eye(dim) - p), ("Pspan", "I-Pspan"), tol)


def complete_local_discrimination(states: StateSet, party: int) -> Measurement:
    """One rank-1 projector per state (their locals must be pairwise orthogonal) plus a remainder."""
    tol = states.tol
    kets = states.locals_of(party)
    for j, k in combinations(range(len(kets)), 2):
        if abs(inner(kets[j], kets[k])) > tol:
            raise ParameterError(
                f"states {states.labels[j]} and {states.labels[k]} are not orthogonal on party {party + 1}")
    dim = states.dims[party]
    kraus = [projector(v / norm(v), tol) for v in kets]
    labels = [f"state {lab}" for lab in states.labels]
    rest = np.eye(dim) - sum(kraus) if kraus else np.eye(dim)
    if np.linalg.norm(rest) > tol:
        kraus.append(rest)
        labels.append("rest")
    return Measurement(party, tuple(kraus), tuple(labels), tol)


def eq12_povm(party: int = 2) -> Measurement:
    """Four rank-1 operators (√3/6)|x⟩⟨x|, x = |0⟩±|1⟩±|2⟩, on a qutrit."""
    signs = [(1, 1, 1), (1, -1, 1), (1, 1, -1), (1, -1, -1)]
    kraus = []
    for s in signs:
        x = np.array(s, dtype=complex)
        kraus.append(math.sqrt(3) / 6 * np.outer(x, x.conj()))
    return Measurement(party, tuple(kraus), ("Π1", "Π2", "Π3", "Π4"), 1e-12)


def theorem4_measurements(params: FamilyParams, case: int, tol: float = DEFAULT_TOL) -> Measurement:
    """
    Party-1 measurement for the probabilistic protocols on the (5-4) family:
    cases 1 and 2 use {|3⟩⟨3|, I − |3⟩⟨3|}; case 3 uses the projector onto
    (conj(d)|1⟩ − conj(b)|3⟩)/√(|d|²+|b|²) and its complement.
    """
    p = params
    if p.h != 0:
        raise ParameterError("theorem-4 measurements need h = 0")
    if case == 1:
        if not (p.g == 0 and p.d != 0):
            raise ParameterError("case 1 needs g = 0 and d ≠ 0")
    elif case == 2:
        if not (p.d == 0 and p.g != 0):
            raise ParameterError("case 2 needs d = 0 and g ≠ 0")
    elif case == 3:
        if not (p.d != 0 and p.g != 0):
            raise ParameterError("case 3 needs d ≠ 0 and g ≠ 0")
    else:
        raise ParameterError(f"unknown theorem-4 case {case}")

    dim = len(family_eq1_locals(p.a, p.b, p.d, p.g, p.h)[0])
    if case in (1, 2):
        m1 = projector(basis(3, dim), tol)
    else:
        v = np.zeros(dim, dtype=complex)
        v[1], v[3] = np.conj(p.d), -np.conj(p.b)
        m1 = projector(v / np.linalg.norm(v), tol)
    return Measurement(0, (m1, np.eye(dim) - m1), ("M1", "M2"), tol)


def theorem4_success(params: FamilyParams, case: int) -> Tuple[Dict[int, float], float]:
    """Closed-form identification probabilities per state label and the uniform-prior total."""
    p = params
    b2, c2, d2, e2, g2 = abs(p.b) ** 2, abs(p.c) ** 2, abs(p.d) ** 2, abs(p.e) ** 2, abs(p.g) ** 2
    if case == 1:
        per = {3: d2 / (1 + b2 + c2 + d2)}
    elif case == 2:
        per = {4: g2 / (1 + e2 + g2)}
    elif case == 3:
        per = {
            4: abs(p.d - p.g * p.b) ** 2 / ((d2 + b2) * (1 + e2 + g2)),
            5: d2 / (d2 + b2),
        }
    else:
        raise ParameterError(f"unknown theorem-4 case {case}")
    return per, sum(per.values()) / 5


# ── Orthogonality-preserving cover measurement ────────────────────────────────

def _minimal_vertex_covers(vertices: Sequence[int], edges: Sequence[Tuple[int, int]]) -> List[Tuple[int, ...]]:
    covers: List[Tuple[int, ...]] = []
    for size in range(1, len(vertices) + 1):
        for c in combinations(vertices, size):
            cs = set(c)
            if any(set(prev) <= cs for prev in covers):
                continue
            if all(j in cs or k in cs for j, k in edges):
                covers.append(c)
    return covers


def cover_povm(states: StateSet, party: int) -> Optional[Measurement]:
    """
    POVM built from subspaces W_C = span(locals) ∩ span{a_k : k ∈ C}^⊥, one
    per minimal vertex cover C of the pairs orthogonal only on this party.
    Every element annihilates the locals of its cover, so every outcome
    keeps those pairs orthogonal and rules out the states in C. Weights
    come from non-negative least squares on Σ w_C P_{W_C} = P_span.
    """
    from .graph import compute_graph

    tol = states.tol
    g = compute_graph(states)
    edges = g.singleton_edges(party)
    if not edges:
        return None

    dim = states.dims[party]
    kets = states.locals_of(party)
    span = orthonormal_basis(kets, dim, tol)
    q = np.column_stack(span)
    p_span = q @ q.conj().T

    covers, projs = [], []
    for cover in _minimal_vertex_covers(range(len(states)), edges):
        rows = np.array([kets[k].conj() @ q for k in cover])
        ns = sla.null_space(rows, rcond=tol)
        if ns.shape[1] == 0:
            continue
        w = q @ ns
        covers.append(cover)
        projs.append(w @ w.conj().T)
    if not projs:
        return None

    a = np.column_stack([np.concatenate([pw.real.ravel(), pw.imag.ravel()]) for pw in projs])
    b = np.concatenate([p_span.real.ravel(), p_span.imag.ravel()])
    weights, residual = nnls(a, b)
    if residual > tol:
        log.debug("cover_povm: party %d has no exact cover decomposition (residual %.2e)",
                  party + 1, residual)
        return None

    kraus, labels = [], []
    for cover, pw, w in zip(covers, projs, weights):
        if w > tol:
            kraus.append(psd_sqrt(w * pw))
            labels.append("cover{" + ",".join(str(states.labels[k]) for k in cover) + "}")
    rest = np.eye(dim) - p_span
    if np.linalg.norm(rest) > tol:
        kraus.append(rest)
        labels.append("rest")
    if len(kraus) < 2:
        return None
    try:
        return Measurement(party, tuple(kraus), tuple(labels), tol)
    except ParameterError as exc:
        log.debug("cover_povm: party %d cover rejected (%s)", party + 1, exc)
        return None


# ── Application ───────────────────────────────────────────────────────────────

def outcome_probabilities(states: StateSet, meas: Measurement, outcome: int) -> List[float]:
    e = meas.elements[outcome]
    return [float(np.real(np.vdot(a, e @ a))) for a in states.locals_of(meas.party)]


def apply(states: StateSet, meas: Measurement, outcome: int) -> OutcomeUpdate:
    """
    Outcome probabilities p_j = ⟨a_j|E|a_j⟩ and the post-measurement set
    with the measured party's kets replaced by M a_j / √p_j; states with
    p_j ≤ tol are dropped.
    """
    if meas.dim != states.dims[meas.party]:
        raise ParameterError(
            f"measurement acts on dim {meas.dim}, party {meas.party + 1} has dim {states.dims[meas.party]}")
    if not 0 <= outcome < meas.outcomes:
        raise ParameterError(f"outcome {outcome} out of range")

    m = meas.kraus[outcome]
    probs = outcome_probabilities(states, meas, outcome)
    kept, labels, dropped = [], [], []
    for j, (s, pj) in enumerate(zip(states.states, probs)):
        if pj <= states.tol:
            dropped.append(states.labels[j])
            continue
        post = m @ s.locals[meas.party] / math.sqrt(pj)
        post = post / np.linalg.norm(post)
        kept.append(s.with_local(meas.party, post))
        labels.append(states.labels[j])
    return OutcomeUpdate(
        probabilities=tuple(max(0.0, pj) for pj in probs),
        post_set=states.replace(kept, labels),
        dropped=tuple(dropped),
    )


def preserves_orthogonality(states: StateSet, meas: Measurement, outcome: int) -> OrthogonalityCheck:
    """Whether the surviving post-measurement states stay pairwise orthogonal."""
    post = apply(states, meas, outcome).post_set
    offending = []
    for j, k in combinations(range(len(post)), 2):
        if abs(product_inner(post.states[j], post.states[k])) > states.tol:
            offending.append((post.labels[j], post.labels[k]))
    return OrthogonalityCheck(not offending, tuple(offending))
