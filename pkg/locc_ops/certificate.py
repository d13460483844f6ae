"""
certificate.py
Orthogonality-preserving measurement analysis: per-party constraints on a
POVM element, the Hermitian solution space, and whether anything in it can
tell the states apart.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from .errors import InvariantViolation
from .graph import compute_graph
from .linalg import (
    CMat, constraint_residual, hermitian_solution_space, psd_residual, psd_sqrt,
    span_projector,
)
from .measurement import Measurement, preserves_orthogonality
from .states import StateSet

log = logging.getLogger(__name__)


# ── Types ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class OpmSolutionSpace:
    party:            int
    basis:            Tuple[CMat, ...]
    constraint_pairs: Tuple[Tuple[int, int], ...]
    span_projector:   CMat

    @property
    def dimension(self) -> int:
        return len(self.basis)


class Triviality(str, Enum):
    PROPORTIONAL = "ProportionalIdentityOnSpan"
    EQUAL_PROBABILITIES = "EqualProbabilitiesOnly"
    INFORMATIVE = "Informative"


@dataclass(frozen=True, eq=False)
class TrivialityVerdict:
    kind:     Triviality
    residual: float
    witness:  Optional[CMat] = None
    pair:     Optional[Tuple[int, int]] = None

    @property
    def trivial(self) -> bool:
        return self.kind == Triviality.PROPORTIONAL


@dataclass(frozen=True, eq=False)
class PartyEvidence:
    space:   OpmSolutionSpace
    verdict: TrivialityVerdict


@dataclass(frozen=True, eq=False)
class Certificate:
    """Every party's orthogonality-preserving elements act as scalars on the span of its kets."""
    parties: Tuple[PartyEvidence, ...]
    labels:  Tuple[int, ...]

    def max_constraint_residual(self, states: StateSet) -> float:
        worst = 0.0
        for ev in self.parties:
            pairs = _constraint_vectors(states, ev.space.party, ev.space.constraint_pairs)
            for b in ev.space.basis:
                worst = max(worst, constraint_residual(b, pairs))
        return worst

    def recheck(self, states: StateSet) -> float:
        """Re-verify constraints and proportionality; returns the worst residual."""
        worst = self.max_constraint_residual(states)
        for ev in self.parties:
            for b in ev.space.basis:
                worst = max(worst, _proportionality_residual(b, ev.space.span_projector))
        if worst > states.tol * 10:
            raise InvariantViolation(f"certificate fails its re-check (residual {worst:.3g})")
        return worst


# ── Constraints ───────────────────────────────────────────────────────────────

def constraint_pairs(states: StateSet, party: int) -> List[Tuple[int, int]]:
    """1-based label pairs orthogonal on this party and on no other."""
    g = compute_graph(states)
    return [(states.labels[j], states.labels[k]) for j, k in g.singleton_edges(party)]


def _constraint_vectors(states: StateSet, party: int, pairs):
    return [(states.local(states.position(j), party), states.local(states.position(k), party))
            for j, k in pairs]


def opm_space(states: StateSet, party: int) -> OpmSolutionSpace:
    pairs = constraint_pairs(states, party)
    dim = states.dims[party]
    basis = hermitian_solution_space(_constraint_vectors(states, party, pairs), dim, states.tol)
    log.debug("opm_space: party %d, %d constraint pair(s), solution dimension %d",
              party + 1, len(pairs), len(basis))
    return OpmSolutionSpace(
        party=party,
        basis=tuple(basis),
        constraint_pairs=tuple(pairs),
        span_projector=span_projector(states.locals_of(party), dim, states.tol),
    )


# ── Triviality ────────────────────────────────────────────────────────────────

def _proportionality_residual(b: CMat, p: CMat) -> float:
    pbp = p @ b @ p
    rank = float(np.real(np.trace(p)))
    if rank == 0:
        return 0.0
    scale = np.real(np.trace(pbp)) / rank
    return float(np.linalg.norm(pbp - scale * p, ord=2))


def _diagonals(b: CMat, kets) -> List[float]:
    return [float(np.real(np.vdot(a, b @ a))) for a in kets]


def triviality(space: OpmSolutionSpace, states: StateSet, party: int) -> TrivialityVerdict:
    """
    ProportionalIdentityOnSpan when P·B·P ∝ P for every basis element B;
    EqualProbabilitiesOnly when every B gives equal ⟨a_j|B|a_j⟩; otherwise
    Informative with the two-outcome witness E = ½(I + εΔ), ε = 0.5/(1+‖Δ‖).
    """
    tol = states.tol
    p = space.span_projector
    kets = states.locals_of(party)

    prop = max((_proportionality_residual(b, p) / max(1.0, np.linalg.norm(b, ord=2))
                for b in space.basis), default=0.0)
    if prop <= tol:
        return TrivialityVerdict(Triviality.PROPORTIONAL, prop)

    spread, delta = 0.0, None
    for b in space.basis:
        diag = _diagonals(b, kets)
        s = (max(diag) - min(diag)) / max(1.0, np.linalg.norm(b, ord=2))
        if s > spread:
            spread, delta = s, b
    if spread <= tol:
        return TrivialityVerdict(Triviality.EQUAL_PROBABILITIES, spread)

    delta = (delta + delta.conj().T) / 2
    eps = 0.5 / (1.0 + np.linalg.norm(delta, ord=2))
    witness = 0.5 * (np.eye(len(delta)) + eps * delta)
    diag = _diagonals(witness, kets)
    lo, hi = int(np.argmin(diag)), int(np.argmax(diag))
    pair = tuple(sorted((states.labels[lo], states.labels[hi])))
    return TrivialityVerdict(Triviality.INFORMATIVE, spread, witness, pair)


def witness_measurement(verdict: TrivialityVerdict, party: int) -> Measurement:
    """The witness and its complement as a two-outcome POVM."""
    e = verdict.witness
    return Measurement(party, (psd_sqrt(e), psd_sqrt(np.eye(len(e)) - e)), ("E", "I-E"))


def check_witness(verdict: TrivialityVerdict, states: StateSet, party: int) -> bool:
    """Witness is a valid orthogonality-preserving POVM with unequal outcome probabilities."""
    if verdict.witness is None:
        return False
    e = verdict.witness
    if psd_residual(e, states.tol) > states.tol:
        return False
    meas = witness_measurement(verdict, party)
    if not all(preserves_orthogonality(states, meas, o).preserved for o in range(2)):
        return False
    diag = _diagonals(e, states.locals_of(party))
    return max(diag) - min(diag) > states.tol


# ── Certification ─────────────────────────────────────────────────────────────

def party_evidence(states: StateSet) -> List[PartyEvidence]:
    out = []
    for party in range(states.parties):
        space = opm_space(states, party)
        out.append(PartyEvidence(space, triviality(space, states, party)))
    return out


def certify_indistinguishable(states: StateSet) -> Optional[Certificate]:
    evidence = party_evidence(states)
    for ev in evidence:
        log.debug("certify: party %d → %s", ev.space.party + 1, ev.verdict.kind.value)
    if not all(ev.verdict.trivial for ev in evidence):
        return None
    return Certificate(tuple(evidence), states.labels)
