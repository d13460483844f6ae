"""
synthesis.py
Turn a state set into a verdict: a perfect LOCC protocol, a probabilistic
one, a certificate of indistinguishability, or Unknown.

Search order at every node:
  R1  a party on which all survivors are pairwise orthogonal
  R2  an isolating state (ties by party, then state)
  R3  a pair block on one party
  R4  projective / span splits from candidate_projectors
  R4b the cover POVM of a party
Each accepted measurement must shrink every outcome's survivor set and
keep every survivor pair orthogonal. When no perfect protocol exists the
root falls back to the certificate, then to rank-revealing projectors (R5).
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .certificate import Certificate, PartyEvidence, Triviality, certify_indistinguishable, party_evidence
from .errors import InputError, InvariantViolation, ParameterError
from .graph import compute_graph, is_matching13, isolating_states, pair_blocks
from .linalg import CVec, inner, norm, span_projector
from .measurement import (
    Measurement, apply, complete_local_discrimination, cover_povm, pair_split,
    preserves_orthogonality, projective_split, span_split,
)
from .protocol import (
    Ambiguous, Dead, Identified, ProtocolNode, SimulationReport, Step,
    check_conservation, simulate, verify_perfect,
)
from .states import StateSet, local_ranks, validate

log = logging.getLogger(__name__)

DEFAULT_DEPTH = 6


# ── Verdicts ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Perfect:
    protocol: ProtocolNode
    report:   SimulationReport
    name = "Perfect"


@dataclass(frozen=True, eq=False)
class Probabilistic:
    protocol: ProtocolNode
    report:   SimulationReport
    name = "Probabilistic"

    @property
    def success(self) -> Dict[int, float]:
        return dict(self.report.success)

    @property
    def overall(self) -> float:
        return self.report.overall


@dataclass(frozen=True, eq=False)
class IndistinguishableCertified:
    certificate: Certificate
    name = "IndistinguishableCertified"


@dataclass(frozen=True, eq=False)
class Unknown:
    reason:   str
    findings: Tuple[str, ...] = ()
    evidence: Tuple[PartyEvidence, ...] = ()
    name = "Unknown"


Verdict = Union[Perfect, Probabilistic, IndistinguishableCertified, Unknown]


# ── Candidates ────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Candidate:
    """One normalized vector (projective split) or two spanning vectors (span split)."""
    party:   int
    vectors: Tuple[CVec, ...]
    source:  str

    def measurement(self, tol: float) -> Measurement:
        if len(self.vectors) == 1:
            return projective_split(self.party, self.vectors[0], tol)
        return span_split(self.party, list(self.vectors), tol)


def _exclusive_component(kets: List[CVec], j: int, dim: int, tol: float) -> Optional[CVec]:
    """Normalized part of kets[j] orthogonal to every other ket, if any."""
    others = [v for k, v in enumerate(kets) if k != j]
    p = span_projector(others, dim, tol) if others else np.zeros((dim, dim))
    r = kets[j] - p @ kets[j]
    n = norm(r)
    return r / n if n > np.sqrt(tol) else None


def candidate_projectors(states: StateSet, party: int, limit: int = None) -> List[Candidate]:
    """
    Each state's local ket, each state's exclusive component (its part
    orthogonal to the other kets), and the two-dimensional span of every
    pair; deduplicated up to phase, in that order.
    """
    tol = states.tol
    dim = states.dims[party]
    kets = states.locals_of(party)
    raw: List[Candidate] = []
    for j, lab in enumerate(states.labels):
        raw.append(Candidate(party, (kets[j],), f"local {lab}"))
    for j, lab in enumerate(states.labels):
        v = _exclusive_component(kets, j, dim, tol)
        if v is not None:
            raw.append(Candidate(party, (v,), f"exclusive {lab}"))
    for j, k in combinations(range(len(states)), 2):
        if abs(abs(inner(kets[j], kets[k])) - 1.0) > tol:
            raw.append(Candidate(party, (kets[j], kets[k]),
                                 f"span {states.labels[j]},{states.labels[k]}"))

    out: List[Candidate] = []
    seen: List[np.ndarray] = []
    for cand in raw:
        p = span_projector(list(cand.vectors), dim, tol)
        if np.linalg.matrix_rank(p, tol=1e-6) >= dim:
            continue
        if any(np.linalg.norm(p - q) <= 1e-7 for q in seen):
            continue
        seen.append(p)
        out.append(cand)
        if limit is not None and len(out) >= limit:
            break
    return out


# ── Search ────────────────────────────────────────────────────────────────────

def matching_blocked(states: StateSet) -> bool:
    """Four tripartite states on three perfect matchings with every local rank 2."""
    if len(states) != 4 or states.parties != 3:
        return False
    return is_matching13(compute_graph(states)) and all(r == 2 for r in local_ranks(states))


class _Search:
    def __init__(self, tol: float, max_candidates: Optional[int] = None):
        self.tol = tol
        self.max_candidates = max_candidates
        self.cache: Dict[bytes, Tuple[int, Optional[ProtocolNode]]] = {}
        self.visited = 0

    def _key(self, s: StateSet) -> bytes:
        parts = [np.array(s.labels, dtype=np.int64).tobytes()]
        for st in s.states:
            for v in st.locals:
                # phase-free fingerprint of the ket
                parts.append(np.round(np.outer(v, v.conj()), 8).tobytes())
        return b"|".join(parts)

    # first-match perfect search

    def perfect(self, s: StateSet, depth: int) -> Optional[ProtocolNode]:
        if len(s) == 0:
            return Ambiguous(())
        if len(s) == 1:
            return Identified(s.labels[0])
        if depth <= 0:
            return None
        key = self._key(s)
        hit = self.cache.get(key)
        if hit is not None:
            seen_depth, node = hit
            if node is not None or seen_depth >= depth:
                return node
        self.visited += 1
        node = self._perfect(s, depth)
        self.cache[key] = (depth, node)
        return node

    def _perfect(self, s: StateSet, depth: int) -> Optional[ProtocolNode]:
        if matching_blocked(s):
            log.debug("rule=base party=- survivors=%s matching structure with local ranks 2", list(s.labels))
            return None
        g = compute_graph(s)

        for p in range(s.parties):
            if len(g.edges(p)) == len(s) * (len(s) - 1) // 2:
                log.debug("rule=R1 party=%d survivors=%s", p + 1, list(s.labels))
                node = self._split(s, complete_local_discrimination(s, p), depth)
                if node is not None:
                    return node

        for p, u in isolating_states(g):
            a = s.local(u, p)
            log.debug("rule=R2 party=%d state=%d survivors=%s", p + 1, s.labels[u], list(s.labels))
            node = self._split(s, projective_split(p, a / norm(a), self.tol), depth)
            if node is not None:
                return node

        for p, (u, v) in pair_blocks(g):
            a, b = s.local(u, p), s.local(v, p)
            if abs(inner(a, b)) <= self.tol:
                meas = pair_split(p, a, b, self.tol)
            else:
                meas = span_split(p, [a, b], self.tol)
            log.debug("rule=R3 party=%d pair=(%d,%d) survivors=%s",
                      p + 1, s.labels[u], s.labels[v], list(s.labels))
            node = self._split(s, meas, depth)
            if node is not None:
                return node

        for p in range(s.parties):
            for cand in candidate_projectors(s, p, self.max_candidates):
                node = self._split(s, cand.measurement(self.tol), depth)
                if node is not None:
                    log.debug("rule=R4 party=%d candidate=%s survivors=%s",
                              p + 1, cand.source, list(s.labels))
                    return node

        for p in range(s.parties):
            meas = cover_povm(s, p)
            if meas is None:
                continue
            node = self._split(s, meas, depth)
            if node is not None:
                log.debug("rule=R4b party=%d outcomes=%s survivors=%s",
                          p + 1, list(meas.labels), list(s.labels))
                return node
        return None

    def _split(self, s: StateSet, meas: Measurement, depth: int) -> Optional[ProtocolNode]:
        posts = []
        for o in range(meas.outcomes):
            post = apply(s, meas, o).post_set
            if len(post) >= len(s):
                return None
            if not preserves_orthogonality(s, meas, o).preserved:
                return None
            posts.append(post)
        branches = []
        for post in posts:
            sub = self.perfect(post, depth - 1)
            if sub is None:
                return None
            branches.append(sub)
        return Step(meas, tuple(branches))

    # probabilistic fallback

    def best(self, s: StateSet, depth: int) -> ProtocolNode:
        """Perfect protocol if one is found, otherwise the best rank-revealing tree."""
        node = self.perfect(s, depth)
        if node is not None:
            return node
        if depth <= 0 or certify_indistinguishable(s) is not None:
            return Ambiguous(tuple(s.labels))
        options = self.rank_revealing(s, depth)
        return options[0][1] if options else Ambiguous(tuple(s.labels))

    def rank_revealing(self, s: StateSet, depth: int) -> List[Tuple[float, ProtocolNode]]:
        """
        One option per (party, state) whose local ket has a component
        orthogonal to every other ket: project onto it, identify the state
        on the first outcome, continue (or stop dead) on the second. Sorted
        by simulated overall success, ties kept in (party, state) order.
        """
        options = []
        for p in range(s.parties):
            kets = s.locals_of(p)
            for j, lab in enumerate(s.labels):
                v = _exclusive_component(kets, j, s.dims[p], self.tol)
                if v is None:
                    continue
                meas = projective_split(p, v, self.tol)
                rest = apply(s, meas, 1).post_set
                check = preserves_orthogonality(s, meas, 1)
                if check.preserved:
                    second = self.best(rest, depth - 1)
                else:
                    second = Dead(tuple(rest.labels), check.offending)
                tree = Step(meas, (Identified(lab), second))
                score = simulate(tree, s).overall
                log.debug("rule=R5 party=%d state=%d overall=%.6g", p + 1, lab, score)
                options.append((score, tree))
        options.sort(key=lambda t: -round(t[0], 12))
        return options


# ── Entry points ──────────────────────────────────────────────────────────────

def base_case(states: StateSet, max_candidates: Optional[int] = None) -> Optional[ProtocolNode]:
    """Exhaustive search for sets of at most four states; None for the blocked matching case."""
    if len(states) > 4:
        raise ParameterError("base_case handles at most four states")
    if matching_blocked(states):
        return None
    return _Search(states.tol, max_candidates).perfect(states, len(states) + 2)


def _resimulate(protocol: ProtocolNode, states: StateSet) -> SimulationReport:
    report = simulate(protocol, states)
    check_conservation(report)
    if report.violations:
        path, pair = report.violations[0]
        raise InvariantViolation(f"pair {pair} lost orthogonality at path {list(path)}")
    bad = [j for j in report.labels if report.false_mass[j] > states.tol]
    if bad:
        raise InvariantViolation(f"states {bad} reach a leaf that names another state")
    return report


def synthesize(states: StateSet, depth_limit: int = DEFAULT_DEPTH,
               max_candidates: Optional[int] = 64) -> Verdict:
    report = validate(states)
    if not report.orthogonal:
        raise InputError(f"states are not pairwise orthogonal: {list(report.non_orthogonal_pairs)}")
    if depth_limit < 1:
        raise ParameterError("depth_limit must be at least 1")

    search = _Search(states.tol, max_candidates)
    protocol = search.perfect(states, depth_limit)
    log.debug("synthesize: %d node(s) searched", search.visited)
    if protocol is not None:
        sim = _resimulate(protocol, states)
        if not verify_perfect(sim):
            raise InvariantViolation(f"synthesized protocol re-simulates to {sim.success_vector()}")
        return Perfect(protocol, sim)

    evidence = party_evidence(states)
    if all(ev.verdict.trivial for ev in evidence):
        cert = Certificate(tuple(evidence), states.labels)
        cert.recheck(states)
        return IndistinguishableCertified(cert)

    options = search.rank_revealing(states, depth_limit)
    if options and options[0][0] > states.tol:
        tree = options[0][1]
        sim = _resimulate(tree, states)
        if abs(sim.overall - options[0][0]) > 1e-9:
            raise InvariantViolation("probabilistic protocol re-simulates to a different success")
        return Probabilistic(tree, sim)

    findings = tuple(f"party {ev.space.party + 1}: {ev.verdict.kind.value}" for ev in evidence)
    if any(ev.verdict.kind == Triviality.INFORMATIVE for ev in evidence):
        reason = "no protocol found within the depth limit"
    else:
        reason = "no orthogonality-preserving measurement is informative, but not every party is provably trivial"
    return Unknown(reason, findings, tuple(evidence))
