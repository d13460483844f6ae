"""
protocol.py
Protocol trees over local measurements and an exact branch simulator.

A tree is a Step (one local measurement, one branch per outcome) or a leaf:
Identified(state), Ambiguous(states) or Dead(states, offending pairs).
Leaf states are 1-based labels.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Tuple, Union

from .errors import InputError, InvariantViolation, ParameterError
from .linalg import DEFAULT_TOL, basis
from .measurement import (
    Measurement, apply, eq12_povm, preserves_orthogonality, projective_split,
    theorem4_measurements,
)
from .states import FamilyParams, StateSet, family_eq2, family_eq11, product_inner

log = logging.getLogger(__name__)


# ── Tree ──────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Identified:
    state: int
    kind = "identified"


@dataclass(frozen=True)
class Ambiguous:
    states: Tuple[int, ...] = ()
    kind = "ambiguous"


@dataclass(frozen=True)
class Dead:
    states: Tuple[int, ...] = ()
    pairs:  Tuple[Tuple[int, int], ...] = ()
    kind = "dead"


@dataclass(frozen=True, eq=False)
class Step:
    measurement: Measurement
    branches:    Tuple["ProtocolNode", ...]
    kind = "step"

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if len(self.branches) != self.measurement.outcomes:
            raise InputError(
                f"step on party {self.measurement.party + 1} has {self.measurement.outcomes} "
                f"outcomes but {len(self.branches)} branches")


ProtocolNode = Union[Identified, Ambiguous, Dead, Step]
Leaf = Union[Identified, Ambiguous, Dead]


def depth(node: ProtocolNode) -> int:
    if isinstance(node, Step):
        return 1 + max(depth(b) for b in node.branches)
    return 0


def leaves(node: ProtocolNode) -> List[Leaf]:
    if isinstance(node, Step):
        return [leaf for b in node.branches for leaf in leaves(b)]
    return [node]


def describe_leaf(leaf: Leaf) -> str:
    if isinstance(leaf, Identified):
        return f"identified {leaf.state}"
    if isinstance(leaf, Ambiguous):
        return "ambiguous {" + ",".join(map(str, leaf.states)) + "}"
    pairs = ",".join(f"({j},{k})" for j, k in leaf.pairs)
    return "dead {" + ",".join(map(str, leaf.states)) + "} " + pairs


# ── Simulation ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PathRecord:
    path:        Tuple[int, ...]
    probability: float
    leaf:        str


@dataclass
class SimulationReport:
    labels:     Tuple[int, ...]
    priors:     Dict[int, float]
    paths:      Dict[int, List[PathRecord]] = field(default_factory=dict)
    success:    Dict[int, float] = field(default_factory=dict)
    false_mass: Dict[int, float] = field(default_factory=dict)
    dead_mass:  Dict[int, float] = field(default_factory=dict)
    violations: List[Tuple[Tuple[int, ...], Tuple[int, int]]] = field(default_factory=list)

    @property
    def overall(self) -> float:
        return sum(self.priors[j] * self.success[j] for j in self.labels)

    def total_probability(self, label: int) -> float:
        return sum(r.probability for r in self.paths[label])

    def success_vector(self) -> List[float]:
        return [self.success[j] for j in self.labels]


def _check_priors(states: StateSet, priors) -> Dict[int, float]:
    if priors is None:
        n = len(states)
        return {j: 1.0 / n for j in states.labels} if n else {}
    if isinstance(priors, dict):
        out = {int(k): float(v) for k, v in priors.items()}
    else:
        out = dict(zip(states.labels, map(float, priors)))
    if set(out) != set(states.labels):
        raise ParameterError("priors must cover every state exactly once")
    if any(v < 0 for v in out.values()) or abs(sum(out.values()) - 1.0) > 1e-9:
        raise ParameterError("priors must be non-negative and sum to 1")
    return out


def simulate(protocol: ProtocolNode, states: StateSet, priors=None) -> SimulationReport:
    """
    Exhaustive evaluation of every branch. Each state's post-measurement
    kets are threaded through measurement.apply with no probability floor,
    so per-state path probabilities sum to one up to rounding.
    """
    report = SimulationReport(labels=states.labels, priors=_check_priors(states, priors))
    for j in states.labels:
        report.paths[j] = []
        report.success[j] = 0.0
        report.false_mass[j] = 0.0
        report.dead_mass[j] = 0.0

    exact = StateSet(states.dims, states.states, states.labels, tol=0.0)
    weights = {j: 1.0 for j in states.labels}
    _walk(protocol, exact, weights, (), report, states.tol)

    for j in states.labels:
        report.paths[j].sort(key=lambda r: r.path)
    return report


def _walk(node: ProtocolNode, live: StateSet, weights: Dict[int, float],
          path: Tuple[int, ...], report: SimulationReport, tol: float):
    if not isinstance(node, Step):
        for j in live.labels:
            w = weights[j]
            report.paths[j].append(PathRecord(path, w, describe_leaf(node)))
            if isinstance(node, Identified):
                if node.state == j:
                    report.success[j] += w
                else:
                    report.false_mass[j] += w
            elif isinstance(node, Dead):
                report.dead_mass[j] += w
        return

    meas = node.measurement
    if not 0 <= meas.party < live.parties or meas.dim != live.dims[meas.party]:
        raise InputError(
            f"step at path {list(path)} measures party {meas.party + 1} in dim {meas.dim}, "
            f"which the state set does not have")
    for outcome, branch in enumerate(node.branches):
        update = apply(live, meas, outcome)
        post = update.post_set
        child = {}
        for lab in post.labels:
            child[lab] = weights[lab] * update.probabilities[live.position(lab)]
        if not isinstance(branch, Dead):
            _record_violations(post, child, path + (outcome,), report, tol)
        _walk(branch, post, child, path + (outcome,), report, tol)


def _record_violations(post: StateSet, weights: Dict[int, float], path, report, tol):
    alive = [j for j, lab in enumerate(post.labels) if weights[lab] > tol]
    for j, k in combinations(alive, 2):
        if abs(product_inner(post.states[j], post.states[k])) > max(tol, 1e-7):
            report.violations.append((path, (post.labels[j], post.labels[k])))


def verify_perfect(report: SimulationReport, tol: float = 1e-9) -> bool:
    return all(abs(report.success[j] - 1.0) <= tol for j in report.labels)


def check_conservation(report: SimulationReport, tol: float = 1e-10):
    for j in report.labels:
        total = report.total_probability(j)
        if abs(total - 1.0) > tol:
            raise InvariantViolation(f"state {j}: path probabilities sum to {total!r}")


# ── Constructed protocols ─────────────────────────────────────────────────────

def theorem4_protocol(params: FamilyParams, case: int, tol: float = DEFAULT_TOL) -> ProtocolNode:
    """
    Party-1 measurement from theorem4_measurements. Outcome M1 names the
    state it isolates (cases 1, 2) or hands {4, 5} to a party-2 split
    (case 3). Outcome M2 stops: ambiguous when the survivors are still
    pairwise orthogonal, dead (with the broken pairs) otherwise.
    """
    states = family_eq2(params, tol)
    meas = theorem4_measurements(params, case, tol)

    if case == 1:
        first = Identified(3)
    elif case == 2:
        first = Identified(4)
    else:
        split = projective_split(1, basis(0, states.dims[1]), tol)
        first = Step(split, (Identified(4), Identified(5)))

    rest = apply(states, meas, 1).post_set
    check = preserves_orthogonality(states, meas, 1)
    if check.preserved:
        second = Ambiguous(rest.labels)
    else:
        second = Dead(rest.labels, check.offending)
    return Step(meas, (first, second))


def eq11_protocol(tol: float = DEFAULT_TOL) -> ProtocolNode:
    """The four-outcome qutrit POVM on party 3, then a two-party finish per outcome."""
    from .synthesis import Perfect, synthesize

    states = family_eq11(tol)
    meas = eq12_povm()
    branches = []
    for outcome in range(meas.outcomes):
        post = apply(states, meas, outcome).post_set
        verdict = synthesize(post)
        if not isinstance(verdict, Perfect):
            raise InvariantViolation(
                f"outcome {meas.labels[outcome]} left states {list(post.labels)} undistinguished")
        branches.append(verdict.protocol)
    return Step(meas, tuple(branches))
