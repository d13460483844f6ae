"""
states.py
Product states, state sets, and constructors for the state families the
distinguishability results are stated for.

State labels are 1-based everywhere a user can see them; positions inside
a StateSet are 0-based.
"""
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, GenerationError, ParameterError
from .linalg import (
    DEFAULT_TOL, CVec, basis, frozen, inner, is_normalized, ket, random_unit, rank_of,
    span_projector,
)

log = logging.getLogger(__name__)

SQ2 = math.sqrt(2.0)
SQ3 = math.sqrt(3.0)


# ── Types ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class ProductState:
    """⊗_i |φ_i⟩, one normalized local ket per party."""
    locals: Tuple[CVec, ...]

    @classmethod
    def of(cls, *kets: Sequence[complex]) -> "ProductState":
        return cls(tuple(frozen(k) for k in kets))

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(len(v) for v in self.locals)

    def local(self, party: int) -> CVec:
        return self.locals[party]

    def with_local(self, party: int, v: CVec) -> "ProductState":
        locs = list(self.locals)
        locs[party] = frozen(v)
        return ProductState(tuple(locs))


@dataclass(frozen=True, eq=False)
class StateSet:
    dims:   Tuple[int, ...]
    states: Tuple[ProductState, ...]
    labels: Tuple[int, ...] = ()
    tol:    float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "states", tuple(self.states))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, len(self.states) + 1)))
        else:
            object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if len(self.labels) != len(self.states):
            raise ParameterError("one label per state is required")
        if len(set(self.labels)) != len(self.labels):
            raise ParameterError("state labels must be distinct")
        for j, s in enumerate(self.states):
            if s.dims != self.dims:
                raise DimensionMismatch(
                    f"state {self.labels[j]} has dims {s.dims}, set has {self.dims}")
            for i, v in enumerate(s.locals):
                if not is_normalized(v, max(self.tol, 1e-12)):
                    raise ParameterError(
                        f"state {self.labels[j]} party {i + 1} local ket is not normalized")

    @property
    def parties(self) -> int:
        return len(self.dims)

    def __len__(self) -> int:
        return len(self.states)

    def local(self, j: int, party: int) -> CVec:
        return self.states[j].locals[party]

    def locals_of(self, party: int) -> List[CVec]:
        return [s.locals[party] for s in self.states]

    def position(self, label: int) -> int:
        return self.labels.index(label)

    def replace(self, states: Sequence[ProductState], labels: Sequence[int]) -> "StateSet":
        return StateSet(self.dims, tuple(states), tuple(labels), self.tol)

    def permuted(self, state_order: Sequence[int] = None,
                 party_order: Sequence[int] = None) -> "StateSet":
        """
        Relabelled copy: state_order lists old positions in their new order
        (labels become 1..n), party_order lists old parties in their new order.
        """
        state_order = list(state_order if state_order is not None else range(len(self)))
        party_order = list(party_order if party_order is not None else range(self.parties))
        states = [ProductState(tuple(self.states[j].locals[p] for p in party_order))
                  for j in state_order]
        dims = tuple(self.dims[p] for p in party_order)
        return StateSet(dims, tuple(states), tuple(range(1, len(states) + 1)), self.tol)


@dataclass(frozen=True)
class ValidationReport:
    orthogonal:            bool
    unique_party_per_pair: bool
    non_orthogonal_pairs:  Tuple[Tuple[int, int], ...] = ()
    multi_party_pairs:     Tuple[Tuple[int, int], ...] = ()


@dataclass(frozen=True)
class FamilyParams:
    """
    Parameters of the five-state (5-4) family. Primed values are the
    second party's copies; c, e (and primes) are derived.
    """
    a:   complex = 1
    b:   complex = 1
    d:   complex = 0
    g:   complex = 0
    h:   complex = 0
    a_p: complex = 1
    b_p: complex = 1
    d_p: complex = 0
    g_p: complex = 0
    h_p: complex = 0

    def __post_init__(self):
        for name in ("a", "b", "a_p", "b_p"):
            if getattr(self, name) == 0:
                raise ParameterError(f"family parameter {name} must be nonzero")
        if abs(self.e) == 0:
            raise ParameterError("derived e = a(conj(b) + conj(d)·g) must be nonzero")
        if abs(self.e_p) == 0:
            raise ParameterError("derived e' = a'(conj(b') + conj(d')·g') must be nonzero")

    @property
    def c(self) -> complex:
        return -1 / np.conj(self.a)

    @property
    def e(self) -> complex:
        return self.a * (np.conj(self.b) + np.conj(self.d) * self.g)

    @property
    def c_p(self) -> complex:
        return -1 / np.conj(self.a_p)

    @property
    def e_p(self) -> complex:
        return self.a_p * (np.conj(self.b_p) + np.conj(self.d_p) * self.g_p)


# ── Queries ───────────────────────────────────────────────────────────────────

def product_inner(p: ProductState, q: ProductState) -> complex:
    """∏_i ⟨p_i|q_i⟩."""
    if p.dims != q.dims:
        raise DimensionMismatch(f"product states with dims {p.dims} and {q.dims}")
    out = 1.0 + 0j
    for u, v in zip(p.locals, q.locals):
        out *= inner(u, v)
    return out


def local_rank(states: StateSet, party: int) -> int:
    """Rank of the party's local kets across the set."""
    return rank_of(states.locals_of(party), states.tol)


def local_ranks(states: StateSet) -> List[int]:
    return [local_rank(states, p) for p in range(states.parties)]


def orthogonal_parties(states: StateSet, j: int, k: int) -> frozenset:
    """Parties on which states j and k (positions) have orthogonal locals."""
    return frozenset(
        p for p in range(states.parties)
        if abs(inner(states.local(j, p), states.local(k, p))) <= states.tol
    )


def validate(states: StateSet) -> ValidationReport:
    bad, multi = [], []
    for j, k in combinations(range(len(states)), 2):
        parts = orthogonal_parties(states, j, k)
        pair = (states.labels[j], states.labels[k])
        if not parts:
            bad.append(pair)
        elif len(parts) > 1:
            multi.append(pair)
    return ValidationReport(
        orthogonal=not bad,
        unique_party_per_pair=not bad and not multi,
        non_orthogonal_pairs=tuple(bad),
        multi_party_pairs=tuple(multi),
    )


def restrict(states: StateSet, labels: Iterable[int]) -> StateSet:
    """Sub-set carrying the given labels (in the set's own order)."""
    wanted = set(labels)
    missing = wanted - set(states.labels)
    if missing:
        raise ParameterError(f"labels {sorted(missing)} are not in the set")
    keep = [j for j, lab in enumerate(states.labels) if lab in wanted]
    return states.replace([states.states[j] for j in keep], [states.labels[j] for j in keep])


# ── Named families ────────────────────────────────────────────────────────────

def _family_dim(d: complex, g: complex, h: complex) -> int:
    if h != 0:
        return 5
    if d != 0 or g != 0:
        return 4
    return 3


def family_eq1_locals(a, b, d, g, h) -> List[CVec]:
    """General party-1 forms of the (5-4) family, embedded minimally."""
    c = -1 / np.conj(a)
    e = a * (np.conj(b) + np.conj(d) * g)
    dim = _family_dim(d, g, h)
    return [
        basis(0, dim),
        ket(1, 0, a, dim=dim),
        ket(1, b, c, d, dim=dim),
        ket(0, 1, e, g, h, dim=dim),
        basis(1, dim),
    ]


def family_eq2(params: FamilyParams, tol: float = DEFAULT_TOL) -> StateSet:
    """
    The five bipartite OPSs whose orthogonality graph is the double
    5-cycle: party 1 orthogonal on (1,4),(1,5),(2,3),(2,5),(3,4), party 2
    on the complementary cycle.
    """
    p = params
    first  = family_eq1_locals(p.a, p.b, p.d, p.g, p.h)
    second = family_eq1_locals(p.a_p, p.b_p, p.d_p, p.g_p, p.h_p)
    d1, d2 = len(first[0]), len(second[0])
    states = [
        ProductState((first[0], second[1])),
        ProductState((first[1], basis(1, d2))),
        ProductState((first[2], second[2])),
        ProductState((first[3], basis(0, d2))),
        ProductState((basis(1, d1), second[3])),
    ]
    return StateSet((d1, d2), tuple(states), tol=tol)


def family_eq3(a, b, a_p, b_p, tol: float = DEFAULT_TOL) -> StateSet:
    """The (5-4) family with d=g=h=0 on both sides; LOCC-indistinguishable."""
    for name, value in (("a", a), ("b", b), ("a'", a_p), ("b'", b_p)):
        if value == 0:
            raise ParameterError(f"family parameter {name} must be nonzero")
    return family_eq2(FamilyParams(a=a, b=b, a_p=a_p, b_p=b_p), tol)


def family_eq10(tol: float = DEFAULT_TOL) -> StateSet:
    """Tripartite (5,3,2) set that admits only trivial orthogonality-preserving measurements."""
    states = [
        ProductState.of(basis(0, 3), basis(0, 3), [1 / SQ3, math.sqrt(2 / 3), 0]),
        ProductState.of(ket(1, 1, -1), basis(1, 3), ket(1, 1, 0)),
        ProductState.of(ket(1, 0, 1), basis(1, 3), basis(0, 3)),
        ProductState.of(basis(1, 3), ket(1, 1, 0), ket(1, -1, 0)),
        ProductState.of(ket(0, 1, 1), ket(1, -1, 0), basis(1, 3)),
    ]
    return StateSet((3, 3, 3), tuple(states), tol=tol)


def family_eq11(tol: float = DEFAULT_TOL) -> StateSet:
    """Tripartite (5,3,2) set with the same graph as family_eq10 but LOCC-distinguishable."""
    states = [
        ProductState.of(basis(0, 3), basis(0, 3), basis(0, 3)),
        ProductState.of(ket(1, 1, -1), basis(1, 3), ket(1, 1, 0)),
        ProductState.of(ket(1, 0, 1), basis(1, 3), ket(1, 0, 1)),
        ProductState.of(basis(1, 3), ket(1, 1, 0), ket(1, -1, 0)),
        ProductState.of(ket(0, 1, 1), ket(1, -1, 0), ket(1, 0, -1)),
    ]
    return StateSet((3, 3, 3), tuple(states), tol=tol)


# ── Random realizer ───────────────────────────────────────────────────────────

def _sample_party(rng: np.random.Generator, dim: int, n: int,
                  required: Dict[int, List[int]]) -> Optional[List[CVec]]:
    """Random kets where state k is orthogonal to every j in required[k] (j < k)."""
    kets: List[CVec] = []
    for k in range(n):
        v = random_unit(rng, dim)
        preds = [kets[j] for j in required.get(k, [])]
        if preds:
            v = v - span_projector(preds, dim) @ v
        nv = np.linalg.norm(v)
        if nv < 1e-6:
            return None
        kets.append(frozen(v / nv))
    return kets


def generate_from_graph(target, dims: Sequence[int] = None, seed: int = 0,
                        max_retries: int = 200, tol: float = DEFAULT_TOL) -> StateSet:
    """
    Random StateSet whose orthogonality graph equals target exactly.

    Each party's kets are drawn one state at a time and projected onto the
    complement of the predecessors they must be orthogonal to; draws that
    pick up an unwanted orthogonality (|inner| < 10·tol) are rejected.
    """
    from .graph import compute_graph

    n, m = target.n, target.m
    dims = tuple(dims) if dims is not None else (5,) * m
    if len(dims) != m:
        raise ParameterError(f"target has {m} parties but {len(dims)} dims were given")

    required = [dict() for _ in range(m)]
    for (j, k), parts in target.labels.items():
        if not parts:
            raise GenerationError(f"pair ({j + 1},{k + 1}) has no color; the set cannot be orthogonal")
        for p in parts:
            required[p].setdefault(max(j, k), []).append(min(j, k))

    rng = np.random.default_rng(seed)
    for attempt in range(max_retries):
        columns = [_sample_party(rng, dims[p], n, required[p]) for p in range(m)]
        if any(col is None for col in columns):
            continue
        states = tuple(ProductState(tuple(columns[p][j] for p in range(m))) for j in range(n))
        candidate = StateSet(dims, states, tol=tol)
        if _clear_of_accidents(candidate, target, 10 * tol) and compute_graph(candidate) == target:
            log.debug("generate_from_graph: hit target after %d attempt(s)", attempt + 1)
            return candidate

    raise GenerationError(
        f"could not realize the target graph in dims {dims} within {max_retries} attempts")


def _clear_of_accidents(states: StateSet, target, margin: float) -> bool:
    for (j, k), parts in target.labels.items():
        for p in range(states.parties):
            if p not in parts and abs(inner(states.local(j, p), states.local(k, p))) < margin:
                return False
    return True
