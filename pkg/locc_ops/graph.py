"""
graph.py
Edge-colored orthogonality graphs: vertices are states, an edge of color
p joins two states whose party-p local kets are orthogonal.

Vertices and parties are 0-based here; reports add 1.
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .errors import InputError
from .states import StateSet, orthogonal_parties

Pair = Tuple[int, int]


# ── Types ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class OrthoGraph:
    n:      int
    m:      int
    labels: Mapping[Pair, FrozenSet[int]] = field(default_factory=dict)

    def __post_init__(self):
        fixed = {}
        for (j, k), parts in dict(self.labels).items():
            key = (min(j, k), max(j, k))
            fixed[key] = frozenset(parts)
        object.__setattr__(self, "labels", fixed)

    @classmethod
    def from_edges(cls, n: int, m: int, edges: Mapping[int, Iterable[Pair]]) -> "OrthoGraph":
        """Build from {party: [(j, k), ...]} (0-based)."""
        labels: Dict[Pair, set] = {pair: set() for pair in combinations(range(n), 2)}
        for p, pairs in edges.items():
            for j, k in pairs:
                labels[(min(j, k), max(j, k))].add(p)
        return cls(n, m, {pair: frozenset(s) for pair, s in labels.items()})

    def label(self, j: int, k: int) -> FrozenSet[int]:
        return self.labels.get((min(j, k), max(j, k)), frozenset())

    def edges(self, party: int) -> List[Pair]:
        return sorted(pair for pair, parts in self.labels.items() if party in parts)

    def singleton_edges(self, party: int) -> List[Pair]:
        """Pairs orthogonal on this party and nowhere else."""
        return sorted(pair for pair, parts in self.labels.items() if parts == {party})

    def neighbors(self, v: int, party: int) -> FrozenSet[int]:
        return frozenset(w for w in range(self.n) if w != v and party in self.label(v, w))

    def color_graph(self, party: int) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges(party))
        return g

    def unique_party(self) -> bool:
        return all(len(parts) == 1 for parts in self.labels.values())


@dataclass(frozen=True)
class RelationVector:
    counts:    Tuple[int, ...]
    canonical: Tuple[int, ...]


class PatternKind(str, Enum):
    ISOLATING_STATE = "IsolatingState"
    CYCLE54         = "Cycle54"
    MATCHING13      = "Matching13"
    PAIR_BLOCK      = "PairBlock"
    SPLIT_EDGE      = "SplitEdge"
    GENERIC         = "Generic"


@dataclass(frozen=True)
class Pattern:
    kind:   PatternKind
    party:  Optional[int] = None
    states: Tuple[int, ...] = ()


@dataclass(frozen=True)
class CaseId:
    category: RelationVector
    pattern:  Pattern


# ── Construction ──────────────────────────────────────────────────────────────

def compute_graph(states: StateSet) -> OrthoGraph:
    labels = {}
    for j, k in combinations(range(len(states)), 2):
        parts = orthogonal_parties(states, j, k)
        if not parts:
            raise InputError(
                f"states {states.labels[j]} and {states.labels[k]} are not orthogonal")
        labels[(j, k)] = parts
    return OrthoGraph(len(states), states.parties, labels)


def subgraph(g: OrthoGraph, vertices: Sequence[int]) -> OrthoGraph:
    """Induced graph on the given vertices, renumbered 0..k-1 in the given order."""
    vs = list(vertices)
    labels = {(a, b): g.label(vs[a], vs[b]) for a, b in combinations(range(len(vs)), 2)}
    return OrthoGraph(len(vs), g.m, labels)


def relation_vector(g: OrthoGraph) -> RelationVector:
    counts = tuple(len(g.edges(p)) for p in range(g.m))
    return RelationVector(counts, tuple(sorted(counts, reverse=True)))


# ── Canonical form ────────────────────────────────────────────────────────────

def _relabelled(g: OrthoGraph, sigma: Sequence[int], tau: Sequence[int]) -> tuple:
    items = []
    for (j, k), parts in g.labels.items():
        a, b = sigma[j], sigma[k]
        items.append(((min(a, b), max(a, b)), tuple(sorted(tau[p] for p in parts))))
    return tuple(sorted(items))


def canonical_form(g: OrthoGraph) -> tuple:
    """
    Lexicographically smallest labelling over every state permutation
    composed with every party permutation (n ≤ 5, m ≤ 3: at most 720 maps).
    """
    if g.n > 5 or g.m > 3:
        raise InputError("canonical_form supports at most 5 states and 3 parties")
    best = None
    for sigma in permutations(range(g.n)):
        for tau in permutations(range(g.m)):
            key = _relabelled(g, sigma, tau)
            if best is None or key < best:
                best = key
    return (g.n, g.m, best)


def isomorphic(g: OrthoGraph, h: OrthoGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


# ── Structural predicates ─────────────────────────────────────────────────────

def isolating_states(g: OrthoGraph) -> List[Tuple[int, int]]:
    """(party, vertex) pairs where the vertex is p-adjacent to all others, sorted."""
    out = []
    for p in range(g.m):
        for v in range(g.n):
            if g.n > 1 and len(g.neighbors(v, p)) == g.n - 1:
                out.append((p, v))
    return out


def _is_cycle(cg: nx.Graph) -> bool:
    return (cg.number_of_nodes() > 2
            and all(d == 2 for _, d in cg.degree())
            and nx.is_connected(cg))


def is_cycle54(g: OrthoGraph) -> bool:
    if g.n != 5 or not g.unique_party():
        return False
    used = [p for p in range(g.m) if g.edges(p)]
    return len(used) == 2 and all(_is_cycle(g.color_graph(p)) for p in used)


def is_matching13(g: OrthoGraph) -> bool:
    if g.n != 4 or g.m != 3 or not g.unique_party():
        return False
    for p in range(3):
        cg = g.color_graph(p)
        if cg.number_of_edges() != 2 or not nx.is_perfect_matching(cg, set(cg.edges())):
            return False
    return True


def pair_blocks(g: OrthoGraph) -> List[Tuple[int, Pair]]:
    """(party, (u, v)) where u and v are both p-orthogonal to every other vertex."""
    out = []
    for p in range(g.m):
        for u, v in combinations(range(g.n), 2):
            rest = set(range(g.n)) - {u, v}
            if rest and rest <= (g.neighbors(u, p) & g.neighbors(v, p)):
                out.append((p, (u, v)))
    return out


def split_is_safe(g: OrthoGraph, party: int, u: int, alive: Iterable[int] = None) -> bool:
    """
    Whether projecting party onto u's local ket keeps every pair that is
    orthogonal only on this party orthogonal in both outcomes.

    Outcome |u⟩⟨u| keeps the vertices not p-adjacent to u, among which no
    singleton p-edge may remain; outcome I−|u⟩⟨u| needs every singleton
    p-edge away from u to touch a p-neighbor of u.
    """
    alive = set(range(g.n) if alive is None else alive)
    nbrs = g.neighbors(u, party) & alive
    if not nbrs:
        return False
    kept = alive - nbrs
    for k, l in g.singleton_edges(party):
        if k not in alive or l not in alive or u in (k, l):
            continue
        if k in kept and l in kept:
            return False
        if k not in nbrs and l not in nbrs:
            return False
    return True


def split_edges(g: OrthoGraph) -> List[Tuple[int, Pair]]:
    out = []
    for p in range(g.m):
        for u in range(g.n):
            if split_is_safe(g, p, u):
                v = min(g.neighbors(u, p))
                out.append((p, (u, v)))
    return out


def verify_pattern(g: OrthoGraph, pattern: Pattern) -> bool:
    """Re-check a pattern directly against the graph's edges."""
    kind = pattern.kind
    if kind == PatternKind.ISOLATING_STATE:
        return (pattern.party, pattern.states[0]) in isolating_states(g)
    if kind == PatternKind.CYCLE54:
        return is_cycle54(g)
    if kind == PatternKind.MATCHING13:
        return is_matching13(g)
    if kind == PatternKind.PAIR_BLOCK:
        return (pattern.party, tuple(pattern.states)) in pair_blocks(g)
    if kind == PatternKind.SPLIT_EDGE:
        u, v = pattern.states
        return pattern.party in g.label(u, v) and split_is_safe(g, pattern.party, u)
    return kind == PatternKind.GENERIC


def classify(g: OrthoGraph) -> CaseId:
    """Relation-vector category plus the first structural pattern that holds."""
    if not 2 <= g.n <= 5:
        raise InputError(f"classification supports 2 to 5 states, got {g.n}")
    category = relation_vector(g)

    iso = isolating_states(g)
    if iso:
        p, v = iso[0]
        return CaseId(category, Pattern(PatternKind.ISOLATING_STATE, p, (v,)))
    if is_cycle54(g):
        return CaseId(category, Pattern(PatternKind.CYCLE54))
    if is_matching13(g):
        return CaseId(category, Pattern(PatternKind.MATCHING13))
    blocks = pair_blocks(g)
    if blocks:
        p, pair = blocks[0]
        return CaseId(category, Pattern(PatternKind.PAIR_BLOCK, p, pair))
    splits = split_edges(g)
    if splits:
        p, pair = splits[0]
        return CaseId(category, Pattern(PatternKind.SPLIT_EDGE, p, pair))
    return CaseId(category, Pattern(PatternKind.GENERIC))
