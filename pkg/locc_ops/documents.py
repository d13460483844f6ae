"""
documents.py
JSON interchange: state-set documents, protocol trees, certificates and
the report document every command emits.

All party and state indices in documents are 1-based. Floats are written
with repr (shortest round-trip form) so reports are byte-reproducible.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .errors import InputError, LoccError
from .graph import OrthoGraph, Pattern, classify, compute_graph, relation_vector
from .linalg import DEFAULT_TOL
from .measurement import Measurement
from .protocol import Ambiguous, Dead, Identified, ProtocolNode, SimulationReport, Step
from .states import ProductState, StateSet, local_ranks

VERSION_TAG = "locc-ops/1"


# ── Numbers ───────────────────────────────────────────────────────────────────

def number(x: float, digits: int = 17) -> float:
    x = float(x) + 0.0                       # folds -0.0
    if digits < 17:
        x = float(f"{x:.{digits}g}") + 0.0
    return x


def _pair(z: complex, digits: int = 17) -> List[float]:
    return [number(z.real, digits), number(z.imag, digits)]


def _vector(v, digits: int = 17) -> List[List[float]]:
    return [_pair(complex(z), digits) for z in v]


def matrix_json(m, digits: int = 17) -> List[List[List[float]]]:
    return [_vector(row, digits) for row in np.asarray(m)]


def _parse_complex(raw: Any, where: str) -> complex:
    if (not isinstance(raw, (list, tuple)) or len(raw) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw)):
        raise InputError("amplitude must be a [real, imaginary] pair of numbers", where)
    return complex(raw[0], raw[1])


def _parse_vector(raw: Any, where: str) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise InputError("expected a non-empty list of amplitudes", where)
    return np.array([_parse_complex(z, f"{where}[{i}]") for i, z in enumerate(raw)], dtype=complex)


def _parse_matrix(raw: Any, where: str) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise InputError("expected a non-empty list of rows", where)
    rows = [_parse_vector(r, f"{where}[{i}]") for i, r in enumerate(raw)]
    if any(len(r) != len(rows) for r in rows):
        raise InputError("matrix must be square", where)
    return np.array(rows)


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"file not found: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}")


# ── State sets ────────────────────────────────────────────────────────────────

def state_set_to_doc(states: StateSet, digits: int = 17) -> Dict[str, Any]:
    return {
        "version": VERSION_TAG,
        "parties": states.parties,
        "dims": list(states.dims),
        "states": [[_vector(v, digits) for v in s.locals] for s in states.states],
        "labels": list(states.labels),
        "tol": states.tol,
    }


def state_set_from_doc(doc: Any, tol: Optional[float] = None,
                      default_tol: float = DEFAULT_TOL) -> StateSet:
    """Parse and validate; errors carry the JSON location of the offending value."""
    if not isinstance(doc, dict):
        raise InputError("state-set document must be a JSON object")
    if doc.get("version", VERSION_TAG) != VERSION_TAG:
        raise InputError(f"unsupported document version {doc.get('version')!r}", "version")
    dims = doc.get("dims")
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and d > 0 for d in dims):
        raise InputError("dims must be a non-empty list of positive integers", "dims")
    parties = doc.get("parties", len(dims))
    if parties != len(dims):
        raise InputError(f"parties is {parties} but {len(dims)} dims are given", "parties")
    raw_states = doc.get("states")
    if not isinstance(raw_states, list):
        raise InputError("states must be a list", "states")

    states = []
    for j, raw in enumerate(raw_states):
        if not isinstance(raw, list) or len(raw) != len(dims):
            raise InputError(f"expected {len(dims)} local kets", f"states[{j}]")
        kets = []
        for p, local in enumerate(raw):
            v = _parse_vector(local, f"states[{j}][{p}]")
            if len(v) != dims[p]:
                raise InputError(f"local ket has {len(v)} amplitudes, party dim is {dims[p]}",
                                 f"states[{j}][{p}]")
            if abs(np.linalg.norm(v) - 1.0) > 1e-9:
                raise InputError("local ket is not normalized", f"states[{j}][{p}]")
            kets.append(v)
        states.append(ProductState.of(*kets))

    labels = doc.get("labels") or ()
    use_tol = tol if tol is not None else float(doc.get("tol", default_tol))
    try:
        return StateSet(tuple(dims), tuple(states), tuple(labels), use_tol)
    except LoccError as exc:
        raise InputError(exc.message, exc.location or "states")


def load_state_set(path, tol: Optional[float] = None, default_tol: float = DEFAULT_TOL) -> StateSet:
    return state_set_from_doc(read_json(path), tol, default_tol)


def graph_from_doc(doc: Any) -> OrthoGraph:
    """
    Graph spec: {"states": n, "parties": m, "edges": {"1": [[j, k], ...], ...}}
    with 1-based parties and states.
    """
    if not isinstance(doc, dict):
        raise InputError("graph spec must be a JSON object")
    n, m = doc.get("states"), doc.get("parties")
    if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 1:
        raise InputError("graph spec needs positive integer 'states' and 'parties'")
    raw = doc.get("edges")
    if not isinstance(raw, dict):
        raise InputError("graph spec 'edges' must map party numbers to pair lists", "edges")
    edges = {}
    for key, pairs in raw.items():
        where = f"edges.{key}"
        if not str(key).isdigit() or not 1 <= int(key) <= m:
            raise InputError(f"party must be between 1 and {m}", where)
        out = []
        for i, pair in enumerate(pairs or []):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, int) and 1 <= x <= n for x in pair) or pair[0] == pair[1]):
                raise InputError(f"pair must be two distinct states in 1..{n}", f"{where}[{i}]")
            out.append((pair[0] - 1, pair[1] - 1))
        edges[int(key) - 1] = out
    return OrthoGraph.from_edges(n, m, edges)


def graph_to_doc(g: OrthoGraph) -> Dict[str, Any]:
    return {"states": g.n, "parties": g.m,
            "edges": {str(p + 1): [[j + 1, k + 1] for j, k in g.edges(p)] for p in range(g.m)}}


# ── Protocols ─────────────────────────────────────────────────────────────────

def protocol_to_json(node: ProtocolNode, digits: int = 17) -> Dict[str, Any]:
    if isinstance(node, Identified):
        return {"type": "identified", "state": node.state}
    if isinstance(node, Ambiguous):
        return {"type": "ambiguous", "states": list(node.states)}
    if isinstance(node, Dead):
        return {"type": "dead", "states": list(node.states), "pairs": [list(p) for p in node.pairs]}
    meas = node.measurement
    return {
        "type": "step",
        "party": meas.party + 1,
        "outcomes": [{"label": lab, "kraus": matrix_json(k, digits)}
                     for lab, k in zip(meas.labels, meas.kraus)],
        "branches": [protocol_to_json(b, digits) for b in node.branches],
    }


def protocol_from_json(doc: Any, where: str = "protocol") -> ProtocolNode:
    if not isinstance(doc, dict) or "type" not in doc:
        raise InputError("protocol node must be an object with a type", where)
    kind = doc["type"]
    if kind == "identified":
        return Identified(int(doc["state"]))
    if kind == "ambiguous":
        return Ambiguous(tuple(int(x) for x in doc.get("states", [])))
    if kind == "dead":
        return Dead(tuple(int(x) for x in doc.get("states", [])),
                    tuple((int(j), int(k)) for j, k in doc.get("pairs", [])))
    if kind != "step":
        raise InputError(f"unknown protocol node type {kind!r}", where)

    outcomes = doc.get("outcomes")
    branches = doc.get("branches")
    if not isinstance(outcomes, list) or not isinstance(branches, list):
        raise InputError("step needs outcomes and branches lists", where)
    party = doc.get("party")
    if not isinstance(party, int) or party < 1:
        raise InputError("step party must be a positive integer", f"{where}.party")
    kraus = [_parse_matrix(o.get("kraus"), f"{where}.outcomes[{i}].kraus") for i, o in enumerate(outcomes)]
    labels = [str(o.get("label", f"M{i + 1}")) for i, o in enumerate(outcomes)]
    try:
        meas = Measurement(party - 1, tuple(kraus), tuple(labels))
        return Step(meas, tuple(protocol_from_json(b, f"{where}.branches[{i}]")
                                for i, b in enumerate(branches)))
    except InputError as exc:
        raise InputError(exc.message, exc.location or where)


def load_protocol(path) -> ProtocolNode:
    return protocol_from_json(read_json(path))


# ── Sections ──────────────────────────────────────────────────────────────────

def _pattern_json(pattern: Pattern) -> Dict[str, Any]:
    return {
        "kind": pattern.kind.value,
        "party": None if pattern.party is None else pattern.party + 1,
        "states": [v + 1 for v in pattern.states],
    }


def graph_section(states: StateSet, g: OrthoGraph = None) -> Dict[str, Any]:
    g = g or compute_graph(states)
    rv = relation_vector(g)
    out = {
        "relation_vector": {"counts": list(rv.counts), "canonical": list(rv.canonical)},
        "edges": {str(p + 1): [[states.labels[j], states.labels[k]] for j, k in g.edges(p)]
                  for p in range(g.m)},
        "local_ranks": local_ranks(states),
        "pattern": None,
    }
    if 2 <= g.n <= 5:
        out["pattern"] = _pattern_json(classify(g).pattern)
    return out


def simulation_section(report: SimulationReport) -> Dict[str, Any]:
    return {
        "success": [number(report.success[j]) for j in report.labels],
        "overall": number(report.overall),
        "paths": {str(j): [{"path": list(r.path), "probability": number(r.probability), "leaf": r.leaf}
                           for r in report.paths[j]] for j in report.labels},
        "dead_mass": [number(report.dead_mass[j]) for j in report.labels],
        "false_mass": [number(report.false_mass[j]) for j in report.labels],
    }


def evidence_to_json(evidence, include_basis: bool = False, digits: int = 17) -> List[Dict[str, Any]]:
    out = []
    for ev in evidence:
        item = {
            "party": ev.space.party + 1,
            "constraint_pairs": [list(p) for p in ev.space.constraint_pairs],
            "dimension": ev.space.dimension,
            "verdict": ev.verdict.kind.value,
            "residual": number(ev.verdict.residual, digits),
        }
        if ev.verdict.pair is not None:
            item["distinguished_pair"] = list(ev.verdict.pair)
        if ev.verdict.witness is not None:
            item["witness"] = matrix_json(ev.verdict.witness, digits)
        if include_basis:
            item["basis"] = [matrix_json(b, digits) for b in ev.space.basis]
        out.append(item)
    return out


def certificate_to_json(cert, states: StateSet, digits: int = 17) -> Dict[str, Any]:
    return {
        "parties": evidence_to_json(cert.parties, include_basis=True, digits=digits),
        "labels": list(cert.labels),
        "max_constraint_residual": number(cert.max_constraint_residual(states), digits),
    }


def report_document(command: str, states: StateSet, *, seed: Optional[int] = None,
                    verdict: Optional[str] = None, protocol: Optional[ProtocolNode] = None,
                    simulation: Optional[SimulationReport] = None, certificate=None,
                    evidence: Sequence = (), findings: Sequence[str] = (),
                    digits: int = 17, **extra) -> Dict[str, Any]:
    doc = {
        "tool": "locc-ops",
        "version": __version__,
        "command": command,
        "seed": seed,
        "verdict": verdict,
        "labels": list(states.labels),
        "protocol": protocol_to_json(protocol, digits) if protocol is not None else None,
        "success": None,
        "overall": None,
        "certificate": certificate_to_json(certificate, states, digits) if certificate is not None else None,
        "evidence": evidence_to_json(evidence, digits=digits) if evidence else None,
        "findings": list(findings),
    }
    doc.update(graph_section(states))
    doc.update(extra)
    if simulation is not None:
        doc["simulation"] = simulation_section(simulation)
        doc["success"] = doc["simulation"]["success"]
        doc["overall"] = doc["simulation"]["overall"]
    return doc
