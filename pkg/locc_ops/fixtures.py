"""
fixtures.py
Named state sets shipped with the package as StateSetDocument files.
"""
from pathlib import Path
from typing import Callable, Dict, List

from .errors import InputError
from .linalg import DEFAULT_TOL
from .states import FamilyParams, StateSet, family_eq2, family_eq3, family_eq10, family_eq11

FIXTURE_DIR = Path(__file__).parent / "data" / "fixtures"

THEOREM4_PRESETS: Dict[int, FamilyParams] = {
    1: FamilyParams(d=1),
    2: FamilyParams(g=1),
    3: FamilyParams(d=1, g=1),
}

# Constructors the shipped files were generated from.
BUILDERS: Dict[str, Callable[[float], StateSet]] = {
    "eq3":        lambda tol: family_eq3(1, 1, 1, 1, tol),
    "eq10":       family_eq10,
    "eq11":       family_eq11,
    "theorem4-1": lambda tol: family_eq2(THEOREM4_PRESETS[1], tol),
    "theorem4-2": lambda tol: family_eq2(THEOREM4_PRESETS[2], tol),
    "theorem4-3": lambda tol: family_eq2(THEOREM4_PRESETS[3], tol),
}


def fixture_names() -> List[str]:
    return sorted(BUILDERS)


def fixture_path(name: str) -> Path:
    if name not in BUILDERS:
        raise InputError(f"unknown fixture '{name}' (choose from {', '.join(fixture_names())})")
    return FIXTURE_DIR / f"{name}.json"


def load_fixture(name: str, tol: float = None) -> StateSet:
    from .documents import load_state_set
    return load_state_set(fixture_path(name), tol)


def build_fixture(name: str, tol: float = DEFAULT_TOL) -> StateSet:
    fixture_path(name)
    return BUILDERS[name](tol)
