"""Frobenius structures on spaces of abelian integrals."""

import json

from ._frobpencil import (
    AbelianIntegral,
    FrobError,
    axiom_suite,
    critical_points,
    flat_chart,
    lattice_invariants,
    metric_matrix,
    multiply,
    potentiality_defect,
    structure_constants,
    unit_field,
    wp,
    zeta,
)
from ._frobpencil import run as _run

__all__ = [
    "AbelianIntegral",
    "FrobError",
    "axiom_suite",
    "critical_points",
    "flat_chart",
    "lattice_invariants",
    "metric_matrix",
    "multiply",
    "potentiality_defect",
    "run",
    "structure_constants",
    "unit_field",
    "wp",
    "zeta",
]


def run(mode="compute", **settings):
    """Run a CLI mode; returns (report dict, exit code). Values may be any str()-able."""
    settings = {k: str(v) for k, v in settings.items()}
    settings["mode"] = mode
    text, code = _run(settings)
    return json.loads(text), code
