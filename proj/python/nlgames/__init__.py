"""Solvers for biased CHSH and Svetlichny nonlocal games.

Thin wrapper around the C++ core: classical enumeration, analytic quantum
bounds, see-saw optimization, no-signaling LP and phase-diagram scans.
"""

from ._core import (
    classical_max,
    classical_max_analytic,
    classify,
    nosignaling_max,
    pr_box_value,
    quantum_max_analytic,
    scan_csv,
    seesaw,
    threshold_on_diagonal,
    verify_report,
)

__all__ = [
    "classical_max",
    "classical_max_analytic",
    "classify",
    "nosignaling_max",
    "pr_box_value",
    "quantum_max_analytic",
    "scan_csv",
    "seesaw",
    "threshold_on_diagonal",
    "verify_report",
]
