"""Parametric minimization over finite feasible sets and optimal selectors."""

from avgmdp.selection.selector import (
    ParametricObjective,
    SelectionResult,
    SelectorCase,
    argmin_set,
    minimize_row,
    parametric_min,
    total_selector,
)

__all__ = [
    "ParametricObjective",
    "SelectionResult",
    "SelectorCase",
    "argmin_set",
    "minimize_row",
    "parametric_min",
    "total_selector",
]
