"""A single-action chain with unbounded relative values that have a finite liminf."""

from avgmdp.example41.closed_form import (
    Bracket,
    ClosedFormSource,
    closed_form_m,
    closed_form_v,
    head_terms,
    relative_value_at_zero,
    scaled_m,
)
from avgmdp.example41.construction import branch_states, build_model, successor
from avgmdp.example41.params import (
    BRANCH_CAP,
    DEFAULT_DPS,
    BranchParams,
    BranchSequence,
    Lemma43Report,
    ParamTuple,
    derive_params,
    g,
    g_value,
    generate_sequence,
    verify_lemma43,
)
from avgmdp.example41.verify import (
    AbelRow,
    GapRow,
    Prop42Report,
    abel_trend,
    gap_table,
    verify_prop42,
)

__all__ = [
    "BRANCH_CAP",
    "DEFAULT_DPS",
    "AbelRow",
    "BranchParams",
    "BranchSequence",
    "Bracket",
    "ClosedFormSource",
    "GapRow",
    "Lemma43Report",
    "ParamTuple",
    "Prop42Report",
    "abel_trend",
    "branch_states",
    "build_model",
    "closed_form_m",
    "closed_form_v",
    "derive_params",
    "g",
    "g_value",
    "gap_table",
    "generate_sequence",
    "head_terms",
    "relative_value_at_zero",
    "scaled_m",
    "successor",
    "verify_lemma43",
    "verify_prop42",
]
