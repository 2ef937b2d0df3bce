"""Core model layer.

Extended-real costs and values, the MDP data model, policies, validation and
JSON interchange.
"""

from avgmdp.model.extreal import INF, ExtNonnegReal, ext, ext_mul, ext_sum
from avgmdp.model.generators import absorbing_model, cycle_model, random_model
from avgmdp.model.io import dump_model, load_model, model_from_dict, model_to_dict
from avgmdp.model.models import (
    ActionId,
    ArgminSets,
    MarkovPolicy,
    MdpModel,
    StateId,
    StationaryPolicy,
    TransitionRow,
    ValueFn,
    expect_under,
)
from avgmdp.model.transforms import merge_infinite_states
from avgmdp.model.validators import (
    Defect,
    DefectKind,
    ValidationReport,
    validate_model,
)

__all__ = [
    "INF",
    "ActionId",
    "ArgminSets",
    "Defect",
    "DefectKind",
    "ExtNonnegReal",
    "MarkovPolicy",
    "MdpModel",
    "StateId",
    "StationaryPolicy",
    "TransitionRow",
    "ValidationReport",
    "ValueFn",
    "absorbing_model",
    "cycle_model",
    "dump_model",
    "expect_under",
    "ext",
    "ext_mul",
    "ext_sum",
    "load_model",
    "merge_infinite_states",
    "model_from_dict",
    "model_to_dict",
    "random_model",
    "validate_model",
]
