"""
Shared domain types, the logistic link, the doubly robust score and
treatment-path relabeling.
"""

from seqdr.core.model_core.dataset_io import read_dataset, write_dataset
from seqdr.core.model_core.link import logistic
from seqdr.core.model_core.paths import relabel_for_path
from seqdr.core.model_core.representation import (
    RepresentationCheck,
    WorkingModels,
    dr_representation_check,
)
from seqdr.core.model_core.score import ScoreBatch, score, score_gradient, score_values
from seqdr.core.model_core.types import (
    Dataset,
    NuisanceParams,
    Observation,
    OverlapConfig,
    TreatmentPath,
)

__all__ = [
    "Dataset",
    "NuisanceParams",
    "Observation",
    "OverlapConfig",
    "RepresentationCheck",
    "ScoreBatch",
    "TreatmentPath",
    "WorkingModels",
    "dr_representation_check",
    "logistic",
    "read_dataset",
    "relabel_for_path",
    "score",
    "score_gradient",
    "score_values",
    "write_dataset",
]
