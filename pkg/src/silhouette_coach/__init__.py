"""Silhouette-based exercise performance scoring.

Pipeline: background subtraction -> binary silhouette mask ->
intersection/union similarity against pose templates -> pass/fail at a
ROC-calibrated threshold. Includes a live-session engine with an HTTP
API and batch CLI tooling.
"""

from .errors import CoachError
from .masks import GuideRect, clean_mask, crop_to_guide, subtract_background, to_grayscale
from .similarity import MatchResult, classify, jaccard, nearest_template
from .template_store import (
    LabeledAttempt,
    Perturbation,
    Routine,
    Template,
    TemplateStore,
    builtin_catalog,
    builtin_store,
    generate_synthetic_dataset,
    load_store,
    save_store,
)

__all__ = [
    "CoachError",
    "GuideRect",
    "LabeledAttempt",
    "MatchResult",
    "Perturbation",
    "Routine",
    "Template",
    "TemplateStore",
    "builtin_catalog",
    "builtin_store",
    "classify",
    "clean_mask",
    "crop_to_guide",
    "generate_synthetic_dataset",
    "jaccard",
    "load_store",
    "nearest_template",
    "save_store",
    "subtract_background",
    "to_grayscale",
]
