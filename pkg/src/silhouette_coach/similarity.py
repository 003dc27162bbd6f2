"""Intersected-region / union-region similarity and nearest-neighbor matching.

The similarity score alpha of a user silhouette (beta) against a template
silhouette (epsilon) is |intersection| / |union| over foreground pixel sets,
i.e. the Jaccard index. Counts are exact integers divided once at the end,
so results are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyMask, EmptyTemplateSet, EmptyUnion

DEFAULT_PASS_THRESHOLD = 0.8


@dataclass(frozen=True)
class MatchResult:
    """Best-matching template identity plus its similarity score."""

    template_id: str
    alpha: float


def jaccard(beta: np.ndarray, epsilon: np.ndarray) -> float:
    """Ratio of the intersected region to the union region of two masks.

    Raises EmptyUnion when both masks are all-background (0/0 is undefined,
    never silently 0 or 1).
    """
    beta = np.asarray(beta, dtype=bool)
    epsilon = np.asarray(epsilon, dtype=bool)
    if beta.shape != epsilon.shape:
        raise DimensionMismatch(f"mask shapes differ: {beta.shape} vs {epsilon.shape}")
    inter = int(np.count_nonzero(beta & epsilon))
    union = int(np.count_nonzero(beta | epsilon))
    if union == 0:
        raise EmptyUnion("both masks are empty; similarity is undefined")
    return inter / union


def nearest_template(beta: np.ndarray, templates: Sequence) -> MatchResult:
    """Template maximizing similarity with beta; ties broken by position.

    ``templates`` is an ordered sequence of objects with ``id`` and ``mask``
    attributes (see template_store.Template).
    """
    if len(templates) == 0:
        raise EmptyTemplateSet("cannot match against an empty template set")
    beta = np.asarray(beta, dtype=bool)
    if not beta.any():
        raise EmptyMask("query mask has no foreground pixels")
    best: MatchResult | None = None
    for tpl in templates:
        alpha = jaccard(beta, tpl.mask)
        if best is None or alpha > best.alpha:
            best = MatchResult(template_id=tpl.id, alpha=alpha)
    return best


def classify(
    beta: np.ndarray, templates: Sequence, threshold: float = DEFAULT_PASS_THRESHOLD
) -> tuple[bool, MatchResult]:
    """Nearest-neighbor match plus accept/reject at a threshold.

    The comparison is inclusive: alpha >= threshold accepts.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")
    result = nearest_template(beta, templates)
    return result.alpha >= threshold, result
