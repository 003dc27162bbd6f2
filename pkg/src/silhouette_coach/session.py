"""Live coaching session engine.

A session walks a user through one routine's templates in their fixed
order: capture a background frame, then score each submitted pose frame
against the current template only. A passing score (or exhausting the
attempt budget) advances to the next template; after the last template the
session is finished and yields a report.

The engine is a deterministic state machine: replaying the same frames
through a fresh session reproduces the same report.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, WrongPhase
from .masks import (
    DEFAULT_CLEAN_RADIUS,
    DEFAULT_DIFF_THRESHOLD,
    GuideRect,
    clean_mask,
    crop_to_guide,
    subtract_background,
)
from .similarity import DEFAULT_PASS_THRESHOLD, jaccard
from .template_store import Routine, TemplateStore


class Phase(str, enum.Enum):
    AWAITING_BACKGROUND = "awaiting-background"
    POSING = "posing"
    FINISHED = "finished"


@dataclass(frozen=True)
class SessionConfig:
    pass_threshold: float = DEFAULT_PASS_THRESHOLD
    max_attempts_per_template: int = 3
    diff_threshold: int = DEFAULT_DIFF_THRESHOLD
    clean_radius: int = DEFAULT_CLEAN_RADIUS

    def __post_init__(self):
        if not 0.0 <= self.pass_threshold <= 1.0:
            raise ValueError(f"pass_threshold must be in [0, 1], got {self.pass_threshold}")
        if self.max_attempts_per_template < 1:
            raise ValueError("max_attempts_per_template must be >= 1")


@dataclass(frozen=True)
class FrameFeedback:
    """Outcome of scoring one submitted frame."""

    alpha: float
    display_score: int  # alpha x 100, rounded — the on-screen convention
    passed: bool
    advanced: bool
    next_sequence: int | None
    session_finished: bool
    subject_detected: bool


@dataclass(frozen=True)
class SessionReport:
    routine: str
    best_alphas: list[float]  # by template sequence
    passed: list[bool]
    game_score: float  # 100 x mean best alpha

    @property
    def display_scores(self) -> list[int]:
        return [round(a * 100) for a in self.best_alphas]


class Session:
    """One user's progress through one routine. Not thread-safe on its own;
    callers serialize mutations per session."""

    def __init__(self, routine: Routine, guide: GuideRect, config: SessionConfig):
        tpl_shape = routine.templates[0].mask.shape
        if (rect_shape := (guide.h, guide.w)) != tpl_shape:
            raise DimensionMismatch(
                f"guide extent {rect_shape} must equal template dimensions {tpl_shape}"
            )
        self.routine = routine
        self.guide = guide
        self.config = config
        self.phase = Phase.AWAITING_BACKGROUND
        self.current_sequence = 1
        self.background: np.ndarray | None = None
        self.best_alphas: dict[int, float] = {}
        self.attempts_used = 0

    @property
    def template_count(self) -> int:
        return len(self.routine.templates)

    @property
    def current_template(self):
        return self.routine.templates[self.current_sequence - 1]

    def submit_background(self, frame: np.ndarray) -> None:
        if self.phase != Phase.AWAITING_BACKGROUND:
            raise WrongPhase(f"background already captured (phase={self.phase.value})")
        frame = np.asarray(frame)
        h, w = frame.shape
        if self.guide.x + self.guide.w > w or self.guide.y + self.guide.h > h:
            raise DimensionMismatch(
                f"guide rect {self.guide} does not fit a {w}x{h} frame"
            )
        self.background = frame.copy()
        self.phase = Phase.POSING

    def submit_frame(self, frame: np.ndarray) -> FrameFeedback:
        if self.phase != Phase.POSING:
            raise WrongPhase(f"cannot score a frame in phase {self.phase.value}")
        frame = np.asarray(frame)
        assert self.background is not None
        if frame.shape != self.background.shape:
            raise DimensionMismatch(
                f"frame shape {frame.shape} != background shape {self.background.shape}"
            )
        raw = subtract_background(self.background, frame, self.config.diff_threshold)
        beta = crop_to_guide(clean_mask(raw, self.config.clean_radius), self.guide)

        subject_detected = bool(beta.any())
        if subject_detected:
            alpha = jaccard(beta, self.current_template.mask)
        else:
            # Empty user mask vs non-empty template: 0 / |template| = 0.
            alpha = 0.0

        seq = self.current_sequence
        self.best_alphas[seq] = max(self.best_alphas.get(seq, 0.0), alpha)
        self.attempts_used += 1

        passed = alpha >= self.config.pass_threshold
        advanced = passed or self.attempts_used >= self.config.max_attempts_per_template
        if advanced:
            self.attempts_used = 0
            if seq >= self.template_count:
                self.phase = Phase.FINISHED
            else:
                self.current_sequence = seq + 1

        return FrameFeedback(
            alpha=alpha,
            display_score=round(alpha * 100),
            passed=passed,
            advanced=advanced,
            next_sequence=self.current_sequence if self.phase == Phase.POSING else None,
            session_finished=self.phase == Phase.FINISHED,
            subject_detected=subject_detected,
        )

    def report(self) -> SessionReport:
        if self.phase != Phase.FINISHED:
            raise WrongPhase(f"report requires a finished session (phase={self.phase.value})")
        best = [self.best_alphas.get(i, 0.0) for i in range(1, self.template_count + 1)]
        return SessionReport(
            routine=self.routine.name,
            best_alphas=best,
            passed=[a >= self.config.pass_threshold for a in best],
            game_score=100.0 * sum(best) / len(best),
        )


def start_session(
    store: TemplateStore,
    routine_name: str,
    guide: GuideRect,
    config: SessionConfig = SessionConfig(),
) -> Session:
    """New session at phase awaiting-background, first template pending."""
    return Session(store.routine(routine_name), guide, config)
