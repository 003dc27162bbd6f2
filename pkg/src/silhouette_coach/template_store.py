"""Routine and template storage, builtin exemplars, synthetic datasets.

A store holds up to 3 ordered templates per routine. The builtin catalog
ships four routines (jumping jack, squat, lateral flexion stretches,
shoulder front raises) with 3 procedurally drawn stick-silhouette templates
each, standing in for expert-recorded silhouettes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np
from PIL import Image, ImageDraw
from scipy import ndimage

from . import pngio
from .errors import (
    DimensionMismatch,
    DuplicateSequence,
    EmptyMask,
    EmptyTemplateSet,
    MissingManifest,
    UnknownRoutine,
    UnknownTemplate,
)
from .masks import clean_mask
from .similarity import jaccard

DEFAULT_CANVAS = 128
MAX_TEMPLATES_PER_ROUTINE = 3

ROUTINE_NAMES = (
    "jumping jack",
    "squat",
    "lateral flexion stretches",
    "shoulder front raises",
)


def slugify(name: str) -> str:
    return name.strip().lower().replace(" ", "_")


def template_id(routine: str, sequence: int) -> str:
    return f"{slugify(routine)}:{sequence}"


@dataclass(frozen=True)
class Template:
    """A named, ordered exemplar silhouette within a routine."""

    id: str
    routine: str
    sequence: int
    mask: np.ndarray

    def __post_init__(self):
        if not np.asarray(self.mask, dtype=bool).any():
            raise EmptyMask(f"template {self.id} has no foreground pixels")


@dataclass(frozen=True)
class Routine:
    name: str
    templates: tuple[Template, ...]

    def __post_init__(self):
        if not 1 <= len(self.templates) <= MAX_TEMPLATES_PER_ROUTINE:
            raise ValueError(
                f"routine {self.name!r} must hold 1..{MAX_TEMPLATES_PER_ROUTINE} "
                f"templates, got {len(self.templates)}"
            )
        seqs = [t.sequence for t in self.templates]
        if seqs != list(range(1, len(seqs) + 1)):
            raise DuplicateSequence(
                f"routine {self.name!r} sequences must be contiguous from 1, got {seqs}"
            )


class TemplateStore:
    """Immutable collection of routines; iteration order is stable."""

    def __init__(self, routines: list[Routine]):
        self._routines = {r.name: r for r in routines}
        if len(self._routines) != len(routines):
            raise DuplicateSequence("duplicate routine names in store")
        self._by_id = {t.id: t for r in routines for t in r.templates}
        shapes = {t.mask.shape for t in self._by_id.values()}
        if len(shapes) > 1:
            raise DimensionMismatch(f"templates have differing dimensions: {sorted(shapes)}")

    @property
    def routines(self) -> list[Routine]:
        return list(self._routines.values())

    @property
    def templates(self) -> list[Template]:
        return [t for r in self._routines.values() for t in r.templates]

    @property
    def mask_shape(self) -> tuple[int, int] | None:
        templates = self.templates
        return templates[0].mask.shape if templates else None

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self) -> Iterator[Template]:
        return iter(self.templates)

    def routine(self, name: str) -> Routine:
        try:
            return self._routines[name]
        except KeyError:
            raise UnknownRoutine(f"no routine named {name!r}") from None

    def template(self, tid: str) -> Template:
        try:
            return self._by_id[tid]
        except KeyError:
            raise UnknownTemplate(f"no template with id {tid!r}") from None


def builtin_catalog() -> list[tuple[str, int]]:
    """The shipped routines and their template counts: 4 routines, 12 total."""
    return [(name, 3) for name in ROUTINE_NAMES]


# ---------------------------------------------------------------------------
# Procedural stick-silhouette drawing


def _draw_limb(draw: ImageDraw.ImageDraw, p0, p1, width: int) -> None:
    draw.line([tuple(p0), tuple(p1)], fill=255, width=width)
    r = width // 2
    for x, y in (p0, p1):
        draw.ellipse([x - r, y - r, x + r, y + r], fill=255)


def _stick_figure(
    size: int,
    arm_deg: float,
    leg_deg: float,
    lean_deg: float = 0.0,
    crouch: float = 0.0,
) -> np.ndarray:
    """Front-view stick silhouette with thick limbs.

    arm_deg/leg_deg are measured from straight-down; lean_deg tilts the
    torso and head sideways; crouch in [0, 1] lowers the figure and
    shortens the legs.
    """
    img = Image.new("L", (size, size), 0)
    draw = ImageDraw.Draw(img)
    s = size / 128.0
    stroke = max(9, round(13 * s))

    drop = 28 * s * crouch
    hip = np.array([size / 2, 82 * s + drop])
    torso_len = 34 * s
    lean = math.radians(lean_deg)
    shoulder = hip + torso_len * np.array([math.sin(lean), -math.cos(lean)])
    head_c = shoulder + (16 * s) * np.array([math.sin(lean), -math.cos(lean)])
    head_r = 11 * s

    _draw_limb(draw, hip, shoulder, stroke + 4)
    draw.ellipse(
        [head_c[0] - head_r, head_c[1] - head_r, head_c[0] + head_r, head_c[1] + head_r],
        fill=255,
    )

    arm_len = 30 * s
    for side in (-1, 1):
        a = math.radians(arm_deg) * side + lean
        tip = shoulder + arm_len * np.array([math.sin(a), math.cos(a)])
        _draw_limb(draw, shoulder, tip, stroke)

    leg_len = (36 - 14 * crouch) * s
    for side in (-1, 1):
        a = math.radians(leg_deg) * side
        tip = hip + leg_len * np.array([math.sin(a), math.cos(a)])
        _draw_limb(draw, hip, tip, stroke)

    mask = np.asarray(img, dtype=np.uint8) != 0
    # Settle to a fixed point of the default cleanup so an exact
    # reproduction of a template survives the session pipeline unchanged.
    for _ in range(5):
        settled = clean_mask(mask, 1)
        if (settled == mask).all():
            break
        mask = settled
    return mask


# Pose parameters per routine, one triple of figures each.
_POSES: dict[str, list[dict]] = {
    "jumping jack": [
        dict(arm_deg=10, leg_deg=6),
        dict(arm_deg=90, leg_deg=24),
        dict(arm_deg=165, leg_deg=38),
    ],
    "squat": [
        dict(arm_deg=45, leg_deg=12, crouch=0.15),
        dict(arm_deg=80, leg_deg=18, crouch=0.45),
        dict(arm_deg=85, leg_deg=26, crouch=0.85),
    ],
    "lateral flexion stretches": [
        dict(arm_deg=150, leg_deg=14, lean_deg=-30),
        dict(arm_deg=150, leg_deg=14, lean_deg=0),
        dict(arm_deg=150, leg_deg=14, lean_deg=30),
    ],
    "shoulder front raises": [
        dict(arm_deg=30, leg_deg=4),
        dict(arm_deg=62, leg_deg=4),
        dict(arm_deg=118, leg_deg=4),
    ],
}


def builtin_store(size: int = DEFAULT_CANVAS) -> TemplateStore:
    """The shipped 4-routine, 12-template store on a size x size canvas."""
    routines = []
    for name in ROUTINE_NAMES:
        templates = tuple(
            Template(
                id=template_id(name, i + 1),
                routine=name,
                sequence=i + 1,
                mask=_stick_figure(size, **params),
            )
            for i, params in enumerate(_POSES[name])
        )
        routines.append(Routine(name=name, templates=templates))
    return TemplateStore(routines)


# ---------------------------------------------------------------------------
# On-disk store layout: <root>/manifest + one mask PNG per template.
# Manifest lines are tab-separated: routine name, sequence, relative PNG path.

MANIFEST_NAME = "manifest"


def save_store(store: TemplateStore, root: str | Path) -> None:
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    lines = []
    for tpl in store.templates:
        rel = f"{slugify(tpl.routine)}_{tpl.sequence}.png"
        pngio.save_mask(tpl.mask, root / rel)
        lines.append(f"{tpl.routine}\t{tpl.sequence}\t{rel}")
    (root / MANIFEST_NAME).write_text("\n".join(lines) + ("\n" if lines else ""))


def load_store(root: str | Path) -> TemplateStore:
    root = Path(root)
    manifest = root / MANIFEST_NAME
    if not manifest.is_file():
        raise MissingManifest(f"no manifest at {manifest}")
    entries: dict[str, list[Template]] = {}
    for lineno, line in enumerate(manifest.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise MissingManifest(f"{manifest}:{lineno}: expected 3 tab-separated fields")
        routine, seq_str, rel = parts
        sequence = int(seq_str)
        path = root / rel
        if not path.is_file():
            raise MissingManifest(f"{manifest}:{lineno}: mask file {path} does not exist")
        tpl = Template(
            id=template_id(routine, sequence),
            routine=routine,
            sequence=sequence,
            mask=pngio.load_mask(path),
        )
        bucket = entries.setdefault(routine, [])
        if any(t.sequence == sequence for t in bucket):
            raise DuplicateSequence(f"duplicate sequence {sequence} in routine {routine!r}")
        bucket.append(tpl)
    routines = [
        Routine(name=name, templates=tuple(sorted(tpls, key=lambda t: t.sequence)))
        for name, tpls in entries.items()
    ]
    return TemplateStore(routines)


# ---------------------------------------------------------------------------
# Synthetic labeled attempts (stand-in for an unpublished physical dataset)


@dataclass(frozen=True)
class Perturbation:
    """Bounds on how far a "correct" attempt may deviate from its template."""

    dilate_px: int = 1
    erode_px: int = 0
    translate_px: int = 0

    def __post_init__(self):
        if min(self.dilate_px, self.erode_px, self.translate_px) < 0:
            raise ValueError("perturbation magnitudes must be >= 0")


@dataclass(frozen=True)
class LabeledAttempt:
    attempt_id: str
    mask: np.ndarray
    target_template_id: str
    label: str  # "correct" | "incorrect"


def _shift(mask: np.ndarray, dy: int, dx: int) -> np.ndarray:
    out = np.zeros_like(mask)
    h, w = mask.shape
    ys = slice(max(dy, 0), min(h + dy, h))
    xs = slice(max(dx, 0), min(w + dx, w))
    ys_src = slice(max(-dy, 0), min(h - dy, h))
    xs_src = slice(max(-dx, 0), min(w - dx, w))
    out[ys, xs] = mask[ys_src, xs_src]
    return out


def _square(radius: int) -> np.ndarray:
    return np.ones((2 * radius + 1, 2 * radius + 1), dtype=bool)


def _perturb(mask: np.ndarray, rng: np.random.Generator, p: Perturbation) -> np.ndarray:
    out = mask
    d = int(rng.integers(0, p.dilate_px + 1)) if p.dilate_px else 0
    e = int(rng.integers(0, p.erode_px + 1)) if p.erode_px else 0
    if d:
        out = ndimage.binary_dilation(out, structure=_square(d))
    if e:
        out = ndimage.binary_erosion(out, structure=_square(e))
    if p.translate_px:
        dy = int(rng.integers(-p.translate_px, p.translate_px + 1))
        dx = int(rng.integers(-p.translate_px, p.translate_px + 1))
        out = _shift(out, dy, dx)
    return out


def generate_synthetic_dataset(
    seed: int,
    store: TemplateStore,
    attempts_per_template: int = 5,
    perturbation: Perturbation = Perturbation(),
) -> list[LabeledAttempt]:
    """Deterministic labeled attempts: per template, n perturbed "correct"
    copies plus n "incorrect" copies drawn from other templates.

    Each correct attempt is checked during generation to score strictly
    higher against its target template than against any template disjoint
    from the target.
    """
    templates = store.templates
    if not templates:
        raise EmptyTemplateSet("store has no templates")
    rng = np.random.default_rng(seed)
    attempts: list[LabeledAttempt] = []
    for tpl in templates:
        others = [t for t in templates if t.id != tpl.id]
        for i in range(attempts_per_template):
            mask = _perturb(tpl.mask, rng, perturbation)
            if not mask.any():
                mask = tpl.mask.copy()
            target_alpha = jaccard(mask, tpl.mask)
            for other in others:
                if jaccard(tpl.mask, other.mask) == 0.0:
                    assert jaccard(mask, other.mask) < target_alpha
            attempts.append(
                LabeledAttempt(
                    attempt_id=f"{slugify(tpl.routine)}_{tpl.sequence}_correct_{i}",
                    mask=mask,
                    target_template_id=tpl.id,
                    label="correct",
                )
            )
        for i in range(attempts_per_template):
            other = others[int(rng.integers(0, len(others)))] if others else tpl
            attempts.append(
                LabeledAttempt(
                    attempt_id=f"{slugify(tpl.routine)}_{tpl.sequence}_incorrect_{i}",
                    mask=other.mask.copy(),
                    target_template_id=tpl.id,
                    label="incorrect",
                )
            )
    return attempts


# Dataset tree: <root>/attempts/<id>.png plus <root>/labels with one
# tab-separated line per attempt: relative path, target template id, label.

LABELS_NAME = "labels"


def save_dataset(attempts: list[LabeledAttempt], root: str | Path) -> None:
    root = Path(root)
    (root / "attempts").mkdir(parents=True, exist_ok=True)
    lines = []
    for att in attempts:
        rel = f"attempts/{att.attempt_id}.png"
        pngio.save_mask(att.mask, root / rel)
        lines.append(f"{rel}\t{att.target_template_id}\t{att.label}")
    (root / LABELS_NAME).write_text("\n".join(lines) + ("\n" if lines else ""))


def load_dataset(root: str | Path) -> list[LabeledAttempt]:
    root = Path(root)
    labels = root / LABELS_NAME
    if not labels.is_file():
        raise MissingManifest(f"no labels file at {labels}")
    attempts = []
    for lineno, line in enumerate(labels.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise MissingManifest(f"{labels}:{lineno}: expected 3 tab-separated fields")
        rel, target_id, label = parts
        path = root / rel
        if not path.is_file():
            raise MissingManifest(f"{labels}:{lineno}: attempt file {path} does not exist")
        if label not in ("correct", "incorrect"):
            raise ValueError(f"{labels}:{lineno}: bad label {label!r}")
        attempts.append(
            LabeledAttempt(
                attempt_id=Path(rel).stem,
                mask=pngio.load_mask(path),
                target_template_id=target_id,
                label=label,
            )
        )
    return attempts
