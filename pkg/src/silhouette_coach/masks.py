"""Image and mask primitives.

Grayscale images are 2-D uint8 arrays (row-major, 0-255 luminance).
Binary masks are 2-D bool arrays (True = foreground). All operations are
pure: inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DimensionMismatch, OutOfBounds

DEFAULT_DIFF_THRESHOLD = 30
DEFAULT_CLEAN_RADIUS = 1


@dataclass(frozen=True)
class GuideRect:
    """On-screen window standardizing the user's position and scale.

    (x, y) is the top-left corner; (w, h) the extent. Must lie within the
    image it crops.
    """

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"guide rect extent must be positive, got {self.w}x{self.h}")
        if self.x < 0 or self.y < 0:
            raise ValueError(f"guide rect origin must be non-negative, got ({self.x},{self.y})")


def _require_gray(img: np.ndarray, name: str) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2:
        raise DimensionMismatch(f"{name} must be a 2-D grayscale array, got shape {img.shape}")
    return img


def _require_mask(mask: np.ndarray, name: str = "mask") -> np.ndarray:
    mask = np.asarray(mask)
    if mask.ndim != 2:
        raise DimensionMismatch(f"{name} must be a 2-D mask, got shape {mask.shape}")
    return mask.astype(bool)


def to_grayscale(rgb: np.ndarray) -> np.ndarray:
    """Convert an (h, w, 3) uint8 RGB image to uint8 luminance.

    Uses BT.601 weights 0.299/0.587/0.114, rounded to nearest integer.
    """
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise DimensionMismatch(f"expected (h, w, 3) RGB array, got shape {rgb.shape}")
    luma = (
        0.299 * rgb[:, :, 0].astype(np.float64)
        + 0.587 * rgb[:, :, 1].astype(np.float64)
        + 0.114 * rgb[:, :, 2].astype(np.float64)
    )
    return np.clip(np.rint(luma), 0, 255).astype(np.uint8)


def subtract_background(
    background: np.ndarray, frame: np.ndarray, diff_threshold: int = DEFAULT_DIFF_THRESHOLD
) -> np.ndarray:
    """Foreground mask by absolute frame differencing.

    A pixel is foreground iff |frame - background| > diff_threshold.
    Symmetric in its two image arguments.
    """
    background = _require_gray(background, "background")
    frame = _require_gray(frame, "frame")
    if background.shape != frame.shape:
        raise DimensionMismatch(
            f"background shape {background.shape} != frame shape {frame.shape}"
        )
    diff = np.abs(background.astype(np.int16) - frame.astype(np.int16))
    return diff > diff_threshold


def clean_mask(mask: np.ndarray, radius: int = DEFAULT_CLEAN_RADIUS) -> np.ndarray:
    """Denoise a raw difference mask: opening then closing.

    Square structuring element of side 2*radius+1. Opening treats pixels
    outside the image as background (anti-extensive); closing's erosion
    stage treats them as foreground so closing never shrinks the mask.
    radius 0 is the identity.
    """
    mask = _require_mask(mask)
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if radius == 0:
        return mask.copy()
    selem = np.ones((2 * radius + 1, 2 * radius + 1), dtype=bool)
    opened = ndimage.binary_opening(mask, structure=selem)
    dilated = ndimage.binary_dilation(opened, structure=selem)
    return ndimage.binary_erosion(dilated, structure=selem, border_value=1)


def crop_to_guide(mask: np.ndarray, rect: GuideRect) -> np.ndarray:
    """Copy the guide-window sub-region; foreground outside it is discarded."""
    mask = _require_mask(mask)
    h, w = mask.shape
    if rect.x + rect.w > w or rect.y + rect.h > h:
        raise OutOfBounds(f"rect {rect} exceeds mask bounds {w}x{h}")
    return mask[rect.y : rect.y + rect.h, rect.x : rect.x + rect.w].copy()
