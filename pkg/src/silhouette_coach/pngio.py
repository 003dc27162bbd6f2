"""PNG serialization for grayscale images and binary masks.

Mask files are 8-bit single-channel grayscale PNGs: background = 0,
foreground = 255. Any nonzero value on load counts as foreground.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image

from .masks import to_grayscale


def encode_gray(img: np.ndarray) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(np.asarray(img, dtype=np.uint8), mode="L").save(buf, format="PNG")
    return buf.getvalue()


def decode_gray(data: bytes) -> np.ndarray:
    """Decode PNG bytes to a uint8 grayscale array.

    RGB/RGBA inputs (e.g. browser canvas captures) are converted with the
    standard luma weights; the alpha channel is ignored.
    """
    img = Image.open(io.BytesIO(data))
    if img.mode == "L":
        return np.asarray(img, dtype=np.uint8)
    if img.mode == "RGBA":
        img = img.convert("RGB")
    if img.mode != "RGB":
        img = img.convert("RGB")
    return to_grayscale(np.asarray(img, dtype=np.uint8))


def encode_mask(mask: np.ndarray) -> bytes:
    return encode_gray(np.where(np.asarray(mask, dtype=bool), 255, 0).astype(np.uint8))


def decode_mask(data: bytes) -> np.ndarray:
    return decode_gray(data) != 0


def save_gray(img: np.ndarray, path: str | Path) -> None:
    Path(path).write_bytes(encode_gray(img))


def load_gray(path: str | Path) -> np.ndarray:
    return decode_gray(Path(path).read_bytes())


def save_mask(mask: np.ndarray, path: str | Path) -> None:
    Path(path).write_bytes(encode_mask(mask))


def load_mask(path: str | Path) -> np.ndarray:
    return decode_mask(Path(path).read_bytes())


def load_rgb(path: str | Path) -> np.ndarray:
    img = Image.open(path).convert("RGB")
    return np.asarray(img, dtype=np.uint8)
