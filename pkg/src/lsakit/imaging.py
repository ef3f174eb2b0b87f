"""Grayscale PGM images and low-rank photographic compression."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import frobenius_distance, reconstruct, svd, truncate


@dataclass(frozen=True)
class GrayImage:
    """An 8-bit grayscale raster, row-major, shape (height, width)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D raster, got shape {pixels.shape}")
        if not np.issubdtype(pixels.dtype, np.integer):
            raise ValueError(f"pixel values must be integers, got dtype {pixels.dtype}")
        as_int = pixels.astype(np.int64)
        if (as_int < 0).any() or (as_int > 255).any():
            raise ValueError("pixel values must lie in 0..255")
        object.__setattr__(self, "pixels", as_int.astype(np.uint8))

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])


_WHITESPACE = (b" ", b"\t", b"\r", b"\n")


def _pgm_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next header token, skipping whitespace and # comments."""
    while pos < len(data):
        byte = data[pos : pos + 1]
        if byte in _WHITESPACE:
            pos += 1
        elif byte == b"#":
            while pos < len(data) and data[pos : pos + 1] != b"\n":
                pos += 1
        else:
            break
    start = pos
    while pos < len(data) and data[pos : pos + 1] not in _WHITESPACE:
        pos += 1
    if start == pos:
        raise ValueError("malformed PGM: truncated header")
    return data[start:pos], pos


def read_pgm(data: bytes) -> GrayImage:
    """Read a P2 (ascii) or P5 (binary) PGM with maxval up to 255.

    Header comments are honored.  Values above the declared maxval, a
    maxval above 255, bad dimensions, and short pixel data are errors.
    Values are stored as-is; nothing is rescaled.
    """
    magic, pos = _pgm_token(data, 0)
    if magic not in (b"P2", b"P5"):
        raise ValueError(f"malformed PGM: expected P2 or P5 magic, got {magic!r}")
    fields = []
    for _ in range(3):
        token, pos = _pgm_token(data, pos)
        if not token.isdigit():
            raise ValueError(f"malformed PGM: bad header field {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ValueError(f"malformed PGM: bad dimensions {width}x{height}")
    if maxval < 1 or maxval > 255:
        raise ValueError(f"malformed PGM: maxval must be 1..255, got {maxval}")
    count = width * height
    if magic == b"P5":
        pos += 1  # single whitespace byte between header and raster
        raster = data[pos:]
        if len(raster) != count:
            raise ValueError(
                f"truncated pixel data: expected {count} bytes, got {len(raster)}"
            )
        values = np.frombuffer(raster, dtype=np.uint8).astype(np.int64)
    else:
        text = data[pos:].decode("ascii", errors="strict")
        cleaned = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
        tokens = cleaned.split()
        if len(tokens) != count:
            raise ValueError(
                f"truncated pixel data: expected {count} values, got {len(tokens)}"
            )
        try:
            values = np.array([int(t) for t in tokens], dtype=np.int64)
        except ValueError:
            raise ValueError("malformed PGM: pixel values must be integers") from None
        if (values < 0).any():
            raise ValueError("malformed PGM: pixel values must be non-negative")
    if (values > maxval).any():
        raise ValueError(
            f"malformed PGM: pixel value {int(values.max())} exceeds maxval {maxval}"
        )
    return GrayImage(pixels=values.reshape(height, width))


def load_pgm(path: str | Path) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def write_pgm(image: GrayImage) -> bytes:
    """Serialize as binary PGM with the canonical one-line header."""
    header = f"P5 {image.width} {image.height} 255\n".encode("ascii")
    return header + image.pixels.tobytes()


def save_pgm(image: GrayImage, path: str | Path) -> None:
    Path(path).write_bytes(write_pgm(image))


def _round_half_away(values: np.ndarray) -> np.ndarray:
    return np.where(values >= 0.0, np.floor(values + 0.5), np.ceil(values - 0.5))


@dataclass(frozen=True)
class RankReport:
    """Approximation quality at one rank."""

    k: int
    rel_error: float
    energy: float


def compress_image(image: GrayImage, k: int) -> tuple[GrayImage, RankReport]:
    """Rank-k approximation of the raster plus its quality report.

    Pixels are rounded half-away-from-zero and clamped to 0..255; the
    report measures the unrounded approximation.  rel_error is
    |A - A_k|_F / |A|_F and energy is the fraction of total squared
    singular value mass the first k values carry; a completely black
    image reports error 0 and energy 1 at every rank.  k must lie in
    1..min(height, width).
    """
    a = image.pixels.astype(np.float64)
    factors = svd(a)
    approx = reconstruct(truncate(factors, k))
    rounded = np.clip(_round_half_away(approx), 0, 255)
    norm = float(np.sqrt((a * a).sum()))
    rel_error = frobenius_distance(a, approx) / norm if norm > 0.0 else 0.0
    total = float((factors.sigma**2).sum())
    energy = float((factors.sigma[:k] ** 2).sum()) / total if total > 0.0 else 1.0
    report = RankReport(k=k, rel_error=rel_error, energy=energy)
    return GrayImage(pixels=rounded.astype(np.uint8)), report


def compress(image: GrayImage, k: int) -> GrayImage:
    """The rounded rank-k raster alone; see compress_image."""
    return compress_image(image, k)[0]


def rank_report(image: GrayImage, k: int) -> RankReport:
    """The rank-k quality report alone; see compress_image."""
    return compress_image(image, k)[1]


def format_report(report: RankReport) -> str:
    """One tab-separated line: k, relative error, energy retained."""
    return f"{report.k}\t{report.rel_error:.6f}\t{report.energy:.6f}\n"
