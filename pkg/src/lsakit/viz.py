"""Matrix heatmaps rendered to binary PPM or standalone SVG.

Both renderers share one value-to-color mapping and are byte-for-byte
deterministic: the same labeled matrix and spec always produce identical
output.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .corpus import LabeledMatrix

DISCRETE3 = "discrete3"
CONTINUOUS = "continuous"

BLACK = (0, 0, 0)
ORANGE = (230, 115, 0)
WHITE = (255, 255, 255)


@dataclass(frozen=True)
class HeatmapSpec:
    """Rendering options: palette, cell size, value window, labels.

    value_floor and value_ceiling bound the continuous ramp; values at or
    below the floor map to black, values at or past the ceiling map to
    white.  The discrete palette ignores the window and accepts exactly
    0, 1, 2.
    """

    palette: str = CONTINUOUS
    cell_px: int = 16
    value_floor: float = 0.0
    value_ceiling: float = 2.0
    show_labels: bool = False

    def __post_init__(self) -> None:
        if self.palette not in (DISCRETE3, CONTINUOUS):
            raise ValueError(f"unknown palette: {self.palette!r}")
        if self.cell_px < 1:
            raise ValueError(f"cell_px must be positive, got {self.cell_px}")
        if not self.value_floor < self.value_ceiling:
            raise ValueError(
                f"value_floor must be below value_ceiling, "
                f"got {self.value_floor} >= {self.value_ceiling}"
            )


def value_color(value: float, spec: HeatmapSpec) -> tuple[int, int, int]:
    """Map one matrix value to an RGB triple under the given spec."""
    if spec.palette == DISCRETE3:
        if value == 0.0:
            return BLACK
        if value == 1.0:
            return ORANGE
        if value == 2.0:
            return WHITE
        raise ValueError(
            f"discrete3 palette accepts only the values 0, 1 and 2, got {value!r}"
        )
    t = (value - spec.value_floor) / (spec.value_ceiling - spec.value_floor)
    t = min(1.0, max(0.0, t))
    # Two linear segments: black to orange, then orange to white.
    if t <= 0.5:
        lo, hi, s = BLACK, ORANGE, 2.0 * t
    else:
        lo, hi, s = ORANGE, WHITE, 2.0 * t - 1.0
    return tuple(int(a + (b - a) * s + 0.5) for a, b in zip(lo, hi))


def _color_grid(matrix: LabeledMatrix, spec: HeatmapSpec) -> np.ndarray:
    rows, cols = matrix.values.shape
    if rows == 0 or cols == 0:
        raise ValueError("cannot render an empty matrix")
    grid = np.zeros((rows, cols, 3), dtype=np.uint8)
    for i in range(rows):
        for j in range(cols):
            grid[i, j] = value_color(float(matrix.values[i, j]), spec)
    return grid


def render_ppm(matrix: LabeledMatrix, spec: HeatmapSpec) -> bytes:
    """Render as binary PPM (P6, maxval 255), one cell_px square per cell."""
    grid = _color_grid(matrix, spec)
    pixels = np.repeat(np.repeat(grid, spec.cell_px, axis=0), spec.cell_px, axis=1)
    height, width = pixels.shape[:2]
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + pixels.tobytes()


def render_svg(matrix: LabeledMatrix, spec: HeatmapSpec) -> str:
    """Render as standalone SVG, optionally with row and column labels."""
    grid = _color_grid(matrix, spec)
    rows, cols = grid.shape[:2]
    cell = spec.cell_px
    font = max(6, (cell * 3) // 5)
    if spec.show_labels:
        longest = max(len(label) for label in matrix.row_labels)
        left = (longest * font * 62) // 100 + 8
        top = font + 8
    else:
        left = 0
        top = 0
    width = left + cols * cell
    height = top + rows * cell
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" shape-rendering="crispEdges">'
    ]
    if spec.show_labels:
        for i, label in enumerate(matrix.row_labels):
            y = top + i * cell + cell // 2
            parts.append(
                f'<text x="{left - 4}" y="{y}" font-size="{font}" '
                f'font-family="monospace" text-anchor="end" '
                f'dominant-baseline="central">{escape(label)}</text>'
            )
        for j, label in enumerate(matrix.col_labels):
            x = left + j * cell + cell // 2
            parts.append(
                f'<text x="{x}" y="{top - 4}" font-size="{font}" '
                f'font-family="monospace" text-anchor="middle">'
                f"{escape(label)}</text>"
            )
    for i in range(rows):
        for j in range(cols):
            r, g, b = (int(c) for c in grid[i, j])
            parts.append(
                f'<rect x="{left + j * cell}" y="{top + i * cell}" '
                f'width="{cell}" height="{cell}" fill="rgb({r},{g},{b})"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_heatmap(matrix: LabeledMatrix, spec: HeatmapSpec, fmt: str = "ppm") -> bytes:
    """Render to image bytes in the named format ("ppm" or "svg")."""
    if fmt == "ppm":
        return render_ppm(matrix, spec)
    if fmt == "svg":
        return render_svg(matrix, spec).encode("utf-8")
    raise ValueError(f"unknown heatmap format: {fmt!r} (expected 'ppm' or 'svg')")


def _ppm_token(data: bytes, pos: int) -> tuple[bytes, int]:
    while pos < len(data) and data[pos : pos + 1] in (b" ", b"\t", b"\r", b"\n"):
        pos += 1
    start = pos
    while pos < len(data) and data[pos : pos + 1] not in (b" ", b"\t", b"\r", b"\n"):
        pos += 1
    if start == pos:
        raise ValueError("malformed PPM: truncated header")
    return data[start:pos], pos


def distinct_colors(ppm: bytes) -> int:
    """Count distinct RGB triples in a binary PPM produced by render_ppm."""
    magic, pos = _ppm_token(ppm, 0)
    if magic != b"P6":
        raise ValueError(f"malformed PPM: expected P6 magic, got {magic!r}")
    fields = []
    for _ in range(3):
        token, pos = _ppm_token(ppm, pos)
        if not token.isdigit():
            raise ValueError(f"malformed PPM: bad header field {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise ValueError(f"malformed PPM: expected maxval 255, got {maxval}")
    if width < 1 or height < 1:
        raise ValueError(f"malformed PPM: bad dimensions {width}x{height}")
    pos += 1  # exactly one whitespace byte separates the header from the data
    raster = ppm[pos:]
    expected = width * height * 3
    if len(raster) != expected:
        raise ValueError(
            f"malformed PPM: expected {expected} raster bytes, got {len(raster)}"
        )
    triples = np.frombuffer(raster, dtype=np.uint8).reshape(-1, 3)
    return int(np.unique(triples, axis=0).shape[0])
