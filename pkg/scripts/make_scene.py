"""Regenerate tests/data/scene.pgm.

The test image is a synthetic 64x48 landscape: a sky gradient, a sun
disc, a sinusoidal ridge line, three dark rocks, and seeded grain.  The
grain makes the raster numerically full-rank, so every truncation rank
leaves a measurable residual.  Deterministic: reruns write identical
bytes.
"""

from pathlib import Path

import numpy as np

from lsakit.imaging import GrayImage, save_pgm


def build_scene() -> GrayImage:
    w, h = 64, 48
    x = np.arange(w)[None, :].astype(float)
    y = np.arange(h)[:, None].astype(float)

    scene = 200.0 - 80.0 * (y / (h - 1)) * np.ones((1, w))
    sun = (x - 46.0) ** 2 + (y - 9.0) ** 2 <= 36.0
    scene = np.where(sun, 250.0, scene)

    ridge = 28.0 + 4.0 * np.sin(x / 7.0) + 2.0 * np.sin(x / 2.3)
    gvalue = (
        90.0
        - 50.0 * (y - 28.0) / (h - 28.0)
        + 6.0 * np.sin(0.7 * x) * np.cos(1.3 * y)
    )
    scene = np.where(y > ridge, gvalue, scene)

    rocks = [
        (14.0, 40.0, 5.0, 2.5, 25.0),
        (34.0, 43.0, 7.0, 3.0, 35.0),
        (52.0, 38.0, 4.0, 2.0, 20.0),
    ]
    for cx, cy, rx, ry, value in rocks:
        mask = ((x - cx) / rx) ** 2 + ((y - cy) / ry) ** 2 <= 1.0
        scene = np.where(mask, value, scene)

    scene = scene + np.random.RandomState(7).randint(-4, 5, size=(h, w))
    pixels = np.clip(np.floor(scene + 0.5), 0, 255).astype(np.uint8)
    return GrayImage(pixels=pixels)


if __name__ == "__main__":
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "scene.pgm"
    out.parent.mkdir(parents=True, exist_ok=True)
    save_pgm(build_scene(), out)
    print(f"wrote {out}")
