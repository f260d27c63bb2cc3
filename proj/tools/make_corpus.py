#!/usr/bin/env python3
"""Regenerate tests/data from the scikit-image bundled sample images.

Natural/scientific photos go to tests/data/corpus (gating set), texture
tiles to tests/data/texture (reported only). Every image is reduced to
8-bit luma with BT.601 weights and center-cropped to 512x512.
"""
import pathlib
import sys

import numpy as np
import skimage.data

NATURAL = ["camera", "moon", "astronaut", "immunohistochemistry", "cell", "retina"]
TEXTURE = ["brick", "grass", "gravel"]


def luma(im):
    if im.ndim == 3:
        im = np.rint(im[..., 0] * 0.299 + im[..., 1] * 0.587 + im[..., 2] * 0.114)
    return np.clip(im, 0, 255).astype(np.uint8)


def crop512(im):
    h, w = im.shape
    y, x = (h - 512) // 2, (w - 512) // 2
    return im[y:y + 512, x:x + 512]


def write_pgm(path, im):
    h, w = im.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(im.tobytes())


def main(root):
    root = pathlib.Path(root)
    for sub, names in (("corpus", NATURAL), ("texture", TEXTURE)):
        out = root / sub
        out.mkdir(parents=True, exist_ok=True)
        for n in names:
            write_pgm(out / f"{n}.pgm", crop512(luma(getattr(skimage.data, n)())))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "tests" / "data")
