#!/usr/bin/env python3
"""Regenerate the bundled grey-scale test images in data/ from scikit-image's sample set.

All source images ship with scikit-image and are public domain or CC0.
"""
import pathlib

import numpy as np
from skimage import color, data, transform, util

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def grey(img):
    if img.ndim == 3:
        img = color.rgb2gray(img)
    return util.img_as_float(img)


def square(img, size):
    h, w = img.shape
    s = min(h, w)
    top, left = (h - s) // 2, (w - s) // 2
    img = img[top:top + s, left:left + s]
    return transform.resize(img, (size, size), anti_aliasing=True)


def save_pgm(path, img):
    img = np.clip(np.floor(img * 255.0 + 0.5), 0, 255).astype(np.uint8)
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(img.tobytes())


def main():
    OUT.mkdir(exist_ok=True)
    for name in ["camera", "astronaut", "coffee", "chelsea"]:
        save_pgm(OUT / f"{name}256.pgm", square(grey(getattr(data, name)()), 256))
    cam = grey(data.camera())
    save_pgm(OUT / "camera128.pgm", transform.resize(cam[64:320, 160:416], (128, 128), anti_aliasing=True))
    page = grey(data.page())
    save_pgm(OUT / "text128.pgm", page[44:172, 0:128])


if __name__ == "__main__":
    main()
