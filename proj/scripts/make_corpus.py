#!/usr/bin/env python3
# Copyright 2026 The docmark Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/corpus: five detailed photographs and five flat illustrations.

The photographs come from the scikit-image sample data set, converted to
8-bit grayscale and fitted to 512x512. The illustrations are drawn
procedurally with a fixed seed.
"""
import os
import sys

import numpy as np
from PIL import Image, ImageDraw, ImageFilter
import skimage.data as skd

SIZE = 512


def fit(img):
    img = img.convert("L")
    w, h = img.size
    side = min(w, h)
    left, top = (w - side) // 2, (h - side) // 2
    img = img.crop((left, top, left + side, top + side))
    if side != SIZE:
        img = img.resize((SIZE, SIZE), Image.LANCZOS)
    return img


def photos():
    yield "camera", fit(Image.fromarray(skd.camera()))
    yield "astronaut", fit(Image.fromarray(skd.astronaut()))
    yield "coffee", fit(Image.fromarray(skd.coffee()))
    yield "motorcycle", fit(Image.fromarray(skd.stereo_motorcycle()[0]))
    yield "gravel", fit(Image.fromarray(skd.gravel()))


def vertical_gradient(top, bottom):
    col = np.linspace(top, bottom, SIZE)[:, None]
    return Image.fromarray(np.repeat(col, SIZE, axis=1).astype(np.uint8))


def illustration(seed, shapes, top, bottom):
    rng = np.random.default_rng(seed)
    img = vertical_gradient(top, bottom)
    draw = ImageDraw.Draw(img)
    for _ in range(shapes):
        kind = rng.integers(0, 3)
        x0, y0 = rng.integers(-60, SIZE - 40, size=2)
        w, h = rng.integers(60, 260, size=2)
        fill = int(rng.integers(20, 250))
        outline = int(rng.integers(0, 60))
        box = [int(x0), int(y0), int(x0 + w), int(y0 + h)]
        if kind == 0:
            draw.ellipse(box, fill=fill, outline=outline, width=3)
        elif kind == 1:
            draw.rectangle(box, fill=fill, outline=outline, width=3)
        else:
            pts = [tuple(int(v) for v in rng.integers(0, SIZE, size=2)) for _ in range(3)]
            draw.polygon(pts, fill=fill, outline=outline)
    return img.filter(ImageFilter.GaussianBlur(1.2))


def illustrations():
    yield "ill_sunset", illustration(11, 6, 250, 120)
    yield "ill_house", illustration(23, 9, 235, 235)
    yield "ill_fish", illustration(37, 12, 90, 200)
    yield "ill_hills", illustration(41, 7, 255, 170)
    yield "ill_balloons", illustration(59, 14, 200, 245)


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "data", "corpus")
    os.makedirs(out, exist_ok=True)
    for name, img in list(photos()) + list(illustrations()):
        img.save(os.path.join(out, name + ".pgm"))
        a = np.asarray(img, dtype=float)
        score = (np.abs(np.diff(a, axis=1)).mean() + np.abs(np.diff(a, axis=0)).mean())
        print(f"{name:14s} detail={score:6.2f}")


if __name__ == "__main__":
    main()
