#!/usr/bin/env python3
"""Render the catalog shapes and preset slices to SVG files.

Usage: python scripts/render_gallery.py [OUTDIR]
"""

import pathlib
import sys

from slicelab.catalog import realize
from slicelab.presets import all_presets
from slicelab.slicer import extract_slice
from slicelab.svg import render_svg

CATALOG = [
    ("eight-plus", "8+(1)"),
    ("eight-minus", "8-(1)"),
    ("cat-realizable", "C(+,-,+;1,2,2)"),
    ("cat-impossible-mid", "C(-,+,-;3,1,2)"),
    ("cat-impossible-all", "C(-,-,-;3,1,2)"),
    ("cat-open-question", "C(+,+,+;1,2,2)"),
    ("sum", "8+(1) + 8+(2)"),
    ("nest", "nest(8-(1),8+(20))"),
    ("merge", "merge(1/4,1/2,6)"),
]


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "gallery")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, expr in CATALOG:
        path = outdir / f"catalog-{name}.svg"
        path.write_text(render_svg(realize(expr)))
        print(f"wrote {path}")
    for preset in all_presets():
        res = extract_slice(preset.family, preset.level, grid_n=preset.grid)
        path = outdir / f"preset-{preset.name}.svg"
        path.write_text(render_svg(res.diagram))
        print(f"wrote {path}  ({res.classification.label})")


if __name__ == "__main__":
    main()
