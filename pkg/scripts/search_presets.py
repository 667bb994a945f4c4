#!/usr/bin/env python3
"""Random search over few-bump families for interesting slice windows.

Samples two- and three-bump families, sweeps each through its negative
range, and reports families whose level ladders show several distinct
shapes.  This is the experiment that produced the shipped presets; rerun
it with a different seed to hunt for new windows (nested images and full
single-family columns are still open).

Usage: python scripts/search_presets.py [--seed N] [--families K]
"""

import argparse
import json
import random

import numpy as np

from slicelab.families import BumpTerm, GeneratingFamily
from slicelab.slicer import NonGenericLevel, extract_slice


def random_family(rng: random.Random) -> GeneratingFamily:
    n_terms = rng.choice((2, 2, 3))
    terms = [BumpTerm(1.0, 0.0, 0.0, 1.0, 1.0)]
    for _ in range(n_terms - 1):
        terms.append(
            BumpTerm(
                c=rng.uniform(-1.0, 1.0),
                p=rng.uniform(-0.8, 0.8),
                q=rng.uniform(-0.5, 0.7),
                s=rng.uniform(0.35, 1.0),
                t=rng.uniform(0.35, 1.0),
            )
        )
    return GeneratingFamily(tuple(terms))


def ladder(family: GeneratingFamily, grid_n: int = 192):
    out = []
    for a in np.linspace(-0.38, -0.01, 20):
        try:
            res = extract_slice(family, float(a), grid_n=grid_n)
        except NonGenericLevel:
            out.append((float(a), "NG"))
            continue
        out.append((float(a), res.classification.family))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--families", type=int, default=40)
    ap.add_argument("--min-shapes", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    for k in range(args.families):
        fam = random_family(rng)
        steps = ladder(fam)
        shapes = {s for _, s in steps if s not in ("NG", "empty")}
        if len(shapes) >= args.min_shapes:
            print(f"--- candidate {k}: {len(shapes)} shapes {sorted(shapes)}")
            print(json.dumps(fam.to_json_dict()))
            print("   ", " ".join(f"{a:.2f}:{s}" for a, s in steps))


if __name__ == "__main__":
    main()
