#!/usr/bin/env python3
"""Run every shipped preset's documented sweep and print the level ladders.

Usage: python scripts/sweep_demo.py [preset ...]
"""

import sys

from slicelab.presets import PRESET_NAMES, load_preset
from slicelab.slicer import sweep


def main():
    names = sys.argv[1:] or PRESET_NAMES
    for name in names:
        p = load_preset(name)
        print(f"=== {name}: {p.description}")
        res = sweep(p.family, p.sweep_from, p.sweep_to, p.sweep_steps, grid_n=p.grid)
        for s in res.summaries:
            print(
                f"  a={s['level']:+.4f}  {s['components']}c {s['crossings']}x  "
                f"{s['classification']}"
            )
        for ev in res.events:
            print(
                f"  transition {ev.before} -> {ev.after} in "
                f"[{ev.bracket[0]:+.5f}, {ev.bracket[1]:+.5f}]"
            )
        if res.skipped:
            skipped = ", ".join(f"{e['level']:+.3f}" for e in res.skipped)
            print(f"  skipped non-generic levels: {skipped}")


if __name__ == "__main__":
    main()
