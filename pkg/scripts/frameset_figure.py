#!/usr/bin/env python3
"""Scan the (alpha, beta) frame-set map of the triangle window.

Writes frameset.csv and frameset.pgm into --outdir and prints a coarse
ASCII rendering plus agreement statistics between the numeric bounds and
the analytic region classification.
"""

import argparse
import os
import sys

import numpy as np

from gaborlab import SampleGrid, WindowSpec, classify_point_g2, region_expects_frame, scan_frame_set
from gaborlab.frames import FRAME_RATIO
from gaborlab.serialize import framemap_csv, framemap_pgm


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--res", type=int, default=32)
    ap.add_argument("--L", type=int, default=1024)
    ap.add_argument("--delta", type=float, default=1 / 32)
    ap.add_argument("--window", default="bspline:2")
    ap.add_argument("--outdir", default="out_frameset")
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args()

    from gaborlab import parse_window

    grid = SampleGrid(args.L, args.delta)
    spec = parse_window(args.window)
    fmap = scan_frame_set(spec, (0, 2), (0, 2), args.res, grid, threads=args.threads)

    os.makedirs(args.outdir, exist_ok=True)
    with open(os.path.join(args.outdir, "frameset.csv"), "w") as fh:
        fh.write(framemap_csv(fmap))
    with open(os.path.join(args.outdir, "frameset.pgm"), "wb") as fh:
        fh.write(framemap_pgm(fmap))

    is_frame = fmap.A > FRAME_RATIO * fmap.B
    print(f"window {spec.label()}, {args.res}x{args.res} cells, L={args.L}")
    for i in reversed(range(args.res)):
        row = "".join("#" if is_frame[i, j] else "." for j in range(args.res))
        print(row)
    if spec.family == "bspline" and int(spec.param) == 2:
        agree = total = 0
        for i in range(args.res):
            for j in range(args.res):
                label = classify_point_g2(fmap.alpha_snapped[i, j], fmap.beta_snapped[i, j])
                expect = region_expects_frame(label)
                if expect is None:
                    continue
                total += 1
                agree += int(expect == bool(is_frame[i, j]))
        print(f"classifier agreement at snapped points: {agree}/{total}")
    print(f"artifacts in {args.outdir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
