#!/usr/bin/env python3
"""Solve every MPS file in a directory with HiGHS and write problem,objective CSV.

The output is the objective oracle used by the acceptance tests.
"""
import argparse
import csv
import pathlib

import highspy


def solve(path: pathlib.Path) -> float:
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("presolve", "off")
    h.readModel(str(path))
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        raise RuntimeError(f"{path.name}: {h.modelStatusToString(status)}")
    return h.getInfo().objective_function_value


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("dir", type=pathlib.Path)
    ap.add_argument("out", type=pathlib.Path)
    args = ap.parse_args()
    rows = []
    for path in sorted(args.dir.glob("*.mps")):
        rows.append((path.stem, solve(path)))
        print(f"{path.stem:10s} {rows[-1][1]:.12g}")
    with args.out.open("w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["problem", "objective"])
        for name, obj in rows:
            w.writerow([name, repr(obj)])


if __name__ == "__main__":
    main()
