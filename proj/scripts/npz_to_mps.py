#!/usr/bin/env python3
"""Write a fixed-format MPS file from a SciPy linprog benchmark ``.npz``.

The SciPy benchmark suite ships a subset of the Netlib LP collection as
``c, A_ub, b_ub, A_eq, b_eq, bounds`` arrays.  Inequalities there are all
``<=`` (``>=`` rows were negated during conversion), so the generated file
contains N, E and L rows only.  The optimal objective stored in the archive
is emitted as a comment line so tests can use it as a reference value.

usage: npz_to_mps.py NAME.npz OUT.mps [--name NAME]
"""

import argparse
import math
import pathlib

import numpy as np


def fmt_num(v: float) -> str:
    s = repr(float(v))
    if s.endswith(".0"):
        s = s[:-2]
    if len(s) <= 12:
        return s
    for digits in range(12, 4, -1):
        s = "%.*g" % (digits, v)
        if len(s) <= 12:
            return s
    raise ValueError("cannot fit %r in 12 columns" % v)


def field_line(f1="", f2="", f3="", f4="", f5="", f6=""):
    # Columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
    line = " " + f1.ljust(2) + " " + f2.ljust(8) + "  " + f3.ljust(8) + "  " + f4.rjust(12)
    if f5:
        line += "   " + f5.ljust(8) + "  " + f6.rjust(12)
    return line.rstrip()


def convert(src: pathlib.Path, dst: pathlib.Path, name: str) -> None:
    d = np.load(src, allow_pickle=True)
    c = np.asarray(d["c"], dtype=float)
    a_eq = np.asarray(d["A_eq"], dtype=float).reshape(-1, c.size)
    b_eq = np.asarray(d["b_eq"], dtype=float).ravel()
    a_ub = np.asarray(d["A_ub"], dtype=float).reshape(-1, c.size)
    b_ub = np.asarray(d["b_ub"], dtype=float).ravel()
    n = c.size

    bounds = d["bounds"]
    lo = np.zeros(n)
    hi = np.full(n, math.inf)
    if bounds.size:
        pairs = bounds.reshape(-1, 2)
        for j, (l, u) in enumerate(pairs):
            lo[j] = -math.inf if l is None else float(l)
            hi[j] = math.inf if u is None else float(u)

    rows = ["E%04d" % i for i in range(a_eq.shape[0])] + ["L%04d" % i for i in range(a_ub.shape[0])]
    a = np.vstack([a_eq, a_ub])
    b = np.concatenate([b_eq, b_ub])
    cols = ["X%04d" % j for j in range(n)]

    out = []
    out.append("* %s converted from the SciPy linprog benchmark arrays" % name)
    if "obj" in d.files:
        out.append("* optimal objective %.11e" % float(d["obj"]))
    out.append("NAME          %s" % name)
    out.append("ROWS")
    out.append(" N  COST")
    for r in rows:
        out.append(" %s  %s" % (r[0], r))
    out.append("COLUMNS")
    for j in range(n):
        entries = []
        if c[j] != 0:
            entries.append(("COST", c[j]))
        for i in np.nonzero(a[:, j])[0]:
            entries.append((rows[i], a[i, j]))
        if not entries:
            entries.append(("COST", 0.0))
        for k in range(0, len(entries), 2):
            pair = entries[k:k + 2]
            if len(pair) == 2:
                out.append(field_line("", cols[j], pair[0][0], fmt_num(pair[0][1]), pair[1][0], fmt_num(pair[1][1])))
            else:
                out.append(field_line("", cols[j], pair[0][0], fmt_num(pair[0][1])))
    out.append("RHS")
    nz = [(rows[i], b[i]) for i in range(len(rows)) if b[i] != 0]
    for k in range(0, len(nz), 2):
        pair = nz[k:k + 2]
        if len(pair) == 2:
            out.append(field_line("", "RHS", pair[0][0], fmt_num(pair[0][1]), pair[1][0], fmt_num(pair[1][1])))
        else:
            out.append(field_line("", "RHS", pair[0][0], fmt_num(pair[0][1])))
    blines = []
    for j in range(n):
        if lo[j] == -math.inf and hi[j] == math.inf:
            blines.append(field_line("FR", "BND", cols[j]))
            continue
        if lo[j] == -math.inf:
            blines.append(field_line("MI", "BND", cols[j]))
        elif lo[j] != 0:
            blines.append(field_line("LO", "BND", cols[j], fmt_num(lo[j])))
        if hi[j] != math.inf:
            blines.append(field_line("UP", "BND", cols[j], fmt_num(hi[j])))
    if blines:
        out.append("BOUNDS")
        out.extend(blines)
    out.append("ENDATA")
    dst.write_text("\n".join(out) + "\n")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("src", type=pathlib.Path)
    ap.add_argument("dst", type=pathlib.Path)
    ap.add_argument("--name")
    args = ap.parse_args()
    convert(args.src, args.dst, args.name or args.src.stem)


if __name__ == "__main__":
    main()
