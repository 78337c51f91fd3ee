#!/usr/bin/env python3
"""Independent float64 pilot for the density goldens.

Re-implements the slab scan with numpy (no shared code with the C++ side)
and writes the per-target best errors used as acceptance bounds:

  tests/golden/pair_density.csv    x1^2+x2^2-x3^2, xi=(0,0,sqrt2), L=x1+x2+sqrt2*x3
                                   targets {-3..3}^2, eps 0.5, R in {50,100,200}
  tests/golden/single_density.csv  same form without L, targets {0,+-1,+-e}, R=200

Usage: python3 tools/pilot/pilot_density.py [outdir]
"""
import math
import sys
from pathlib import Path

import numpy as np

S2 = math.sqrt(2.0)


def q_val(x1, x2, x3):
    return x1 * x1 + x2 * x2 - (x3 + S2) ** 2


def lex_best(err, pts):
    """Smallest error, ties to the lexicographically smallest point."""
    m = err.min()
    cand = pts[err == m]
    order = np.lexsort((cand[:, 2], cand[:, 1], cand[:, 0]))
    return m, cand[order[0]]


def pair_scan(R, a, b, eps):
    x1, x2 = np.meshgrid(np.arange(-R, R + 1), np.arange(-R, R + 1), indexing="ij")
    x1 = x1.ravel().astype(float)
    x2 = x2.ravel().astype(float)
    rest = x1 + x2
    lo = np.maximum(np.ceil((b - eps - rest) / S2), -R)
    hi = np.minimum(np.floor((b + eps - rest) / S2), R)
    errs, pts = [], []
    width = int(max(0, (hi - lo).max())) + 1
    for k in range(width):
        x3 = lo + k
        m = x3 <= hi
        X1, X2, X3 = x1[m], x2[m], x3[m]
        L = X1 + X2 + S2 * X3
        dl = np.abs(L - b)
        ok = dl <= eps
        e = np.maximum(np.abs(q_val(X1, X2, X3) - a), dl)[ok]
        errs.append(e)
        pts.append(np.stack([X1[ok], X2[ok], X3[ok]], axis=1))
    err = np.concatenate(errs)
    pt = np.concatenate(pts)
    return lex_best(err, pt)


def single_scan(R, a):
    r = np.arange(-R, R + 1, dtype=float)
    x2, x3 = np.meshgrid(r, r, indexing="ij")
    x2 = x2.ravel()
    x3 = x3.ravel()
    best_e, best_p = math.inf, None
    for x1 in r:
        e = np.abs(q_val(x1, x2, x3) - a)
        m = e.min()
        if m < best_e:  # x1 ascends, so an earlier slice wins ties
            idx = np.flatnonzero(e == m)
            pts = np.stack([np.full(idx.size, x1), x2[idx], x3[idx]], axis=1)
            best_e, best_p = lex_best(e[idx], pts)
    return best_e, best_p


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[2] / "tests" / "golden"
    out.mkdir(parents=True, exist_ok=True)
    rows = ["target_a,target_b,R,x1,x2,x3,err"]
    for a in range(-3, 4):
        for b in range(-3, 4):
            for R in (50, 100, 200):
                e, p = pair_scan(R, float(a), float(b), 0.5)
                rows.append(f"{a},{b},{R},{int(p[0])},{int(p[1])},{int(p[2])},{e:.12g}")
    (out / "pair_density.csv").write_text("\n".join(rows) + "\n")

    rows = ["target_a,R,x1,x2,x3,err"]
    for a in (0.0, 1.0, -1.0, math.e, -math.e):
        e, p = single_scan(200, a)
        rows.append(f"{a:.17g},200,{int(p[0])},{int(p[1])},{int(p[2])},{e:.12g}")
    (out / "single_density.csv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
