"""Plancherel growth on the Young lattice.

Samples a random standard tableau shape by growing up to level N and reports
the first row and column lengths against 2 sqrt(N), plus the link row
kappa(lambda(N), .) on level 1 and 2 compared with the Plancherel values.
"""
import argparse
import math

import numpy as np

from kmsflow import catalog
from kmsflow.links import link_column
from kmsflow.paths import sample_up


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    f = catalog.young_flow(args.depth)
    nu = catalog.plancherel_system(args.depth)
    path = sample_up(f, nu, args.depth, args.seed)
    g = f.graph
    targets = [z for n in (1, 2) for z in g.levels[n]]
    cols = {t: link_column(f, t) for t in targets}
    print("n,shape,row1,col1,2sqrt(n)," + ",".join(f"k[{t.label}]" for t in targets if t.level == 2))
    for z in path.vertices:
        lam = catalog.parse_partition(z.label)
        ks = [str(cols[t][z]) if z.level > 2 else "" for t in targets if t.level == 2]
        print(f"{z.level},{z.label.replace(',', ' ')},{lam[0]},{len(lam)},{2 * math.sqrt(z.level):.3f}," + ",".join(ks))
    print("plancherel level 2:", {t.label: str(nu[t]) for t in g.levels[2]})


if __name__ == "__main__":
    main()
