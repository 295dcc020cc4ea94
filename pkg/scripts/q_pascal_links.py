"""Links of the q-weighted Pascal flow compared with the classical q = 1 links.

For each q the script prints kappa((n, k), (1, 1)) along the diagonal k = n // 2.
At q = 1 this is k / n; for q < 1 mass shifts towards paths that climb late.
"""
import argparse
from fractions import Fraction

from kmsflow import catalog
from kmsflow.links import link_column


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=16)
    ap.add_argument("--q", nargs="+", default=["1", "3/4", "1/2", "1/4"])
    args = ap.parse_args()

    flows = {q: catalog.q_pascal(args.depth, Fraction(q), 1) for q in args.q}
    cols = {q: link_column(f, f.graph.vertex(1, 1)) for q, f in flows.items()}
    print("n,k," + ",".join(f"q={q}" for q in args.q))
    for n in range(2, args.depth + 1):
        z = flows[args.q[0]].graph.vertex(n, n // 2)
        print(f"{n},{n // 2}," + ",".join(f"{float(cols[q][z]):.6f}" for q in args.q))


if __name__ == "__main__":
    main()
