"""Up-sample Bernoulli(p) paths on Pascal's graph and watch kappa(z(m), (1,1)) approach p."""
import argparse

import numpy as np

from kmsflow import catalog, numeric as num
from kmsflow.paths import PathSampler, ergodic_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=200)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--paths", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--every", type=int, default=25)
    args = ap.parse_args()

    f = catalog.pascal_flow(args.depth, mode=num.FLOAT)
    nu = catalog.bernoulli_system(args.depth, args.p, mode=num.FLOAT)
    sampler = PathSampler(f, nu)
    target = f.graph.vertex(1, 1)
    rng = np.random.Generator(np.random.PCG64(args.seed))

    tables = [ergodic_experiment(f, nu, [target], args.depth, path=sampler.up(args.depth, rng).vertices)
              for _ in range(args.paths)]
    levels = tables[0].levels
    print("m,mean_kappa,max_abs_dev")
    for i, m in enumerate(levels):
        if m % args.every and m != levels[-1]:
            continue
        vals = [t.rows[i][0] for t in tables]
        print(f"{m},{np.mean(vals):.6f},{max(abs(v - args.p) for v in vals):.6f}")


if __name__ == "__main__":
    main()
