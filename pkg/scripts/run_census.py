"""Census tables for T2(F2), T2(Λ2) and the growth of T2(Λt) with the bound.

    python3 scripts/run_census.py [--t 6] [--bounds 4 6 8] [--out DIR]
"""

import argparse
from pathlib import Path

from trigp import io
from trigp.algebra import field_algebra, truncated_polynomial
from trigp.classify import census_for
from trigp.config import WorkspaceConfig
from trigp.triangular import t2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", type=int, default=6)
    ap.add_argument("--bounds", type=int, nargs="+", default=[4, 6, 8])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    cfg = WorkspaceConfig(seed=args.seed, out_dir=Path(args.out))
    conf = {k: v for k, v in cfg.to_dict().items() if k != "out_dir"}

    f2 = field_algebra(2)
    f2.name = "F2"
    l2 = truncated_polynomial(2, 2)
    l2.name = "L2"
    for name, g in (("t2_f2", t2(f2)), ("t2_lambda2", t2(l2))):
        c = census_for(g, 4, cfg.census_config())
        print(f"== {name}")
        print(c.table())
        io.write_atomic(cfg.out_dir / f"census_{name}_b4.json", io.dumps(io.census_doc(c, conf)))

    lt = truncated_polynomial(2, args.t)
    lt.name = f"L{args.t}"
    g = t2(lt)
    print(f"== T2(L{args.t})")
    for b in args.bounds:
        c = census_for(g, b, cfg.census_config())
        io.write_atomic(cfg.out_dir / f"census_t2_lambda{args.t}_b{b}.json", io.dumps(io.census_doc(c, conf)))
        print(f"bound {b}: {c.table().splitlines()[-1]}")


if __name__ == "__main__":
    main()
