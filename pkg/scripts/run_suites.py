"""Run every verification suite and write a JSON summary.

    python3 scripts/run_suites.py [--out DIR] [--seed N] [--bound B] [names...]
"""

import argparse
import json
from pathlib import Path

from trigp import io
from trigp.config import WorkspaceConfig
from trigp.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", default=list(SUITES))
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bound", type=int, default=8)
    args = ap.parse_args()
    cfg = WorkspaceConfig(bound=args.bound, seed=args.seed, out_dir=Path(args.out))
    rows = []
    for name in args.names:
        res = run_suite(name, cfg)
        rows.append(res.summary())
        print(f"{name:14s} {'pass' if res.passed else 'FAIL'}  checked={res.checked:4d}  "
              f"{res.seconds:6.1f}s  {res.details}")
        for f in res.failures[:3]:
            print(f"    {f}")
    path = io.write_atomic(cfg.out_dir / "suites.json",
                           json.dumps({"config": {**cfg.to_dict(), "out_dir": str(cfg.out_dir)}, "suites": rows},
                                      indent=1, sort_keys=True, default=str))
    print("wrote", path)
    return 0 if all(r["passed"] for r in rows) else 2


if __name__ == "__main__":
    raise SystemExit(main())
