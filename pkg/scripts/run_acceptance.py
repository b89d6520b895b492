"""Run the acceptance checks and write a JSON report.

    python scripts/run_acceptance.py --out acceptance.json
    python scripts/run_acceptance.py --only unitarity,continuity
"""

import argparse
import json
import sys
import time

from isq_spectral.verify import CHECKS, VerifyConfig, run_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", default="", help=f"comma-separated subset of {','.join(CHECKS)}")
    ap.add_argument("--seed", type=int, default=VerifyConfig.seed)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    only = [s for s in args.only.split(",") if s]
    unknown = set(only) - set(CHECKS)
    if unknown:
        ap.error(f"unknown checks: {sorted(unknown)}")
    cfg = VerifyConfig(seed=args.seed)
    t0 = time.perf_counter()
    results = run_all(cfg, only or None)
    for i, res in enumerate(results, 1):
        print(f"{i:2d} {res.line()}")
    print(f"{sum(r.passed for r in results)}/{len(results)} passed in {time.perf_counter() - t0:.1f}s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"seed": args.seed, "results": [r.to_dict() for r in results]}, fh, indent=2, default=str)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
