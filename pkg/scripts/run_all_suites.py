"""Run every property suite for every variety and print one summary line each.

    python scripts/run_all_suites.py --seed 0 --instances 50 [--json out.json]
"""

import argparse
import json

from affsys.algebra import Variety
from affsys.errors import UnsupportedVariety
from affsys.verify import SUITES, GenConfig, run_suite


def main() -> int:
    p = argparse.ArgumentParser()
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--json", default=None, help="write all reports to this file")
    args = p.parse_args()
    reports = []
    failed = 0
    for variety in Variety:
        for suite in sorted(SUITES):
            cfg = GenConfig(seed=args.seed, variety=variety, instance_count=args.instances)
            try:
                r = run_suite(suite, cfg)
            except UnsupportedVariety:
                print(f"{suite} [{variety.value}] skipped: needs a finite free algebra on one generator")
                continue
            print(r.summary())
            reports.append(r.to_dict())
            failed += not r.ok
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)
    print(f"{len(reports)} reports, {failed} not ok")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
