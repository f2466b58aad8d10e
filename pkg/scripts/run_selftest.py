"""Run a selftest tier and write the JSON results."""

import argparse
import json
from pathlib import Path

from sigmahull.suites import TIERS, run_tier

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tier", choices=list(TIERS), default="medium")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path)
    a = ap.parse_args()
    results = run_tier(a.tier, a.seed)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<36} {r.instances:>6}  {r.seconds:6.1f}s  {r.counts}")
    if a.out:
        a.out.write_text(json.dumps([r.to_json() for r in results], indent=1))
    raise SystemExit(0 if all(r.ok for r in results) else 1)
