"""Regenerate the four parameter tables by integer arithmetic and diff them against the fixtures."""

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from sigmahull.families import FAMILIES, compare_table, table_rows


@dataclass
class Config:
    families: tuple[str, ...] = FAMILIES
    out: Path | None = None
    full: bool = False  # print every parameter value, not just the range


def fmt_range(d: dict, full: bool) -> str:
    vals = list(d.values())
    if full or len(vals) <= 3:
        return ",".join(map(str, vals))
    return f"{vals[0]}..{vals[-1]}"


def run(cfg: Config) -> bool:
    ok = True
    dump = {}
    for fam in cfg.families:
        print(f"== {fam} ==")
        rows = table_rows(fam)
        verdicts = compare_table(fam)
        for row, v in zip(rows, verdicts):
            bad = [k for k, good in v["checks"].items() if not good]
            ok &= not bad
            print(f"ell={row['ell']} p={row['p']} e={row['e']}  {row['param']} <= {row['param_max']}  "
                  f"[{'ok' if not bad else 'MISMATCH ' + ', '.join(bad[:5])}]")
            for var in row["variants"]:
                print(f"    {var['variant']:<4} n: {fmt_range(var['n'], cfg.full):<24} "
                      f"k <= {fmt_range(var['k_bound'], cfg.full):<18} h <= {var['h_max']}")
        dump[fam] = rows
    if cfg.out:
        cfg.out.write_text(json.dumps(dump, indent=1))
        print(f"wrote {cfg.out}")
    print("all rows reproduce" if ok else "MISMATCHES FOUND")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", nargs="+", choices=FAMILIES, default=list(FAMILIES))
    ap.add_argument("--out", type=Path)
    ap.add_argument("--full", action="store_true")
    a = ap.parse_args()
    raise SystemExit(0 if run(Config(tuple(a.family), a.out, a.full)) else 1)
