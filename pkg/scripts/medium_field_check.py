"""GF(625) spot check: length-156 norm-fibre codes with k = 2, one per target hull dimension."""

import argparse
import time
from dataclasses import dataclass

from sigmahull.code import galois_hull
from sigmahull.families import FamilySpec, construct_mds_with_hull


@dataclass
class Config:
    p: int = 5
    e: int = 4
    ell: int = 3
    t: int = 1
    k: int = 2
    hs: tuple[int, ...] = (0, 1)
    variant: str = "n"


def run(cfg: Config) -> bool:
    ok = True
    for h in cfg.hs:
        fs = FamilySpec("norm", cfg.variant, cfg.ell, cfg.p, cfg.e, {"t": cfg.t}, cfg.k, h)
        t0 = time.perf_counter()
        c = construct_mds_with_hull(fs)
        C = c.code
        rep = galois_hull(C, cfg.ell)
        good = rep.oracle_dim == h and rep.consistent
        ok &= good
        print(f"h={h}: [{C.n},{C.k},{c.min_distance}] over GF({fs.q}), hull {rep.oracle_dim} "
              f"(forms {sorted(set(rep.dims.values()))}), MDS {c.mds}, "
              f"{c.candidates_tried} candidate(s), {time.perf_counter() - t0:.1f}s "
              f"{'ok' if good else 'FAIL'}")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--h", type=int, nargs="+", default=[0, 1])
    ap.add_argument("--variant", default="n", choices=["n", "n+1", "n+2"])
    a = ap.parse_args()
    raise SystemExit(0 if run(Config(hs=tuple(a.h), variant=a.variant)) else 1)
