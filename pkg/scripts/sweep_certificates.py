"""Certify every constructed code at every (n, ell, v) and tabulate slack.

    python3 scripts/sweep_certificates.py --v-max 2 --perms 5
"""

import argparse
import csv
import random
import sys
from dataclasses import dataclass

from regencert.certify import Ordering, theorem1_certify, theorem3_certify
from regencert.constructions import layered, mds_msr, rbt_mbr, replication, scrambled


@dataclass(frozen=True)
class Config:
    v_max: int = 2
    perms: int = 5
    seed: int = 0


def codes():
    return [layered(4, 3, 2), layered(5, 3, 2), rbt_mbr(5, 3, 11), rbt_mbr(4, 3, 7),
            mds_msr(6, 3, 3, 7), replication(4, size=2, k=3, d=3, q=3),
            scrambled(layered(4, 3, 2), 7)]


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["code", "B", "n", "ell", "v", "perm", "Delta", "thm1_slack", "thm3_slack"])
    for code in codes():
        perms = [tuple(range(1, code.N + 1))]
        for _ in range(cfg.perms):
            p = list(range(1, code.N + 1))
            rng.shuffle(p)
            perms.append(tuple(p))
        for n in range(1, min(code.N, code.params.d + 1) + 1):
            for ell in range(n + 1):
                for perm in perms:
                    o = Ordering(perm, n, ell)
                    t1 = theorem1_certify(code, o)
                    for v in range(1, cfg.v_max + 1):
                        t3 = theorem3_certify(code, o, v)
                        w.writerow([code.name, code.B, n, ell, v, "".join(map(str, perm)),
                                    t1.terms["Delta"], t1.slack, t3.slack])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--v-max", type=int, default=Config.v_max)
    ap.add_argument("--perms", type=int, default=Config.perms)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(a.v_max, a.perms, a.seed))
