"""Storage/bandwidth tradeoff for (N, k, d) = (4, 3, 3): FR curve vs the linear-code bound.

Normalized to B = 1 by scanning beta at fixed alpha; prints CSV.

    python3 scripts/tradeoff_433.py --alpha 12 --steps 12
"""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from regencert.bounds import tradeoff
from regencert.model import CodeParams
from regencert.report import rows_csv


@dataclass(frozen=True)
class Config:
    N: int = 4
    k: int = 3
    d: int = 3
    alpha: int = 12
    steps: int = 12


def run(cfg: Config):
    # beta ranges from alpha/d (MSR end) to alpha (beyond MBR).
    lo, hi = Fraction(cfg.alpha, cfg.d), Fraction(cfg.alpha)
    betas = [lo + (hi - lo) * t / cfg.steps for t in range(cfg.steps + 1)]
    P = CodeParams(cfg.N, cfg.k, cfg.d, cfg.alpha, betas[0])
    return [(b, fr, lin, fr - lin) for b, fr, lin in tradeoff(P, betas)]


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=int, default=Config.alpha)
    ap.add_argument("--steps", type=int, default=Config.steps)
    a = ap.parse_args()
    sys.stdout.write(rows_csv(("beta", "fr_min", "best_linear", "gap"), run(Config(alpha=a.alpha, steps=a.steps))))
