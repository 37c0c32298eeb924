"""Sweep the weighted L² estimate over random polyanalytic data.

For each order n and parameter w, draws random data of polyanalytic order
<= n and reports the largest observed ratio lhs/rhs against the constant n.

    python3 scripts/estimate_sweep.py --trials 50 --max-order 4 --seed 0
"""

import argparse
import cmath
import math
from dataclasses import dataclass

import numpy as np

from polyan.algebra import ExpPoly
from polyan.measures import estimate_check
from polyan.serialize import markdown_table


@dataclass
class SweepConfig:
    trials: int = 50
    max_order: int = 4
    max_z_degree: int = 5
    n_terms: int = 4
    seed: int = 0
    w_values: tuple = (0j, 1 + 1j)


def random_datum(rng: np.random.Generator, cfg: SweepConfig, order: int) -> ExpPoly:
    terms = []
    for _ in range(cfg.n_terms):
        e = (int(rng.integers(0, cfg.max_z_degree + 1)), int(rng.integers(0, order)),
             int(rng.integers(0, 2)), int(rng.integers(0, 2)))
        terms.append((e, cmath.rect(math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi))))
    return ExpPoly(terms, int(rng.integers(0, 2)))


def sweep(cfg: SweepConfig) -> list[list]:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for n in range(1, cfg.max_order + 1):
        for w in cfg.w_values:
            ratios, passed = [], 0
            for _ in range(cfg.trials):
                r = estimate_check(random_datum(rng, cfg, n), n, w)
                ratios.append(r.ratio)
                passed += r.passed
            rows.append([n, f"{w.real:g}{w.imag:+g}i", cfg.trials, passed, max(ratios), float(np.median(ratios))])
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=SweepConfig.trials)
    ap.add_argument("--max-order", type=int, default=SweepConfig.max_order)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    cfg = SweepConfig(trials=args.trials, max_order=args.max_order, seed=args.seed)
    header = ("n", "w", "trials", "passed", "max ratio", "median ratio")
    print(markdown_table(header, sweep(cfg)), end="")
    print("\nratio = lhs / Σ M_k; the checked constant is n.")


if __name__ == "__main__":
    main()
