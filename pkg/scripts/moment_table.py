"""Tabulate η_n = ∫ t^n (1+t)^{-2} e^{-t} dt next to n! with error bounds.

    python3 scripts/moment_table.py --max-n 20 [--format csv|markdown]
"""

import argparse
import math

from polyan.measures import eta
from polyan.serialize import csv_table, markdown_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=20)
    ap.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    args = ap.parse_args()
    header = ("n", "eta", "n!", "eta/n!", "eta/eta_prev", "abs_error_bound")
    rows, prev = [], None
    for n in range(args.max_n + 1):
        r = eta(n)
        fact = math.factorial(n)
        rows.append([n, r.value, fact, r.value / fact, "" if prev is None else r.value / prev, r.abs_error_bound])
        prev = r.value
    emit = markdown_table if args.format == "markdown" else csv_table
    print(emit(header, rows), end="")


if __name__ == "__main__":
    main()
