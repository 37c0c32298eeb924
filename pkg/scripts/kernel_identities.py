"""Check the polyanalytic Fock kernel identities for n = 1..N and print a table.

Columns: Laguerre form, ∂̄^s closed form (all s), closed-form particular
solution, and the mixed derivative ∂_w^{n-1} ∂̄_z^{n-1} F_n expressed as a
multiple of F_1.

    python3 scripts/kernel_identities.py --max-n 8
"""

import argparse

from polyan.algebra import Wirtinger, wirtinger_power
from polyan.dbar import particular_solution
from polyan.serialize import markdown_table
from polyan.special import (
    fock_kernel,
    fock_kernel_dbar,
    fock_kernel_laguerre,
    fock_particular_solution,
    mixed_derivative,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    rows = []
    for n in range(1, args.max_n + 1):
        F = fock_kernel(n)
        dbar_ok = all(
            fock_kernel_dbar(n, s).isclose(wirtinger_power(F, Wirtinger.DBAR_Z, s), 1e-12) for s in range(n)
        )
        mixed = mixed_derivative(n)
        multiple = mixed.terms[(0, 0, 0, 0)].real
        rows.append([
            n,
            F.isclose(fock_kernel_laguerre(n), 1e-12),
            dbar_ok,
            fock_particular_solution(n).isclose(particular_solution(F).particular, 1e-12),
            multiple,
            mixed.isclose(fock_kernel(1).scale(multiple), 1e-12),
        ])
    header = ("n", "laguerre_form", "dbar_closed_form", "particular_solution", "mixed/F_1", "mixed_is_multiple")
    print(markdown_table(header, rows), end="")


if __name__ == "__main__":
    main()
