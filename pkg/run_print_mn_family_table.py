#!/usr/bin/env python3
"""
run_print_mn_family_table.py

Edit the configuration block below to choose:
- the m and n ranges of the family ρ(a,b) = M^(a+b)
- builder
- output filename

Prints the text grid, and writes a LaTeX fragment into data/tables/ which
can be \\input{} from a LaTeX document. Each cell shows H²(T²; Z²_ρ) and, in
brackets, how many of its bundles admit the closed 2-form.
"""

from torus_bundles.config import TABLES_DIR
from torus_bundles.report import FamilyTable


def print_mn_family_table(ms, ns, builder, outfile):
    table = FamilyTable(ms, ns).load().classify()

    print(table.text_grid())

    if builder == "grid":
        latex = table.latex_grid()
    else:
        raise ValueError(f"Unknown builder: {builder}")

    TABLES_DIR.mkdir(parents=True, exist_ok=True)
    outpath = TABLES_DIR / outfile
    outpath.write_text(latex)
    print(f"\nWrote LaTeX fragment to {outpath}")


if __name__ == "__main__":
    # HUMAN: choose table parameters here

    # m = 0 or n = 0 gives an infinite H² with a Z_m (or Z_n) torsion part
    ms = range(0, 5)
    ns = range(0, 5)

    # only "grid" for now
    builder = "grid"

    # LaTeX filename in TABLES_DIR = "data/tables/"
    outfile = "mn_family.tex"

    print_mn_family_table(ms=ms, ns=ns, builder=builder, outfile=outfile)
