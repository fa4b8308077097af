"""Tune the Blaschke circle map to the golden rotation number and tabulate
the geometry of its dynamical tilings next to those of the rigid rotation.

    python3 demos/blaschke_tilings.py [--levels 12]
"""
import argparse

from feigenbench.blaschke import (
    bounded_geometry_report, build_tiling, golden_alpha_limit, rotation_number,
    rotation_tiling, tune_alpha,
)
from feigenbench.rotation import GOLDEN


def table(title, tilings):
    rep = bounded_geometry_report(tilings)
    print(title)
    print(" level  tiles  adjacent max  parent/child max")
    for row, t in zip(rep.to_rows(), tilings):
        pc = row["parent_child_max"]
        print(f"{row['level']:6d}  {t.count:5d}  {row['adjacent_max']:12.4f}  "
              f"{'' if pc is None else f'{pc:16.4f}'}")
    print(f"refinement ok: {rep.refinement_ok}, blow-up: {rep.blowup()}\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, default=12)
    args = ap.parse_args()

    alpha = tune_alpha(GOLDEN, 1e-6)
    est = rotation_number(alpha, 10 ** 7)
    print(f"tuned alpha = {alpha:.10f}, rotation number in [{est.lo:.8f}, {est.hi:.8f}]")
    limit = golden_alpha_limit()
    print(f"superstable limit alpha = {limit:.13f}\n")

    levels = range(1, args.levels + 1)
    table("rigid rotation", [rotation_tiling(GOLDEN, n) for n in levels])
    table("Blaschke map, superstable limit", [build_tiling(limit, n) for n in levels])


if __name__ == "__main__":
    main()
