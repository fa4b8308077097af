"""Walk from superattracting centers to the golden-mean Siegel parameters z_m
and watch the same-parity displacements shrink by the factor beta.

    python3 demos/centers_and_scaling.py [--m-to 12] [--cache PATH]
"""
import argparse

from feigenbench.paramsearch import (
    PLUS, ParameterCache, find_center, golden_siegel_parameter, pipeline_center, zm_pipeline,
)
from feigenbench.scaling import BETA, parameter_scaling_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-to", type=int, default=12)
    ap.add_argument("--cache", default="demo_cache.json")
    args = ap.parse_args()

    # the airplane center, a quick sanity check of the Newton machinery
    fp = find_center(3, -1.7)
    print(f"period-3 real center: {fp.c.real:.15f}  (residual {fp.residual:.1e})")

    cache = ParameterCache(args.cache)
    c_star = golden_siegel_parameter()
    print(f"golden Siegel parameter c* = {c_star:.12f}\n")

    zms = zm_pipeline(4, args.m_to, PLUS, cache)
    print(" m  period  center                                  z_m                                     prec")
    for z in zms:
        ctr = pipeline_center(z.m, PLUS, cache)
        print(f"{z.m:2d}  {z.period:6d}  {ctr.c:.14f}  {z.c:.14f}  {z.precision.value}")

    rep = parameter_scaling_table(zms, c_star)
    print(f"\n(z_m - c*)/(z_(m+2) - c*), target beta = {BETA:.6f}")
    for (a, b), r, d in zip(rep.pairs, rep.ratios, rep.deviations):
        print(f"  m={a:2d}->{b:2d}: {r.real:9.5f} {r.imag:+9.5f}i   deviation {d:.4f}")


if __name__ == "__main__":
    main()
