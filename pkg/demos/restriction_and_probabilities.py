"""Build the quadratic-like restriction at one copy index, estimate the
landing and escaping probabilities and write an overlay picture.

    python3 demos/restriction_and_probabilities.py [--m 4] [--samples 10000]
"""
import argparse

from feigenbench.config import RunConfig
from feigenbench.experiment import ambient_disk, run_m
from feigenbench.paramsearch import ParameterCache
from feigenbench.render import Window, overlay_restriction, render_julia, write_pgm


def show(est):
    return (f"{est.point:.4f}  [{est.ci_lo:.4f}, {est.ci_hi:.4f}]  "
            f"hits {est.hits}, misses {est.misses}, undetermined {est.undetermined}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--cache", default="demo_cache.json")
    ap.add_argument("--out", default="restriction.pgm")
    args = ap.parse_args()

    cfg = RunConfig(samples=args.samples, seed=args.seed)
    disk = ambient_disk(cfg)
    print(f"ambient Siegel disk: {disk.n_points} boundary points, area {disk.area:.6f}")

    res = run_m(args.m, cfg, ParameterCache(args.cache), disk)
    r = res.restriction
    print(f"z_{args.m} = {res.zm.c:.14f}, period {r.period}")
    print(f"w = {res.w:.6e}, V radius {r.v_radius:.6f}, area(U)/area(V) = {r.u_area / r.v_area:.4f}")
    print("eta:", show(res.eta))
    print("xi: ", show(res.xi))
    if res.ratio is not None:
        b = res.ratio
        print(f"eta/xi = {b.ratio:.4f}  [{b.ratio_lo:.4f}, {b.ratio_hi:.4f}]")
        print(b.note)

    pic = render_julia(r.c, Window.centered(0j, 1.6 * r.v_radius), 600, 600, cap=2000)
    write_pgm(overlay_restriction(pic, r), args.out)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
