"""feigenbench command line.

Exit status: 0 success, 1 domain error (no convergence, bad cache, ...),
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import blaschke, paramsearch, render, scaling
from .config import RunConfig, load_toml
from .errors import FeigenbenchError, InvalidInput
from .experiment import ambient_disk, restriction_for_m, run_m
from .paramsearch import ParameterCache
from .report import RunReport, load_report, now, numeric_fields, parameter_record
from .rotation import GOLDEN

log = logging.getLogger("feigenbench")


def parse_complex(text: str) -> complex:
    """'-1.7', '-0.12+0.74j' or '-0.12,0.74'."""
    s = text.strip().replace(" ", "")
    try:
        if "," in s:
            re_, im_ = s.split(",")
            return complex(float(re_), float(im_))
        return complex(s.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_window(text: str) -> render.Window:
    try:
        x0, x1, y0, y1 = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window is x0,x1,y0,y1") from None
    return render.Window(x0, x1, y0, y1)


def parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError("size is WxH") from None


# ------------------------------------------------------------ commands

def _config(args, command) -> RunConfig:
    base = {}
    if getattr(args, "config", None):
        base = load_toml(args.config, command)
    cfg = RunConfig.from_dict(base) if base else RunConfig()
    over = {k: getattr(args, k, None) for k in RunConfig.__dataclass_fields__}
    return cfg.merged(**over)


def _cache(cfg: RunConfig) -> ParameterCache:
    return ParameterCache(cfg.cache)


def cmd_find_center(args, cfg, rep):
    fp = paramsearch.find_center(args.period, args.start, precision=cfg.precision)
    rep.records.append(parameter_record(fp))


def cmd_find_siegel(args, cfg, rep):
    fp = paramsearch.find_siegel_param(args.period, cfg.theta, args.start, args.cycle_seed,
                                       precision=cfg.precision)
    rep.records.append(parameter_record(fp))


def cmd_pipeline(args, cfg, rep):
    cache = _cache(cfg)
    for fp in paramsearch.zm_pipeline(cfg.m_from, cfg.m_to, cfg.branch, cache, cfg.theta,
                                      cfg.precision):
        rep.records.append(parameter_record(fp))


def cmd_eta_xi(args, cfg, rep):
    cache = _cache(cfg)
    disk = ambient_disk(cfg)
    ms = [args.m] if args.m is not None else list(range(cfg.m_from, cfg.m_to + 1))
    for m in ms:
        res = run_m(m, cfg, cache, disk)
        rec = {"m": m, "parameter": parameter_record(res.zm), "w": res.w,
               "V": {"center": res.restriction.v_center, "radius": res.restriction.v_radius},
               "eta": res.eta.to_dict(), "xi": res.xi.to_dict(),
               "ratio": res.ratio.to_dict() if res.ratio else None}
        if res.ratio_error:
            rep.warnings.append(f"m={m}: ratio not reported: {res.ratio_error}")
        rep.records.append(rec)


def cmd_scaling(args, cfg, rep):
    cache = _cache(cfg)
    zms = paramsearch.zm_pipeline(cfg.m_from, cfg.m_to, cfg.branch, cache, cfg.theta,
                                  cfg.precision)
    ptab = scaling.parameter_scaling_table(zms, paramsearch.golden_siegel_parameter(cfg.theta))
    ws = [restriction_for_m(z, cfg)[0] for z in zms] if args.with_w else None
    rep.records.append({"table": "parameter", "target": ptab.target, "rows": ptab.rows()})
    text = ptab.to_csv()
    if ws is not None:
        dtab = scaling.dynamical_scaling_table(ws, [z.m for z in zms])
        rep.records.append({"table": "dynamical", "note": dtab.note, "rows": dtab.rows()})
        text += "\n" + dtab.to_csv()
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)


def cmd_blaschke_tune(args, cfg, rep):
    alpha = blaschke.tune_alpha(cfg.theta, args.tol)
    # same iterate count that certified the bracket inside tune_alpha
    est = blaschke.rotation_number(alpha, max(16, math.ceil(2.0 / args.tol)))
    rep.records.append({"alpha": alpha, "rotation": est.value, "bracket": [est.lo, est.hi],
                        "iterates": est.n, "tol": args.tol})


def cmd_tiling_report(args, cfg, rep):
    if args.alpha is not None:
        alpha = args.alpha
    elif args.alpha_method == "superstable":
        alpha = blaschke.golden_alpha_limit()
    else:
        alpha = blaschke.tune_alpha(GOLDEN, args.tol)
    tilings = [blaschke.build_tiling(alpha, n) for n in range(1, args.levels + 1)]
    g = blaschke.bounded_geometry_report(tilings)
    rep.records.append({
        "alpha": alpha, "refinement_ok": g.refinement_ok, "blowup": g.blowup(),
        "levels": [{"level": t.level, "tiles": t.count, "q_n": t.q_n, "q_n1": t.q_n1,
                    "length_sum": float(t.lengths.sum()),
                    "combinatorics_ok": t.combinatorics_ok, **row}
                   for t, row in zip(tilings, g.to_rows())],
    })


def _write_image(r, args):
    render.write_pgm(r, args.out)
    if args.png:
        render.write_png(r, args.png)


def cmd_render_julia(args, cfg, rep):
    c = args.c
    restriction = None
    if args.overlay_m is not None:
        zm = paramsearch.zm_pipeline(args.overlay_m, args.overlay_m, cfg.branch, _cache(cfg),
                                     cfg.theta, cfg.precision)[0]
        _, restriction = restriction_for_m(zm, cfg)
        c = complex(zm.c) if c is None else c
    if c is None:
        raise InvalidInput("render-julia needs --c or --overlay-m")
    w, h = args.size
    r = render.render_julia(c, args.window, w, h, args.cap, cfg.escape_radius)
    if restriction is not None:
        render.overlay_restriction(r, restriction)
    _write_image(r, args)
    rep.records.append({"c": c, "out": args.out, "width": w, "height": h, "cap": args.cap,
                        "bounded_pixels": int(r.bounded.sum())})


def cmd_render_limb(args, cfg, rep):
    markers = []
    if args.mark_m:
        cache = _cache(cfg)
        for m in args.mark_m:
            markers.append(paramsearch.pipeline_center(m, cfg.branch, cache, cfg.theta))
    window = args.window
    if window is None:
        root = paramsearch.cardioid_root(args.p, args.q)
        window = render.Window.centered(root, args.radius)
    w, h = args.size
    r = render.render_parameter_window(window, w, h, args.cap, markers, cfg.escape_radius)
    rep.warnings.extend(r.warnings)
    _write_image(r, args)
    rep.records.append({"out": args.out, "window": [window.x0, window.x1, window.y0, window.y1],
                        "markers": [parameter_record(m) for m in markers]})


def cmd_report(args, cfg, rep):
    data = load_report(args.input)
    if not args.rerun:
        rep.records.append({"input": args.input, "command": data["command"],
                            "records": len(data["records"]), "warnings": data["warnings"]})
        return
    inner = data["argv"] if "argv" in data else None
    if inner is None:
        raise InvalidInput("report has no embedded invocation to rerun")
    new = _run(inner)
    rep.records = new.to_dict()["records"]
    rep.warnings = new.warnings
    rep.command = data["command"]
    if args.check:
        old_n = numeric_fields(data["records"])
        new_n = numeric_fields(rep.to_dict()["records"])
        diff = sorted(k for k in set(old_n) | set(new_n) if old_n.get(k) != new_n.get(k))
        if diff:
            raise FeigenbenchError(f"{len(diff)} numeric fields differ, first {diff[0]}")


COMMANDS = {
    "find-center": cmd_find_center, "find-siegel": cmd_find_siegel, "pipeline": cmd_pipeline,
    "eta-xi": cmd_eta_xi, "scaling": cmd_scaling, "blaschke-tune": cmd_blaschke_tune,
    "tiling-report": cmd_tiling_report, "render-julia": cmd_render_julia,
    "render-limb": cmd_render_limb, "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="feigenbench", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="TOML file with [defaults] and per-command tables")
        sp.add_argument("-o", "--output", help="write the JSON report here (default stdout)")
        sp.add_argument("--cache", help="parameter cache file (default $FEIGENBENCH_CACHE)")
        sp.add_argument("--precision", choices=["auto", "double", "extended"])
        sp.add_argument("--theta", type=float)
        return sp

    def mrange(sp):
        sp.add_argument("--m-from", dest="m_from", type=int)
        sp.add_argument("--m-to", dest="m_to", type=int)
        sp.add_argument("--branch", choices=[paramsearch.PLUS, paramsearch.MINUS])

    def restriction(sp):
        sp.add_argument("--iter-cap", dest="iter_cap", type=int)
        sp.add_argument("--escape-radius", dest="escape_radius", type=float)
        sp.add_argument("--v-radius-multiplier", dest="v_radius_multiplier", type=float)
        sp.add_argument("--v-center", dest="v_center_mode", choices=["zero", "w"])
        sp.add_argument("--landing-target", dest="landing_target", choices=["V", "U"])
        sp.add_argument("--boundary-samples", dest="boundary_samples", type=int)

    sp = common(sub.add_parser("find-center", help="center of a hyperbolic component"))
    sp.add_argument("--period", type=int, required=True)
    sp.add_argument("--seed", dest="start", type=parse_complex, required=True,
                    help="Newton starting parameter")

    sp = common(sub.add_parser("find-siegel", help="parameter with a neutral cycle"))
    sp.add_argument("--period", type=int, required=True)
    sp.add_argument("--seed", dest="start", type=parse_complex, required=True,
                    help="Newton starting parameter")
    sp.add_argument("--cycle-seed", dest="cycle_seed", type=parse_complex, default=0j)

    sp = common(sub.add_parser("pipeline", help="golden-mean Siegel parameters z_m"))
    mrange(sp)

    sp = common(sub.add_parser("eta-xi", help="landing and escaping probabilities"))
    mrange(sp)
    restriction(sp)
    sp.add_argument("--m", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--confidence", type=float)
    sp.add_argument("--siegel-points", dest="siegel_points", type=int)

    sp = common(sub.add_parser("scaling", help="same-parity scaling tables"))
    mrange(sp)
    restriction(sp)
    sp.add_argument("--csv", help="write the tables as CSV")
    sp.add_argument("--with-w", dest="with_w", action="store_true",
                    help="also tabulate renormalized Siegel centers")

    sp = common(sub.add_parser("blaschke-tune", help="tune the Blaschke model"))
    sp.add_argument("--tol", type=float, default=1e-6)

    sp = common(sub.add_parser("tiling-report", help="dynamical tilings and geometry"))
    sp.add_argument("--levels", type=int, default=12)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--alpha-method", choices=["bisection", "superstable"], default="bisection")
    sp.add_argument("--tol", type=float, default=1e-6)

    for name, hlp in (("render-julia", "escape-time raster of a filled Julia set"),
                      ("render-limb", "escape-time raster of a parameter window")):
        sp = common(sub.add_parser(name, help=hlp))
        sp.add_argument("--window", type=parse_window)
        sp.add_argument("--size", type=parse_size, default=(512, 512))
        sp.add_argument("--cap", type=int, default=1000)
        sp.add_argument("--out", required=True, help="PGM output path")
        sp.add_argument("--png", help="also write PNG (needs Pillow)")
        sp.add_argument("--branch", choices=[paramsearch.PLUS, paramsearch.MINUS])
        if name == "render-julia":
            sp.add_argument("--c", type=parse_complex)
            sp.add_argument("--overlay-m", dest="overlay_m", type=int)
            restriction(sp)
        else:
            sp.add_argument("--p", type=int, default=3)
            sp.add_argument("--q", type=int, default=5)
            sp.add_argument("--radius", type=float, default=0.15)
            sp.add_argument("--mark-m", dest="mark_m", type=int, nargs="*")

    sp = common(sub.add_parser("report", help="summarize or rerun a saved report"))
    sp.add_argument("--input", required=True)
    sp.add_argument("--rerun", action="store_true")
    sp.add_argument("--check", action="store_true", help="with --rerun: fail on numeric drift")
    return p


def _run(argv: list[str]) -> RunReport:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "render-julia" and args.window is None:
        args.window = render.Window(-2.0, 2.0, -2.0, 2.0)
    cfg = _config(args, args.command)
    rep = RunReport(args.command, cfg.to_dict(), started=now())
    COMMANDS[args.command](args, cfg, rep)
    rep.finished = now()
    rep.argv = list(argv)
    return rep


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        build_parser().print_usage(sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if "-v" in argv or "--verbose" in argv else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        rep = _run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0) if exc.code in (0, None) else 2
    except FeigenbenchError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = rep.dumps()
    out = _output_path(argv)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _output_path(argv):
    for i, a in enumerate(argv):
        if a in ("-o", "--output") and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--output="):
            return a.split("=", 1)[1]
    return None


if __name__ == "__main__":
    sys.exit(main())
