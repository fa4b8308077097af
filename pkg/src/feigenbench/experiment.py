"""End-to-end chain for one copy index m: z_m, w_m, restriction, eta, xi."""
from __future__ import annotations

from dataclasses import dataclass

from .config import RunConfig
from .errors import NotInformative
from .paramsearch import FoundParameter, ParameterCache, golden_siegel_parameter, zm_pipeline
from .renorm import QLRestriction, build_restriction
from .siegel import SiegelDisk, renorm_siegel_center, siegel_boundary
from .stats import BlackHoleReport, ProbabilityEstimate, blackhole_report, estimate_eta, estimate_xi


@dataclass(frozen=True)
class MResult:
    zm: FoundParameter
    w: complex
    restriction: QLRestriction
    eta: ProbabilityEstimate | None
    xi: ProbabilityEstimate | None
    ratio: BlackHoleReport | None
    ratio_error: str | None = None


def ambient_disk(cfg: RunConfig) -> SiegelDisk:
    """Siegel disk of the unperturbed golden parameter: the eta sampling domain."""
    return siegel_boundary(golden_siegel_parameter(cfg.theta), cfg.theta, cfg.siegel_points)


def restriction_for_m(zm: FoundParameter, cfg: RunConfig) -> tuple[complex, QLRestriction]:
    w = complex(renorm_siegel_center(zm, cfg.theta))
    r = build_restriction(zm, w, cfg.boundary_samples, cfg.v_radius_multiplier,
                          cfg.v_center_mode, cfg.landing_target, cfg.escape_radius)
    return w, r


def run_m(m: int, cfg: RunConfig, cache: ParameterCache | None = None,
          disk: SiegelDisk | None = None, eta: bool = True, xi: bool = True) -> MResult:
    zm = zm_pipeline(m, m, cfg.branch, cache, cfg.theta, cfg.precision)[0]
    w, r = restriction_for_m(zm, cfg)
    e = x = rep = None
    err = None
    common = dict(confidence=cfg.confidence, workers=cfg.workers,
                  undetermined_bound=cfg.undetermined_bound)
    if eta:
        disk = disk if disk is not None else ambient_disk(cfg)
        e = estimate_eta(r, disk, cfg.samples, cfg.seed, cfg.iter_cap, **common)
    if xi:
        x = estimate_xi(r, cfg.samples, cfg.seed, cfg.iter_cap, **common)
    if e is not None and x is not None:
        try:
            rep = blackhole_report(e, x)
        except (NotInformative, ZeroDivisionError) as exc:
            err = str(exc)
    return MResult(zm, w, r, e, x, rep, err)
