import cmath
import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from feigenbench.ddcomplex import Precision
from feigenbench.errors import CacheCorrupt, InvalidInput, NoConvergence, WrongPeriod
from feigenbench.paramsearch import (
    CENTER, PLUS, SIEGEL, ParameterCache, branch_of, cardioid_root, copy_size, find_center,
    find_siegel_param, limb_angles, limb_region, multiplier_residual, pipeline_center,
    pipeline_periods, verify_parameter, zm_pipeline,
)
from feigenbench.rotation import GOLDEN, lucas
from feigenbench.siegel import siegel_quadratic_param

from oracles import dedupe, exact_period_roots, grid_seeds


def test_cardioid_roots():
    assert abs(cardioid_root(0, 1) - 0.25) < 1e-16
    assert abs(cardioid_root(1, 2) + 0.75) < 1e-15
    lam = cmath.exp(2j * math.pi / 3)
    assert abs(cardioid_root(1, 3) - (lam / 2 - lam * lam / 4)) < 1e-16
    assert abs(cardioid_root(1, 3) - (-0.125 + 0.649519052838329j)) < 1e-12
    with pytest.raises(InvalidInput):
        cardioid_root(2, 4)


def test_find_center_examples():
    assert abs(find_center(1, 0.1).c) < 1e-12
    assert abs(find_center(2, -0.9).c + 1) < 1e-12
    fp = find_center(3, -1.7)
    assert abs(fp.c - (-1.754877666246693)) < 1e-12 and fp.residual < 1e-12
    assert fp.label == CENTER and fp.precision is Precision.DOUBLE


def test_wrong_period():
    with pytest.raises(WrongPeriod) as ei:
        find_center(4, -1.0)
    assert ei.value.exact_period == 2
    with pytest.raises(InvalidInput):
        find_center(0, 0.1)


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_centers_match_polynomial_oracle(p):
    oracle = exact_period_roots(p)
    found = []
    for s in grid_seeds():
        try:
            found.append(complex(find_center(p, s).c))
        except (NoConvergence, WrongPeriod):
            pass
    found = dedupe(found)
    assert len(found) == len(oracle)
    for r in oracle:
        assert min(abs(r - z) for z in found) < 1e-10
    for z in found:
        assert min(abs(r - z) for r in oracle) < 1e-10


def test_basin_robustness():
    """Halving the seed's displacement from its root keeps the same root for >= 95% of seeds."""
    same = total = 0
    for s in grid_seeds():
        try:
            r = complex(find_center(4, s).c)
        except (NoConvergence, WrongPeriod):
            continue
        total += 1
        try:
            r2 = complex(find_center(4, r + 0.5 * (s - r)).c)
        except (NoConvergence, WrongPeriod):
            continue
        same += abs(r2 - r) < 1e-9
    assert total > 500
    assert same / total >= 0.95


def test_siegel_period_one_closed_form():
    rng = random.Random(1)
    for _ in range(100):
        th = rng.uniform(0.01, 0.99)
        lam = cmath.exp(2j * math.pi * th)
        fp = find_siegel_param(1, th, 0.0, 0.0)
        assert abs(fp.c - siegel_quadratic_param(th)) < 1e-12
        assert abs(fp.c - (lam / 2 - lam * lam / 4)) < 1e-12


def test_siegel_period_two_parabolic():
    fp = find_siegel_param(2, 0.0, -1.0, 0.0)
    assert abs(fp.c + 0.75) < 1e-8
    # numeric multiplier oracle: 4(c + 1) for the 2-cycle
    z = fp.cycle_point
    mult = 4 * z * (z * z + fp.c)
    assert abs(mult - 1) < 1e-10 and abs(4 * (fp.c + 1) - 1) < 1e-8


def test_copy_size_real():
    # a period-3 airplane copy is small and oriented along the real axis
    s = copy_size(find_center(3, -1.7).c, 3)
    assert 0.01 < abs(s) < 0.05 and abs(s.imag) < 1e-12


def test_limb_angles_and_region():
    assert limb_angles(1, 2) == (Fraction(1, 3), Fraction(2, 3))
    assert limb_angles(1, 3) == (Fraction(1, 7), Fraction(2, 7))
    reg = limb_region(1, 3)
    assert reg.contains(find_center(3, -0.12 + 0.74j).c)
    assert not reg.contains(find_center(3, -0.12 - 0.74j).c)


def test_pipeline_fresh_and_warm(tmp_path, golden):
    path = tmp_path / "cache.json"
    first = zm_pipeline(4, 6, PLUS, ParameterCache(path))
    assert [f.period for f in first] == [7, 11, 18]
    assert all(f.residual < 1e-10 and f.label == SIEGEL for f in first)
    for f, g in zip(first, golden["pipeline_plus"]):
        assert f.c == complex(g["re"], g["im"])
    again = zm_pipeline(4, 6, PLUS, ParameterCache(path))
    assert again == first
    assert all(f.iterations == 0 for f in again)
    assert all(a.c.real.hex() == b.c.real.hex() for a, b in zip(first, again))


def test_pipeline_golden_values(pipeline, golden):
    assert [f.period for f in pipeline] == [lucas(m) for m in range(4, 13)]
    for f, g in zip(pipeline, golden["pipeline_plus"]):
        assert abs(f.c - complex(g["re"], g["im"])) < 1e-12
        assert abs(f.cycle_point - complex(g["w_re"], g["w_im"])) < 1e-12
        assert verify_parameter(f) < 1e-10
        assert f.branch == PLUS


def test_period_seven_siegel_from_center(shared_cache, pipeline, golden):
    center = pipeline_center(4, PLUS, shared_cache)
    assert verify_parameter(center) < 1e-12
    assert branch_of(center.c, 4) == PLUS
    fp = find_siegel_param(7, GOLDEN, center.c)
    g = golden["siegel_period7_from_z4"]
    assert abs(fp.c - complex(g["re"], g["im"])) < 1e-12
    assert multiplier_residual(fp.c, fp.cycle_point, 7, GOLDEN) < 1e-10


def test_cache_corrupt(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(CacheCorrupt):
        ParameterCache(p)
    p.write_text(json.dumps([{"label": "Center"}]))
    with pytest.raises(CacheCorrupt):
        ParameterCache(p)


def test_cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FEIGENBENCH_CACHE", str(tmp_path / "env.json"))
    assert ParameterCache().path == str(tmp_path / "env.json")


def test_pipeline_range_validation():
    with pytest.raises(InvalidInput):
        zm_pipeline(2, 5)
    with pytest.raises(InvalidInput):
        zm_pipeline(4, 17)


def test_period_table():
    assert pipeline_periods(range(4, 17)) == [7, 11, 18, 29, 47, 76, 123, 199, 322, 521,
                                              843, 1364, 2207]
    assert pipeline_periods([20]) == [15127]


@pytest.mark.slow
def test_m16_requires_extended(shared_cache, pipeline):
    deep = zm_pipeline(13, 16, PLUS, shared_cache)
    z16 = deep[-1]
    assert z16.period == 2207 and z16.precision is Precision.EXTENDED
    assert verify_parameter(z16) < 1e-10
    center = pipeline_center(16, PLUS, shared_cache)
    with pytest.raises(NoConvergence):
        find_siegel_param(2207, GOLDEN, center.c, precision="double")


@given(st.floats(0.02, 0.98))
def test_multiplier_residual_period_one(th):
    c = siegel_quadratic_param(th)
    assert multiplier_residual(c, cmath.exp(2j * math.pi * th) / 2, 1, th) < 1e-14
