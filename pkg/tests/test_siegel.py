import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from feigenbench.errors import CycleUnavailable, InvalidInput, OrbitEscaped
from feigenbench.paramsearch import find_siegel_param
from feigenbench.rotation import GOLDEN
from feigenbench.siegel import (
    renorm_siegel_center, shoelace_area, siegel_boundary, siegel_membership,
    siegel_quadratic_param,
)
from dataclasses import replace


@pytest.fixture(scope="module")
def disk14():
    return siegel_boundary(siegel_quadratic_param(GOLDEN), GOLDEN, 2 ** 14)


@pytest.fixture(scope="module")
def disk16():
    return siegel_boundary(siegel_quadratic_param(GOLDEN), GOLDEN, 2 ** 16)


def test_closed_form_examples():
    assert abs(siegel_quadratic_param(1e-9) - 0.25) < 1e-8
    assert abs(siegel_quadratic_param(0.5) + 0.75) < 1e-15
    # theta and 1 - theta give conjugate parameters; the upper half-plane
    # representative corresponds to 1 - golden
    c = siegel_quadratic_param(GOLDEN)
    assert abs(c.conjugate() - (-0.390541 + 0.586788j)) < 1e-6
    assert abs(siegel_quadratic_param(1 - GOLDEN) - (-0.390541 + 0.586788j)) < 1e-6
    lam = cmath.exp(2j * math.pi * GOLDEN)
    assert abs(2 * (lam / 2) - lam) < 1e-14
    # the fixed point lam/2 really is fixed
    assert abs((lam / 2) ** 2 + c - lam / 2) < 1e-15


@given(st.floats(0.001, 0.999))
def test_closed_form_multiplier(th):
    c = siegel_quadratic_param(th)
    lam = cmath.exp(2j * math.pi * th)
    alpha = lam / 2
    assert abs(alpha * alpha + c - alpha) < 1e-14 and abs(2 * alpha - lam) < 1e-12


def test_boundary_invariants(disk14, golden):
    assert disk14.n_points == 2 ** 14
    assert disk14.area > 0
    assert disk14.area == pytest.approx(golden["siegel_area_2_14"], rel=1e-12)
    assert disk14.contains(disk14.alpha)
    assert 0j in set(disk14.boundary.tolist())
    assert len(set(disk14.boundary.tolist())) == disk14.n_points


def test_angle_ordering_is_permutation():
    n = 500
    order = np.argsort((np.arange(n) * GOLDEN) % 1.0)
    assert sorted(order.tolist()) == list(range(n))


def test_minimum_points():
    with pytest.raises(InvalidInput):
        siegel_boundary(siegel_quadratic_param(GOLDEN), GOLDEN, 3)


def test_wrong_parameter_escapes():
    with pytest.raises(OrbitEscaped):
        siegel_boundary(0.4 + 0.0j, GOLDEN, 256)


def test_shoelace_rotation_invariant(disk14):
    xs, ys = disk14.xs, disk14.ys
    for k in (1, 17, 5000):
        a = shoelace_area(np.roll(xs, k), np.roll(ys, k))
        assert abs(a - disk14.area) < 1e-12 * disk14.area


def test_area_resolution(disk14):
    d15 = siegel_boundary(disk14.c, GOLDEN, 2 ** 15)
    assert abs(d15.area - disk14.area) / disk14.area < 0.005


def test_area_monte_carlo(disk14):
    rng = np.random.default_rng(0)
    x0, x1, y0, y1 = disk14.bbox()
    n = 200_000
    pts = rng.uniform(x0, x1, n) + 1j * rng.uniform(y0, y1, n)
    frac = disk14.contains_many(pts).mean()
    assert abs(frac * (x1 - x0) * (y1 - y0) - disk14.area) / disk14.area < 0.01


def test_membership_refinement(disk14, disk16):
    rng = np.random.default_rng(1)
    x0, x1, y0, y1 = disk14.bbox()
    pts = rng.uniform(x0, x1, 1000) + 1j * rng.uniform(y0, y1, 1000)
    disagree = np.count_nonzero(disk14.contains_many(pts) != disk16.contains_many(pts))
    assert disagree / 1000 < 0.002


def test_membership_examples(disk14, disk16):
    assert siegel_membership(disk14, disk14.alpha)
    far = np.abs(disk14.boundary).max() + 1.0
    assert not siegel_membership(disk14, far)
    v = disk14.boundary[np.argmin(np.abs(disk14.boundary - disk14.alpha))]
    mid = (disk14.alpha + v) / 2
    assert siegel_membership(disk14, mid) and siegel_membership(disk16, mid)


def test_renorm_center_period_one():
    th = 0.3
    fp = find_siegel_param(1, th, 0.0)
    w = renorm_siegel_center(fp, th)
    assert abs(complex(w) - cmath.exp(2j * math.pi * th) / 2) < 1e-12


def test_renorm_center_m4(pipeline):
    from feigenbench.paramsearch import multiplier_residual
    z4 = pipeline[0]
    w = renorm_siegel_center(z4, GOLDEN)
    assert w != 0
    assert multiplier_residual(z4.c, complex(w), 7, GOLDEN) < 1e-10


def test_renorm_center_shrinks(pipeline):
    ws = [abs(complex(renorm_siegel_center(z, GOLDEN))) for z in pipeline]
    assert all(b < a for a, b in zip(ws, ws[1:]))


def test_cycle_unavailable(pipeline):
    bad = replace(pipeline[0], cycle_point=None)
    with pytest.raises(CycleUnavailable):
        renorm_siegel_center(bad, GOLDEN)
