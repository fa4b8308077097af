import math
import random

import pytest
from hypothesis import given, strategies as st

from feigenbench.blaschke import blaschke_circle_lift
from feigenbench.errors import InvalidInput, NotHomeomorphism
from feigenbench.rotation import (
    GOLDEN, RotationNumber, convergents, gauss_modified, lucas, renormalization_period,
    rotation_number_estimate, theta_stationary,
)


def test_theta_stationary():
    assert abs(theta_stationary(3) - (3 - math.sqrt(5)) / 2) < 1e-15
    assert abs(theta_stationary(3) - 0.38196601125) < 1e-11
    assert abs(theta_stationary(4) - (2 - math.sqrt(3))) < 1e-15
    t = theta_stationary(3)
    assert abs(t - 1 / (3 - t)) < 1e-15
    with pytest.raises(InvalidInput):
        theta_stationary(2)


def test_gauss_modified():
    t = theta_stationary(3)
    assert abs(gauss_modified(t) - t) < 1e-14
    assert gauss_modified(0.5) == 0
    assert abs(gauss_modified(0.3) - 2 / 3) < 1e-15
    with pytest.raises(ZeroDivisionError):
        gauss_modified(0.0)


def test_golden_convergents():
    qs = [a.q for a in convergents(RotationNumber.golden(), 20)]
    assert qs[:5] == [1, 2, 3, 5, 8]
    assert qs[15] + qs[13] == 1597 + 610 == 2207
    assert qs[19] + qs[17] == 10946 + 4181 == 15127


def test_lucas_identity():
    qs = [a.q for a in convergents(RotationNumber.golden(), 25)]
    for m in range(3, 26):
        assert qs[m - 1] + qs[m - 3] == lucas(m) == renormalization_period(m)


@pytest.mark.parametrize("rho", [RotationNumber.golden(), RotationNumber.stationary(3),
                                 RotationNumber.stationary(5),
                                 RotationNumber.explicit([2, 1, 3, 1, 4, 2, 1, 5])])
def test_convergent_errors_decrease(rho):
    apps = convergents(rho, 8)
    errs = [abs(a.q * rho.value - a.p) for a in apps]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert all(math.gcd(a.p, a.q) == 1 for a in apps)
    assert all(b.q > a.q for a, b in zip(apps, apps[1:]))


def test_rigid_rotation_exact():
    est = rotation_number_estimate(lambda x: x + 0.25, 0.1, 1000)
    assert est.value == pytest.approx(0.25, abs=1e-12) and est.hi - est.lo == pytest.approx(1e-3)


def test_rigid_brackets_random():
    rng = random.Random(11)
    for _ in range(1000):
        th, x0 = rng.random(), rng.uniform(-5, 5)
        est = rotation_number_estimate(lambda x, th=th: x + th, x0, rng.randint(1, 50))
        assert est.lo - 1e-12 <= th <= est.hi + 1e-12


def test_blaschke_fixed_at_zero():
    est = rotation_number_estimate(blaschke_circle_lift(0.0), 0.0, 1000)
    assert est.value == 0.0


def test_not_homeomorphism():
    with pytest.raises(NotHomeomorphism):
        rotation_number_estimate(lambda x: x + 0.3 * math.sin(2 * math.pi * x), 0.0, 10)


@given(st.integers(3, 40))
def test_stationary_in_range(N):
    t = theta_stationary(N)
    assert 0 < t <= 0.5 and abs(t * t - N * t + 1) < 1e-14
    assert GOLDEN == pytest.approx((math.sqrt(5) - 1) / 2)
