import cmath

import pytest
from hypothesis import given, strategies as st

from feigenbench.errors import TooFewEntries
from feigenbench.paramsearch import golden_siegel_parameter
from feigenbench.scaling import (
    BETA, PHI, UNSPECIFIED, beta_identity_error, displacement_table, dynamical_scaling_table,
    parameter_scaling_table,
)


def test_beta_identity():
    assert beta_identity_error() < 1e-14
    assert abs(BETA - PHI ** 4) < 1e-14


@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_synthetic_geometric(A):
    c = -0.39 + 0.58j
    ms = list(range(4, 13))
    vals = [A * BETA ** (-m / 2) for m in ms]
    rep = displacement_table(ms, vals)
    assert all(abs(r - BETA) < 1e-9 * BETA for r in rep.ratios)
    assert max(rep.deviations) < 1e-9
    assert [p[1] - p[0] for p in rep.pairs] == [2] * len(rep.pairs)
    assert displacement_table(ms, [c + v - c for v in vals]).ratios == pytest.approx(rep.ratios)


def test_too_few():
    with pytest.raises(TooFewEntries):
        displacement_table([4, 6], [1, 0.1])
    with pytest.raises(TooFewEntries):
        dynamical_scaling_table([1, 0.5])


def test_dynamical_synthetic():
    w = [0.3 * 1.7 ** -k for k in range(6)]
    rep = dynamical_scaling_table(w)
    assert all(abs(r - 1.7) < 1e-12 for r in rep.ratios)
    assert rep.target is None and rep.note == UNSPECIFIED


def test_pipeline_parameter_scaling(pipeline):
    rep = parameter_scaling_table(pipeline, golden_siegel_parameter())
    dev = rep.deviations
    assert dev[-1] < 0.15
    assert dev[-3] >= dev[-2] >= dev[-1]
    assert rep.to_csv().count("\n") == len(rep.pairs) + 1


def test_pipeline_w_scaling(pipeline):
    ms = [z.m for z in pipeline]
    rep = dynamical_scaling_table([z.cycle_point for z in pipeline], ms)
    trend = [abs(r.imag / r.real) for r in rep.ratios]
    assert all(b < a for a, b in zip(trend, trend[1:]))
    assert all(abs(r) > 1 for r in rep.ratios[-2:])


def test_reports_are_pure(pipeline):
    c = golden_siegel_parameter()
    a = parameter_scaling_table(pipeline, c)
    b = parameter_scaling_table(list(reversed(pipeline)), c)
    assert a.ratios == b.ratios and a.pairs == b.pairs
