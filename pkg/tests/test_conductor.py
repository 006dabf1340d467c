import itertools

import pytest

from rsmult.characters import example_conductor, kronecker_character
from rsmult.conductor import (
    AnalyticConductor,
    IsobaricComponent,
    IsobaricSpec,
    PreconvexityRangeError,
    analytic_conductor,
    isobaric_rs_conductor,
    lambda_infty,
    preconvex_bound,
    preconvex_line,
    rs_conductor_upper,
)
from rsmult.lseries import ArchimedeanData, lrs_theta


def test_lambda_infty():
    a0 = ArchimedeanData.real([0.0])
    assert lambda_infty(a0, 0) == 1
    assert lambda_infty(a0, 3) == 4
    assert lambda_infty(ArchimedeanData.real([1.0]), 0) == 2
    for t in (0.5, 2.0, 7.0):
        assert lambda_infty(a0, t) == lambda_infty(a0, -t) >= 1


def test_analytic_conductor():
    assert analytic_conductor(AnalyticConductor.dirichlet(1, False)) == 1
    assert AnalyticConductor.dirichlet(7, True)(0) == 14
    c = AnalyticConductor.dirichlet(5, False)
    assert c(0) <= c(1) <= c(5)
    with pytest.raises(ValueError):
        AnalyticConductor(0, ArchimedeanData.real([0.0]))


def test_rs_conductor_upper():
    triv = AnalyticConductor.dirichlet(1, False)
    assert rs_conductor_upper(triv, triv) == 1
    assert rs_conductor_upper(AnalyticConductor.dirichlet(5, False), AnalyticConductor.dirichlet(3, True)) == 30
    a, b = AnalyticConductor.dirichlet(5, False), AnalyticConductor.dirichlet(7, False)
    assert rs_conductor_upper(a, b, 0) <= rs_conductor_upper(a, b, 2)
    assert rs_conductor_upper(a, b) <= rs_conductor_upper(AnalyticConductor.dirichlet(11, False), b)


def test_isobaric_single_component_and_twists():
    c = AnalyticConductor.dirichlet(5, False)
    single = IsobaricSpec((IsobaricComponent(c),))
    assert isobaric_rs_conductor(single, 1.5) == rs_conductor_upper(c, c, 1.5)
    shifted = IsobaricSpec((IsobaricComponent(c, 0.25),))
    assert isobaric_rs_conductor(shifted, 1.0) == pytest.approx(isobaric_rs_conductor(single, 1.5))
    with pytest.raises(ValueError):
        IsobaricSpec((IsobaricComponent(c, 0.0, "x"), IsobaricComponent(c, 1.0, "x")))


def test_example_conductor_shape(chars499):
    ratios = [example_conductor(chi) / chi.modulus**2 for chi in chars499]
    assert 1 / 64 <= min(ratios) and max(ratios) <= 64


def test_upper_bound_mode_overshoots_q_squared():
    chi = kronecker_character(-103)
    spec = IsobaricSpec(
        (IsobaricComponent(chi.conductor(), 0.0, "chi"), IsobaricComponent(AnalyticConductor.dirichlet(1, False), 0.0, "1"))
    )
    # separation bound on each pair gives ~q^4 rather than q^2
    assert isobaric_rs_conductor(spec) == pytest.approx((2 * 103) ** 4)


@pytest.mark.parametrize("n,m", list(itertools.product(range(1, 11), repeat=2)))
def test_preconvex_line_anchors(n, m):
    line = preconvex_line(n, m)
    th, thp = lrs_theta(n), lrs_theta(m)
    assert abs(line.slope + 0.5) <= 1e-12
    assert abs(line(2 - th - thp)) <= 1e-12
    assert abs(line(-1 + th + thp) - (1.5 - th - thp)) <= 1e-12


def test_preconvex_values():
    line = preconvex_line(1, 1)
    assert line(0.5) == pytest.approx(0.25)
    assert preconvex_bound(0.5, 100.0**2, 0.0, 1, 1) == pytest.approx(10.0)
    assert preconvex_bound(1.0, 1.0, 0.3, 1, 1) == 1
    assert preconvex_bound(1.0, 50.0, 0.1, 1, 1) == pytest.approx(50**0.1)
    with pytest.raises(PreconvexityRangeError):
        preconvex_bound(-2.0, 10.0, 0.1, 1, 1)


def test_exponent_extrapolation():
    line = preconvex_line(2, 2)
    lo, hi = line.interval
    assert line.exponent(hi + 1) == 0
    assert line.exponent(lo) == pytest.approx(line(lo))
    assert line.exponent(-3) == pytest.approx(3.5)
    assert line.exponent(-3, "linear") == pytest.approx(line(-3))
    assert line.exponent(-3, "linear") < line.exponent(-3)
