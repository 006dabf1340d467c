import math

import numpy as np
import pytest

from rsmult.characters import kronecker_character
from rsmult.lseries import CoefficientStream, SatakeTable, build_rs_stream, build_stream
from rsmult.mellin import (
    PolarPart,
    QuadratureError,
    SmoothWindow,
    StreamTooShort,
    balancing_Y,
    contour_error,
    lemma2_bound,
    make_window,
    mellin_inverse,
    mellin_transform,
    residue_main_term,
    smoothed_sum,
    theorem1_length,
    theorem1_lower,
)
from rsmult.primes import prime_sieve
from rsmult.synthetic import unimodular_table

EULER = 0.5772156649015329


@pytest.fixture(scope="module")
def window():
    return make_window()


@pytest.fixture(scope="module")
def gamma_window():
    # exp(-x) truncated far out: hat_psi = Gamma to ~1e-12
    return SmoothWindow.from_function(lambda x: np.exp(-x), (1e-13, 60.0))


def zeta_stream(N):
    ps = prime_sieve(N)
    return build_stream(SatakeTable(ps, np.ones((ps.size, 1))), N)


def test_window_shape(window):
    assert window(np.array([1.0, 1.5, 2.0])).tolist() == [1.0, 1.0, 1.0]
    assert window(np.array([0.0, 0.5, 4.0, 5.0])).tolist() == [0.0, 0.0, 0.0, 0.0]
    xs = np.linspace(0, 5, 2001)
    assert np.all(window(xs) >= 0)
    with pytest.raises(ValueError):
        make_window(a=1.2)
    with pytest.raises(ValueError):
        make_window(b=1.5)
    with pytest.raises(ValueError):
        make_window("gaussian")


def test_mellin_one_normalisation():
    w = make_window("mellin_one")
    assert abs(mellin_transform(w, 1.0) - 1) <= 1e-10
    assert w.normalization_mode == "mellin_one"


def test_transform_positive_mass(window):
    assert mellin_transform(window, 1.0).real > 1.0
    assert mellin_transform(window, 1.0).real == pytest.approx(2.25, abs=1e-12)


def test_gamma_hook(gamma_window):
    assert abs(mellin_transform(gamma_window, 1.0) - 1) <= 1e-10
    assert abs(mellin_transform(gamma_window, 2.5) - math.gamma(2.5)) <= 1e-10
    assert abs(mellin_transform(gamma_window, 1.0, derivative=1) + EULER) <= 1e-9


def test_against_mpmath(window):
    import mpmath

    f = lambda x: float(window(np.array([float(x)]))[0])  # noqa: E731
    for s in (1.0, 2 + 3j, 1 + 40j):
        ref = mpmath.quad(lambda x: f(x) * x ** (s - 1), [0.5, 1, 2, 4])
        assert abs(mellin_transform(window, s) - complex(ref)) <= 1e-10


def test_quadrature_error_reported(window):
    with pytest.raises(QuadratureError):
        mellin_transform(window, 1 + 5000j)


def test_rapid_decay(window):
    c4 = max(abs(mellin_transform(window, 1 + 1j * T)) * T**4 for T in (10, 100))
    for T in (200, 400):
        assert abs(mellin_transform(window, 1 + 1j * T)) <= c4 * T**-4
    # faster than any fixed power on this range
    assert abs(mellin_transform(window, 1 + 400j)) * 400**6 < abs(mellin_transform(window, 1 + 200j)) * 200**6


def test_inversion_roundtrip(window):
    xs = np.array([0.75, 1.5, 3.0])
    assert np.max(np.abs(mellin_inverse(window, xs, T=400) - window(xs))) <= 1e-6


def test_smoothed_sum_basics(window):
    z = zeta_stream(400)
    for Y in (10.0, 37.5, 100.0):
        assert smoothed_sum(z, window, Y) >= math.floor(2 * Y) - math.ceil(Y) + 1
    empty = CoefficientStream(40, np.r_[0, 1, np.zeros(39)], degree=1)
    assert smoothed_sum(empty, window, 10.0) == 0.0
    with pytest.raises(StreamTooShort):
        smoothed_sum(z, window, 150.0)


def test_smoothed_sum_odd_indicator(window):
    chi = kronecker_character(-4)
    s = chi.stream(400)
    rs = build_rs_stream(s, s.table.conjugate(), 400)
    direct = math.fsum(float(window(np.array([n / 100]))[0]) for n in range(1, 400) if n % 2)
    assert smoothed_sum(rs, window, 100.0) == pytest.approx(direct, rel=1e-14)
    excl = smoothed_sum(zeta_stream(400), window, 100.0, exclude=(2,))
    assert excl == pytest.approx(direct, rel=1e-14)


def test_truncation_monotone(window):
    t = unimodular_table(2, 4000, seed=4)
    rs = build_rs_stream(t, t.conjugate(), 4000)
    F = smoothed_sum(rs, window, 1000.0)
    n = np.arange(1000, 2001)
    part = float(np.sum(rs.values[1000:2001].real * window(n / 1000.0)))
    assert F >= part


def test_prime_floor_examples():
    z = zeta_stream(4000)
    zz = build_rs_stream(z, z.table.conjugate(), 4000)
    r = lemma2_bound(zz, 1, 1000.0)
    assert r.passed and r.A == 135
    t = unimodular_table(2, 40000, seed=0)
    rs = build_rs_stream(t, t.conjugate(), 40000)
    r2 = lemma2_bound(rs, 2, 1e4)
    assert (r2.A, r2.floor, r2.passed) == (9, 4.5, True)
    everything = [101, 103, 107, 109, 113, 127, 131, 137, 139]
    r3 = lemma2_bound(rs, 2, 1e4, S=everything)
    assert r3.floor <= 0 and r3.passed
    with pytest.raises(ValueError):
        lemma2_bound(z, 1, 1000.0)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_prime_floor_random_data(d):
    rng = np.random.default_rng(d)
    for k in range(4):
        Y = float(10 ** rng.uniform(3, 4.5))
        N = math.ceil(4 * Y)
        t = unimodular_table(d, N, seed=1000 * d + k)
        assert lemma2_bound(build_rs_stream(t, t.conjugate(), N), d, Y).passed


def test_residue_simple_pole(window):
    Y = 50.0
    assert residue_main_term(PolarPart((3.0,)), window, Y) == pytest.approx(3.0 * 2.25 * Y)


def test_residue_double_pole_gamma(gamma_window):
    Y, r1, r2 = 30.0, 0.7, 1.3
    expected = r2 * (-EULER * Y + Y * math.log(Y)) + r1 * Y
    assert residue_main_term(PolarPart((r1, r2)), gamma_window, Y) == pytest.approx(expected, rel=1e-9)


def test_residue_linearity(window):
    p, p2 = PolarPart((0.4, 1.1, 0.2)), PolarPart((0.8, 2.2, 0.4))
    assert residue_main_term(p2, window, 20.0) == pytest.approx(2 * residue_main_term(p, window, 20.0))
    with pytest.raises(ValueError):
        PolarPart(())
    with pytest.raises(ValueError):
        residue_main_term(p, window, 1.0)


def test_contour_error():
    assert contour_error(1.0, 2.0, 10.0, 0.1, 1, 1, slack=3.0) == pytest.approx(3.0 * 10.0**-2)
    assert contour_error(50.0, 1.0, 1e8, 0.1, 1, 1) < contour_error(50.0, 1.0, 1e4, 0.1, 1, 1)
    C, b, eps = 400.0, 1.5, 0.05
    Y = balancing_Y(C, b, 1, 1)
    assert contour_error(C, b, Y, eps, 1, 1) == pytest.approx(C ** (eps - 1))
    with pytest.raises(ValueError):
        contour_error(10.0, 0.5, 10.0, 0.1, 1, 1)


def test_polar_lower_bound():
    assert theorem1_lower(1.0, 2) == 1
    q, eps = 101.0, 0.05
    assert theorem1_lower(q**2, 2, 1, eps) == pytest.approx(q ** (-0.5 - 2 * eps))
    assert theorem1_lower(1e6, 10**6, 1, 0.0) == pytest.approx(1e-3, rel=1e-5)
    assert theorem1_length(100.0, 0.0) == pytest.approx(10.0)
    with pytest.raises(ValueError):
        theorem1_lower(0.5, 2)
