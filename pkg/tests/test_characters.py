import math
import random

import mpmath
import numpy as np
import pytest
from sympy import jacobi_symbol

from rsmult.characters import (
    EULER_GAMMA,
    LaurentFitError,
    class_number_l1,
    dirichlet_l_real,
    enumerate_real_primitive,
    example_pipeline,
    example_rs_stream,
    fundamental_discriminant_of,
    hurwitz_zeta,
    is_fundamental_discriminant,
    kronecker_character,
    kronecker_symbol,
    l_one,
    laurent_fit,
    product_character,
    rs_polar_oracle,
    stieltjes1,
)
from rsmult.primes import prime_sieve


def test_kronecker_matches_jacobi_on_odd_moduli():
    rng = random.Random(1)
    for _ in range(3000):
        a, n = rng.randint(-1000, 1000), 2 * rng.randint(0, 500) + 1
        assert kronecker_symbol(a, n) == jacobi_symbol(a, n)


def test_kronecker_at_two():
    assert [kronecker_symbol(D, 2) for D in (1, 3, 5, 7, 4)] == [1, -1, -1, 1, 0]


def test_fundamental_discriminants():
    small = [D for D in range(-24, 25) if is_fundamental_discriminant(D)]
    assert small == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17, 21, 24]
    assert fundamental_discriminant_of(-3 * -4) == 12
    assert fundamental_discriminant_of(4 * 9) == 1
    assert fundamental_discriminant_of(-3 * 5) == -15


def test_enumeration_small():
    assert [c.discriminant for c in enumerate_real_primitive(4)] == [-3, -4]
    chi5 = kronecker_character(5)
    assert chi5.parity == "even" and chi5(2) == -1
    assert chi5.values.tolist() == [0, 1, -1, -1, 1]
    with pytest.raises(ValueError):
        enumerate_real_primitive(2)


def test_characters_are_primitive_multiplicative(chars100):
    rng = np.random.default_rng(0)
    for chi in chars100:
        assert chi.primitive
        q = chi.modulus
        n = np.arange(q)
        assert np.array_equal(chi.values == 0, np.gcd(n, q) > 1)
        m, k = rng.integers(1, 10 * q, size=(2, 50))
        assert np.array_equal(chi(m * k), chi(m) * chi(k))


def test_product_character():
    chi = product_character(kronecker_character(-3), kronecker_character(-4))
    assert chi.discriminant == 12
    assert product_character(kronecker_character(5), kronecker_character(5)).trivial


@pytest.mark.parametrize(
    "D,value",
    [(-4, math.pi / 4), (-3, math.pi / (3 * math.sqrt(3))), (5, 2 * math.log((1 + math.sqrt(5)) / 2) / math.sqrt(5))],
)
def test_l_one_closed_forms(D, value):
    assert abs(l_one(kronecker_character(D)) - value) <= 1e-7


def test_l_one_against_mpmath():
    # mpmath stalls exactly at s = 1, so sample 1 +- h; both symmetric
    # combinations are accurate to O(h^2)
    h = mpmath.mpf("1e-5")
    for D in (-3, -4, 8, -23, 77):
        chi = kronecker_character(D)
        vals = [int(v) for v in chi.values]
        with mpmath.workdps(30):
            up, down = mpmath.dirichlet(1 + h, vals), mpmath.dirichlet(1 - h, vals)
        assert abs(l_one(chi) - float((up + down) / 2)) <= 1e-8
        assert abs(l_one(chi, 1) - float((up - down) / (2 * h))) <= 1e-8


def test_l_one_errors():
    with pytest.raises(ValueError):
        l_one(kronecker_character(1))
    with pytest.raises(ValueError):
        l_one(kronecker_character(-4), 2)


def test_l_one_large_modulus_accuracy():
    chi = kronecker_character(-9991)
    assert abs(l_one(chi) - class_number_l1(chi)) <= 1e-8


def test_stieltjes_against_mpmath():
    xs = np.array([0.01, 0.2, 0.5, 0.999, 1.0])
    ref = [float(mpmath.stieltjes(1, x)) for x in xs]
    assert np.max(np.abs(stieltjes1(xs) - ref)) <= 1e-12


def test_class_numbers():
    # h(-23) = 3, h(-47) = 5, h(229) = 3, h(-4) = 1 with w = 4
    for D, h in ((-23, 3), (-47, 5), (-4, 1)):
        chi = kronecker_character(D)
        w = {-3: 6, -4: 4}.get(D, 2)
        assert class_number_l1(chi) == pytest.approx(2 * math.pi * h / (w * math.sqrt(-D)))
    chi = kronecker_character(229)
    eps = (15 + math.sqrt(229)) / 2
    assert class_number_l1(chi) == pytest.approx(2 * 3 * math.log(eps) / math.sqrt(229))


def test_class_number_oracle_agrees(chars499):
    worst = max(abs(l_one(c) - class_number_l1(c)) / class_number_l1(c) for c in chars499)
    assert worst <= 1e-10


def test_example_q4():
    r = example_pipeline(kronecker_character(-4), 0.05)
    assert r.r_minus2 == pytest.approx((math.pi / 4) ** 2, abs=1e-6)
    assert r.r_minus2 == r.L1**2
    assert r.theorem1_lhs == abs(r.r_minus1) + abs(r.r_minus2)
    assert r.theorem1_lhs >= r.r_minus2 - abs(r.r_minus1)
    assert r.conductor == 64.0
    assert r.dirichlet_oracle == 0.5


def test_example_stream_is_zeta_l_squared():
    chi = kronecker_character(-3)
    N = 500
    s = example_rs_stream(chi, N)
    # coefficients of (zeta L)^2 are (1 * chi) convolved with itself
    one_chi = np.zeros(N + 1)
    for d in range(1, N + 1):
        one_chi[d::d] += chi(d)
    conv = np.zeros(N + 1)
    for d in range(1, N + 1):
        conv[d::d] += one_chi[d] * one_chi[1 : N // d + 1]
    assert np.allclose(s.values.real, conv)
    assert s.check_positive()
    assert 3 in s.ramified_primes


def test_hurwitz_against_mpmath():
    xs = np.array([0.1, 0.5, 1.0, 3.3])
    for s in (0.5, 0.99, 1.01, 2.0):
        ref = [float(mpmath.zeta(s, x)) for x in xs]
        assert np.allclose(hurwitz_zeta(s, xs), ref, rtol=1e-12, atol=1e-12)
    chi = kronecker_character(-47)
    vals = [int(v) for v in chi.values]
    assert dirichlet_l_real(0.999, chi) == pytest.approx(float(mpmath.dirichlet(0.999, vals)), rel=1e-12)


def test_polar_oracle_zeta_squared():
    p = rs_polar_oracle(None)
    assert abs(p.r(2) - 1) <= 1e-8
    assert abs(p.r(1) - 2 * EULER_GAMMA) <= 1e-8


def test_polar_oracle_agreement(chars100):
    for chi in chars100:
        r, p = example_pipeline(chi), rs_polar_oracle(chi)
        assert abs(p.r(2) - r.r_minus2) <= 1e-3 * abs(r.r_minus2)
        assert abs(p.r(1) - r.r_minus1) <= 1e-3 * abs(r.r_minus1)


def test_laurent_fit_scaling_and_failure():
    f = lambda s: 1 / (s - 1) ** 2 + 0.3 / (s - 1) + 2.0  # noqa: E731
    p = laurent_fit(f)
    q = laurent_fit(lambda s: 9 * f(s))
    assert p.r(2) == pytest.approx(1.0) and p.r(1) == pytest.approx(0.3)
    assert q.r(2) == pytest.approx(9 * p.r(2))
    with pytest.raises(LaurentFitError):
        laurent_fit(lambda s: 1 / (s - 1) ** 3)


def test_gamma_convention_is_euler_mascheroni():
    # with another constant in place of gamma the r_{-1} formula misses the fit
    chi = kronecker_character(-7)
    r, p = example_pipeline(chi), rs_polar_oracle(chi)
    wrong = 2 * r.L1prime * r.L1 + 2 * float(mpmath.stieltjes(1)) * r.L1**2
    assert abs(p.r(1) - r.r_minus1) < 1e-6
    assert abs(p.r(1) - wrong) > 1e-2


def test_character_table_for_primes():
    chi = kronecker_character(-4)
    t = chi.satake_table(30)
    assert t.primes.tolist() == prime_sieve(30).tolist()
    assert t.ramified_primes() == frozenset({2})
