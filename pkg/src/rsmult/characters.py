"""Real primitive Dirichlet characters and the [zeta L(s, chi)]^2 example.

Characters are Kronecker symbols ``(D | .)`` for fundamental discriminants D,
of modulus ``|D|``, odd when ``D < 0``.

``L(1, chi)`` and ``L'(1, chi)`` are computed from the residue-class
decomposition ``L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q)`` using the
Laurent data of the Hurwitz zeta function at s = 1:

    L(1)  = -(1/q) sum_a chi(a) digamma(a/q)
    L'(1) = -log(q) L(1) - (1/q) sum_a chi(a) gamma_1(a/q)

with gamma_1 the first generalized Stieltjes constant.  The class number
formula is kept separate as an oracle (:func:`class_number_l1`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import mpmath
import numpy as np
from scipy.special import bernoulli, digamma

from .conductor import AnalyticConductor, IsobaricComponent, IsobaricSpec, isobaric_rs_conductor
from .lseries import SatakeTable, build_rs_stream, build_stream
from .mellin import PolarPart
from .primes import is_squarefree, prime_divisors, prime_sieve

EULER_GAMMA = float(mpmath.euler)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol ``(a | n)`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminant_of(n: int) -> int:
    """Discriminant of Q(sqrt(n)); 1 when n is a perfect square."""
    if n == 0:
        raise ValueError("n must be nonzero")
    sign = -1 if n < 0 else 1
    m = abs(n)
    core = 1
    for p in prime_divisors(m):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e % 2:
            core *= p
    core *= sign
    if core == 1:
        return 1
    return core if core % 4 == 1 else 4 * core


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """``values[a % q]`` is chi(a) in {-1, 0, 1}."""

    discriminant: int
    values: np.ndarray

    @property
    def modulus(self) -> int:
        return abs(self.discriminant)

    q = modulus

    @property
    def odd(self) -> bool:
        return self.discriminant < 0

    @property
    def parity(self) -> str:
        return "odd" if self.odd else "even"

    @property
    def trivial(self) -> bool:
        return self.discriminant == 1

    def __call__(self, n):
        return self.values[np.asarray(n) % self.modulus]

    def __eq__(self, other):
        return isinstance(other, DirichletCharacter) and self.discriminant == other.discriminant

    def __hash__(self):
        return hash(("chi", self.discriminant))

    def __repr__(self):
        return f"DirichletCharacter(D={self.discriminant})"

    @property
    def primitive(self) -> bool:
        return character_conductor(self) == self.modulus

    def conductor(self) -> AnalyticConductor:
        return AnalyticConductor.dirichlet(self.modulus, self.odd)

    def satake_table(self, limit: int) -> SatakeTable:
        ps = prime_sieve(limit)
        return SatakeTable(ps, self(ps).astype(complex)[:, None])

    def stream(self, N: int):
        return build_stream(self.satake_table(N), N)


def kronecker_character(D: int) -> DirichletCharacter:
    """The character ``(D | .)`` tabulated on one period."""
    if D == 1:
        return DirichletCharacter(1, np.ones(1, dtype=np.int8))
    q = abs(D)
    vals = np.ones(q, dtype=np.int8)
    vals[0] = 0
    for p in prime_sieve(q - 1):
        p = int(p)
        c = kronecker_symbol(D, p)
        pk = p
        while pk < q:
            vals[pk::pk] *= c
            pk *= p
    return DirichletCharacter(D, vals)


def character_conductor(chi: DirichletCharacter) -> int:
    """Smallest f | q such that chi(n) = 1 whenever n = 1 mod f and (n, q) = 1."""
    q = chi.modulus
    if q == 1:
        return 1
    n = np.arange(q)
    units = np.gcd(n, q) == 1
    for f in sorted(d for d in range(1, q + 1) if q % d == 0):
        sel = units & (n % f == 1 % f)
        if np.all(chi.values[sel] == 1):
            return f
    return q


def enumerate_real_primitive(q_max: int) -> list[DirichletCharacter]:
    """All Kronecker characters of fundamental discriminants ``3 <= |D| <= q_max``,
    ordered by modulus, odd before even."""
    if q_max < 3:
        raise ValueError("q_max must be >= 3")
    out = []
    for q in range(3, q_max + 1):
        for D in (-q, q):
            if is_fundamental_discriminant(D):
                out.append(kronecker_character(D))
    return out


def product_character(a: DirichletCharacter, b: DirichletCharacter) -> DirichletCharacter:
    """The primitive character inducing ``a * b``."""
    return kronecker_character(fundamental_discriminant_of(a.discriminant * b.discriminant))


# ---------------------------------------------------------------------------
# L(1, chi) and L'(1, chi)

def stieltjes1(x):
    """First generalized Stieltjes constant gamma_1(x) for x > 0, vectorised.

    Euler-Maclaurin for ``sum_k log(k+x)/(k+x) - log^2(M+x)/2`` with M = 30
    and correction terms through the fifth derivative.
    """
    x = np.asarray(x, dtype=float)
    M = 30
    k = np.arange(M)[:, None]
    u = k + x[None, :] if x.ndim else k[:, 0] + x
    head = np.sum(np.log(u) / u, axis=0)
    v = M + x
    L = np.log(v)
    f = L / v
    d1 = (1.0 - L) / v**2
    d3 = (11.0 - 6.0 * L) / v**4
    d5 = (274.0 - 120.0 * L) / v**6
    tail = f / 2 - L**2 / 2 - (1.0 / 12) * d1 + (1.0 / 720) * d3 - (1.0 / 30240) * d5
    return head + tail


def l_one(chi: DirichletCharacter, order: int = 0) -> float:
    """L(1, chi) (order 0) or L'(1, chi) (order 1) for nontrivial chi."""
    if chi.trivial:
        raise ValueError("L(s, chi) has a pole at s = 1 for the trivial character")
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    q = chi.modulus
    a = np.arange(1, q)
    c = chi.values[1:].astype(float)
    L1 = -math.fsum(c * digamma(a / q)) / q
    if order == 0:
        return L1
    return -math.log(q) * L1 - math.fsum(c * stieltjes1(a / q)) / q


def _class_number_negative(D: int) -> int:
    """Number of reduced primitive forms of discriminant D < 0."""
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            h += 1
        a += 1
    return h


def _log_fundamental_unit(D: int) -> float:
    """log of the fundamental unit of discriminant D > 0.

    Walks the continued fraction of ``w = (s + sqrt D)/2`` (s = D mod 2); the
    first convergent p/r with ``N(p - r w') = +-1`` gives the unit
    ``(t + r sqrt D)/2`` with ``t = 2p - s r``.
    """
    s = D % 2
    root = math.isqrt(D)
    P, Q = s, 2
    a = (P + root) // Q
    p_prev, p = 1, a
    r_prev, r = 0, 1
    for _ in range(100_000):
        if p * p - s * p * r - r * r * ((D - s) // 4) in (1, -1):
            t = 2 * p - s * r
            return math.log(t) + math.log1p(r * math.sqrt(D) / t) - math.log(2)
        P = a * Q - P
        Q = (D - P * P) // Q
        a = (P + root) // Q
        p_prev, p = p, a * p + p_prev
        r_prev, r = r, a * r + r_prev
    raise ArithmeticError(f"no fundamental unit found for D={D}")


def class_number_l1(chi: DirichletCharacter) -> float:
    """L(1, chi) from the class number formula (independent oracle).

    D < 0: ``2 pi h / (w sqrt|D|)`` with h counted by reduced forms.
    D > 0: ``2 h log(eps) / sqrt D``, with eps the fundamental unit and
    ``h = -(1/(2 log eps)) sum_a chi(a) log sin(pi a / D)`` rounded to an
    integer.
    """
    D = chi.discriminant
    if D < 0:
        h = _class_number_negative(D)
        w = {-3: 6, -4: 4}.get(D, 2)
        return 2 * math.pi * h / (w * math.sqrt(-D))
    log_eps = _log_fundamental_unit(D)
    a = np.arange(1, D)
    s = math.fsum(chi.values[1:] * np.log(np.sin(np.pi * a / D)))
    h_real = -s / (2 * log_eps)
    h = round(h_real)
    if h < 1 or abs(h_real - h) > 1e-6:
        raise ArithmeticError(f"class number for D={D} not an integer: {h_real}")
    return 2 * h * log_eps / math.sqrt(D)


# ---------------------------------------------------------------------------
# the example Pi = chi (+) 1

def example_spec(chi: DirichletCharacter) -> IsobaricSpec:
    return IsobaricSpec(
        (
            IsobaricComponent(chi.conductor(), 0.0, label=f"D={chi.discriminant}"),
            IsobaricComponent(AnalyticConductor.dirichlet(1, False), 0.0, label="D=1"),
        )
    )


def _label_discriminant(c: IsobaricComponent) -> int:
    return int(c.label.split("=")[1])


def dirichlet_pair_conductor(a: IsobaricComponent, b: IsobaricComponent, t: float) -> float:
    """Exact analytic conductor of chi_a x chi_b (the primitive character
    inducing the product), for components labelled ``D=<discriminant>``."""
    prod = fundamental_discriminant_of(_label_discriminant(a) * _label_discriminant(b))
    return AnalyticConductor.dirichlet(abs(prod), prod < 0)(t)


def example_conductor(chi: DirichletCharacter) -> float:
    """C(Pi x Pi) for Pi = chi (+) 1 with exact pair conductors."""
    return isobaric_rs_conductor(example_spec(chi), 0.0, pair_conductor=dirichlet_pair_conductor)


@dataclass(frozen=True)
class ExampleReport:
    q: int
    discriminant: int
    L1: float
    L1prime: float
    r_minus2: float
    r_minus1: float
    theorem1_lhs: float
    theorem1_rhs: float
    dirichlet_oracle: float
    conductor: float

    @property
    def slack(self) -> float:
        return self.theorem1_lhs / self.theorem1_rhs

    def polar(self) -> PolarPart:
        return PolarPart((self.r_minus1, self.r_minus2))

    CSV_FIELDS = ("q", "L1", "L1prime", "r_minus2", "r_minus1", "lhs", "rhs", "oracle", "slack")

    def csv_row(self) -> tuple:
        return (
            self.q,
            self.L1,
            self.L1prime,
            self.r_minus2,
            self.r_minus1,
            self.theorem1_lhs,
            self.theorem1_rhs,
            self.dirichlet_oracle,
            self.slack,
        )


def example_pipeline(chi: DirichletCharacter, epsilon: float = 0.05) -> ExampleReport:
    """Polar part of ``[zeta(s) L(s, chi)]^2`` against the C^{-1/4-eps} lower bound.

    ``r_{-2} = L(1)^2`` and ``r_{-1} = 2 L'(1) L(1) + 2 gamma L(1)^2`` where
    gamma is the Euler-Mascheroni constant (the constant Laurent term of zeta
    at 1).
    """
    L1 = l_one(chi, 0)
    L1p = l_one(chi, 1)
    r2 = L1 * L1
    r1 = 2 * L1p * L1 + 2 * EULER_GAMMA * L1 * L1
    C = example_conductor(chi)
    lhs = abs(r1) + abs(r2)
    if not lhs > 0:
        raise ArithmeticError(f"vanishing polar part for {chi}")
    return ExampleReport(
        q=chi.modulus,
        discriminant=chi.discriminant,
        L1=L1,
        L1prime=L1p,
        r_minus2=r2,
        r_minus1=r1,
        theorem1_lhs=lhs,
        theorem1_rhs=C ** (-0.25 - epsilon),
        dirichlet_oracle=chi.modulus**-0.5,
        conductor=C,
    )


def example_table(chi: DirichletCharacter, limit: int) -> SatakeTable:
    """Satake data of Pi = chi (+) 1: parameters (chi(p), 1)."""
    ps = prime_sieve(limit)
    return SatakeTable(ps, np.stack([chi(ps).astype(complex), np.ones(ps.size, dtype=complex)], axis=1))


def example_rs_stream(chi: DirichletCharacter, N: int):
    """Coefficients of ``[zeta(s) L(s, chi)]^2``; at p | q the local factor is
    ``(1 - X)^{-2}`` (zeta twice, L(s, chi) trivial), supplied directly."""
    table = example_table(chi, N)
    ramified = {p: (1.0, -2.0, 1.0) for p in prime_divisors(chi.modulus)}
    return build_rs_stream(table, table.conjugate(), N, ramified_factors=ramified)


def partial_residue(S) -> float:
    """Residue at 1 of ``zeta(s) prod_{p in S} (1 - p^{-s})``."""
    out = 1.0
    for p in S:
        out *= 1.0 - 1.0 / p
    return out


# ---------------------------------------------------------------------------
# independent Laurent fit

class LaurentFitError(ArithmeticError):
    pass


_EM_TERMS = 8


def hurwitz_zeta(s: float, x, M: int = 20):
    """zeta(s, x) for real s != 1 and x > 0, vectorised over x.

    Direct sum of M terms, then Euler-Maclaurin at ``a = x + M``.
    """
    x = np.asarray(x, dtype=float)
    k = np.arange(M).reshape((M,) + (1,) * x.ndim)
    head = np.sum((k + x) ** (-s), axis=0)
    a = x + M
    tail = a ** (1 - s) / (s - 1) + a ** (-s) / 2
    B = bernoulli(2 * _EM_TERMS)
    rising = s
    for j in range(1, _EM_TERMS + 1):
        tail = tail + B[2 * j] / math.factorial(2 * j) * rising * a ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return head + tail


def dirichlet_l_real(s: float, chi: DirichletCharacter) -> float:
    """L(s, chi) at real s != 1 via ``q^{-s} sum_a chi(a) zeta(s, a/q)``."""
    q = chi.modulus
    a = np.arange(1, q + 1)
    vals = hurwitz_zeta(s, a / q) * chi.values[a % q]
    return q ** (-s) * math.fsum(vals)


def laurent_fit(f, steps=(1e-2, 1e-3)) -> PolarPart:
    """r_{-2}, r_{-1} of a real function with at most a double pole at 1.

    ``g(h) = h^2 f(1 + h)`` is split into even and odd parts at ``+-h`` and
    the h^2 error terms are removed by Richardson extrapolation between the
    two step sizes.
    """
    h1, h2 = steps

    def parts(h):
        gp = h * h * f(1 + h)
        gm = h * h * f(1 - h)
        return (gp + gm) / 2, (gp - gm) / (2 * h)

    e1, o1 = parts(h1)
    e2, o2 = parts(h2)
    w = h1**2 / (h1**2 - h2**2)
    r2 = w * e2 + (1 - w) * e1
    r1 = w * o2 + (1 - w) * o1
    if not (math.isfinite(r2) and math.isfinite(r1)):
        raise LaurentFitError("non-finite Laurent fit")
    # the two step sizes must already agree; a higher-order pole or a
    # badly scaled f shows up as a large gap here
    scale = max(abs(r2), abs(r1), 1e-300)
    if max(abs(e1 - e2), abs(o1 - o2)) > 1e-2 * scale:
        raise LaurentFitError("step sizes disagree; the fit is ill-conditioned")
    return PolarPart((r1, r2))


def rs_polar_oracle(chi: DirichletCharacter | None) -> PolarPart:
    """Fit r_{-2}, r_{-1} of ``[zeta(s) L(s, chi)]^2`` numerically.

    ``chi=None`` fits ``zeta(s)^2`` alone.  Values come from
    :func:`hurwitz_zeta` away from s = 1, independently of :func:`l_one`.
    """
    if chi is None:
        return laurent_fit(lambda s: float(hurwitz_zeta(s, 1.0)) ** 2)
    return laurent_fit(lambda s: (float(hurwitz_zeta(s, 1.0)) * dirichlet_l_real(s, chi)) ** 2)
