"""Satake data over Q, multiplicative coefficient streams and their evaluation.

A :class:`CoefficientStream` holds ``lambda(n)`` for ``1 <= n <= N`` as a dense
complex array.  Values are produced by multiplicative extension of the local
power series ``prod_i (1 - a_i X)^{-1}`` and are exact up to floating point
in the local parameters.

Ramified primes are marked by zero Satake entries.  For Rankin-Selberg
streams the local factor at a ramified prime can be supplied directly as the
coefficients of ``P_p(X)`` (with ``P_p(0) = 1``); otherwise the pairwise
products are used, zeros included, which gives the partial L-function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from scipy.special import zeta as _zeta

from .primes import prime_sieve
from .symmetric import PowerSeries, geometric_product

LRS_SLOP = 1e-12


def lrs_theta(n: int) -> float:
    """``1/(n^2 + 1)``, the exponent saving in the Luo-Rudnick-Sarnak bounds."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    return 1.0 / (n * n + 1)


class MissingPrimeData(ValueError):
    pass


class TruncationError(ValueError):
    """The requested point is too close to the line of absolute convergence
    for the available truncation, or the tail bound exceeds the tolerance."""


@dataclass(frozen=True)
class LocalSatake:
    """Satake parameters of a degree-n representation at the prime p."""

    prime: int
    params: tuple[complex, ...]
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(complex(a) for a in self.params))
        if self.prime < 2:
            raise ValueError(f"prime must be >= 2, got {self.prime}")
        if not self.params:
            raise ValueError("at least one Satake parameter is required")
        if self.check and not self.satisfies_lrs():
            raise ValueError(
                f"Satake parameters at p={self.prime} exceed p^(1/2 - theta): {self.params}"
            )

    @property
    def degree(self) -> int:
        return len(self.params)

    @property
    def ramified(self) -> bool:
        return any(a == 0 for a in self.params)

    def satisfies_lrs(self) -> bool:
        bound = self.prime ** (0.5 - lrs_theta(self.degree)) + LRS_SLOP
        return all(abs(a) <= bound for a in self.params)


@dataclass(frozen=True)
class ArchimedeanData:
    """Langlands parameters at the infinite places, ``[(kind, mus), ...]``.

    At a real place the bound ``|Re mu| <= 1/2 - theta`` is checked after
    removing the parity shift ``kappa in {0, 1}`` of ``Gamma_R(s + kappa + nu)``,
    so that odd Dirichlet characters (``mu = 1``) are admissible.
    """

    places: tuple[tuple[str, tuple[complex, ...]], ...]

    def __post_init__(self):
        places = tuple((str(kind), tuple(complex(m) for m in mus)) for kind, mus in self.places)
        object.__setattr__(self, "places", places)
        if not places:
            raise ValueError("at least one archimedean place is required")
        n = len(places[0][1])
        for kind, mus in places:
            if kind not in ("real", "complex"):
                raise ValueError(f"unknown place kind {kind!r}")
            if len(mus) != n:
                raise ValueError("all places must carry the same number of parameters")
        bound = 0.5 - lrs_theta(n) + LRS_SLOP
        for kind, mus in places:
            for mu in mus:
                shifts = (0.0, 1.0) if kind == "real" else (0.0,)
                if min(abs(mu.real - k) for k in shifts) > bound:
                    raise ValueError(f"archimedean parameter {mu} violates the LRS bound")

    @classmethod
    def real(cls, mus: Sequence[complex]) -> "ArchimedeanData":
        return cls(((("real", tuple(mus))),))

    @property
    def degree(self) -> int:
        return len(self.places[0][1])

    def all_mus(self) -> list[complex]:
        return [mu for _, mus in self.places for mu in mus]


def contragredient(local: LocalSatake) -> LocalSatake:
    return LocalSatake(local.prime, tuple(a.conjugate() for a in local.params), check=local.check)


def rs_local_params(a: LocalSatake, b: LocalSatake) -> list[complex]:
    """Pairwise products ``a_i b_j`` at a prime where both are unramified."""
    if a.prime != b.prime:
        raise ValueError(f"prime mismatch: {a.prime} vs {b.prime}")
    if a.ramified or b.ramified:
        raise ValueError(f"ramified input at p={a.prime}; supply the local factor directly")
    out = [x * y for x in a.params for y in b.params]
    bound = a.prime ** (1.0 - lrs_theta(a.degree) - lrs_theta(b.degree)) + LRS_SLOP
    if max(abs(v) for v in out) > bound:
        raise ValueError(f"Rankin-Selberg parameters at p={a.prime} exceed the LRS bound")
    return out


def local_factor_coefficients(params: Sequence[complex], K: int) -> PowerSeries:
    """Coefficients of ``prod_i (1 - a_i X)^{-1}``; ``lambda(p^k)`` is entry k."""
    return geometric_product(params, K)


def factor_from_polynomial(poly: Sequence[complex], K: int) -> PowerSeries:
    """Local series ``1/P(X)`` for a ramified factor given by P's coefficients."""
    c = np.zeros(K + 1, dtype=complex)
    poly = [complex(x) for x in poly]
    if not poly or poly[0] != 1:
        raise ValueError("local polynomial must satisfy P(0) = 1")
    m = min(len(poly), K + 1)
    c[:m] = poly[:m]
    return PowerSeries(c).reciprocal()


# ---------------------------------------------------------------------------
# streams

@dataclass(frozen=True, eq=False)
class SatakeTable:
    """Dense local data: ``params[i]`` are the Satake parameters at ``primes[i]``."""

    primes: np.ndarray
    params: np.ndarray

    def __post_init__(self):
        primes = np.asarray(self.primes, dtype=np.int64)
        params = np.asarray(self.params, dtype=complex)
        if params.ndim != 2 or params.shape[0] != primes.size:
            raise ValueError("params must have shape (len(primes), n)")
        order = np.argsort(primes, kind="stable")
        object.__setattr__(self, "primes", primes[order])
        object.__setattr__(self, "params", params[order])

    @property
    def degree(self) -> int:
        return self.params.shape[1]

    @classmethod
    def from_locals(cls, locals_: Iterable[LocalSatake]) -> "SatakeTable":
        locals_ = list(locals_)
        if not locals_:
            raise ValueError("no local data")
        n = locals_[0].degree
        if any(loc.degree != n for loc in locals_):
            raise ValueError("all local data must have the same degree")
        return cls(np.array([loc.prime for loc in locals_]), np.array([loc.params for loc in locals_]))

    def local(self, p: int) -> LocalSatake:
        i = int(np.searchsorted(self.primes, p))
        if i >= self.primes.size or self.primes[i] != p:
            raise MissingPrimeData(f"no local data at p={p}")
        return LocalSatake(int(p), tuple(self.params[i]), check=False)

    def restrict(self, limit: int) -> "SatakeTable":
        keep = self.primes <= limit
        return SatakeTable(self.primes[keep], self.params[keep])

    def conjugate(self) -> "SatakeTable":
        return SatakeTable(self.primes, self.params.conj())

    def ramified_primes(self) -> frozenset[int]:
        mask = np.any(self.params == 0, axis=1)
        return frozenset(int(p) for p in self.primes[mask])

    def satisfies_lrs(self) -> bool:
        bound = self.primes.astype(float) ** (0.5 - lrs_theta(self.degree)) + LRS_SLOP
        return bool(np.all(np.abs(self.params) <= bound[:, None]))


@dataclass(frozen=True, eq=False)
class CoefficientStream:
    """``values[n] = lambda(n)`` for ``1 <= n <= N`` (``values[0]`` is 0).

    ``growth`` is the exponent g with ``|a_i(p)| <= p^g`` for every Satake
    parameter, used by the tail bounds; ``degree`` is the number of local
    parameters so that ``|lambda(n)| <= d_degree(n) n^g``.
    """

    N: int
    values: np.ndarray
    degree: int
    ramified_primes: frozenset = frozenset()
    positivity_flag: bool = False
    growth: float = 0.0
    table: SatakeTable | None = field(default=None, repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.size != self.N + 1:
            raise ValueError("values must have length N + 1")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "ramified_primes", frozenset(int(p) for p in self.ramified_primes))

    def __getitem__(self, n):
        return self.values[n]

    def check_positive(self, tol: float = 1e-10) -> bool:
        v = self.values[1:]
        scale = np.maximum(1.0, np.abs(v))
        return bool(np.all(v.real >= -tol) and np.all(np.abs(v.imag) <= tol * scale))


def _local_series_table(table: SatakeTable, p: int, K: int, overrides) -> np.ndarray:
    if overrides is not None and p in overrides:
        return overrides[p]
    i = int(np.searchsorted(table.primes, p))
    return local_factor_coefficients(table.params[i], K).coefficients


def _fill_multiplicative(N: int, primes: np.ndarray, local_series, first_coeff: np.ndarray) -> np.ndarray:
    """Multiplicative extension.  ``local_series(p, K)`` gives
    ``lambda(p^0..p^K)`` for small primes; ``first_coeff[i]`` is
    ``lambda(primes[i])``, the only value needed when ``primes[i]^2 > N``."""
    values = np.ones(N + 1, dtype=complex)
    values[0] = 0.0
    root = math.isqrt(N)
    for i, p in enumerate(primes):
        p = int(p)
        if p > root:
            break
        K, top = 0, 1
        while top * p <= N:
            top *= p
            K += 1
        c = local_series(p, K)
        pk = p
        for k in range(1, K + 1):
            idx = np.arange(pk, N + 1, pk)
            idx = idx[(idx // pk) % p != 0]
            values[idx] *= c[k]
            pk *= p
    big = primes > root
    if np.any(big):
        bp = primes[big]
        bc = first_coeff[big]
        # n = p*m with p > sqrt(N) forces m < p, so p exactly divides n
        for m in range(1, N // int(bp[0]) + 1):
            cnt = int(np.searchsorted(bp, N // m, side="right"))
            if cnt == 0:
                break
            values[bp[:cnt] * m] *= bc[:cnt]
    return values


def _require_coverage(table: SatakeTable, N: int) -> None:
    needed = prime_sieve(N)
    have = table.primes[table.primes <= N]
    if have.size != needed.size or not np.array_equal(have, needed):
        missing = np.setdiff1d(needed, have)
        raise MissingPrimeData(f"no local data for primes {missing[:10].tolist()} (<= {N})")


def build_stream(locals_, N: int) -> CoefficientStream:
    """Standard L-function coefficients from Satake data covering every p <= N.

    ``locals_`` is a sequence of :class:`LocalSatake` or a :class:`SatakeTable`.
    """
    table = locals_ if isinstance(locals_, SatakeTable) else SatakeTable.from_locals(locals_)
    if N < 1:
        raise ValueError("N must be >= 1")
    _require_coverage(table, N)
    table = table.restrict(N)
    values = _fill_multiplicative(
        N,
        table.primes,
        lambda p, K: _local_series_table(table, p, K, None),
        table.params.sum(axis=1),
    )
    n = table.degree
    return CoefficientStream(
        N=N,
        values=values,
        degree=n,
        ramified_primes=table.ramified_primes(),
        positivity_flag=False,
        growth=max(0.0, 0.5 - lrs_theta(n)),
        table=table,
    )


def build_rs_stream(
    a,
    b,
    N: int,
    ramified_factors: Mapping[int, Sequence[complex]] | None = None,
) -> CoefficientStream:
    """Rankin-Selberg coefficients of ``a x b`` up to N.

    ``a`` and ``b`` are Satake tables (or :class:`CoefficientStream` objects
    carrying one).  ``ramified_factors`` maps a prime to the coefficients of
    its local polynomial ``P_p`` and overrides the pairwise products there.
    The result is flagged positive when ``b`` is the contragredient of ``a``.
    """
    ta = a.table if isinstance(a, CoefficientStream) else a
    tb = b.table if isinstance(b, CoefficientStream) else b
    if ta is None or tb is None:
        raise ValueError("streams must carry their Satake table")
    _require_coverage(ta, N)
    _require_coverage(tb, N)
    ta, tb = ta.restrict(N), tb.restrict(N)
    pairs = (ta.params[:, :, None] * tb.params[:, None, :]).reshape(ta.primes.size, -1)
    table = SatakeTable(ta.primes, pairs)
    overrides = None
    if ramified_factors:
        overrides = {}
        for p, poly in ramified_factors.items():
            p = int(p)
            if p > N:
                continue
            K = int(math.log(N) / math.log(p)) + 1
            overrides[p] = factor_from_polynomial(poly, K).coefficients
    first = pairs.sum(axis=1)
    if overrides:
        for p, c in overrides.items():
            first[int(np.searchsorted(table.primes, p))] = c[1] if c.size > 1 else 0.0
    values = _fill_multiplicative(
        N, table.primes, lambda p, K: _local_series_table(table, p, K, overrides), first
    )
    is_dual = ta.params.shape == tb.params.shape and np.allclose(ta.params.conj(), tb.params)
    ramified = ta.ramified_primes() | tb.ramified_primes() | frozenset(overrides or ())
    growth = max(0.0, 1.0 - lrs_theta(ta.degree) - lrs_theta(tb.degree))
    return CoefficientStream(
        N=N,
        values=values,
        degree=ta.degree * tb.degree,
        ramified_primes=ramified,
        positivity_flag=bool(is_dual),
        growth=growth,
        table=None,
    )


# ---------------------------------------------------------------------------
# evaluation right of the line of absolute convergence

class SeriesValue(NamedTuple):
    value: complex
    tail_bound: float


def divisor_tail_bound(k: int, a: float, N: int) -> float:
    """Upper bound for ``sum_{n > N} d_k(n) n^{-a}`` with ``a > 1``.

    Uses ``sum_{n>N} d_k(n) n^{-a} <= N^{-(a-b)} zeta(b)^k`` minimised over a
    grid of ``1 < b < a``; for ``k = 1`` also the integral bound
    ``N^{1-a} / (a - 1)``.
    """
    if a <= 1:
        return math.inf
    best = math.inf
    if k == 1:
        best = N ** (1.0 - a) / (a - 1.0)
    bs = 1.0 + (a - 1.0) * np.linspace(0.002, 0.998, 500)
    logs = -(a - bs) * math.log(N) + k * np.log(_zeta(bs))
    best = min(best, float(np.exp(np.min(logs))))
    return best


def _log_power_tail(k: int, a: float, N: int, order: int) -> float:
    """Bound for ``sum_{n>N} d_k(n) (log n)^order n^{-a}`` via
    ``(log n)^j <= (j/(e eta))^j n^eta``."""
    if order == 0:
        return divisor_tail_bound(k, a, N)
    best = math.inf
    for eta in (a - 1.0) * np.linspace(0.01, 0.99, 99):
        const = (order / (math.e * eta)) ** order
        best = min(best, const * divisor_tail_bound(k, a - eta, N))
    return best


def _growth(stream: CoefficientStream, theta: float | None) -> float:
    if theta is None:
        return stream.growth
    return max(0.0, 0.5 - theta)


def evaluate_derivative(
    stream: CoefficientStream,
    s: complex,
    order: int = 1,
    lrs_theta: float | None = None,
    tol: float | None = None,
    delta: float = 1e-2,
) -> SeriesValue:
    """``sum_{n<=N} lambda(n) (-log n)^order n^{-s}`` with a rigorous tail bound.

    The tail uses ``|lambda(n)| <= d_deg(n) n^g`` where g comes from
    ``lrs_theta`` (``g = 1/2 - theta``) or the stream's own growth exponent.
    """
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    s = complex(s)
    g = _growth(stream, lrs_theta)
    a = s.real - g
    if a <= 1.0 + delta:
        raise TruncationError(
            f"Re(s) = {s.real} is within {delta} of the convergence abscissa {1 + g}"
        )
    n = np.arange(1, stream.N + 1, dtype=float)
    terms = stream.values[1:] * np.exp(-s * np.log(n))
    if order:
        terms = terms * (-np.log(n)) ** order
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    tail = _log_power_tail(stream.degree, a, stream.N, order)
    if tol is not None and tail > tol:
        raise TruncationError(f"tail bound {tail:.3e} exceeds tolerance {tol:.3e} at N={stream.N}")
    return SeriesValue(value, tail)


def evaluate(
    stream: CoefficientStream,
    s: complex,
    lrs_theta: float | None = None,
    tol: float | None = None,
    delta: float = 1e-2,
) -> SeriesValue:
    """``sum_{n<=N} lambda(n) n^{-s}`` and a bound on the omitted tail."""
    return evaluate_derivative(stream, s, 0, lrs_theta=lrs_theta, tol=tol, delta=delta)
