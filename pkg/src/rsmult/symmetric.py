"""Partitions, Schur polynomials and the Cauchy-identity coefficients.

The coefficients ``b_k`` of

    prod_{i,j} (1 - a_i conj(a_j) X)^{-1} = sum_k b_k X^k

are computed two ways: by multiplying the d^2 geometric series directly
(:func:`cauchy_coefficients`) and by summing ``|s_lambda(a)|^2`` over
partitions of length at most d (:func:`cauchy_via_schur`).  The second route
is the independent oracle for the first.

When ``|prod a_i| = 1`` the d-th coefficient satisfies ``b_d >= 1``
(:func:`lemma1_check`); the audit decomposition

    b_d = 1 + sum_{|lambda| = d, len(lambda) <= d-1} |s_lambda(a)|^2

is returned alongside the coefficient.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

DEFAULT_PARTITION_CAP = 10**6


class PartitionOverflow(RuntimeError):
    """Raised when a partition enumeration exceeds its configured cap."""


@dataclass(frozen=True, order=True)
class Partition:
    """A partition stored with trailing zeros stripped.

    ``Partition((2, 1, 0))`` and ``Partition((2, 1))`` compare equal.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be nonincreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def padded(self, d: int) -> tuple[int, ...]:
        if d < self.length:
            raise ValueError(f"partition {self.parts} has more than {d} parts")
        return self.parts + (0,) * (d - self.length)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return self.length

    def __repr__(self):
        return f"Partition{self.parts}"


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def partitions_of(weight: int, max_length: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``weight`` with at most ``max_length`` parts, in
    reverse-lexicographic order (largest first part first)."""
    if max_part is None:
        max_part = weight
    if weight == 0:
        yield Partition(())
        return
    if max_length == 0:
        return
    for first in range(min(weight, max_part), 0, -1):
        # remaining weight must fit into max_length - 1 parts of size <= first
        if (weight - first) > first * (max_length - 1):
            break
        for rest in partitions_of(weight - first, max_length - 1, first):
            yield Partition((first,) + rest.parts)


def enumerate_partitions(
    max_weight: int, max_length: int, cap: int = DEFAULT_PARTITION_CAP
) -> list[Partition]:
    """All partitions with ``|lambda| <= max_weight`` and at most
    ``max_length`` parts, ordered by weight then reverse-lexicographically."""
    out: list[Partition] = []
    for w in range(max_weight + 1):
        for lam in partitions_of(w, max_length):
            out.append(lam)
            if len(out) > cap:
                raise PartitionOverflow(
                    f"more than {cap} partitions with weight <= {max_weight}, length <= {max_length}"
                )
    return out


# ---------------------------------------------------------------------------
# power series

@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series ``b_0 + b_1 X + ... + b_K X^K``."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a nonempty 1-d sequence")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def order(self) -> int:
        return self.coefficients.size - 1

    def __len__(self):
        return self.coefficients.size

    def __getitem__(self, k):
        return self.coefficients[k]

    def __iter__(self):
        return iter(self.coefficients)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        K = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        out = np.empty(K + 1, dtype=complex)
        for k in range(K + 1):
            terms = a[: k + 1] * b[k::-1]
            out[k] = complex(math.fsum(terms.real), math.fsum(terms.imag))
        return PowerSeries(out)

    def reciprocal(self) -> "PowerSeries":
        a = self.coefficients
        if a[0] == 0:
            raise ZeroDivisionError("constant term is zero")
        out = np.zeros_like(a)
        out[0] = 1 / a[0]
        for k in range(1, a.size):
            terms = a[1 : k + 1] * out[k - 1 :: -1]
            acc = complex(math.fsum(terms.real), math.fsum(terms.imag))
            out[k] = -acc / a[0]
        return PowerSeries(out)

    def allclose(self, other: "PowerSeries", rtol: float = 1e-8, atol: float = 0.0) -> bool:
        return bool(np.allclose(self.coefficients, other.coefficients, rtol=rtol, atol=atol))

    def real(self) -> np.ndarray:
        return self.coefficients.real.copy()


def geometric_product(values: Sequence[complex], K: int) -> PowerSeries:
    """Coefficients of ``prod_v (1 - v X)^{-1}`` up to ``X^K``.

    Each factor is applied by the in-place recurrence ``b_k += v b_{k-1}``,
    which is exact in the truncation order.  Zero entries contribute the
    constant factor 1.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    b = np.zeros(K + 1, dtype=complex)
    b[0] = 1.0
    for v in values:
        v = complex(v)
        if v == 0:
            continue
        for k in range(1, K + 1):
            b[k] += v * b[k - 1]
    return PowerSeries(b)


def _check_alpha(alpha) -> np.ndarray:
    a = np.asarray(alpha, dtype=complex).ravel()
    if a.size == 0:
        raise ValueError("alpha must be nonempty")
    if np.any(a == 0):
        raise ValueError("alpha entries must be nonzero")
    return a


def cauchy_coefficients(alpha: Sequence[complex], K: int) -> PowerSeries:
    """b_0..b_K of ``prod_{i,j} (1 - a_i conj(a_j) X)^{-1}``."""
    a = _check_alpha(alpha)
    pairs = (a[:, None] * a.conj()[None, :]).ravel()
    return geometric_product(pairs, K)


# ---------------------------------------------------------------------------
# Schur polynomials

def complete_homogeneous(alpha: Sequence[complex], K: int) -> np.ndarray:
    """h_0..h_K of ``alpha`` from power sums via Newton's identities,
    ``k h_k = sum_{i=1}^k p_i h_{k-i}``."""
    a = np.asarray(alpha, dtype=complex)
    p = np.array([np.sum(a**i) for i in range(K + 1)], dtype=complex)
    h = np.zeros(K + 1, dtype=complex)
    h[0] = 1.0
    for k in range(1, K + 1):
        terms = p[1 : k + 1] * h[k - 1 :: -1]
        h[k] = complex(math.fsum(terms.real), math.fsum(terms.imag)) / k
    return h


def _jacobi_trudi(parts: tuple[int, ...], h: np.ndarray) -> complex:
    m = len(parts)
    if m == 0:
        return 1.0 + 0j
    M = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            k = parts[i] - i + j
            if 0 <= k < h.size:
                M[i, j] = h[k]
            elif k >= h.size:
                raise IndexError("complete homogeneous table too short")
    return complex(np.linalg.det(M))


def schur_bialternant(lam, alpha: Sequence[complex]) -> complex:
    """``det(a_i^{lambda_j + d - j}) / det(a_i^{d - j})``; singular at repeated entries."""
    lam = _as_partition(lam)
    a = np.asarray(alpha, dtype=complex)
    d = a.size
    parts = lam.padded(d)
    num = np.array([[ai ** (parts[j] + d - 1 - j) for j in range(d)] for ai in a])
    den = np.array([[ai ** (d - 1 - j) for j in range(d)] for ai in a])
    return complex(np.linalg.det(num) / np.linalg.det(den))


def schur_eval(lam, alpha: Sequence[complex], tolerance: float = 1e-3, check: bool = False) -> complex:
    """Evaluate s_lambda(alpha) by the Jacobi-Trudi determinant.

    With ``check=True`` and all pairwise gaps of ``alpha`` above ``tolerance``,
    the bialternant ratio is computed as well and must agree to 1e-9 relative
    to ``s_lambda(|alpha|)``; otherwise :class:`ArithmeticError` is raised.
    """
    lam = _as_partition(lam)
    a = _check_alpha(alpha)
    if lam.length > a.size:
        raise ValueError(f"partition length {lam.length} exceeds number of variables {a.size}")
    h = complete_homogeneous(a, lam.parts[0] + lam.length if lam.parts else 0)
    value = _jacobi_trudi(lam.parts, h)
    if check and _min_gap(a) > tolerance:
        other = schur_bialternant(lam, a)
        scale = max(abs(schur_eval(lam, np.abs(a))), 1e-300)
        if abs(other - value) > 1e-9 * scale:
            raise ArithmeticError(
                f"Jacobi-Trudi {value} and bialternant {other} disagree for {lam}"
            )
    return value


def _min_gap(a: np.ndarray) -> float:
    if a.size < 2:
        return math.inf
    return min(abs(x - y) for x, y in itertools.combinations(a, 2))


def cauchy_via_schur(
    alpha: Sequence[complex], K: int, cap: int = DEFAULT_PARTITION_CAP
) -> PowerSeries:
    """``sum_{len(lambda) <= d} |s_lambda(alpha)|^2 X^{|lambda|}`` truncated at K."""
    a = _check_alpha(alpha)
    if K < 0:
        raise ValueError("K must be >= 0")
    d = a.size
    h = complete_homogeneous(a, K + d)
    acc: list[list[float]] = [[] for _ in range(K + 1)]
    for lam in enumerate_partitions(K, d, cap=cap):
        s = _jacobi_trudi(lam.parts, h)
        acc[lam.weight].append(abs(s) ** 2)
    return PowerSeries([math.fsum(v) for v in acc])


# ---------------------------------------------------------------------------
# the combinatorics behind b_d >= 1

def hat_map(lam, d: int) -> Partition:
    """Subtract the d-th part from the first d-1 parts and drop the rest."""
    lam = _as_partition(lam)
    if d < lam.length:
        raise ValueError(f"partition {lam.parts} has more than {d} parts")
    parts = lam.padded(d)
    last = parts[d - 1]
    return Partition(tuple(p - last for p in parts[: d - 1]))


def unhat(lam, k: int, d: int) -> Partition:
    """The unique partition with d-th part k whose hat is ``lam``."""
    lam = _as_partition(lam)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if lam.length > d - 1:
        raise ValueError(f"partition {lam.parts} needs at most {d - 1} parts")
    parts = lam.padded(d - 1)
    return Partition(tuple(p + k for p in parts) + (k,))


class Lemma1Result(NamedTuple):
    b_d: float
    passed: bool
    audit: float


def lemma1_check(alpha: Sequence[complex], tol: float = 1e-9) -> Lemma1Result:
    """Compute b_d for d = len(alpha) and check ``b_d >= 1``.

    ``audit`` is ``1 + sum |s_lambda|^2`` over partitions of d with at most
    d-1 parts; it equals ``b_d`` exactly in exact arithmetic.
    """
    a = _check_alpha(alpha)
    d = a.size
    if abs(abs(np.prod(a)) - 1.0) > tol:
        raise ValueError(f"|prod alpha| = {abs(np.prod(a))!r} is not 1 within {tol}")
    b = cauchy_coefficients(a, d)[d]
    h = complete_homogeneous(a, 2 * d)
    audit = 1.0 + math.fsum(abs(_jacobi_trudi(lam.parts, h)) ** 2 for lam in partitions_of(d, d - 1))
    b_real = float(b.real)
    return Lemma1Result(b_real, b_real >= 1.0 - tol, audit)
