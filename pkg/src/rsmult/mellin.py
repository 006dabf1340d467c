"""Smooth windows, their Mellin transforms, smoothed sums and the polar-part
machinery (residue main term, contour-shift error, prime-count floor).

Transforms are computed in the variable ``u = log x``:

    hat_psi(s) = int psi(e^u) e^{s u} du

by composite Gauss-Legendre on panels of width at most ``PANEL`` between the
window's breakpoints.  Two rules (orders ``COARSE`` and ``FINE``) are kept;
their difference is the reported error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .conductor import preconvex_line
from .lseries import CoefficientStream
from .primes import coprime_mask, count_primes_in_interval

PANEL = 0.025
COARSE = 16
FINE = 24
MELLIN_TOL = 1e-10


class QuadratureError(ArithmeticError):
    pass


def _smooth_step(u):
    """C-infinity step: 0 for u <= 0, 1 for u >= 1."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = (u > 0) & (u < 1)
    ui = u[inside]
    e0 = np.exp(-1.0 / ui)
    e1 = np.exp(-1.0 / (1.0 - ui))
    out[inside] = e0 / (e0 + e1)
    out[u >= 1] = 1.0
    return out


def canonical_bump(x, a: float = 0.5, b: float = 4.0):
    """Mollified plateau: 1 on [1, 2], 0 outside (a, b), C-infinity."""
    x = np.asarray(x, dtype=float)
    up = _smooth_step((x - a) / (1.0 - a))
    down = _smooth_step((b - x) / (b - 2.0))
    return np.where(x <= 2.0, up, down) * ((x > a) & (x < b))


def _rule(breaks, order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    us, ws = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        m = max(1, math.ceil((hi - lo) / PANEL))
        edges = np.linspace(lo, hi, m + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        us.append((mid[:, None] + half[:, None] * nodes[None, :]).ravel())
        ws.append((half[:, None] * weights[None, :]).ravel())
    return np.concatenate(us), np.concatenate(ws)


@dataclass(frozen=True, eq=False)
class SmoothWindow:
    """A nonnegative test function with its quadrature data.

    ``scale`` multiplies the raw evaluator; ``mellin_one`` windows are the
    canonical bump rescaled so that ``hat_psi(1) = 1``.
    """

    support: tuple[float, float]
    plateau: tuple[float, float] | None
    evaluator: Callable[[np.ndarray], np.ndarray]
    normalization_mode: str = "plateau"
    scale: float = 1.0
    breakpoints: tuple[float, ...] = ()
    _coarse: tuple = field(default=(), repr=False)
    _fine: tuple = field(default=(), repr=False)

    def __post_init__(self):
        a, b = self.support
        if not (0 < a < b):
            raise ValueError(f"invalid support {self.support}")
        breaks = tuple(sorted(set(self.breakpoints) | {math.log(a), math.log(b)}))
        object.__setattr__(self, "breakpoints", breaks)
        for name, order in (("_coarse", COARSE), ("_fine", FINE)):
            u, w = _rule(np.array(breaks), order)
            weighted = w * self.scale * self.evaluator(np.exp(u))
            object.__setattr__(self, name, (u, weighted))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        a, b = self.support
        inside = (x > a) & (x < b)
        out = np.zeros_like(x)
        out[inside] = self.scale * self.evaluator(x[inside])
        return out

    def with_scale(self, scale: float, mode: str) -> "SmoothWindow":
        return SmoothWindow(self.support, self.plateau, self.evaluator, mode, scale, self.breakpoints)

    @classmethod
    def from_function(cls, f, support: tuple[float, float], breakpoints=()) -> "SmoothWindow":
        """Window from an arbitrary evaluator (e.g. ``exp(-x)`` on a long
        interval, for testing against Gamma)."""
        return cls(tuple(support), None, f, "custom", 1.0, tuple(math.log(x) for x in breakpoints))


def make_window(kind: str = "plateau", a: float = 0.5, b: float = 4.0) -> SmoothWindow:
    """The canonical bump on ``[a, b]``, identically 1 on ``[1, 2]``."""
    if not (0 < a < 1 and b > 2):
        raise ValueError(f"need 0 < a < 1 and b > 2, got a={a}, b={b}")
    if kind not in ("plateau", "mellin_one"):
        raise ValueError(f"unknown window kind {kind!r}")
    f = lambda x: canonical_bump(x, a, b)  # noqa: E731
    w = SmoothWindow((a, b), (1.0, 2.0), f, "plateau", 1.0, (0.0, math.log(2.0)))
    if kind == "mellin_one":
        w = w.with_scale(1.0 / mellin_transform(w, 1.0).real, "mellin_one")
    return w


def _apply(rule, s, power: int = 0):
    u, wpsi = rule
    s = np.asarray(s, dtype=complex)
    kern = np.exp(np.multiply.outer(s, u))
    if power:
        kern = kern * u**power
    return kern @ wpsi


def mellin_transform(w: SmoothWindow, s, tol: float = MELLIN_TOL, derivative: int = 0):
    """``int psi(x) x^{s-1} (log x)^derivative dx`` (the derivative-th
    derivative of hat_psi at s).  Vectorised over ``s``.

    Raises :class:`QuadratureError` when the coarse and fine rules disagree by
    more than ``tol`` relative to ``max(1, |value|)``.
    """
    fine = _apply(w._fine, s, derivative)
    coarse = _apply(w._coarse, s, derivative)
    err = np.abs(fine - coarse)
    if np.any(err > tol * np.maximum(1.0, np.abs(fine))):
        worst = float(np.max(err))
        raise QuadratureError(f"Mellin quadrature error estimate {worst:.2e} exceeds {tol:.1e}")
    return complex(fine) if np.ndim(fine) == 0 else fine


def mellin_inverse(w: SmoothWindow, x, sigma: float = 2.0, T: float = 400.0, panel: float = 5.0, order: int = 32):
    """``(1/2pi) int_{-T}^{T} hat_psi(sigma + i tau) x^{-sigma - i tau} dtau``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    nodes, weights = np.polynomial.legendre.leggauss(order)
    m = max(1, math.ceil(2 * T / panel))
    edges = np.linspace(-T, T, m + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    tau = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    wt = (half[:, None] * weights[None, :]).ravel()
    s = sigma + 1j * tau
    psi_hat = _apply(w._fine, s)
    kern = np.exp(-np.multiply.outer(np.log(x), s))
    vals = (kern * (wt * psi_hat)[None, :]).sum(axis=1) / (2 * math.pi)
    return vals.real


# ---------------------------------------------------------------------------
# smoothed sums

class StreamTooShort(ValueError):
    pass


def smoothed_sum(stream: CoefficientStream, w: SmoothWindow, Y: float, exclude=()) -> float | complex:
    """``sum_{(n, exclude) = 1} lambda(n) psi(n / Y)`` (exact finite sum)."""
    a, b = w.support
    hi = math.ceil(b * Y) - 1
    if hi > stream.N:
        raise StreamTooShort(f"window reaches {b * Y:.6g} but stream stops at N={stream.N}")
    lo = max(1, math.floor(a * Y) + 1)
    if hi < lo:
        return 0.0
    n = np.arange(lo, hi + 1)
    weights = w(n / Y)
    if exclude:
        weights = weights * coprime_mask(hi, exclude)[lo:]
    terms = stream.values[lo : hi + 1] * weights
    # pairwise summation; fsum stalls on the bump's tails, which span
    # hundreds of binary exponents
    total = complex(np.sum(terms))
    if abs(total.imag) <= 1e-9 * max(1.0, abs(total.real)):
        return total.real
    return total


class LemmaTwoResult(NamedTuple):
    F: float
    floor: float
    passed: bool
    A: int
    B: int


def lemma2_bound(stream: CoefficientStream, d: int, Y: float, S=(), w: SmoothWindow | None = None) -> LemmaTwoResult:
    """Smoothed sum F(Y) against the prime-count floor from the proof.

    ``A`` counts primes in ``[Y^{1/d}, (2Y)^{1/d}]`` (sieve), ``B = |S|``.
    The floor is ``A/2`` when ``A >= 2B`` and ``A - B`` otherwise; both are
    valid lower bounds for F given b(p^d) >= 1 off S.
    """
    if not stream.positivity_flag:
        raise ValueError("lemma2_bound needs a pi x pi~ stream (positivity_flag set)")
    w = make_window("plateau") if w is None else w
    F = smoothed_sum(stream, w, Y)
    if isinstance(F, complex):
        raise ValueError("smoothed sum of a positive stream came out complex")
    A = count_primes_in_interval(Y ** (1.0 / d), (2.0 * Y) ** (1.0 / d))
    B = len(set(S))
    floor = 0.5 * A if A >= 2 * B else float(A - B)
    return LemmaTwoResult(F, floor, F >= floor - 1e-9, A, B)


# ---------------------------------------------------------------------------
# polar part and the contour shift

@dataclass(frozen=True)
class PolarPart:
    """``coefficients[k-1]`` is r_{-k}, the coefficient of ``(s-1)^{-k}``."""

    coefficients: tuple[complex, ...]
    r0: complex | None = None

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coefficients)
        if not c:
            raise ValueError("polar part of order 0")
        object.__setattr__(self, "coefficients", c)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def r(self, k: int) -> complex:
        """r_{-k} for k >= 1."""
        return self.coefficients[k - 1] if 1 <= k <= self.order else 0j

    def total(self) -> float:
        """``sum_k |r_{-k}|``."""
        return math.fsum(abs(c) for c in self.coefficients)


def residue_main_term(polar: PolarPart, w: SmoothWindow, Y: float) -> float | complex:
    """``Res_{s=1} hat_psi(s) L(s) Y^s`` for L with the given polar part.

    Expands ``sum_k r_{-k}/(k-1)! (d/ds)^{k-1}[hat_psi(s) Y^s]`` at s = 1 by
    Leibniz, using moment integrals ``int psi(x) (log x)^j dx`` for the
    derivatives of hat_psi.
    """
    if Y <= 1:
        raise ValueError("Y must exceed 1")
    m = polar.order
    moments = [mellin_transform(w, 1.0, derivative=j) for j in range(m)]
    L = math.log(Y)
    total = 0j
    for k in range(1, m + 1):
        j = k - 1
        g = sum(math.comb(j, i) * moments[i] * L ** (j - i) for i in range(j + 1)) * Y
        total += polar.r(k) / math.factorial(j) * g
    if abs(total.imag) <= 1e-12 * max(1.0, abs(total.real)):
        return total.real
    return total


def contour_error(
    C: float,
    b: float,
    Y: float,
    epsilon: float,
    n: int,
    nprime: int,
    slack: float = 1.0,
    extrapolation: str = "convexity",
) -> float:
    """``slack * C^{e(-b) + epsilon} * Y^{-b}`` for the shifted contour.

    ``e`` is the preconvexity exponent; -b always lies left of the
    preconvexity interval, where ``e`` is continued as described in
    :meth:`PreconvexLine.exponent`.
    """
    if b < 1:
        raise ValueError("b must be >= 1")
    line = preconvex_line(n, nprime)
    return slack * C ** (line.exponent(-b, extrapolation) + epsilon) * Y ** (-b)


def balancing_Y(C: float, b: float, n: int, nprime: int, extrapolation: str = "convexity") -> float:
    """``C^{(e(-b) + 1)/b}``, where the contour error drops to ``C^{epsilon - 1}``."""
    e = preconvex_line(n, nprime).exponent(-b, extrapolation)
    return C ** ((e + 1.0) / b)


def theorem1_lower(spec_conductor: float, d: int, ell: int = 1, epsilon: float = 0.0) -> float:
    """``C^{-(1 - 1/d)/2 - epsilon}`` (implied constant 1)."""
    if spec_conductor < 1:
        raise ValueError("conductor must be >= 1")
    if d < 1 or ell < 1 or ell > d:
        raise ValueError("need 1 <= ell <= d")
    return spec_conductor ** (-0.5 * (1.0 - 1.0 / d) - epsilon)


def theorem1_length(spec_conductor: float, epsilon: float) -> float:
    """The sum length ``Y = C^{1/2 + epsilon}`` used with :func:`theorem1_lower`."""
    return spec_conductor ** (0.5 + epsilon)
