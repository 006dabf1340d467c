"""Analytic conductors, their separation over Rankin-Selberg pairs, and the
preconvexity exponent line.

Every bound here has an unspecified implied constant in the underlying
estimates; functions that return a bound take a multiplicative ``slack``
(default 1) so callers can measure constants empirically instead of
assuming them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

from .lseries import ArchimedeanData, lrs_theta

DEG_F = 1  # base field Q


@dataclass(frozen=True)
class AnalyticConductor:
    q: int
    arch: ArchimedeanData

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 1:
            raise ValueError(f"arithmetic conductor must be a positive integer, got {self.q}")

    @property
    def degree(self) -> int:
        return self.arch.degree

    @classmethod
    def dirichlet(cls, q: int, odd: bool) -> "AnalyticConductor":
        """Conductor of a primitive Dirichlet character: mu = 1 if odd else 0."""
        return cls(q, ArchimedeanData.real([1.0 if odd else 0.0]))

    def __call__(self, t: float = 0.0) -> float:
        return analytic_conductor(self, t)


def lambda_infty(arch: ArchimedeanData, t: float) -> float:
    """``prod_v prod_i (1 + |i t + mu_i(v)|)``."""
    out = 1.0
    for mu in arch.all_mus():
        out *= 1.0 + abs(1j * t + mu)
    return out


def analytic_conductor(c: AnalyticConductor, t: float = 0.0) -> float:
    return c.q * lambda_infty(c.arch, t)


def rs_conductor_upper(cA: AnalyticConductor, cB: AnalyticConductor, t: float = 0.0) -> float:
    """Separation bound ``C(A)^{n'} C(B)^{n} (1 + |t|)^{n n' [F:Q]}`` for ``C(A x B; t)``."""
    n, n2 = cA.degree, cB.degree
    return (
        analytic_conductor(cA) ** n2
        * analytic_conductor(cB) ** n
        * (1.0 + abs(t)) ** (n * n2 * DEG_F)
    )


@dataclass(frozen=True)
class IsobaricComponent:
    conductor: AnalyticConductor
    twist: float = 0.0
    label: str | None = None

    @property
    def degree(self) -> int:
        return self.conductor.degree


@dataclass(frozen=True)
class IsobaricSpec:
    """Formal sum of twisted components; equal labels must carry equal twists."""

    components: tuple[IsobaricComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("an isobaric sum needs at least one component")
        seen: dict[str, float] = {}
        for c in comps:
            if c.label is None:
                continue
            if c.label in seen and seen[c.label] != c.twist:
                raise ValueError(f"component {c.label!r} appears with different twists")
            seen[c.label] = c.twist

    @property
    def degree(self) -> int:
        return sum(c.degree for c in self.components)

    @property
    def length(self) -> int:
        return len(self.components)


PairConductor = Callable[[IsobaricComponent, IsobaricComponent, float], float]


def _upper_pair(a: IsobaricComponent, b: IsobaricComponent, t: float) -> float:
    return rs_conductor_upper(a.conductor, b.conductor, t)


def isobaric_rs_conductor(
    spec: IsobaricSpec,
    t: float = 0.0,
    other: IsobaricSpec | None = None,
    pair_conductor: PairConductor | None = None,
) -> float:
    """``prod_{j,k} C(pi_j x pi'_k; t + t_j + t'_k)``.

    ``other`` defaults to ``spec`` itself.  Without ``pair_conductor`` each
    pair is replaced by its separation upper bound.
    """
    other = spec if other is None else other
    pair = pair_conductor or _upper_pair
    out = 1.0
    for a in spec.components:
        for b in other.components:
            out *= pair(a, b, t + a.twist + b.twist)
    return out


# ---------------------------------------------------------------------------
# preconvexity

class PreconvexLine(NamedTuple):
    """The line l(sigma) with ``l(anchor_sigma) = anchor_value``."""

    slope: float
    anchor_sigma: float
    anchor_value: float
    left_end: float

    def __call__(self, sigma: float) -> float:
        return self.anchor_value + self.slope * (sigma - self.anchor_sigma)

    @property
    def interval(self) -> tuple[float, float]:
        return (self.left_end, self.anchor_sigma)

    def contains(self, sigma: float) -> bool:
        lo, hi = self.interval
        return lo - 1e-12 <= sigma <= hi + 1e-12

    def exponent(self, sigma: float, extrapolation: str = "convexity") -> float:
        """Exponent of the conductor at ``sigma`` outside the interval too.

        Left of the interval, ``"convexity"`` uses ``1/2 - sigma`` (functional
        equation plus Stirling), which meets the line at the left end;
        ``"linear"`` continues the line with slope -1/2.  Right of the interval
        the exponent is 0.
        """
        lo, hi = self.interval
        if sigma >= hi:
            return 0.0
        if sigma >= lo or extrapolation == "linear":
            return self(sigma)
        if extrapolation != "convexity":
            raise ValueError(f"unknown extrapolation {extrapolation!r}")
        return 0.5 - sigma


def preconvex_line(n: int, nprime: int) -> PreconvexLine:
    th, th2 = lrs_theta(n), lrs_theta(nprime)
    lo, hi = -1.0 + th + th2, 2.0 - th - th2
    lo_value = 1.5 - th - th2
    slope = (0.0 - lo_value) / (hi - lo)
    return PreconvexLine(slope, hi, 0.0, lo)


class PreconvexityRangeError(ValueError):
    pass


def preconvex_bound(
    sigma: float, C: float, epsilon: float, n: int, nprime: int, slack: float = 1.0
) -> float:
    """``slack * C^{l(sigma) + epsilon}`` on the preconvexity interval."""
    line = preconvex_line(n, nprime)
    if not line.contains(sigma):
        lo, hi = line.interval
        raise PreconvexityRangeError(f"sigma={sigma} outside [{lo}, {hi}]")
    if C < 1:
        raise ValueError("conductor must be >= 1")
    return slack * C ** (line(sigma) + epsilon)
