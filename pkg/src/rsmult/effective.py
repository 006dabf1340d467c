"""Explicit exponents for the L(1+it) lower bound, the zero-free width, and
the multiplicity-one distinguisher.

All reported bounds carry implied constant 1.  The distinguisher has two
stages: an exact scan of square-free coefficients, and (when the scan finds
nothing) an analytic certificate comparing two smoothed Rankin-Selberg sums
to their common main term.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .conductor import AnalyticConductor, preconvex_line
from .lseries import CoefficientStream, SatakeTable, build_rs_stream, lrs_theta
from .mellin import make_window, smoothed_sum
from .primes import coprime_mask, squarefree_mask


@dataclass(frozen=True)
class ExponentLedger:
    n: int
    nprime: int
    epsilon: float
    theta: float
    thetaprime: float
    A1: float
    A2: float
    A3: float
    A: float
    Aprime: float
    B1: float
    B2: float
    B3: float
    B4: float
    B: float
    Cexp: float
    degF: int = 1

    def as_dict(self) -> dict:
        return asdict(self)


def _l(a: int, b: int, sigma: float) -> float:
    return preconvex_line(a, b)(sigma)


def build_ledger(n: int, nprime: int, epsilon: float) -> ExponentLedger:
    """Exponents for degrees (n, n').

    A1: the polar-part exponent ``(1 - 1/d)/2 + eps`` (d = n + n') applied
        to the isobaric conductor bound ``(1+|t|)^{2nn'} Q^{4(n+n')}``.
    A2: preconvexity at sigma = 1/2 for the pairs (n,n), (n',n'), (n,n'),
        against the largest conductor exponent among them.
    A3: preconvexity at sigma = 1/4 for the pair (n, n').
    B1..B4: residue, sigma = 1 - theta bound, the S-product bound with base
        (1 + 2^-theta)^{n^2}, and preconvexity at s = 1.

    B depends on n only; the size of S enters through B3, which assumes
    ``|S| <= log Q``.
    """
    if n < 1 or nprime < 1:
        raise ValueError("degrees must be >= 1")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    eps = epsilon
    th, thp = lrs_theta(n), lrs_theta(nprime)
    d = n + nprime
    A1 = max(4 * d, 2 * n * nprime) * (0.5 * (1 - 1 / d) + eps)
    E = max(n + nprime, n * nprime, 2 * n, 2 * nprime)
    A2 = E * (max(_l(n, n, 0.5), _l(nprime, nprime, 0.5), _l(n, nprime, 0.5)) + eps)
    A3 = max(n + nprime, n * nprime) * (_l(n, nprime, 0.25) + eps)
    A = A1 + 3 * A2
    Aprime = A + A3
    B1 = 2 * n * (0.5 * (1 - 1 / n) + eps)
    B2 = max(2 * n, n * n) * ((1 - th) / 2 + eps)
    B3 = n * n * math.log(1 + 2.0**-th)
    B4 = 2 * n * (0.5 - th + eps)
    B = (B1 + B2 + B3 + B4) / th + eps
    Cexp = B1 + B4 + (0.5 - th) * B
    return ExponentLedger(n, nprime, eps, th, thp, A1, A2, A3, A, Aprime, B1, B2, B3, B4, B, Cexp)


def _size(Q: float, t: float) -> float:
    if Q < 1:
        raise ValueError("Q must be >= 1")
    return Q * (1.0 + abs(t))


def l1_lower_bound(ledger: ExponentLedger, Q: float, t: float = 0.0) -> float:
    """``(Q (1 + |t|))^{-A}``."""
    return _size(Q, t) ** -ledger.A


def zero_free_width(ledger: ExponentLedger, Q: float, t: float = 0.0, c: float = 1.0) -> float:
    """``c (Q (1 + |t|))^{-A'}``: no zeros for ``1 - width <= sigma <= 1``."""
    if not c > 0:
        raise ValueError("c must be positive")
    return c * _size(Q, t) ** -ledger.Aprime


def residue_lower(Q: float, ledger: ExponentLedger) -> float:
    """``Q^{-B1}`` for the residue of L(s, pi x pi~) at 1."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    return Q**-ledger.B1


# ---------------------------------------------------------------------------
# distinguisher

class Inconclusive(RuntimeError):
    """The analytic certificate could not certify its main term."""


class GuardError(ValueError):
    pass


@dataclass(frozen=True)
class DistinguishVerdict:
    verdict: str  # "Equal" | "Distinct"
    witness: int | None
    margin: float
    Y_used: float
    mode: str  # "exact" | "empirical"
    stage: int
    ledger: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "verdict": self.verdict,
                "witness": self.witness,
                "margin": self.margin,
                "Y_used": self.Y_used,
                "mode": self.mode,
                "stage": self.stage,
                "ledger": self.ledger,
            },
            sort_keys=True,
        )


def _prepare(streamA, streamB, condA, condB, S, Y_cap, ledger, s_guard):
    if streamA.degree != streamB.degree:
        raise ValueError("streams must have equal degree")
    S = frozenset(int(p) for p in S)
    missing = (set(streamA.ramified_primes) | set(streamB.ramified_primes)) - S
    if missing:
        raise GuardError(f"S must contain the ramified primes; missing {sorted(missing)}")
    Q = max(condA(0.0), condB(0.0))
    if len(S) > s_guard * max(math.log(Q), 1e-300):
        raise GuardError(f"|S| = {len(S)} exceeds {s_guard} log Q = {s_guard * math.log(Q):.6g}")
    # Q^B overflows long before it matters; compare in logs.  The scan always
    # runs to Y_cap: past Q^B it only adds evidence, and the certificate
    # needs room for its main term to dominate.
    Y = float(Y_cap)
    mode = "exact" if math.log(Y) >= ledger.B * math.log(Q) else "empirical"
    top = math.floor(Y)
    for s in (streamA, streamB):
        if top > s.N:
            raise ValueError(f"Y = {Y:.6g} exceeds stream truncation N = {s.N}")
    mask = squarefree_mask(top) & coprime_mask(top, sorted(S))
    gap = np.abs(streamA.values[: top + 1] - streamB.values[: top + 1])
    gap[~mask] = 0.0
    return S, Q, Y, mode, gap


def local_residue_estimate(table: SatakeTable, S, limit: int = 100_000) -> float:
    """Residue at 1 of the S-removed L(s, pi x pi~), from the truncated
    Euler product ``prod_{p <= P} (1 - 1/p) prod_{p <= P, p not in S} L_p(1)``.

    Exact when the unramified local factors at 1 equal ``(1 - 1/p)^{-1}``
    (Dirichlet characters); otherwise an approximation.
    """
    sel = table.primes <= limit
    ps = table.primes[sel].astype(float)
    a = table.params[sel]
    pair = (a[:, :, None] * np.conj(a[:, None, :])).reshape(len(ps), -1)
    local = np.prod(1.0 / (1.0 - pair / ps[:, None]), axis=1).real
    keep = ~np.isin(table.primes[sel], list(S))
    logs = np.log1p(-1.0 / ps) + np.where(keep, np.log(local), 0.0)
    return math.exp(math.fsum(logs))


def _certify(streamA, streamB, S, Q, Y, ledger, partial_residue):
    tA, tB = streamA.table, streamB.table
    if tA is None or tB is None:
        raise Inconclusive("stage 2 needs streams carrying their Satake tables")
    N = math.floor(Y)
    w = make_window("mellin_one")
    Yw = Y / w.support[1]
    R = local_residue_estimate(tA, S) if partial_residue is None else partial_residue
    main = Yw * R
    err = Yw ** (1.0 - ledger.theta) * Q ** (ledger.B2 + ledger.B3)
    if not main > err:
        raise Inconclusive(f"main term {main:.6g} does not dominate error {err:.6g} at Y={Y:.6g}")
    ex = tuple(sorted(S))
    tA_, tB_ = tA.restrict(N), tB.restrict(N)
    F_same = smoothed_sum(build_rs_stream(tA_, tA_.conjugate(), N), w, Yw, exclude=ex)
    F_cross = smoothed_sum(build_rs_stream(tA_, tB_.conjugate(), N), w, Yw, exclude=ex)
    for F in (F_same, F_cross):
        if abs(F - main) > err:
            raise Inconclusive(f"smoothed sum {F} is {abs(F - main):.6g} from main term, beyond {err:.6g}")
    return main - err


def distinguish(
    streamA: CoefficientStream,
    streamB: CoefficientStream,
    condA: AnalyticConductor,
    condB: AnalyticConductor,
    S,
    Y_cap: float,
    ledger: ExponentLedger,
    *,
    certify: bool = True,
    tol: float = 1e-9,
    s_guard: float = 2.0,
    partial_residue: float | None = None,
) -> DistinguishVerdict:
    """Decide whether two coefficient streams come from the same datum.

    Stage 1 returns Distinct at the smallest square-free n <= Y coprime to S
    with ``|lambda_A(n) - lambda_B(n)| > tol``.  Otherwise stage 2 (when
    ``certify``) checks both smoothed sums against the main term and returns
    Equal with ``margin = main - error``; without ``certify`` the margin is
    NaN.  Raises :class:`Inconclusive` when the main term does not dominate.
    """
    S, Q, Y, mode, gap = _prepare(streamA, streamB, condA, condB, S, Y_cap, ledger, s_guard)
    hits = np.flatnonzero(gap > tol)
    ld = ledger.as_dict()
    if hits.size:
        n0 = int(hits[0])
        return DistinguishVerdict("Distinct", n0, float(gap[n0]), Y, mode, 1, ld)
    if not certify:
        return DistinguishVerdict("Equal", None, math.nan, Y, mode, 1, ld)
    margin = _certify(streamA, streamB, S, Q, Y, ledger, partial_residue)
    return DistinguishVerdict("Equal", None, margin, Y, mode, 2, ld)


def approx_distinguish(
    streamA: CoefficientStream,
    streamB: CoefficientStream,
    condA: AnalyticConductor,
    condB: AnalyticConductor,
    S,
    Y_cap: float,
    ledger: ExponentLedger,
    tau: float | None = None,
    *,
    tol: float = 1e-9,
    s_guard: float = 2.0,
) -> DistinguishVerdict:
    """Distinct iff some square-free n <= Y coprime to S has a gap >= tau
    (and above ``tol``); the witness maximises the gap, smallest n on ties
    (relative 1e-12).
    ``tau`` defaults to ``Q^{-Cexp}``."""
    S, Q, Y, mode, gap = _prepare(streamA, streamB, condA, condB, S, Y_cap, ledger, s_guard)
    if tau is None:
        tau = Q**-ledger.Cexp
    ld = ledger.as_dict()
    ok = (gap >= tau) & (gap > tol)
    if ok.any():
        best = float(gap[ok].max())
        # gaps equal up to rounding count as ties
        n0 = int(np.flatnonzero(ok & (gap >= best * (1 - 1e-12)))[0])
        return DistinguishVerdict("Distinct", n0, best - tau, Y, mode, 1, ld)
    return DistinguishVerdict("Equal", None, float(tau - gap.max()), Y, mode, 1, ld)
