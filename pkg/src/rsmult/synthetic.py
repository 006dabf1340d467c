"""Seeded synthetic Satake data whose parameter product is unimodular at each prime."""

from __future__ import annotations

import numpy as np

from .lseries import SatakeTable, lrs_theta
from .primes import prime_sieve

CLIP = 0.9  # fraction of the LRS exponent used by the log-moduli


def unimodular_table(d: int, limit: int, seed: int = 0, spread: float = 0.3) -> SatakeTable:
    """Degree-d table on primes <= limit with ``|prod alpha| = 1``.

    Phases are uniform.  Log-moduli are Gaussian, centred so they sum to 0,
    then scaled down where needed so every ``|log|alpha|| <= CLIP (1/2 - theta) log p``.
    Scaling keeps the sum at 0, so the product stays unimodular.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    rng = np.random.default_rng(seed)
    ps = prime_sieve(limit)
    phases = rng.uniform(0.0, 2 * np.pi, size=(ps.size, d))
    logs = rng.normal(0.0, spread, size=(ps.size, d))
    logs -= logs.mean(axis=1, keepdims=True)
    cap = CLIP * (0.5 - lrs_theta(d)) * np.log(ps.astype(float))
    peak = np.abs(logs).max(axis=1)
    scale = np.where(peak > cap, cap / np.where(peak > 0, peak, 1.0), 1.0)
    logs *= scale[:, None]
    return SatakeTable(ps, np.exp(logs + 1j * phases))
