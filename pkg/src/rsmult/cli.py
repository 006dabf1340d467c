"""Command-line entry point.

Every command writes JSON (sorted keys, round-trip floats) or CSV to stdout.
Exit status: 0 when all checks pass, 1 on a failed check or bad input,
2 when an analytic certificate is inconclusive.

Defaults for the shared flags may come from a JSON file named by
``--config`` or the ``RSMULT_CONFIG`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import characters as ch
from .conductor import preconvex_line
from .effective import (
    GuardError,
    Inconclusive,
    approx_distinguish,
    build_ledger,
    distinguish,
    l1_lower_bound,
    zero_free_width,
)
from .localdata import LocalDataError, load_local_data
from .lseries import MissingPrimeData, build_rs_stream, build_stream
from .mellin import balancing_Y, contour_error, lemma2_bound, theorem1_length, theorem1_lower
from .symmetric import cauchy_coefficients, cauchy_via_schur, lemma1_check
from .synthetic import unimodular_table

CONFIG_ENV = "RSMULT_CONFIG"
DEFAULTS = {
    "epsilon": 0.05,
    "ycap": 1e4,
    "n_trunc": None,
    "seed": 0,
    "format": None,  # json, except csv for the example table
    "slack": 1.0,
}


def _emit(payload, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, allow_nan=True) + "\n")
        return
    rows = payload if isinstance(payload, list) else [payload]
    keys = list(rows[0].keys())
    w = csv.writer(out, lineterminator="\n")
    w.writerow(keys)
    for r in rows:
        w.writerow([repr(r[k]) if isinstance(r[k], float) else r[k] for k in keys])


def _unimodular_draw(rng, d: int) -> np.ndarray:
    logs = rng.normal(0.0, 0.5, size=d)
    logs -= logs.mean()
    return np.exp(logs + 1j * rng.uniform(0, 2 * np.pi, size=d))


# ---------------------------------------------------------------------------
# commands

def cmd_lemma1(a):
    if not 1 <= a.d <= 6:
        raise ValueError("d must be in [1, 6]")
    rng = np.random.default_rng(a.seed)
    results = [lemma1_check(_unimodular_draw(rng, a.d)) for _ in range(a.trials)]
    passed = sum(r.passed for r in results)
    payload = {
        "d": a.d,
        "trials": a.trials,
        "seed": a.seed,
        "min_b_d": min(r.b_d for r in results),
        "pass_rate": passed / a.trials,
        "max_audit_error": max(abs(r.audit - r.b_d) for r in results),
    }
    return payload, passed == a.trials


def _parse_alpha(text: str) -> list[complex]:
    return [complex(tok.replace(" ", "")) for tok in text.split(",") if tok.strip()]


def cmd_cauchy(a):
    if a.alpha:
        alpha = _parse_alpha(a.alpha)
    else:
        alpha = list(_unimodular_draw(np.random.default_rng(a.seed), a.d))
    direct = cauchy_coefficients(alpha, a.K)
    schur = cauchy_via_schur(alpha, a.K)
    c1, c2 = direct.real(), schur.real()
    scale = np.maximum(np.abs(c1), 1e-300)
    rel = float(np.max(np.abs(c1 - c2) / scale))
    payload = {
        "alpha": [[z.real, z.imag] for z in map(complex, alpha)],
        "K": a.K,
        "coefficients": [float(x) for x in c1],
        "max_relative_difference": rel,
    }
    return payload, rel <= 1e-8


def cmd_polar_bound(a):
    C, d, eps = a.conductor, a.d, a.epsilon
    Y = theorem1_length(C, eps) if a.Y is None else a.Y
    payload = {
        "conductor": C,
        "d": d,
        "ell": a.ell,
        "epsilon": eps,
        "lower_bound": theorem1_lower(C, d, a.ell, eps),
        "Y": Y,
        "b": a.b,
        "contour_error": contour_error(C, a.b, Y, eps, d, d, a.slack, a.extrapolation),
        "balancing_Y": balancing_Y(C, a.b, d, d, a.extrapolation),
        "extrapolation": a.extrapolation,
        "slack": a.slack,
    }
    return payload, True


def cmd_lemma2(a):
    Y = a.Y
    N = a.n_trunc or math.ceil(4 * Y)
    table = unimodular_table(a.d, N, seed=a.seed)
    stream = build_rs_stream(table, table.conjugate(), N)
    S = sorted(int(p) for p in a.S.split(",")) if a.S else []
    r = lemma2_bound(stream, a.d, Y, S)
    payload = {"d": a.d, "Y": Y, "seed": a.seed, "S": S, "F": r.F, "floor": r.floor, "A": r.A, "B": r.B, "passed": r.passed}
    return payload, r.passed


def cmd_l1_bound(a):
    L = build_ledger(a.n, a.nprime, a.epsilon)
    return {"n": a.n, "nprime": a.nprime, "Q": a.Q, "t": a.t, "A": L.A, "bound": l1_lower_bound(L, a.Q, a.t)}, True


def cmd_zero_free(a):
    L = build_ledger(a.n, a.nprime, a.epsilon)
    w = zero_free_width(L, a.Q, a.t, a.c)
    return {"n": a.n, "nprime": a.nprime, "Q": a.Q, "t": a.t, "c": a.c, "Aprime": L.Aprime, "width": w}, True


def cmd_distinguish(a):
    A, B = load_local_data(a.fileA), load_local_data(a.fileB)
    if A.table.degree != B.table.degree:
        raise ValueError("inputs have different degrees")
    N = math.floor(a.ycap)
    sA, sB = build_stream(A.table, N), build_stream(B.table, N)
    ledger = build_ledger(A.table.degree, B.table.degree, a.epsilon)
    S = sorted(int(p) for p in a.S.split(",")) if a.S else sorted(sA.ramified_primes | sB.ramified_primes)
    if a.mode == "approx":
        v = approx_distinguish(sA, sB, A.conductor, B.conductor, S, a.ycap, ledger, a.tau)
    else:
        v = distinguish(sA, sB, A.conductor, B.conductor, S, a.ycap, ledger, certify=not a.no_certify)
    payload = json.loads(v.to_json())
    payload["S"] = S
    return payload, True


def cmd_example(a):
    if not 3 <= a.q_max <= 10_000:
        raise ValueError("q_max must be in [3, 10000]")
    rows = []
    for chi in ch.enumerate_real_primitive(a.q_max):
        r = ch.example_pipeline(chi, a.epsilon)
        rows.append(dict(zip(("D",) + ch.ExampleReport.CSV_FIELDS, (r.discriminant,) + r.csv_row())))
    return rows, all(r["lhs"] > 0 for r in rows)


def cmd_ledger(a):
    L = build_ledger(a.n, a.nprime, a.epsilon)
    payload = L.as_dict()
    payload["preconvex_slope"] = preconvex_line(a.n, a.nprime).slope
    payload["zero_free_width"] = {str(Q): zero_free_width(L, Q) for Q in (10, 100, 1000)}
    ok = math.isclose(L.A, L.A1 + 3 * L.A2) and math.isclose(L.Aprime, L.A + L.A3)
    return payload, ok


COMMANDS = {
    "lemma1": cmd_lemma1,
    "cauchy": cmd_cauchy,
    "polar-bound": cmd_polar_bound,
    "lemma2": cmd_lemma2,
    "l1-bound": cmd_l1_bound,
    "zero-free": cmd_zero_free,
    "distinguish": cmd_distinguish,
    "example": cmd_example,
    "ledger": cmd_ledger,
}


def _load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    unknown = set(cfg) - set(DEFAULTS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"JSON file of flag defaults (else ${CONFIG_ENV})")
    common.add_argument("--epsilon", type=float, default=argparse.SUPPRESS)
    common.add_argument("--ycap", type=float, default=argparse.SUPPRESS)
    common.add_argument("--n-trunc", dest="n_trunc", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--slack", type=float, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="rsmult", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lemma1", parents=[common], help="b_d >= 1 on random unimodular draws")
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--trials", type=int, default=1000)

    s = sub.add_parser("cauchy", parents=[common], help="Cauchy expansion two ways")
    s.add_argument("--alpha", help="comma-separated complex numbers, e.g. '1j,-1j'")
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--K", type=int, default=8)

    s = sub.add_parser("polar-bound", parents=[common], help="polar-part lower bound and contour error")
    s.add_argument("--conductor", type=float, required=True)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--b", type=float, default=1.0)
    s.add_argument("--Y", type=float)
    s.add_argument("--extrapolation", choices=("convexity", "linear"), default="convexity")

    s = sub.add_parser("lemma2", parents=[common], help="smoothed-sum floor on synthetic data")
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--Y", type=float, default=1e4)
    s.add_argument("--S", help="comma-separated excluded primes")

    for name, hlp in (("l1-bound", "lower bound for |L(1+it)|"), ("zero-free", "zero-free width")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--n", type=int, default=1)
        s.add_argument("--nprime", type=int, default=1)
        s.add_argument("--Q", type=float, default=10.0)
        s.add_argument("--t", type=float, default=0.0)
        if name == "zero-free":
            s.add_argument("--c", type=float, default=1.0)

    s = sub.add_parser("distinguish", parents=[common], help="compare two local-data files")
    s.add_argument("fileA")
    s.add_argument("fileB")
    s.add_argument("--mode", choices=("exact", "approx"), default="exact")
    s.add_argument("--tau", type=float)
    s.add_argument("--S", help="comma-separated primes (default: ramified primes of both)")
    s.add_argument("--no-certify", action="store_true", help="skip the analytic certificate")

    s = sub.add_parser("example", parents=[common], help="[zeta L(chi)]^2 table over real characters")
    s.add_argument("--q-max", dest="q_max", type=int, default=100)

    s = sub.add_parser("ledger", parents=[common], help="exponent ledger")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--nprime", type=int, default=1)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = {**DEFAULTS, **_load_config(args.config)}
    except (OSError, ValueError) as e:
        print(f"rsmult: config: {e}", file=sys.stderr)
        return 1
    for k, v in cfg.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    fmt = args.format or ("csv" if args.command == "example" else "json")
    try:
        payload, ok = COMMANDS[args.command](args)
    except Inconclusive as e:
        print(f"rsmult: inconclusive: {e}", file=sys.stderr)
        return 2
    except (LocalDataError, GuardError, MissingPrimeData, ValueError, OSError) as e:
        print(f"rsmult: error: {e}", file=sys.stderr)
        return 1
    _emit(payload, fmt, out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
