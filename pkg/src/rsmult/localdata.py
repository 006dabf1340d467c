"""Reading and writing per-prime Satake data.

CSV: one record per prime, ``p,n,re_1,im_1,...,re_n,im_n``.  Lines starting
with ``#`` are comments, except ``# q=<int>`` (arithmetic conductor) and
``# mu=<x>,<y>,...`` (real archimedean parameters), which set metadata.

JSON: either an array of such rows, or an object
``{"q": int, "mu": [...], "primes": [rows]}``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sympy import isprime

from .conductor import AnalyticConductor
from .lseries import ArchimedeanData, SatakeTable


class LocalDataError(ValueError):
    """Malformed local data; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = f"{source or '<data>'}" + (f":{line}" if line is not None else "")
        super().__init__(f"{where}: {message}")
        self.line = line


@dataclass(frozen=True)
class LocalData:
    table: SatakeTable
    q: int = 1
    mu: tuple[float, ...] = ()

    @property
    def conductor(self) -> AnalyticConductor:
        mus = self.mu if self.mu else (0.0,) * self.table.degree
        return AnalyticConductor(self.q, ArchimedeanData.real(mus))


def _row(values, lineno, source):
    try:
        p, n = int(values[0]), int(values[1])
    except (ValueError, IndexError, TypeError):
        raise LocalDataError("expected 'p,n,...' with integer p and n", lineno, source) from None
    if p < 2 or not isprime(p):
        raise LocalDataError(f"{p} is not a prime", lineno, source)
    if n < 1:
        raise LocalDataError("degree must be >= 1", lineno, source)
    nums = values[2:]
    if len(nums) != 2 * n:
        raise LocalDataError(f"expected {2 * n} real numbers after p,n; got {len(nums)}", lineno, source)
    try:
        x = [float(v) for v in nums]
    except (ValueError, TypeError):
        raise LocalDataError("non-numeric Satake parameter", lineno, source) from None
    return p, n, [complex(x[2 * i], x[2 * i + 1]) for i in range(n)]


def _assemble(rows, q, mu, source) -> LocalData:
    if not rows:
        raise LocalDataError("no records", None, source)
    n = rows[0][2]
    seen = set()
    for lineno, p, deg, _ in rows:
        if deg != n:
            raise LocalDataError(f"degree {deg} differs from first record's {n}", lineno, source)
        if p in seen:
            raise LocalDataError(f"duplicate prime {p}", lineno, source)
        seen.add(p)
    if mu and len(mu) != n:
        raise LocalDataError(f"mu has {len(mu)} entries for degree {n}", None, source)
    table = SatakeTable(np.array([r[1] for r in rows]), np.array([r[3] for r in rows]))
    return LocalData(table, q, tuple(mu))


def parse_csv(text: str, source: str | None = None) -> LocalData:
    q, mu, rows = 1, (), []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            meta = s[1:].strip()
            try:
                if meta.startswith("q="):
                    q = int(meta[2:])
                elif meta.startswith("mu="):
                    mu = tuple(float(v) for v in meta[3:].split(","))
            except ValueError:
                raise LocalDataError(f"bad metadata {meta!r}", lineno, source) from None
            continue
        values = next(csv.reader(io.StringIO(s)))
        p, n, params = _row([v.strip() for v in values], lineno, source)
        rows.append((lineno, p, n, params))
    return _assemble(rows, q, mu, source)


def parse_json(text: str, source: str | None = None) -> LocalData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise LocalDataError(f"invalid JSON: {e.msg}", e.lineno, source) from None
    q, mu = 1, ()
    if isinstance(doc, dict):
        q = doc.get("q", 1)
        mu = tuple(doc.get("mu", ()))
        doc = doc.get("primes")
        if not isinstance(q, int) or q < 1:
            raise LocalDataError("q must be a positive integer", None, source)
    if not isinstance(doc, list):
        raise LocalDataError("expected an array of records", None, source)
    # JSON has no per-record line numbers; report the record index instead
    rows = [(i + 1, *_row(r if isinstance(r, list) else [], i + 1, source)) for i, r in enumerate(doc)]
    return _assemble(rows, q, mu, source)


def load_local_data(path) -> LocalData:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith(("[", "{")):
        return parse_json(text, str(path))
    return parse_csv(text, str(path))


def dump_csv(data: LocalData) -> str:
    out = [f"# q={data.q}"]
    if data.mu:
        out.append("# mu=" + ",".join(repr(float(m)) for m in data.mu))
    for p, params in zip(data.table.primes, data.table.params):
        fields = [str(int(p)), str(len(params))]
        for z in params:
            fields += [repr(float(z.real)), repr(float(z.imag))]
        out.append(",".join(fields))
    return "\n".join(out) + "\n"


def dump_json(data: LocalData) -> str:
    rows = []
    for p, params in zip(data.table.primes, data.table.params):
        row = [int(p), len(params)]
        for z in params:
            row += [float(z.real), float(z.imag)]
        rows.append(row)
    return json.dumps({"q": data.q, "mu": list(data.mu), "primes": rows})
