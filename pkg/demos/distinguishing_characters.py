"""
Telling characters apart from their coefficients
================================================

Two automorphic data of the same degree agree iff their coefficients agree
on square-free n up to a power of the conductor.  For quadratic characters
the first disagreement appears very early, long before the unconditional
threshold.
"""

import math

from rsmult import build_ledger, distinguish
from rsmult.characters import enumerate_real_primitive

ledger = build_ledger(1, 1, 0.05)
print("exponents:", {k: round(v, 4) for k, v in ledger.as_dict().items() if isinstance(v, float)})

chars = enumerate_real_primitive(40)
streams = {c.discriminant: c.stream(1600) for c in chars}

# %%
# First witness for each pair of distinct characters.
witnesses = {}
for a in chars:
    for b in chars:
        if a.discriminant >= b.discriminant:
            continue
        S = sorted({p for p in range(2, 41) if (a.modulus * b.modulus) % p == 0})
        v = distinguish(
            streams[a.discriminant], streams[b.discriminant], a.conductor(), b.conductor(),
            S, max(a.modulus, b.modulus) ** 2, ledger, certify=False, s_guard=math.inf,
        )
        witnesses[(a.discriminant, b.discriminant)] = v.witness

print("pairs:", len(witnesses), " largest first witness:", max(witnesses.values()))
print("threshold Q^B for Q = 80:", f"{80 ** ledger.B:.3g}")

# %%
# Equal inputs, long enough for the analytic certificate.
chi = chars[1]
s = chi.stream(20_000)
v = distinguish(s, s, chi.conductor(), chi.conductor(), [2], 20_000, ledger)
print(v.verdict, "stage", v.stage, "margin", round(v.margin, 2))
