"""
Local Rankin-Selberg factors and Schur positivity
=================================================

The local factor of pi x pi~ at an unramified prime expands, via the Cauchy
identity, into a series whose coefficients are sums of |s_lambda(alpha)|^2.
When the Satake parameters multiply to a unimodular number, the degree-d
coefficient is at least 1.
"""

import numpy as np

from rsmult import cauchy_coefficients, cauchy_via_schur, lemma1_check
from rsmult.symmetric import partitions_of

rng = np.random.default_rng(0)
alpha = np.exp(1j * rng.uniform(0, 2 * np.pi, size=3))
alpha[2] = 1 / (alpha[0] * alpha[1])  # product exactly 1

# %%
# Two routes to the same power series: a direct product of geometric series
# in the pairwise products, and a sum of Schur functions.
direct = cauchy_coefficients(alpha, 8).real()
schur = cauchy_via_schur(alpha, 8).real()
print("coefficients:", np.round(direct, 6))
print("largest gap:", np.max(np.abs(direct - schur)))

# %%
# Every partition of k with at most 3 parts contributes |s_lambda|^2 >= 0 to coefficient k.
for k in range(1, 5):
    print(k, [tuple(p) for p in partitions_of(k, 3)])

# %%
# The degree-d coefficient is 1 (the partition (1,...,1) gives |prod alpha|^2)
# plus a sum of squares.
for d in range(1, 6):
    a = np.exp(1j * rng.uniform(0, 2 * np.pi, size=d))
    r = lemma1_check(a)
    print(f"d={d}  b_d={r.b_d:.6f}  passed={r.passed}")
