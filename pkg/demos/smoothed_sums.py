"""
Smoothed coefficient sums
=========================

A compactly supported C-infinity window psi on [1/2, 4] turns the coefficient
sum into a contour integral.  Shifting the contour leaves the residue at
s = 1 as the main term.  For pi x pi~ the same sum is also bounded below by
counting primes.
"""

import numpy as np

from rsmult import build_rs_stream, lemma2_bound, make_window, mellin_inverse, mellin_transform
from rsmult.characters import example_pipeline, example_rs_stream, kronecker_character
from rsmult.mellin import canonical_bump, residue_main_term, smoothed_sum
from rsmult.synthetic import unimodular_table

w = make_window("plateau")
print("psi-hat(1) =", mellin_transform(w, 1.0).real)

# %%
# Mellin inversion on the line Re s = 2, truncated at |Im s| = 400.
xs = np.array([0.75, 1.5, 3.0])
print("inverse:", mellin_inverse(w, xs), " direct:", canonical_bump(xs))

# %%
# For chi mod 7 the smoothed sum of the [zeta L(chi)]^2 coefficients sits
# right on the residue main term.
chi = kronecker_character(-7)
rep = example_pipeline(chi)
for Y in (1e3, 1e4, 1e5):
    F = smoothed_sum(example_rs_stream(chi, int(4 * Y) + 1), w, Y)
    M = residue_main_term(rep.polar(), w, Y)
    print(f"Y={Y:8.0f}  F={F:14.3f}  main={M:14.3f}  diff={F - M:8.3f}")

# %%
# Synthetic degree-2 data: the smoothed sum beats half the number of primes
# in [Y^(1/2), (2Y)^(1/2)].
t = unimodular_table(2, 400_000, seed=1)
stream = build_rs_stream(t, t.conjugate(), 400_000)
for Y in (1e3, 1e4, 1e5):
    r = lemma2_bound(stream, 2, Y)
    print(f"Y={Y:8.0f}  F={r.F:10.2f}  floor={r.floor:6.1f}  primes={r.A}")
