"""
Bell and Werner states
======================

Partial transposes flip the sign of every component carrying index 2 on the
transposed qubit, so the PPT test needs only a sign change and one
eigenvalue computation.
"""

import numpy as np

from cohtensor.analysis import analyze, ppt_test, reduced_purities, trace_square_chain
from cohtensor.families import bell, werner

b = bell()
print("Bell components:\n", b.tensor)
print("purity", b.purity, " reduced", [reduced_purities(b.tensor)[frozenset({k})] for k in (0, 1)])
# a pure state whose parts are mixed: the nested-purity chain fails
print("trace-square chain holds:", trace_square_chain(b.tensor))

# Werner family: PPT exactly up to x = 1/3.
print("\n   x    min eig(rho^T2)   (1-3x)/4   PPT")
for x in np.linspace(0, 1, 11):
    ok, m = ppt_test(werner(x).tensor, 1)
    print(f"{x:5.2f}   {m:+.6f}        {(1 - 3 * x) / 4:+.6f}   {ok}")

rep = analyze(werner(0.5).tensor).as_dict()
print("\nfull report for Werner(0.5):")
for key, val in rep.items():
    print(f"  {key}: {val}")
