"""
A PPT family that ends in a bound entangled state
=================================================

The UPB family has no component with index 2, so every partial transpose is
a density.  At its end point it is the state built from an unextendible
product basis, which is entangled: a realignment test with one spectator
qubit detects it in a small neighbourhood of that point.
"""

import numpy as np

from cohtensor.analysis import index2_free, max_realignment_norm, ppt_test, trace_square_chain
from cohtensor.families import UPB_MAX, upb_density_from_kets, upb_family
from cohtensor.mixtures import compile_mixture, feasible_halfwidth, upb_mixture_36

end = upb_family(UPB_MAX)
print("matches 1/4 (1 - sum |psi><psi|):", np.max(np.abs(end.matrix - upb_density_from_kets())))
print("index-2 free:", index2_free(end.tensor), " PPT:", [ppt_test(end.tensor, k)[0] for k in range(3)])

print("\n    x     chain   realignment")
for x in np.linspace(0, UPB_MAX, 9):
    t = upb_family(x).tensor
    print(f"{x:.4f}   {trace_square_chain(t)!s:5}   {max_realignment_norm(t):.4f}")

# Thirty-six product terms reproduce the family; equal weights keep every
# factor a density only in a narrow window.
print("\n36-term compile error at x=0.005:",
      np.max(np.abs(compile_mixture(upb_mixture_36(0.005)) - upb_family(0.005).tensor)))
print("feasible half-width:", feasible_halfwidth(upb_mixture_36, 0.02))
