"""
A separable decomposition of the Werner state
=============================================

Six product terms with Bloch amplitudes sqrt(3x/2) along each axis reproduce
the Werner state.  Every factor is a genuine qubit density while the
amplitude stays below 1/sqrt(2), that is for x <= 1/3.
"""

import numpy as np

from cohtensor.analysis import purity
from cohtensor.families import werner
from cohtensor.mixtures import compile_mixture, feasibility, werner_mixture, werner_pair_mixture

print("   x    compile error   worst radius   feasible")
for x in [0.0, 0.1, 0.2, 0.3, 1 / 3, 0.35, 0.5]:
    m = werner_mixture(x)
    err = np.max(np.abs(compile_mixture(m) - werner(min(x, 1)).tensor))
    rep = feasibility(m)
    print(f"{x:6.4f}  {err:.1e}        {rep.worst_radius:.6f}       {rep.feasible}")

# A single pair of terms is already a density on the larger range x <= 1/sqrt(3),
# even though its factors stop being densities at 1/3.
for x in [0.3, 1 / np.sqrt(3), 0.6]:
    print(f"pair purity at x={x:.4f}: {purity(compile_mixture(werner_pair_mixture(x))):.6f}")
