"""
Where the three-term family is entangled
========================================

Each term of 1/(2 sqrt 2) L000 + x (L122 + L212) + y L330 alone gives a PPT
state, but together they do not.  The density region is a triangle in the
(x, y) plane, the PPT region a rhomb inside it, and the rest is NPT.
"""

import io
from collections import Counter

import numpy as np

from cohtensor.families import npt_region_map, write_region_csv

axis = np.linspace(-0.4, 0.4, 41)
samples = npt_region_map(axis, axis)
print(Counter(s.cls for s in samples))

# Coarse text picture: '.' not a density, 'o' PPT, '#' NPT entangled.
glyph = {"not-a-density": ".", "PPT": "o", "NPT-entangled": "#"}
grid = np.array([glyph[s.cls] for s in samples]).reshape(41, 41)
for row in grid.T[::-1]:
    print("".join(row))

buf = io.StringIO()
write_region_csv(samples[:3], buf)
print(buf.getvalue())
