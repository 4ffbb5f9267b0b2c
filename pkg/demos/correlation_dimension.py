# Correlation dimension of point sets whose answer we know.
# Run: python3 demos/correlation_dimension.py
import math

import numpy as np

from shotfractal import estimate_d2
from shotfractal.fractal import auto_scale_range, correlation_integral, sierpinski_points

rng = np.random.default_rng(42)

square = rng.random((10_000, 2))
fit = estimate_d2(square)
print("unit square", round(fit.d2, 3), "over", (round(fit.r1, 4), round(fit.r2, 4)))

# C(r) for the square has a closed form below r = 1
r = np.array([0.05, 0.1, 0.2])
curve = correlation_integral(square, r)
print(curve.c_of_r)
print(math.pi * r**2 - 8 * r**3 / 3 + r**4 / 2)

# the plain 5th-50th percentile window sits too high: edge effects bend C(r)
r1, r2 = auto_scale_range(square, method="percentile")
print("percentile window", round(r1, 4), round(r2, 4),
      "D2", round(estimate_d2(square, r1, r2).d2, 3))

t = rng.random(5000)
print("segment", round(estimate_d2(np.column_stack([t, 2 * t])).d2, 3))

tri = sierpinski_points(20_000, seed=1)
print("sierpinski", round(estimate_d2(tri).d2, 3), "exact", round(math.log(3, 2), 3))

# same slope after scaling into feet and moving the origin
print(round(estimate_d2(30 * square + 7).d2, 3))

# log-log points behind the fit
for rr, cc in fit.curve.as_rows():
    print(f"{math.log(rr):8.3f} {math.log(cc):8.3f}")
