# Finding a planted FGP drop in the distance profile.
# Run: python3 demos/discontinuity_scan.py
import numpy as np

from shotfractal.stats import discontinuity_scan
from shotfractal.synth import distance_profile_shots

pieces = [(0, 3, 0.60), (3, 30, 0.40), (30, 41, 0.31)]
shots = distance_profile_shots(pieces, 2000, seed=3)

scan = discontinuity_scan(shots, alpha=0.1)
print("uncorrected:", [f[0] for f in scan.flagged_distances])

# 39 boundaries at 0.1 each: expect three or four false alarms
scan = discontinuity_scan(shots, alpha=0.1, correction="bonferroni")
print("bonferroni:", scan.flagged_distances)

print(np.round(scan.fgp_per_bin, 3))

# how often the corrected scan is clean apart from the real drop
clean = 0
for seed in range(20):
    s = discontinuity_scan(distance_profile_shots(pieces, 2000, seed=seed), correction="bonferroni")
    clean += [f[0] for f in s.flagged_distances if f[0] > 5] == [30.0]
print(clean, "of 20")
