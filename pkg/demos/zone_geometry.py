# Zones either side of the three-point line and the share of area beyond it.
# Run: python3 demos/zone_geometry.py
import numpy as np

from shotfractal import CourtModel, make_paper_zones
from shotfractal.court import REGIONS, baseline_outer_fraction, zones_by_label

court = CourtModel()
print("corner break height above the rim:", round(court.corner_y_max_ft, 4), "ft")

zones = make_paper_zones(court)
for z in zones:
    print(f"{z.label.value:18s} {z.kind.value:15s} area {z.area():7.3f} sq ft")

# an area-uniform shooter would put this fraction of shots outside
by_label = zones_by_label(zones)
for region, (lab_in, lab_out) in REGIONS.items():
    frac = baseline_outer_fraction(by_label[lab_in], by_label[lab_out])
    print(f"{region:13s} outer share {frac:.4f}")

# the control pair is 35/68 exactly
print(35 / 68)

# points sampled from a zone never land anywhere else
rng = np.random.default_rng(0)
pts = by_label[zones[5].label].sample(1000, rng)
hits = np.array([z.contains(pts[:, 0], pts[:, 1]).sum() for z in zones])
print(hits)

# moving the arc to 23.75 ft shrinks the corner
short = CourtModel(crest_dist_ft=23.75)
print(short.corner_y_max_ft, make_paper_zones(short)[0].area())
