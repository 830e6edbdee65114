"""
Boxes that are not symmetric about the horizontal plane
=======================================================

Relaxing vertical side walls: reflecting the top cylinder across a first
crease plane R1 produces a slanted wall; a second reflection across R2 folds
it into a bottom with horizontal rulings.  The wall angle theta1 fixes both
plane inclinations (alpha1 = theta2/2, alpha2 = theta1/2), so one angle plus
the wall depth determines the whole shape.
"""

import math

from pillowfold import (AsymmetricParams, RectangleCurve, SheetSpec, SineArc,
                        build_asymmetric_mesh, write_obj)

sheet = SheetSpec()

for theta1_deg in (90.0, 105.0, 120.0):
    params = AsymmetricParams.from_theta1(math.radians(theta1_deg),
                                          wall_depth=0.3)
    print(f"theta1 = {theta1_deg:5.1f} deg -> alpha1 = "
          f"{math.degrees(params.alpha1):5.2f} deg, "
          f"alpha2 = {math.degrees(params.alpha2):5.2f} deg")

# theta1 = 90 deg with zero wall depth is exactly the symmetric top sheet
identity = build_asymmetric_mesh(SineArc(), sheet,
                                 AsymmetricParams.from_theta1(math.pi / 2, 0.0),
                                 resolution=200)
print(f"\nidentity case: parts = {sorted(set(identity.part_labels))}")

# a slanted-wall box over a plateau curve has a flat bottom
params = AsymmetricParams.from_theta1(2.0 * math.pi / 3.0, wall_depth=0.3)
slanted = build_asymmetric_mesh(RectangleCurve(0.25), sheet, params,
                                resolution=8)
print(f"slanted box:   parts = {sorted(set(slanted.part_labels))}, "
      f"{len(slanted.triangles)} triangles (open surface model)")

with open("asymmetric_box.obj", "w") as fh:
    fh.write(write_obj(slanted))
print("wrote asymmetric_box.obj")
