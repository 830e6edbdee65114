"""
Closed-form volumes and the volume functional
=============================================

For simple cross-sections the enclosed volume has a closed form; the generic
quadrature of  V[f] = 2 * int f (L - 2f) sqrt(1 - f'^2) du  must agree.
The sealed-bag formula gives the theoretical ceiling no flat-sheet box can
exceed.
"""

import math

from pillowfold import (RectangleCurve, RhombusCurve, SheetSpec, SineArc,
                        arc_max, circle_volume, paper_bag_volume,
                        rectangle_max, rhombus_max, volume_quadrature)

sheet = SheetSpec()  # 1 x sqrt(2), the canonical envelope

print("circle (sine-arc crease):")
closed = circle_volume(sheet)
quad = volume_quadrature(SineArc(), sheet, 2000)
print(f"  closed form  {closed.value:.6f}")
print(f"  quadrature   {quad.value:.6f}   (n = {quad.n})")

print("\nrectangle family:")
h_star, v_star = rectangle_max(sheet)
print(f"  best plateau h* = {h_star:.6f}, volume {v_star.value:.6f}")
print(f"  check: {volume_quadrature(RectangleCurve(h_star), sheet).value:.6f}")

print("\nrhombus family:")
h_star, v_star = rhombus_max()
print(f"  best apex h* = {h_star:.6f}, volume {v_star.value:.6f}")
print(f"  check: {volume_quadrature(RhombusCurve(h_star), sheet).value:.6f}")

print("\ncircular-arc family on the unit square sheet:")
theta_star, v_star = arc_max(SheetSpec(1.0, 1.0))
print(f"  best half-angle {theta_star:.4f} rad, volume {v_star.value:.10f}")

print("\nsealed-bag reference (upper bound for any design):")
bag = paper_bag_volume(1.0, math.sqrt(2.0))
print(f"  V(1 x sqrt2) = {bag.value:.6f}")
print(f"  the best pillow box reaches about "
      f"{0.295449 / bag.value * 100:.1f}% of it")
