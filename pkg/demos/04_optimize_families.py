"""
Volume maximization over curve families
=======================================

Maximizes box volume subject to the developability bound with an SLSQP
solver.  Richer families enclose more: quadratic Bezier < cubic Bezier <
fine polyline.  A 100-segment polyline already lands within a hair of the
1000-segment optimum (run the CLI `pillowfold table1` for the full version).
"""

from pillowfold import (SheetSpec, cubic_bezier_problem, maximize_volume,
                        polyline_problem, quad_bezier_problem,
                        upsample_heights)

sheet = SheetSpec()

quad = maximize_volume(quad_bezier_problem(sheet))
a, b, h = quad.params
print(f"quad Bezier : V = {quad.volume:.6f} at a={a:.4f} b={b:.4f} h={h:.4f} "
      f"({quad.iterations} iterations)")

cubic = maximize_volume(cubic_bezier_problem(sheet))
print(f"cubic Bezier: V = {cubic.volume:.6f} at "
      + " ".join(f"{p:.4f}" for p in cubic.params))

heights = None
for n in (25, 50, 100):
    initial = None if heights is None else upsample_heights(heights, n)
    poly = maximize_volume(polyline_problem(n, sheet, initial=initial))
    heights = poly.params
    print(f"polyline N={n:3d}: V = {poly.volume:.6f} "
          f"(converged={poly.converged})")

square = maximize_volume(polyline_problem(100, SheetSpec(1.0, 1.0)))
print(f"\nsquare sheet, polyline N=100: V = {square.volume:.6f} "
      f"(beats the best circular arc 0.1703844172)")
