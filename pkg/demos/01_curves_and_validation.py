"""
Crease curve families and the developability check
===================================================

A pillow box is folded from a rectangular sheet along four identical crease
curves.  Each family here defines the crease height f(u) across the sheet
width; a curve folds flat-to-3D only while its tangent stays within 45
degrees, i.e. |f'(u)| <= 1.
"""

import numpy as np

from pillowfold import (ArcCurve, PolylineCurve, QuadBezierCurve,
                        RectangleCurve, RhombusCurve, SineArc, validate)

curves = {
    "sine arc (circular profile)": SineArc(),
    "rectangle h=0.25": RectangleCurve(0.25),
    "rhombus h=0.30547": RhombusCurve(0.30547),
    "circular arc theta=1.047": ArcCurve(1.047),
    "quad Bezier (paper optimum)": QuadBezierCurve(0.2731, 0.2731, 0.2544),
    "too-steep Bezier": QuadBezierCurve(0.1, 0.3, 0.2),
    "polyline": PolylineCurve([0.1, 0.2, 0.24], symmetric=True),
}

for name, curve in curves.items():
    report = validate(curve, 10000)
    verdict = "ok" if report.valid else "NOT developable"
    print(f"{name:32s} max |f'| = {report.max_abs_slope:7.4f}  -> {verdict}")
    for lo, hi in report.violations:
        print(f"{'':32s} violated on u in [{lo:.3f}, {hi:.3f}]")

# plot the curves over the development
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    u = np.linspace(0.0, 1.0, 600)
    fig, ax = plt.subplots(figsize=(7, 3.2))
    for name, curve in curves.items():
        ax.plot(u, curve.f(u), label=name, lw=1.2)
    ax.set_xlabel("u")
    ax.set_ylabel("f(u)")
    ax.legend(fontsize=7, loc="upper right")
    fig.tight_layout()
    fig.savefig("demos_curves.png", dpi=130)
    print("\nwrote demos_curves.png")
except ImportError:
    print("\n(matplotlib not installed; skipping the plot)")
