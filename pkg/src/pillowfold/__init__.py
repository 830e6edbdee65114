"""pillowfold: curved-crease pillow box design, validation, folding and
volume optimization."""

__version__ = "0.1.0"

from .errors import (DomainError, EvaluationError, GeometryError,
                     InfeasibleStartError, InvalidCurveError,
                     MaxIterationsError, NonMonotoneError, NotWatertightError,
                     ParseError, PillowfoldError)
from .curves import (ArcCurve, BezierState, CreaseCurve, CubicBezierCurve,
                     CurveSample, PolylineCurve, QuadBezierCurve,
                     RectangleCurve, RhombusCurve, SheetSpec, SineArc,
                     eval_curve, family_names, make_curve, sample_uniform)
from .fold import (AsymmetricParams, CreaseCurve3D, CrossSectionProfile,
                   FoldedMesh, ValidationReport, build_asymmetric_mesh,
                   build_mesh, compute_profile, check_watertight,
                   discrete_triangle_check, extract_crease_3d, validate)
from .volume import (VolumeResult, arc_max, arc_volume, circle_volume,
                     golden_section_max, paper_bag_volume, rectangle_max,
                     rectangle_volume, rhombus_max, rhombus_volume,
                     symmetrize_best_half, volume_mesh, volume_quadrature)
from .optimize import (OptimizationProblem, OptResult, SolverConfig,
                       constraint_vector, cubic_bezier_problem,
                       curve_from_params, gradient_fd, maximize_volume,
                       polyline_problem, quad_bezier_problem,
                       upsample_heights)
from .serialize import (curve_spec_document, parse_curve_spec, parse_obj,
                        result_document, write_curve_spec, write_obj,
                        write_svg_pattern)
from .report import format_markdown, table_rows

__all__ = [name for name in dir() if not name.startswith("_")]
