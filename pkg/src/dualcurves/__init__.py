"""Dual-number line geometry.

Dual numbers and vectors, dual Frenet frames of curves in dual 3-space,
normal-curve and dual-sphere tests, and the map from curves on the dual
unit sphere to ruled surfaces in real 3-space.
"""

__version__ = "0.1.0"

from .algebra import (DualScalar, dual_add, dual_cos, dual_inv, dual_isclose, dual_lift,
                      dual_mul, dual_sin, dual_sqrt)
from .catalog import (Term, curve_from_curvatures, great_circle, normalized,
                      off_sphere_control, random_sphere_curve, real_helix, series_curve,
                      study_circle, transformed)
from .classify import (NormalCurveTest, NormalFit, RadiusConsistency, SphereFit,
                       fit_curvature_solution, normal_component_residual,
                       normal_curve_test, position_decomposition, radius_constraint,
                       sphere_center_radius, sphere_equation_components, spherical_test)
from .config import CurveSpec, build_curve, parse_curve_spec
from .curves import (DualCurve, FrenetSample, cumulative_integral_dual, derivative,
                     derivatives, dual_arc_length, frenet_apparatus, frenet_residuals,
                     integrate_dual, reparametrize_by_arclength, speed)
from .errors import *  # noqa: F401,F403
from .linalg import (DualVec3, Line, dual_angle, dual_cross, dual_dot, dual_norm,
                     dual_normalize, dual_to_line, is_unit, line_to_dual, unit_residual)
from .study import (RuledSurfaceMesh, csv_text, export_csv, export_obj, obj_text,
                    ruled_surface_from_dual_curve)
