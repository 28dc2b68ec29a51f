"""Canal and tubular hypersurfaces generated by pseudo null, partially null
and null center curves in Lorentz-Minkowski 4-space, with closed-form
Gaussian/mean curvatures and an independent finite-difference verification
oracle."""

from .canal import (CanalFamily, CurvaturePair, NullCoefficients, RadiusSpec,
                    ShapeSpec, Variant, curvature_closed, evaluate_point,
                    flat_residual, minimal_residual, null_constraint_residual,
                    relation_residual, weingarten_residuals)
from .curves import (CurveClass, CurveSpec, FrenetData, builtin,
                     builtin_names, derive_frame, verify_frame)
from .expr import Jet1x4, Jet2x2, eval_s, eval_tw, eval_value, parse, to_str
from .mesh import GridSpec, ProjectedMesh, export_field, export_obj, sweep
from .minkowski import (CausalClass, QuadricKind, Vec4, causal_class, inner,
                        norm, quadric_residual, triple_cross)
from .oracle import (FundamentalForms, SurfaceJet, compare, curvatures_at,
                     curvatures_numeric, fundamental_forms, numeric_jet)
from .scene import SceneSpec, bundled_scene, bundled_scene_names, parse_scene
from .verify import Tolerances, VerifyReport, verify_scene

__version__ = "0.1.0"
