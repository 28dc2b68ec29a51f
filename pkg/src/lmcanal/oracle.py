"""Finite-difference differential geometry of parametrized hypersurfaces.

Independent verification engine: given nothing but a point evaluator
R^3 -> E^4_1, compute second-order central-difference jets, the Gauss map
N = (O_s x O_t x O_w)/||.||, the fundamental forms g_ij = <O_i, O_j> and
h_ij = <O_ij, N>, the shape operator S = g^{-1} h and the curvatures

    K = eps * det(h)/det(g),        H = tr(S) / (3*eps),

with eps = <N, N> measured, not assumed.  The 3x3 inverse goes through the
adjugate with an explicit determinant guard.  Because the evaluator is
differentiated numerically, the engine shares nothing with the closed-form
curvature path it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .minkowski import Vec4, inner, triple_cross

PointFn = Callable[[float, float, float], Vec4]

#: Default finite-difference step: balances O(step^2) truncation against
#: double-precision cancellation in the second differences.
DEFAULT_STEP = 1e-3

#: Scaled threshold for a degenerate tangent frame / singular metric.
DEGENERATE_TOL = 1e-10
METRIC_DET_TOL = 1e-12


class OracleError(Exception):
    pass


class DegenerateTangentError(OracleError):
    """Tangent vectors are (numerically) linearly dependent."""


class SingularMetricError(OracleError):
    """det[g] vanishes; the shape operator is undefined."""


@dataclass(frozen=True)
class SurfaceJet:
    """Point, first and second central-difference partials of the map."""

    point: Vec4
    d_s: Vec4
    d_t: Vec4
    d_w: Vec4
    d_ss: Vec4
    d_st: Vec4
    d_sw: Vec4
    d_tt: Vec4
    d_tw: Vec4
    d_ww: Vec4
    step: float


@dataclass(frozen=True)
class FundamentalForms:
    """First/second fundamental forms, their determinants, the unit normal
    and its causal sign eps = <N, N>."""

    g: tuple
    h: tuple
    detg: float
    deth: float
    normal: Vec4
    eps: int


def numeric_jet(surface: PointFn, s: float, t: float, w: float,
                step: float = DEFAULT_STEP) -> SurfaceJet:
    """Second-order central differences on the 19-point stencil."""
    if step <= 0:
        raise ValueError("step must be positive")
    h = step

    def p(ds, dt, dw):
        return surface(s + ds * h, t + dt * h, w + dw * h)

    c = p(0, 0, 0)
    sp, sm = p(1, 0, 0), p(-1, 0, 0)
    tp, tm = p(0, 1, 0), p(0, -1, 0)
    wp, wm = p(0, 0, 1), p(0, 0, -1)

    def first(fp, fm):
        return (fp - fm) / (2.0 * h)

    def second(fp, fm):
        return (fp - 2.0 * c + fm) / (h * h)

    def mixed(pp, pm, mp, mm):
        return (pp - pm - mp + mm) / (4.0 * h * h)

    return SurfaceJet(
        point=c,
        d_s=first(sp, sm), d_t=first(tp, tm), d_w=first(wp, wm),
        d_ss=second(sp, sm), d_tt=second(tp, tm), d_ww=second(wp, wm),
        d_st=mixed(p(1, 1, 0), p(1, -1, 0), p(-1, 1, 0), p(-1, -1, 0)),
        d_sw=mixed(p(1, 0, 1), p(1, 0, -1), p(-1, 0, 1), p(-1, 0, -1)),
        d_tw=mixed(p(0, 1, 1), p(0, 1, -1), p(0, -1, 1), p(0, -1, -1)),
        step=h,
    )


def _det3(m) -> float:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _adjugate3(m):
    return (
        (m[1][1] * m[2][2] - m[1][2] * m[2][1],
         m[0][2] * m[2][1] - m[0][1] * m[2][2],
         m[0][1] * m[1][2] - m[0][2] * m[1][1]),
        (m[1][2] * m[2][0] - m[1][0] * m[2][2],
         m[0][0] * m[2][2] - m[0][2] * m[2][0],
         m[0][2] * m[1][0] - m[0][0] * m[1][2]),
        (m[1][0] * m[2][1] - m[1][1] * m[2][0],
         m[0][1] * m[2][0] - m[0][0] * m[2][1],
         m[0][0] * m[1][1] - m[0][1] * m[1][0]),
    )


def fundamental_forms(jet: SurfaceJet) -> FundamentalForms:
    """Normal, g, h and their determinants from a surface jet."""
    tangents = (jet.d_s, jet.d_t, jet.d_w)
    raw = triple_cross(*tangents)
    q = inner(raw, raw)
    scale = max(1.0, max(v.euclid_norm() for v in tangents) ** 3)
    if abs(q) ** 0.5 <= DEGENERATE_TOL * scale:
        raise DegenerateTangentError(
            f"tangent frame is degenerate: ||O_s x O_t x O_w|| ~ {abs(q) ** 0.5}")
    normal = raw / (abs(q) ** 0.5)
    eps = 1 if inner(normal, normal) > 0 else -1
    g = tuple(tuple(inner(a, b) for b in tangents) for a in tangents)
    seconds = ((jet.d_ss, jet.d_st, jet.d_sw),
               (jet.d_st, jet.d_tt, jet.d_tw),
               (jet.d_sw, jet.d_tw, jet.d_ww))
    h = tuple(tuple(inner(v, normal) for v in row) for row in seconds)
    return FundamentalForms(g=g, h=h, detg=_det3(g), deth=_det3(h),
                            normal=normal, eps=eps)


def curvatures_numeric(forms: FundamentalForms):
    """K = eps det(h)/det(g) and H = tr(g^{-1} h)/(3 eps)."""
    from .canal import CurvaturePair

    scale = max(1.0, max(abs(x) for row in forms.g for x in row)) ** 3
    if abs(forms.detg) <= METRIC_DET_TOL * scale:
        raise SingularMetricError(f"det[g] = {forms.detg} is singular")
    K = forms.eps * forms.deth / forms.detg
    adj = _adjugate3(forms.g)
    # tr(S) = tr(adj(g) h) / det(g)
    tr = sum(adj[i][k] * forms.h[k][i]
             for i in range(3) for k in range(3)) / forms.detg
    H = tr / (3.0 * forms.eps)
    return CurvaturePair(K, H)


@dataclass(frozen=True)
class CompareReport:
    """Mixed relative/absolute comparison of two curvature pairs."""

    k_error: float
    h_error: float
    k_ok: bool
    h_ok: bool

    @property
    def passed(self) -> bool:
        return self.k_ok and self.h_ok


def compare(closed, numeric, rel_tol: float, abs_tol: float) -> CompareReport:
    """Per-quantity check |a - b| <= abs_tol + rel_tol * max(|a|, |b|)."""
    if rel_tol <= 0 or abs_tol <= 0:
        raise ValueError("tolerances must be positive")

    def check(a, b):
        err = abs(a - b)
        return err, err <= abs_tol + rel_tol * max(abs(a), abs(b))

    k_err, k_ok = check(closed.K, numeric.K)
    h_err, h_ok = check(closed.H, numeric.H)
    return CompareReport(k_err, h_err, k_ok, h_ok)


def curvatures_at(surface: PointFn, s: float, t: float, w: float,
                  step: float = DEFAULT_STEP):
    """Convenience: jet -> forms -> curvature pair at one point."""
    return curvatures_numeric(fundamental_forms(numeric_jet(surface, s, t, w,
                                                            step)))
