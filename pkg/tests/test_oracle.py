"""Finite-difference oracle: jets, fundamental forms, curvatures.

Cross-checks against closed forms use the pseudo null C1 example scene
(r = s/2, f = w, g = t, branch +1), whose unit normal, metric determinant
and second-form determinant all have known closed expressions.
"""

import math
import random

import pytest

from lmcanal import oracle
from lmcanal.canal import (CanalFamily, CurvaturePair, RadiusSpec, ShapeSpec,
                           Variant, curvature_closed, evaluate_point,
                           unit_normal_closed_pseudo_c1)
from lmcanal.curves import CurveClass, builtin, derive_frame
from lmcanal.minkowski import Vec4, inner

PN = builtin("pseudo-null-example")
FAM = CanalFamily(CurveClass.PSEUDO_NULL, Variant.C1, 1)
RAD = RadiusSpec.from_text("s/2")
SHAPE = ShapeSpec.from_text("w", "t")


def scene_fn(s, t, w):
    return evaluate_point(FAM, PN, RAD, SHAPE, None, s, t, w)


def detg_closed(s, t, w):
    """Metric determinant of the example scene: with f=w, g=t the shape
    Jacobian factor (g_w f_t - f_w g_t)^2 is 1."""
    r, r1, r2, _ = RAD.jet(s)
    m = 1 - r1 * r1
    x = r * math.sqrt(m) * math.sin(w) - 2 * (m - r * r2) * t
    return -(r ** 4) * m * x * x * math.sin(w) ** 2 / (4 * t ** 4)


def deth_closed(s, t, w):
    r, r1, r2, _ = RAD.jet(s)
    m = 1 - r1 * r1
    a = m - r * r2
    bracket = (r * m * math.sin(w) ** 2 - 4 * r2 * a * t * t
               - 2 * math.sqrt(m) * (m - 2 * r * r2) * t * math.sin(w))
    return r * r * m / (4 * t ** 4) * bracket * math.sin(w) ** 2


def test_jet_of_affine_map():
    p = Vec4(0.3, -0.2, 1.0, 2.0)
    A, B, C = Vec4(1, 2, 0, 1), Vec4(0, 1, 1, 0), Vec4(2, 0, 1, 3)

    def affine(s, t, w):
        return p + s * A + t * B + w * C

    jet = oracle.numeric_jet(affine, 0.4, -0.7, 1.1)
    for second in (jet.d_ss, jet.d_st, jet.d_sw, jet.d_tt, jet.d_tw, jet.d_ww):
        assert second.euclid_norm() <= 1e-9
    assert (jet.d_s - A).euclid_norm() <= 1e-10
    assert (jet.d_t - B).euclid_norm() <= 1e-10
    assert (jet.d_w - C).euclid_norm() <= 1e-10


def test_jet_of_coordinate_map():
    def coords(s, t, w):
        return Vec4(0.0, s, t, w)

    jet = oracle.numeric_jet(coords, 0.2, 0.5, -0.3)
    assert (jet.d_s - Vec4(0, 1, 0, 0)).euclid_norm() <= 1e-12


def test_jet_rejects_bad_step():
    with pytest.raises(ValueError):
        oracle.numeric_jet(lambda s, t, w: Vec4(0, s, t, w), 0, 0, 0, step=0)


def test_mixed_partials_symmetric():
    # evaluate the same surface with two axes swapped; the cross partials
    # must land in each other's slots
    def swapped(s, w, t):
        return scene_fn(s, t, w)

    jet = oracle.numeric_jet(scene_fn, 0.6, 1.1, 1.2)
    jet2 = oracle.numeric_jet(swapped, 0.6, 1.2, 1.1)
    assert (jet.d_tw - jet2.d_tw).euclid_norm() <= 1e-6
    assert (jet.d_st - jet2.d_sw).euclid_norm() <= 1e-6


def test_fundamental_form_invariants():
    rng = random.Random(21)
    for _ in range(25):
        s, t, w = rng.uniform(0.3, 0.9), rng.uniform(0.7, 1.4), rng.uniform(0.5, 2.5)
        jet = oracle.numeric_jet(scene_fn, s, t, w)
        forms = oracle.fundamental_forms(jet)
        # symmetry
        for i in range(3):
            for j in range(3):
                assert forms.g[i][j] == forms.g[j][i]
                assert abs(forms.h[i][j] - forms.h[j][i]) <= 1e-8
        # unit normal, orthogonal to the tangents
        assert abs(abs(inner(forms.normal, forms.normal)) - 1.0) <= 1e-9
        for tangent in (jet.d_s, jet.d_t, jet.d_w):
            assert abs(inner(forms.normal, tangent)) <= 1e-8
        assert forms.eps == 1


def test_normal_matches_closed_form():
    rng = random.Random(22)
    for _ in range(15):
        s, t, w = rng.uniform(0.3, 0.8), rng.uniform(0.7, 1.2), rng.uniform(0.5, 1.5)
        forms = oracle.fundamental_forms(
            oracle.numeric_jet(scene_fn, s, t, w, step=1.25e-4))
        fr = derive_frame(PN, s)
        want = unit_normal_closed_pseudo_c1(fr, RAD.jet(s), w, t, branch=1)
        direct = min((forms.normal - want).euclid_norm(),
                     (forms.normal + want).euclid_norm())
        assert direct <= 1e-6


def test_detg_matches_closed_form():
    rng = random.Random(23)
    for _ in range(15):
        s, t, w = rng.uniform(0.3, 0.9), rng.uniform(0.7, 1.4), rng.uniform(0.5, 2.5)
        forms = oracle.fundamental_forms(oracle.numeric_jet(scene_fn, s, t, w))
        want = detg_closed(s, t, w)
        assert forms.detg == pytest.approx(want, rel=1e-4)


def test_deth_matches_closed_form():
    rng = random.Random(24)
    for _ in range(15):
        s, t, w = rng.uniform(0.3, 0.9), rng.uniform(0.7, 1.4), rng.uniform(0.5, 2.5)
        forms = oracle.fundamental_forms(oracle.numeric_jet(scene_fn, s, t, w))
        want = deth_closed(s, t, w)
        assert forms.deth == pytest.approx(want, rel=1e-3)


def test_curvatures_match_example_values():
    pair = oracle.curvatures_at(scene_fn, 1.0, 1.0, math.pi / 2)
    assert pair.K == pytest.approx(3.246620, rel=1e-4)
    assert pair.H == pytest.approx(-1.062782, rel=1e-4)


def test_flat_surface_zero_curvature():
    def affine(s, t, w):
        return Vec4(0.1, 1, 0, 0) * s + Vec4(0.2, 0, 1, 0) * t \
            + Vec4(0.3, 0, 0, 1) * w + Vec4(1, 2, 3, 4)

    pair = oracle.curvatures_at(affine, 0.1, 0.2, 0.3)
    assert abs(pair.K) <= 1e-8
    assert abs(pair.H) <= 1e-8


def test_degenerate_tangent_error():
    def degenerate(s, t, w):
        return Vec4(0, s, s, 0) + Vec4(0, t, t, 0)  # rank 1

    with pytest.raises(oracle.DegenerateTangentError):
        oracle.fundamental_forms(oracle.numeric_jet(degenerate, 0, 1, 1))


def test_singular_metric_error():
    # lightlike tangent plane: <d_s, d_s> = 0 makes det[g] vanish
    def lightlike(s, t, w):
        return Vec4(s, s, t, w)

    with pytest.raises((oracle.SingularMetricError,
                        oracle.DegenerateTangentError)):
        oracle.curvatures_numeric(
            oracle.fundamental_forms(oracle.numeric_jet(lightlike, 0, 1, 1)))


def test_compare_mixed_criterion():
    ok = oracle.compare(CurvaturePair(1.0, 2.0), CurvaturePair(1.00005, 2.0001),
                        rel_tol=1e-3, abs_tol=1e-9)
    assert ok.passed
    near_zero = oracle.compare(CurvaturePair(0.0, 0.0), CurvaturePair(1e-7, 0.0),
                               rel_tol=1e-4, abs_tol=1e-6)
    assert near_zero.passed
    bad = oracle.compare(CurvaturePair(1.0, 1.0), CurvaturePair(1.1, 1.0),
                         rel_tol=1e-3, abs_tol=1e-6)
    assert not bad.k_ok and bad.h_ok and not bad.passed
    with pytest.raises(ValueError):
        oracle.compare(CurvaturePair(0, 0), CurvaturePair(0, 0), 0.0, 1e-6)


def test_step_halving_self_consistency():
    # second-order scheme: halving the step cuts the curvature error ~4x;
    # allow slack but require no degradation
    s, t, w = 0.5, 1.2, 1.5
    fr = derive_frame(PN, s)
    closed = curvature_closed(FAM, fr.k1, RAD.jet(s), w, t)
    full = oracle.curvatures_at(scene_fn, s, t, w, step=1e-3)
    half = oracle.curvatures_at(scene_fn, s, t, w, step=5e-4)
    for attr in ("K", "H"):
        e_full = abs(getattr(full, attr) - getattr(closed, attr))
        e_half = abs(getattr(half, attr) - getattr(closed, attr))
        change = abs(getattr(full, attr) - getattr(half, attr))
        # the change between steps is at most the full-step error itself
        # (= 4x the expected quarter-step residue), plus a rounding floor
        assert e_half <= e_full
        assert change <= 4.0 * (0.75 * e_full) + 1e-9
