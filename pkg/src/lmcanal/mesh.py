"""Grid sampling, coordinate projection and mesh/field export.

A sweep fixes one of the parameters (s, t, w), samples the other two on a
rectangular grid, evaluates the hypersurface points, drops one ambient
coordinate (orthogonal projection onto one of the four 3-coordinate
subspaces) and attaches closed-form curvature channels where the family
defines them.  Points where a closed-form denominator vanishes stay in the
mesh with the singular flag set and no curvature values.

Exports are deterministic: floats are written with ``repr`` (shortest
round-trip form), vertices in row-major order over (first swept axis,
second swept axis), quads as 1-based index quadruples following grid
adjacency.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .canal import (SingularPointError, UnsupportedFamilyError,
                    relation_residual)

PROJECTIONS = {
    "x1x2x3": (0, 1, 2),
    "x1x2x4": (0, 1, 3),
    "x1x3x4": (0, 2, 3),
    "x2x3x4": (1, 2, 3),
}

AXES = ("s", "t", "w")


class MeshError(Exception):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Parameter ranges and counts, plus the fixed-axis selector for sweeps."""

    s_range: tuple[float, float]
    t_range: tuple[float, float]
    w_range: tuple[float, float]
    n_s: int
    n_t: int
    n_w: int
    fixed_axis: str | None = None
    fixed_value: float | None = None

    def __post_init__(self):
        if self.fixed_axis is not None and self.fixed_axis not in AXES:
            raise MeshError(f"fixed axis must be one of {AXES}")
        for axis in AXES:
            lo, hi = self.range_of(axis)
            if not lo < hi:
                raise MeshError(f"degenerate {axis} range [{lo}, {hi}]")
            if axis != self.fixed_axis and self.count_of(axis) < 2:
                raise MeshError(f"swept axis {axis} needs at least 2 samples")

    def range_of(self, axis: str) -> tuple[float, float]:
        return {"s": self.s_range, "t": self.t_range, "w": self.w_range}[axis]

    def count_of(self, axis: str) -> int:
        return {"s": self.n_s, "t": self.n_t, "w": self.n_w}[axis]

    def values_of(self, axis: str) -> list[float]:
        lo, hi = self.range_of(axis)
        n = self.count_of(axis)
        return [lo + (hi - lo) * i / (n - 1) for i in range(n)]

    def swept_axes(self) -> tuple[str, str]:
        if self.fixed_axis is None:
            raise MeshError("sweep needs a fixed axis in the grid spec")
        a, b = (axis for axis in AXES if axis != self.fixed_axis)
        return a, b

    def points3d(self):
        """Full 3D grid iterator (s, t, w), row-major in (s, t, w)."""
        for s in self.values_of("s"):
            for t in self.values_of("t"):
                for w in self.values_of("w"):
                    yield (s, t, w)


@dataclass
class ProjectedMesh:
    """Sweep output: projected vertices, grid quads and scalar channels."""

    vertices: list = field(default_factory=list)       # projected 3-tuples
    points: list = field(default_factory=list)         # full Vec4 points
    params: list = field(default_factory=list)         # (s, t, w) per vertex
    k_values: list = field(default_factory=list)       # float or None
    h_values: list = field(default_factory=list)
    singular: list = field(default_factory=list)       # bool per vertex
    quads: list = field(default_factory=list)          # 0-based index 4-tuples
    projection: str = "x1x3x4"
    #: worst K-H relation residual over nonsingular vertices (canal variants)
    relation_worst: float = 0.0

    @property
    def n_singular(self) -> int:
        return sum(self.singular)


def sweep(scene, grid: GridSpec) -> ProjectedMesh:
    """Evaluate the scene on the fixed-axis grid and project.

    ``scene`` provides ``point_fn()`` and ``closed_pair(s, t, w)`` (see
    scene module).  Raises MeshError when every point is singular.
    """
    if scene.projection not in PROJECTIONS:
        raise MeshError(f"unknown projection {scene.projection!r}")
    keep = PROJECTIONS[scene.projection]
    axis_a, axis_b = grid.swept_axes()
    values_a = grid.values_of(axis_a)
    values_b = grid.values_of(axis_b)
    fn = scene.point_fn()

    mesh = ProjectedMesh(projection=scene.projection)
    for va in values_a:
        for vb in values_b:
            coords = {grid.fixed_axis: grid.fixed_value, axis_a: va, axis_b: vb}
            s, t, w = coords["s"], coords["t"], coords["w"]
            p = fn(s, t, w)
            comps = p.components()
            mesh.params.append((s, t, w))
            mesh.points.append(p)
            mesh.vertices.append(tuple(comps[i] for i in keep))
            try:
                pair = scene.closed_pair(s, t, w)
                mesh.k_values.append(pair.K)
                mesh.h_values.append(pair.H)
                mesh.singular.append(False)
                try:
                    r = scene.radius.jet(s)[0]
                    mesh.relation_worst = max(
                        mesh.relation_worst,
                        abs(relation_residual(pair, r, scene.family)))
                except UnsupportedFamilyError:
                    pass  # tubular variants: no K-H relation to recheck
            except SingularPointError:
                mesh.k_values.append(None)
                mesh.h_values.append(None)
                mesh.singular.append(True)
            except UnsupportedFamilyError:
                # Null-center families: geometry only, no closed curvatures.
                mesh.k_values.append(None)
                mesh.h_values.append(None)
                mesh.singular.append(False)
    n_a, n_b = len(values_a), len(values_b)
    if mesh.n_singular == n_a * n_b:
        raise MeshError("every grid point is singular")
    for i in range(n_a - 1):
        for j in range(n_b - 1):
            base = i * n_b + j
            mesh.quads.append((base, base + 1, base + n_b + 1, base + n_b))
    return mesh


def export_obj(mesh: ProjectedMesh, path) -> None:
    """Wavefront OBJ: `v x y z` lines then 1-based `f i j k l` quads."""
    if not mesh.vertices:
        raise MeshError("cannot export an empty mesh")
    lines = []
    for v in mesh.vertices:
        lines.append(f"v {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}")
    for q in mesh.quads:
        lines.append(f"f {q[0] + 1} {q[1] + 1} {q[2] + 1} {q[3] + 1}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


FIELD_COLUMNS = ("s", "t", "w", "x1", "x2", "x3", "x4", "K", "H", "singular")


def _field_records(mesh: ProjectedMesh):
    for (s, t, w), p, k, h, sing in zip(mesh.params, mesh.points,
                                        mesh.k_values, mesh.h_values,
                                        mesh.singular):
        yield {"s": float(s), "t": float(t), "w": float(w),
               "x1": float(p.x1), "x2": float(p.x2),
               "x3": float(p.x3), "x4": float(p.x4),
               "K": None if k is None else float(k),
               "H": None if h is None else float(h),
               "singular": bool(sing)}


def export_field(mesh: ProjectedMesh, path, format: str = "csv") -> None:
    """Per-vertex curvature field as CSV or JSON records.

    CSV columns are fixed (see FIELD_COLUMNS); K and H cells are empty on
    singular vertices and on families without closed forms.
    """
    if not mesh.vertices:
        raise MeshError("cannot export an empty mesh")
    if format == "csv":
        lines = [",".join(FIELD_COLUMNS)]
        for rec in _field_records(mesh):
            cells = [repr(rec[c]) for c in ("s", "t", "w", "x1", "x2", "x3", "x4")]
            cells.append("" if rec["K"] is None else repr(rec["K"]))
            cells.append("" if rec["H"] is None else repr(rec["H"]))
            cells.append("true" if rec["singular"] else "false")
            lines.append(",".join(cells))
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    elif format == "json":
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            json.dump(list(_field_records(mesh)), fh, indent=1)
            fh.write("\n")
    else:
        raise MeshError(f"unknown field format {format!r}")
