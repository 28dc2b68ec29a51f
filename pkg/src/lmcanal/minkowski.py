"""Linear algebra of Lorentz-Minkowski 4-space E^4_1.

The ambient space is R^4 with the indefinite inner product

    <u, v> = -u1*v1 + u2*v2 + u3*v3 + u4*v4

i.e. signature (-,+,+,+) with the first coordinate timelike.  Everything
here is exact-signature and hand-expanded: the ternary cross product is
written out cofactor by cofactor so the sign pattern (-e1, e2, e3, e4)
of the defining determinant can be audited directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class CausalClass(Enum):
    """Causal character of a vector: sign of <u,u> up to a tolerance band."""

    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


class QuadricKind(Enum):
    """The three central quadrics of E^4_1, tagged by their sign lambda."""

    PSEUDO_SPHERE = 1        # <u-p, u-p> = +r^2
    PSEUDO_HYPERBOLIC = -1   # <u-p, u-p> = -r^2
    NULL_CONE = 0            # <u-p, u-p> = 0

    @property
    def lam(self) -> int:
        return self.value


#: Default tolerance band on the quadratic form for lightlike classification.
#: Frame vectors produced by numerical differentiation are never exactly null.
LIGHTLIKE_TOL = 1e-9


@dataclass(frozen=True)
class Vec4:
    """A point or vector of E^4_1 with coordinates (x1, x2, x3, x4)."""

    x1: float
    x2: float
    x3: float
    x4: float

    def __add__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x1 + other.x1, self.x2 + other.x2,
                    self.x3 + other.x3, self.x4 + other.x4)

    def __sub__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x1 - other.x1, self.x2 - other.x2,
                    self.x3 - other.x3, self.x4 - other.x4)

    def __mul__(self, c: float) -> "Vec4":
        return Vec4(c * self.x1, c * self.x2, c * self.x3, c * self.x4)

    __rmul__ = __mul__

    def __truediv__(self, c: float) -> "Vec4":
        return Vec4(self.x1 / c, self.x2 / c, self.x3 / c, self.x4 / c)

    def __neg__(self) -> "Vec4":
        return Vec4(-self.x1, -self.x2, -self.x3, -self.x4)

    def components(self) -> tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.x4)

    def is_finite(self) -> bool:
        return all(math.isfinite(c) for c in self.components())

    def euclid_norm(self) -> float:
        """Auxiliary Euclidean length, used only for gauge fixing."""
        return math.sqrt(self.x1**2 + self.x2**2 + self.x3**2 + self.x4**2)


ZERO = Vec4(0.0, 0.0, 0.0, 0.0)


def inner(u: Vec4, v: Vec4) -> float:
    """Indefinite inner product -u1*v1 + u2*v2 + u3*v3 + u4*v4."""
    return -u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3 + u.x4 * v.x4


def norm(u: Vec4) -> float:
    """Norm sqrt(|<u,u>|); zero exactly on lightlike vectors."""
    return math.sqrt(abs(inner(u, u)))


def triple_cross(u: Vec4, v: Vec4, w: Vec4) -> Vec4:
    """Ternary cross product of E^4_1.

    Formal expansion of det[[-e1, e2, e3, e4], [u], [v], [w]] along the
    first row.  The result is Minkowski-orthogonal to u, v and w and
    alternating in its arguments.  Arguments are brought into a canonical
    order first (tracking permutation parity), so swapping any two of them
    flips the sign of the result exactly, rounding included, and a repeated
    argument yields the exact zero vector.
    """
    rows = sorted(((u.components(), 0), (v.components(), 1),
                   (w.components(), 2)))
    (a_, ia), (b_, ib), (c_, ic) = rows
    if a_ == b_ or b_ == c_:
        return ZERO
    sign = 1.0 if (ia, ib, ic) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1.0

    # 3x3 minors of the canonical rows (a, b, c), dropping one column each.
    def minor3(a, b, c, d, e, f, g, h, i):
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    m1 = minor3(a_[1], a_[2], a_[3], b_[1], b_[2], b_[3], c_[1], c_[2], c_[3])
    m2 = minor3(a_[0], a_[2], a_[3], b_[0], b_[2], b_[3], c_[0], c_[2], c_[3])
    m3 = minor3(a_[0], a_[1], a_[3], b_[0], b_[1], b_[3], c_[0], c_[1], c_[3])
    m4 = minor3(a_[0], a_[1], a_[2], b_[0], b_[1], b_[2], c_[0], c_[1], c_[2])
    # First-row entries are (-e1, +e2, +e3, +e4) and cofactor signs alternate
    # (+,-,+,-), so the coordinates come out as (-m1, -m2, +m3, -m4).
    return Vec4(sign * -m1, sign * -m2, sign * m3, sign * -m4)


def causal_class(u: Vec4, tol: float = LIGHTLIKE_TOL) -> CausalClass:
    """Classify u by the sign of <u,u> with a band of width tol around zero."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    q = inner(u, u)
    if abs(q) <= tol:
        return CausalClass.LIGHTLIKE
    if q < -tol:
        return CausalClass.TIMELIKE
    return CausalClass.SPACELIKE


def quadric_residual(u: Vec4, p: Vec4, r: float, kind: QuadricKind) -> float:
    """Residual <u-p, u-p> - lambda*r^2; zero iff u lies on the quadric.

    For the null cone the radius is ignored.  For the pseudo sphere and
    pseudo hyperbolic hypersphere r must be positive.
    """
    if kind is not QuadricKind.NULL_CONE and r <= 0:
        raise ValueError("quadric radius must be positive")
    d = u - p
    return inner(d, d) - kind.lam * (r * r)
