"""The Hopf fibration of the 3-sphere and rotations about its fibres.

The fibration sends a unit quaternion (w, x, y, z) to a point of the
base 2-sphere; each fibre is a great circle, and any two distinct
fibres are equidistant with perpendicular distance equal to half the
distance of their base points.  Points of the base sphere are also
realized as imaginary quaternion matrices so that a one-sided
conjugation action descends from the 3-sphere.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NumericalWarning
from .su2 import TWO_PI, GreatCircle, IsometryS3, SU2Element, safe_arccos

# Base points this close to the south pole take the exceptional chart.
SOUTH_POLE_TOL = 1e-9


# ---------------------------------------------------------------------------
# the base sphere
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class BasePoint:
    """Point (a, b, c) of the unit base 2-sphere."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        n = math.sqrt(self.a * self.a + self.b * self.b + self.c * self.c)
        if n < 1e-12:
            raise ValueError("cannot normalize a zero vector")
        if abs(n - 1.0) > 1e-15:
            object.__setattr__(self, "a", self.a / n)
            object.__setattr__(self, "b", self.b / n)
            object.__setattr__(self, "c", self.c / n)

    @staticmethod
    def from_polar(psi: float, theta: float) -> "BasePoint":
        """Longitude psi and colatitude theta (north pole at theta = 0)."""
        st = math.sin(theta)
        return BasePoint(math.cos(psi) * st, math.sin(psi) * st, math.cos(theta))

    @property
    def polar(self) -> tuple[float, float]:
        theta = safe_arccos(self.c)
        if abs(self.a) < 1e-15 and abs(self.b) < 1e-15:
            return 0.0, theta
        return math.atan2(self.b, self.a) % TWO_PI, theta

    def cartesian(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def isclose(self, other: "BasePoint", tol: float = 1e-10) -> bool:
        return (
            abs(self.a - other.a) <= tol
            and abs(self.b - other.b) <= tol
            and abs(self.c - other.c) <= tol
        )


@dataclass(frozen=True, slots=True)
class ImaginaryQuaternion:
    """Unit imaginary quaternion [[ix, y+iz], [-y+iz, -ix]]: a base
    point in matrix form, acted on by one-sided conjugation."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if n < 1e-12:
            raise ValueError("cannot normalize a zero imaginary quaternion")
        if abs(n - 1.0) > 1e-15:
            object.__setattr__(self, "x", self.x / n)
            object.__setattr__(self, "y", self.y / n)
            object.__setattr__(self, "z", self.z / n)

    def to_matrix(self) -> np.ndarray:
        return np.array(
            [[1j * self.x, self.y + 1j * self.z], [-self.y + 1j * self.z, -1j * self.x]],
            dtype=complex,
        )

    @property
    def base_point(self) -> BasePoint:
        return BasePoint(self.x, self.y, self.z)

    @staticmethod
    def from_base_point(p: BasePoint) -> "ImaginaryQuaternion":
        return ImaginaryQuaternion(p.a, p.b, p.c)

    def rotated_by(self, a: SU2Element) -> "ImaginaryQuaternion":
        """Image under the descended action q -> a^t q conj(a)."""
        u = a.transpose()
        r = u * SU2Element(0.0, self.x, self.y, self.z) * u.inverse()
        # the scalar part stays zero up to roundoff
        return ImaginaryQuaternion(r.x, r.y, r.z)


# ---------------------------------------------------------------------------
# fibration
# ---------------------------------------------------------------------------


def hopf_map(p: SU2Element) -> BasePoint:
    """Project a point of the 3-sphere to its base point."""
    w, x, y, z = p.w, p.x, p.y, p.z
    return BasePoint(
        2.0 * (x * z + w * y),
        2.0 * (y * z - w * x),
        1.0 - 2.0 * (x * x + y * y),
    )


_J = SU2Element(0.0, 0.0, 0.0, 1.0)


def fibre_rotation(omega: float) -> SU2Element:
    """The circle subgroup element R(omega) = [[cos w/2, i sin w/2],
    [i sin w/2, cos w/2]]; R(s) R(t) = R(s + t)."""
    half = 0.5 * omega
    return SU2Element(math.cos(half), 0.0, 0.0, math.sin(half))


def generic_fibre() -> GreatCircle:
    """The fibre through the identity, F(t) = id cos t + J sin t."""
    return GreatCircle(SU2Element.identity(), _J)


def fibre_start(base: BasePoint) -> SU2Element:
    """A reference point of the fibre over the given base point."""
    if base.c <= -1.0 + SOUTH_POLE_TOL:
        # exceptional chart over the south pole
        return SU2Element(0.0, 0.0, 1.0, 0.0)
    root = math.sqrt(2.0 * (1.0 + base.c))
    return SU2Element((1.0 + base.c) / root, -base.b / root, base.a / root, 0.0)


def fibre_over(base: BasePoint) -> GreatCircle:
    """The fibre as a great circle, parameterized as P F(t)."""
    p = fibre_start(base)
    return GreatCircle(p, p * _J)


def polar_matrix(psi: float, theta: float) -> SU2Element:
    """The section M(psi, theta) whose fibre lies over the base point
    with longitude psi and colatitude theta.

    Near theta = pi the chart degenerates and the result depends on the
    approach direction; a diagnostic warning is emitted there.
    """
    if theta > math.pi - 1e-9:
        warnings.warn(
            f"polar chart is degenerate at colatitude {theta!r}",
            NumericalWarning,
            stacklevel=2,
        )
    half = 0.5 * theta
    return SU2Element(
        math.cos(half),
        -math.sin(psi) * math.sin(half),
        math.cos(psi) * math.sin(half),
        0.0,
    )


def rotation_about_fibre(psi: float, theta: float, omega: float) -> IsometryS3:
    """Isometry rotating the 3-sphere through omega about the fibre over
    polar base coordinates (psi, theta), fixing that fibre pointwise."""
    m = polar_matrix(psi, theta) if theta <= math.pi - 1e-9 else fibre_start(BasePoint.from_polar(psi, theta))
    r = fibre_rotation(omega)
    left = m.complex_conj() * r * m.transpose()
    return IsometryS3(left, r)


def base_fixed_point(psi: float, theta: float) -> ImaginaryQuaternion:
    """Fixed point on the base sphere of the descended rotation about
    the fibre over (psi, theta); equals that base point itself."""
    m = polar_matrix(psi, theta) if theta <= math.pi - 1e-9 else fibre_start(BasePoint.from_polar(psi, theta))
    r = m * _J * m.inverse()
    return ImaginaryQuaternion(r.x, r.y, r.z)


def fibre_distance(b1: BasePoint, b2: BasePoint) -> float:
    """Perpendicular distance between the fibres over two base points:
    half the spherical distance of the base points."""
    d = b1.a * b2.a + b1.b * b2.b + b1.c * b2.c
    return 0.5 * safe_arccos(d)


def stereographic(p: SU2Element) -> tuple[float, float, float]:
    """Stereographic chart from the antipode of the identity; fibres
    through (-1, 0, 0, 0) render as unbounded lines."""
    denom = 1.0 + p.w
    if abs(denom) < 1e-12:
        raise ZeroDivisionError("point is the projection pole")
    return (p.x / denom, p.y / denom, p.z / denom)
