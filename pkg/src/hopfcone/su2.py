"""Unit quaternions, the two-sided isometry action on the 3-sphere, and
great-circle geometry.

A point p = (w, x, y, z) of the unit 3-sphere is identified with the
SU(2) matrix

    [[ w + ix,  y + iz ],
     [ -y + iz, w - ix ]]

and matrix multiplication agrees with the Hamilton product under this
identification.  Orientation-preserving isometries of the 3-sphere are
pairs of unit quaternions acting by  P  ->  L^t P conj(R).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import IdenticalCircles, NumericalWarning

# Tolerance below which arccos arguments are clamped without comment.
CLAMP_QUIET_TOL = 1e-9

# Singular values closer than this are treated as an equidistant pair.
EQUIDISTANT_TOL = 1e-9

TWO_PI = 2.0 * math.pi


def safe_arccos(value: float, quiet_tol: float = CLAMP_QUIET_TOL) -> float:
    """arccos with clamping to [-1, 1]; warns when the clamp is large."""
    if value > 1.0:
        if value - 1.0 > quiet_tol:
            warnings.warn(
                f"arccos argument {value!r} exceeds 1 by {value - 1.0:.3e}",
                NumericalWarning,
                stacklevel=2,
            )
        return 0.0
    if value < -1.0:
        if -1.0 - value > quiet_tol:
            warnings.warn(
                f"arccos argument {value!r} is below -1 by {-1.0 - value:.3e}",
                NumericalWarning,
                stacklevel=2,
            )
        return math.pi
    return math.acos(value)


# ---------------------------------------------------------------------------
# unit quaternions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SU2Element:
    """Unit quaternion (w, x, y, z); renormalized on construction."""

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        n = math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)
        if n < 1e-12:
            raise ValueError("cannot normalize a zero quaternion")
        if abs(n - 1.0) > 1e-15:
            object.__setattr__(self, "w", self.w / n)
            object.__setattr__(self, "x", self.x / n)
            object.__setattr__(self, "y", self.y / n)
            object.__setattr__(self, "z", self.z / n)

    # -- algebra ------------------------------------------------------

    def __mul__(self, other: "SU2Element") -> "SU2Element":
        """Hamilton product, which matches matrix multiplication."""
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = other.w, other.x, other.y, other.z
        return SU2Element(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def __neg__(self) -> "SU2Element":
        return SU2Element(-self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "SU2Element":
        return SU2Element(self.w, -self.x, -self.y, -self.z)

    def transpose(self) -> "SU2Element":
        """Matrix transpose: negates the y component."""
        return SU2Element(self.w, self.x, -self.y, self.z)

    def complex_conj(self) -> "SU2Element":
        """Entrywise complex conjugation: negates x and z."""
        return SU2Element(self.w, -self.x, self.y, -self.z)

    # -- views --------------------------------------------------------

    @property
    def trace(self) -> float:
        return 2.0 * self.w

    def components(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def to_matrix(self) -> np.ndarray:
        w, x, y, z = self.w, self.x, self.y, self.z
        return np.array(
            [[w + 1j * x, y + 1j * z], [-y + 1j * z, w - 1j * x]],
            dtype=complex,
        )

    @staticmethod
    def identity() -> "SU2Element":
        return SU2Element(1.0, 0.0, 0.0, 0.0)

    @staticmethod
    def from_matrix(m: np.ndarray) -> "SU2Element":
        return SU2Element(
            float(m[0, 0].real), float(m[0, 0].imag), float(m[0, 1].real), float(m[0, 1].imag)
        )


def dot(p: SU2Element, q: SU2Element) -> float:
    """Euclidean inner product of the two points of the 3-sphere."""
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z


def distance(p: SU2Element, q: SU2Element) -> float:
    """Spherical distance, in [0, pi]."""
    return safe_arccos(dot(p, q))


def max_entry_diff(a: SU2Element, b: SU2Element) -> float:
    """Largest entrywise modulus of the matrix difference a - b."""
    dw, dx = a.w - b.w, a.x - b.x
    dy, dz = a.y - b.y, a.z - b.z
    return max(math.hypot(dw, dx), math.hypot(dy, dz))


def max_entry_diff_mod_sign(a: SU2Element, b: SU2Element) -> float:
    """Entrywise gap minimized over the global sign of one factor."""
    return min(max_entry_diff(a, b), max_entry_diff(a, -b))


# ---------------------------------------------------------------------------
# isometries
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class IsometryS3:
    """Pair of unit quaternions acting on the 3-sphere by
    P -> left^t P conj(right)."""

    left: SU2Element
    right: SU2Element

    def apply(self, p: SU2Element) -> SU2Element:
        return self.left.transpose() * p * self.right.complex_conj()

    def __mul__(self, other: "IsometryS3") -> "IsometryS3":
        """Componentwise product; used for words in a representation."""
        return IsometryS3(self.left * other.left, self.right * other.right)

    def inverse(self) -> "IsometryS3":
        return IsometryS3(self.left.inverse(), self.right.inverse())

    @staticmethod
    def identity() -> "IsometryS3":
        return IsometryS3(SU2Element.identity(), SU2Element.identity())


def compose(g: IsometryS3, h: IsometryS3) -> IsometryS3:
    """Isometry acting as "g after h": apply(compose(g, h), p) equals
    apply(g, apply(h, p)).

    The two-sided action reverses word order, so this is h * g on the
    matrix pairs.
    """
    return h * g


def isometry_gap(a: IsometryS3, b: IsometryS3) -> float:
    """Worst factor gap between two isometries, modulo lift signs."""
    return max(
        max_entry_diff_mod_sign(a.left, b.left),
        max_entry_diff_mod_sign(a.right, b.right),
    )


# ---------------------------------------------------------------------------
# great circles
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class GreatCircle:
    """Unit-speed great circle  C(t) = start cos t + velocity sin t.

    start and velocity must be orthonormal; a drift below 1e-9 is
    silently re-orthogonalized, anything larger is rejected.
    """

    start: SU2Element
    velocity: SU2Element

    def __post_init__(self) -> None:
        d = dot(self.start, self.velocity)
        if abs(d) > 1e-9:
            raise ValueError(f"start and velocity are not orthogonal (dot = {d:.3e})")
        if d != 0.0:
            s, v = self.start, self.velocity
            object.__setattr__(
                self,
                "velocity",
                SU2Element(v.w - d * s.w, v.x - d * s.x, v.y - d * s.y, v.z - d * s.z),
            )

    def point(self, t: float) -> SU2Element:
        c, s = math.cos(t), math.sin(t)
        p, v = self.start, self.velocity
        return SU2Element(
            p.w * c + v.w * s, p.x * c + v.x * s, p.y * c + v.y * s, p.z * c + v.z * s
        )

    def tangent(self, t: float) -> SU2Element:
        c, s = math.cos(t), math.sin(t)
        p, v = self.start, self.velocity
        return SU2Element(
            -p.w * s + v.w * c, -p.x * s + v.x * c, -p.y * s + v.y * c, -p.z * s + v.z * c
        )

    def transformed(self, g: IsometryS3) -> "GreatCircle":
        """Image circle under an isometry (start and velocity pushed forward)."""
        im0 = g.apply(self.point(0.0))
        im1 = g.apply(self.point(0.5 * math.pi))
        return GreatCircle(im0, im1)


@dataclass(frozen=True, slots=True)
class Perpendicular:
    """Common perpendicular data between two great circles."""

    t1: float
    t2: float
    delta: float
    foot1: SU2Element
    foot2: SU2Element


def _overlap_matrix(c1: GreatCircle, c2: GreatCircle) -> np.ndarray:
    return np.array(
        [
            [dot(c1.start, c2.start), dot(c1.start, c2.velocity)],
            [dot(c1.velocity, c2.start), dot(c1.velocity, c2.velocity)],
        ]
    )


def common_perpendicular(c1: GreatCircle, c2: GreatCircle) -> Perpendicular:
    """Shortest connector between two great circles.

    The overlap of the two spanning 2-planes is a 2x2 matrix whose top
    singular value is the cosine of the minimal distance.  Equidistant
    pairs (both singular values equal) have no preferred foot, so the
    canonical choice t1 = 0 is made there.
    """
    g = _overlap_matrix(c1, c2)
    u, sv, vt = np.linalg.svd(g)
    if sv[1] > 1.0 - 1e-9:
        raise IdenticalCircles("the circles span the same 2-plane")

    if sv[0] - sv[1] < EQUIDISTANT_TOL:
        t1 = 0.0
        foot1 = c1.point(t1)
        a = dot(foot1, c2.start)
        b = dot(foot1, c2.velocity)
        t2 = math.atan2(b, a) % TWO_PI
        foot2 = c2.point(t2)
        delta = safe_arccos(math.hypot(a, b))
        return Perpendicular(t1, t2, delta, foot1, foot2)

    t1 = math.atan2(u[1, 0], u[0, 0]) % TWO_PI
    t2 = math.atan2(vt[0, 1], vt[0, 0]) % TWO_PI
    delta = safe_arccos(float(sv[0]))
    return Perpendicular(t1, t2, delta, c1.point(t1), c2.point(t2))


# ---------------------------------------------------------------------------
# screw parameters
# ---------------------------------------------------------------------------


def translation_length_and_jump(m: IsometryS3) -> tuple[float, float]:
    """Translation length and jump of an isometry from its factor traces.

    Both factors rotate by twice an angle in [0, pi] recovered from the
    trace.  The difference and sum are reduced to representatives that
    do not depend on conjugation or on the choice of matrix lifts:
    delta = |phi - gamma| and nu = min(phi + gamma, 2 pi - phi - gamma).
    """
    gamma = safe_arccos(0.5 * m.left.trace)
    phi = safe_arccos(0.5 * m.right.trace)
    delta = abs(phi - gamma)
    total = phi + gamma
    nu = min(total, TWO_PI - total)
    return delta, nu
