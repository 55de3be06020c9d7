"""Holonomy representations for the two families of fibred cone
structures.

Each generator is a rotation about a fibre of the Hopf fibration; the
axes sit over the vertices of the base triangle (three-component
family, kind "H3") or base quadrangle (four-component family, kind
"H4").  The defining words of the fundamental group all map to the
same central element, and the failure of that identity is measured by
``relation_residual``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .hopf import BasePoint, rotation_about_fibre
from .su2 import TWO_PI, IsometryS3, SU2Element, isometry_gap, max_entry_diff
from .trig import (
    QuadrangleSolution,
    TriangleSolution,
    solve_quadrangle,
    solve_triangle,
    symmetric_tau,
)

# A central factor must be this close to the fibre-rotation circle
# before its translation length is read off.
CENTRAL_AXIS_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class HolonomyRep:
    """Holonomy data: generators, their fibre axes in polar
    coordinates, the common central image of the defining words, and
    the base solution the construction came from."""

    kind: str
    generators: tuple[IsometryS3, ...]
    axes: tuple[tuple[float, float], ...]
    angles: tuple[float, ...]
    central: IsometryS3
    cone_data: TriangleSolution | QuadrangleSolution


def build_h3(alpha: float, beta: float, gamma: float) -> HolonomyRep:
    """Representation with three generators rotating about the fibres
    over the vertices of the base triangle."""
    sol = solve_triangle(alpha, beta, gamma)
    axes = ((0.0, 0.0), (0.0, sol.phi), (sol.psi, sol.theta))
    angles = (alpha, beta, gamma)
    a, b, c = (rotation_about_fibre(p, t, ang) for (p, t), ang in zip(axes, angles))
    central = a * c * b
    return HolonomyRep("H3", (a, b, c), axes, angles, central, sol)


def build_h4(alpha: float, tau: float | None = None) -> HolonomyRep:
    """Representation with four generators rotating through alpha about
    the fibres over the quadrangle vertices; tau defaults to the
    symmetric parameter."""
    if tau is None:
        tau = symmetric_tau(alpha)
    sol = solve_quadrangle(alpha, tau)
    psi, phi = sol.psi, sol.phi
    axes = (
        (psi, phi),
        (math.pi - psi, phi),
        (math.pi + psi, phi),
        (TWO_PI - psi, phi),
    )
    angles = (alpha, alpha, alpha, alpha)
    a, b, c, d = (rotation_about_fibre(p, t, alpha) for p, t in axes)
    central = a * d * c * b
    return HolonomyRep("H4", (a, b, c, d), axes, angles, central, sol)


def _cyclic_words(rep: HolonomyRep) -> list[IsometryS3]:
    if rep.kind == "H3":
        a, b, c = rep.generators
        return [a * c * b, b * a * c, c * b * a]
    if rep.kind == "H4":
        a, b, c, d = rep.generators
        return [a * d * c * b, b * a * d * c, c * b * a * d, d * c * b * a]
    raise DomainError(f"unknown representation kind {rep.kind!r}")


def relation_residual(rep: HolonomyRep) -> float:
    """Worst entrywise gap between the images of the defining words,
    minimized over matrix lift signs."""
    words = _cyclic_words(rep)
    worst = 0.0
    for i in range(1, len(words)):
        worst = max(worst, isometry_gap(words[0], words[i]))
    return worst


def central_translation_length(rep: HolonomyRep) -> float:
    """Translation length of the central element along its invariant
    fibre, in [0, 2 pi).

    The central element of either construction has left factor equal to
    plus or minus the identity and right factor on the fibre-rotation
    circle, so both factor angles are read off completely (not just up
    to the fold an arccos of a trace would give).  The sign convention
    makes the length vanish at the degenerate structure.
    """
    left, right = rep.central.left, rep.central.right
    if max(abs(left.x), abs(left.y), abs(left.z)) > CENTRAL_AXIS_TOL:
        raise DomainError("central left factor is not plus or minus the identity")
    if max(abs(right.x), abs(right.y)) > CENTRAL_AXIS_TOL:
        raise DomainError("central right factor is off the fibre-rotation circle")
    half_left = 0.0 if left.w > 0.0 else math.pi
    half_right = math.atan2(right.z, right.w)
    return (half_right - half_left) % TWO_PI


@dataclass(frozen=True, slots=True)
class TriangleSplit:
    """Split of the quadrangle relation into two triangle relations
    along the diagonal between the second and fourth vertices."""

    beta1: float
    beta2: float
    delta1: float
    delta2: float
    residual_bcd: float
    residual_abd: float


def _vertex_angle(opposite: float, side1: float, side2: float) -> float:
    """Spherical cosine rule for the angle between side1 and side2."""
    num = math.cos(opposite) - math.cos(side1) * math.cos(side2)
    den = math.sin(side1) * math.sin(side2)
    return math.acos(min(1.0, max(-1.0, num / den)))


def _separation(p: BasePoint, q: BasePoint) -> float:
    return math.acos(min(1.0, max(-1.0, p.a * q.a + p.b * q.b + p.c * q.c)))


def triangle_split_check(alpha: float, tau: float) -> TriangleSplit:
    """Check the two triangle relations obtained by cutting the base
    quadrangle along a diagonal.

    The rotation at each diagonal endpoint splits into two rotations
    about the same axis whose half-angles are the two parts of the
    quadrangle angle; each sub-triangle then yields a product of three
    rotations equal to minus the identity on the left factors.
    """
    sol = solve_quadrangle(alpha, tau)
    psi, phi = sol.psi, sol.phi
    va = BasePoint.from_polar(psi, phi)
    vb = BasePoint.from_polar(math.pi - psi, phi)
    vc = BasePoint.from_polar(math.pi + psi, phi)
    vd = BasePoint.from_polar(TWO_PI - psi, phi)

    d_bc = _separation(vb, vc)
    d_cd = _separation(vc, vd)
    d_bd = _separation(vb, vd)
    beta1 = _vertex_angle(d_cd, d_bc, d_bd)
    delta2 = _vertex_angle(d_bc, d_cd, d_bd)
    beta2 = 0.5 * alpha - beta1
    delta1 = 0.5 * alpha - delta2

    a_l = rotation_about_fibre(psi, phi, alpha).left
    c_l = rotation_about_fibre(math.pi + psi, phi, alpha).left
    b_prime = rotation_about_fibre(math.pi - psi, phi, 2.0 * beta1).left
    b_second = rotation_about_fibre(math.pi - psi, phi, 2.0 * beta2).left
    d_prime = rotation_about_fibre(TWO_PI - psi, phi, 2.0 * delta1).left
    d_second = rotation_about_fibre(TWO_PI - psi, phi, 2.0 * delta2).left

    minus_id = -SU2Element.identity()
    residual_bcd = max_entry_diff(d_second * c_l * b_prime, minus_id)
    residual_abd = max_entry_diff(a_l * d_prime * b_second, minus_id)
    return TriangleSplit(beta1, beta2, delta1, delta2, residual_bcd, residual_abd)
