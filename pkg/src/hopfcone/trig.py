"""Spherical triangles and right-angled quadrangles on the base sphere.

These solve the base geometry underlying the two families of fibred
cone structures: a triangle with angles (alpha/2, beta/2, gamma/2) for
the rigid three-component family, and a quadrangle with three right
angles and one angle alpha/2 for the flexible four-component family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, DomainError

# Open domain boundaries: a margin this small counts as outside.
DOMAIN_TOL = 1e-9

# Radicands may dip below zero by at most this much before erroring.
RADICAND_TOL = 1e-12


def _guarded_arccos(value: float, what: str) -> float:
    if value > 1.0 + DOMAIN_TOL or value < -1.0 - DOMAIN_TOL:
        raise BranchError(f"{what} = {value!r} is outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, value)))


def _guarded_arcsin(value: float, what: str) -> float:
    if value > 1.0 + DOMAIN_TOL or value < -1.0 - DOMAIN_TOL:
        raise BranchError(f"{what} = {value!r} is outside [-1, 1]")
    return math.asin(min(1.0, max(-1.0, value)))


# ---------------------------------------------------------------------------
# triangle (rigid family)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TriangleSolution:
    """Base triangle data for cone angles (alpha, beta, gamma).

    phi is the side from the north-pole vertex to the second vertex,
    theta the side to the third vertex, and psi the longitude of the
    third vertex; the branch psi = alpha / 2 is fixed throughout.
    """

    alpha: float
    beta: float
    gamma: float
    phi: float
    theta: float
    psi: float


def triangle_violations(alpha: float, beta: float, gamma: float) -> list[str]:
    """Admissibility failures, each as a human-readable inequality."""
    bad: list[str] = []
    for name, value in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not (DOMAIN_TOL < value < 2.0 * math.pi - DOMAIN_TOL):
            bad.append(f"{name} must lie strictly between 0 and 2*pi (got {value:.6g})")
    if bad:
        return bad
    if alpha + beta <= 2.0 * math.pi - gamma + DOMAIN_TOL:
        bad.append("alpha + beta must exceed 2*pi - gamma")
    if alpha + beta >= 2.0 * math.pi + gamma - DOMAIN_TOL:
        bad.append("alpha + beta must stay below 2*pi + gamma")
    if alpha - beta <= -2.0 * math.pi + gamma + DOMAIN_TOL:
        bad.append("alpha - beta must exceed gamma - 2*pi")
    if alpha - beta >= 2.0 * math.pi - gamma - DOMAIN_TOL:
        bad.append("alpha - beta must stay below 2*pi - gamma")
    return bad


def triangle_exists(alpha: float, beta: float, gamma: float) -> bool:
    return not triangle_violations(alpha, beta, gamma)


def solve_triangle(alpha: float, beta: float, gamma: float) -> TriangleSolution:
    """Solve the base triangle with angles (alpha/2, beta/2, gamma/2).

    Side lengths come from the dual spherical cosine rule; the vertex
    longitude takes the branch psi = alpha / 2.
    """
    bad = triangle_violations(alpha, beta, gamma)
    if bad:
        raise DomainError("; ".join(bad))
    ha, hb, hc = 0.5 * alpha, 0.5 * beta, 0.5 * gamma
    cos_phi = (math.cos(hc) + math.cos(ha) * math.cos(hb)) / (math.sin(ha) * math.sin(hb))
    cos_theta = (math.cos(hb) + math.cos(ha) * math.cos(hc)) / (math.sin(ha) * math.sin(hc))
    phi = _guarded_arccos(cos_phi, "cos(phi)")
    theta = _guarded_arccos(cos_theta, "cos(theta)")
    return TriangleSolution(alpha, beta, gamma, phi, theta, ha)


def residuals_h3(alpha, beta, gamma, phi, psi, theta):
    """The five obstruction polynomials whose common zero locus carries
    the triangle solutions.  Accepts scalars or numpy arrays and
    broadcasts; returns a five-element array along the first axis."""
    sa, ca = np.sin(alpha / 2.0), np.cos(alpha / 2.0)
    sb, cb = np.sin(beta / 2.0), np.cos(beta / 2.0)
    sg, cg = np.sin(gamma / 2.0), np.cos(gamma / 2.0)
    sphi, cphi = np.sin(phi), np.cos(phi)
    sth, cth = np.sin(theta), np.cos(theta)
    soff = np.sin(alpha / 2.0 - psi)
    coff = np.cos(alpha / 2.0 - psi)
    spsi, cpsi = np.sin(psi), np.cos(psi)

    r1 = 2.0 * sb * sg * sth * cphi * soff
    r2 = 2.0 * sb * (cg * sa * sphi + sg * (-cphi * coff * sth + ca * cth * sphi))
    r3 = -2.0 * sb * sg * sth * sphi * soff
    r4 = 2.0 * sg * (cth * sa * sb * sphi - (cb * sa + ca * sb * cphi) * sth * spsi)
    r5 = 2.0 * sg * (cb * cpsi * sa * sth + ca * sb * (cphi * cpsi * sth - cth * sphi))
    return np.array([r1, r2, r3, r4, r5])


# ---------------------------------------------------------------------------
# quadrangle (flexible family)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class QuadrangleSolution:
    """Quadrangle with three right angles and one angle alpha/2.

    tau and ell2 are the two sides at the right-angle corner opposite
    the alpha/2 vertex, phi the diagonal from that corner, psi the
    angle the diagonal makes there, and b1, b2 the sides at the
    alpha/2 vertex.
    """

    alpha: float
    tau: float
    ell2: float
    phi: float
    psi: float
    b1: float
    b2: float


def quadrangle_exists(alpha: float) -> bool:
    return math.pi + DOMAIN_TOL < alpha < 2.0 * math.pi - DOMAIN_TOL


def tau_domain(alpha: float) -> tuple[float, float]:
    """Open interval of admissible tau for a given alpha."""
    return 0.5 * (alpha - math.pi), 0.5 * math.pi


def solve_quadrangle(alpha: float, tau: float) -> QuadrangleSolution:
    """Solve the quadrangle for cone angle alpha and free side tau."""
    if not quadrangle_exists(alpha):
        raise DomainError(f"alpha must lie strictly between pi and 2*pi (got {alpha:.6g})")
    lo, hi = tau_domain(alpha)
    if not (lo + DOMAIN_TOL < tau < hi - DOMAIN_TOL):
        raise DomainError(
            f"tau must lie strictly between (alpha - pi)/2 and pi/2 (got {tau:.6g})"
        )
    ha = 0.5 * alpha
    sin_ell2 = -math.cos(ha) / math.sin(tau)
    ell2 = _guarded_arcsin(sin_ell2, "sin(ell2)")

    cot_half = 1.0 / math.tan(ha)
    cot_tau = 1.0 / math.tan(tau)
    radicand = 1.0 - cot_half * cot_half * cot_tau * cot_tau
    if radicand < 0.0:
        if radicand < -RADICAND_TOL:
            raise BranchError(f"diagonal radicand {radicand!r} is negative")
        radicand = 0.0
    root = math.sqrt(radicand)

    cos_phi = math.cos(tau) * root
    phi = _guarded_arccos(cos_phi, "cos(phi)")
    # cos(psi) = tan(tau) cot(phi); the cos(tau) factors cancel exactly,
    # which keeps the expression finite as tau approaches pi/2
    sin_phi = math.sqrt(max(0.0, 1.0 - cos_phi * cos_phi))
    psi = _guarded_arccos(math.sin(tau) * root / sin_phi, "cos(psi)")
    b1 = _guarded_arccos(cos_phi / math.cos(ell2), "cos(b1)")
    b2 = _guarded_arccos(root, "cos(b2)")
    return QuadrangleSolution(alpha, tau, ell2, phi, psi, b1, b2)


def symmetric_tau(alpha: float) -> float:
    """The tau at which the quadrangle becomes symmetric (tau = ell2)."""
    if not quadrangle_exists(alpha):
        raise DomainError(f"alpha must lie strictly between pi and 2*pi (got {alpha:.6g})")
    return _guarded_arccos(math.sqrt(2.0) * math.cos(0.25 * alpha), "cos(tau*)")
