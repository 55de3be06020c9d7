"""Geometric invariants and experiment drivers.

Closed-form singular-stratum lengths and volumes for both families,
a volume integrator that follows the length-weighted angle differential
from the degenerate boundary, a one-parameter deformation sweep for the
four-fibre family, and an exhaustive residual scan giving numerical
rigidity evidence for the three-fibre family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import minimum_filter
from scipy.optimize import least_squares

from .errors import DomainError
from .holonomy import (
    build_h3,
    build_h4,
    central_translation_length,
    relation_residual,
)
from .hopf import BasePoint, fibre_distance
from .su2 import TWO_PI
from .trig import (
    DOMAIN_TOL,
    quadrangle_exists,
    residuals_h3,
    solve_quadrangle,
    symmetric_tau,
    tau_domain,
    triangle_violations,
)

# local minima of the residual field are polished and kept only below this
SCAN_ACCEPT_NORM = 1e-8

# refined solutions this close to the polar strata are abelian images
SCAN_BOUNDARY_MARGIN = 1e-3

SCAN_DEDUPE_RADIUS = 1e-6

SCAN_SEED_THRESHOLD = 0.25

# sweep rows this close to either end of the parameter interval sit next
# to the degeneration and are flagged
SWEEP_EDGE_TOL = 1e-3


def _require_triangle(alpha: float, beta: float, gamma: float) -> None:
    problems = triangle_violations(alpha, beta, gamma)
    if problems:
        raise DomainError("; ".join(problems))


def _require_quadrangle_angle(alpha: float) -> None:
    if not quadrangle_exists(alpha):
        raise DomainError(
            f"alpha must lie strictly between pi and 2*pi (got {alpha:.6g})"
        )


def h3_length(alpha: float, beta: float, gamma: float) -> float:
    """Common length of the three singular fibres."""
    _require_triangle(alpha, beta, gamma)
    return 0.5 * (alpha + beta + gamma) - math.pi


def h3_volume(alpha: float, beta: float, gamma: float) -> float:
    ell = h3_length(alpha, beta, gamma)
    return 0.5 * ell * ell


def h4_length(alpha: float) -> float:
    """Common length of the four singular fibres; independent of the
    deformation parameter."""
    _require_quadrangle_angle(alpha)
    return 2.0 * (alpha - math.pi)


def h4_volume(alpha: float) -> float:
    _require_quadrangle_angle(alpha)
    return 2.0 * (alpha - math.pi) ** 2


def _simpson01(f, intervals: int) -> float:
    """Composite Simpson rule for f on [0, 1]."""
    h = 1.0 / intervals
    acc = f(0.0) + f(1.0)
    for i in range(1, intervals):
        acc += (4.0 if i % 2 else 2.0) * f(i * h)
    return acc * h / 3.0


def schlafli_volume(kind: str, target_angles, steps: int = 10_000) -> float:
    """Volume from the length-weighted angle differential.

    Twice the volume differential equals the sum over singular
    components of component length times cone-angle differential, and
    the volume vanishes at the degenerate boundary.  The integration
    path is the straight segment in angle space from the boundary point
    on the ray through the target to the target itself; along it every
    component length is the same closed form, so the integrand is
    polynomial and the composite Simpson value is exact to roundoff.
    """
    if steps < 2:
        raise DomainError(f"steps must be at least 2 (got {steps})")
    intervals = steps + (steps % 2)
    kind = kind.upper()
    if kind == "H3":
        try:
            alpha, beta, gamma = (float(v) for v in target_angles)
        except (TypeError, ValueError):
            raise DomainError("a three-fibre target needs three angles") from None
        total = alpha + beta + gamma
        if abs(total - TWO_PI) <= DOMAIN_TOL:
            return 0.0
        _require_triangle(alpha, beta, gamma)
        t0 = TWO_PI / total

        def integrand(s: float) -> float:
            scale = t0 + s * (1.0 - t0)
            ell = 0.5 * scale * total - math.pi
            # all three component lengths equal ell, so the component sum
            # collapses against the sum of the angle derivatives
            return 0.5 * ell * (1.0 - t0) * total

    elif kind == "H4":
        if isinstance(target_angles, (int, float)):
            alpha = float(target_angles)
        else:
            values = [float(v) for v in target_angles]
            if len(values) != 1:
                raise DomainError("a four-fibre target needs a single angle")
            alpha = values[0]
        if abs(alpha - math.pi) <= DOMAIN_TOL:
            return 0.0
        _require_quadrangle_angle(alpha)
        span = alpha - math.pi

        def integrand(s: float) -> float:
            ell = 2.0 * s * span
            # four components, all of length ell
            return 0.5 * 4.0 * ell * span

    else:
        raise DomainError(f"unknown kind {kind!r} (expected 'H3' or 'H4')")

    return _simpson01(integrand, intervals)


@dataclass(frozen=True, slots=True)
class SweepRow:
    """One deformation sample: parameter, holonomy relation residual,
    the three pairwise axis distances, the central translation length,
    and a flag for rows sitting next to the degenerate boundary."""

    tau: float
    residual: float
    b1: float
    b2: float
    phi: float
    delta_h: float
    near_degenerate: bool


def flexibility_sweep(alpha: float, n_samples: int) -> list[SweepRow]:
    """Deformation table at fixed cone angle.

    The grid holds n_samples - 1 uniform interior points plus the
    symmetric parameter, sorted, so the symmetric structure is always
    one of the rows.
    """
    if n_samples < 3:
        raise DomainError(f"n_samples must be at least 3 (got {n_samples})")
    _require_quadrangle_angle(alpha)
    lo, hi = tau_domain(alpha)
    width = hi - lo
    taus = sorted(
        {lo + width * k / n_samples for k in range(1, n_samples)}
        | {symmetric_tau(alpha)}
    )
    rows = []
    for tau in taus:
        sol = solve_quadrangle(alpha, tau)
        rep = build_h4(alpha, tau)
        rows.append(
            SweepRow(
                tau=tau,
                residual=relation_residual(rep),
                b1=sol.b1,
                b2=sol.b2,
                phi=sol.phi,
                delta_h=central_translation_length(rep),
                near_degenerate=min(tau - lo, hi - tau) < SWEEP_EDGE_TOL,
            )
        )
    return rows


@dataclass(frozen=True, slots=True)
class ScanSolution:
    """One geometric zero of the residual system; branch_count is the
    number of longitude branches merged into this representative."""

    phi: float
    psi: float
    theta: float
    residual_norm: float
    branch_count: int


def _circular_gap(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def rigidity_scan(
    alpha: float, beta: float, gamma: float, resolution: int = 200
) -> list[ScanSolution]:
    """Exhaustive zero search for the axis-parameter residual system.

    Seeds every strict local minimum of the squared residual norm on a
    coarse grid over (phi, psi, theta) in (0,pi) x (0,2pi] x (0,pi],
    polishes each seed with damped least squares, drops points on the
    degenerate polar strata (axes over the poles give abelian images,
    which carry no structure), merges duplicates, and finally merges
    the two longitude branches psi and psi +/- pi of each solution.
    """
    _require_triangle(alpha, beta, gamma)
    if resolution < 8:
        raise DomainError(f"resolution must be at least 8 (got {resolution})")
    n = int(resolution)

    phis = np.linspace(0.0, math.pi, n + 2)[1:-1]
    psis = np.linspace(0.0, TWO_PI, n, endpoint=False) + TWO_PI / n
    thetas = np.linspace(0.0, math.pi, n + 1)[1:]

    # squared-norm field, built one phi-slab at a time to cap memory
    field = np.empty((phis.size, psis.size, thetas.size))
    psi_grid, theta_grid = np.meshgrid(psis, thetas, indexing="ij")
    for i, phi in enumerate(phis):
        r = residuals_h3(alpha, beta, gamma, phi, psi_grid, theta_grid)
        field[i] = np.square(r).sum(axis=0)

    is_min = field == minimum_filter(field, size=3, mode="nearest")
    candidates = np.argwhere(is_min & (field < SCAN_SEED_THRESHOLD))

    # the four (phi, theta) corner lines are exact zeros for every psi;
    # skip seeds inside their grid-cell halo, refinement cannot leave them
    phi_step = math.pi / (n + 1)
    theta_step = math.pi / n
    halo = 3.0

    def residual_vector(x: np.ndarray) -> np.ndarray:
        return residuals_h3(alpha, beta, gamma, x[0], x[1], x[2])

    polished: list[tuple[float, float, float, float]] = []
    for i, j, k in candidates:
        phi0, psi0, theta0 = phis[i], psis[j], thetas[k]
        near_phi_edge = min(phi0, math.pi - phi0) < halo * phi_step
        near_theta_edge = min(theta0, math.pi - theta0) < halo * theta_step
        if near_phi_edge and near_theta_edge:
            continue
        fit = least_squares(
            residual_vector,
            np.array([phi0, psi0, theta0]),
            method="lm",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=400,
        )
        norm = float(np.linalg.norm(residual_vector(fit.x)))
        if norm > SCAN_ACCEPT_NORM:
            continue
        phi, psi, theta = float(fit.x[0]), float(fit.x[1]) % TWO_PI, float(fit.x[2])
        if psi == 0.0:
            psi = TWO_PI
        if not (0.0 < phi < math.pi and 0.0 < theta <= math.pi):
            continue
        if min(math.sin(phi), math.sin(theta)) < SCAN_BOUNDARY_MARGIN:
            continue
        polished.append((phi, psi, theta, norm))

    unique: list[tuple[float, float, float, float]] = []
    for phi, psi, theta, norm in polished:
        for idx, (uphi, upsi, utheta, unorm) in enumerate(unique):
            if (
                abs(phi - uphi) < SCAN_DEDUPE_RADIUS
                and abs(theta - utheta) < SCAN_DEDUPE_RADIUS
                and _circular_gap(psi, upsi) < SCAN_DEDUPE_RADIUS
            ):
                if norm < unorm:
                    unique[idx] = (phi, psi, theta, norm)
                break
        else:
            unique.append((phi, psi, theta, norm))

    target_psi = (0.5 * alpha) % TWO_PI
    merged: list[ScanSolution] = []
    taken = [False] * len(unique)
    for a_idx, (phi, psi, theta, norm) in enumerate(unique):
        if taken[a_idx]:
            continue
        group = [(phi, psi, theta, norm)]
        taken[a_idx] = True
        for b_idx in range(a_idx + 1, len(unique)):
            if taken[b_idx]:
                continue
            ophi, opsi, otheta, onorm = unique[b_idx]
            same_axis_shape = (
                abs(phi - ophi) < SCAN_DEDUPE_RADIUS
                and abs(theta - otheta) < SCAN_DEDUPE_RADIUS
            )
            if same_axis_shape and _circular_gap(psi, opsi - math.pi) < SCAN_DEDUPE_RADIUS:
                group.append((ophi, opsi, otheta, onorm))
                taken[b_idx] = True
        best = min(group, key=lambda g: _circular_gap(g[1], target_psi))
        merged.append(
            ScanSolution(
                phi=best[0],
                psi=best[1],
                theta=best[2],
                residual_norm=best[3],
                branch_count=len(group),
            )
        )

    merged.sort(key=lambda s: (s.phi, s.psi, s.theta))
    return merged


@dataclass(frozen=True, slots=True)
class GeometryReport:
    """Summary of one structure: cone angles, per-component singular
    lengths, volume, worst holonomy relation residual, and the pairwise
    axis-distance table."""

    kind: str
    cone_angles: tuple[float, ...]
    lengths: tuple[float, ...]
    volume: float
    holonomy_residual: float
    perpendiculars: dict[str, float]
    tau: float | None = None


def _check_length_consistency(closed_form: float, from_holonomy: float) -> None:
    if abs(closed_form - from_holonomy) > 1e-10:
        raise ArithmeticError(
            "holonomy translation length disagrees with the closed form: "
            f"{from_holonomy!r} vs {closed_form!r}"
        )


def h3_report(alpha: float, beta: float, gamma: float) -> GeometryReport:
    rep = build_h3(alpha, beta, gamma)
    sol = rep.cone_data
    ell = h3_length(alpha, beta, gamma)
    _check_length_consistency(ell, central_translation_length(rep))
    pole = BasePoint.from_polar(0.0, 0.0)
    second = BasePoint.from_polar(0.0, sol.phi)
    third = BasePoint.from_polar(sol.psi, sol.theta)
    perpendiculars = {
        "ab": fibre_distance(pole, second),
        "ac": fibre_distance(pole, third),
        "bc": fibre_distance(second, third),
    }
    return GeometryReport(
        kind="H3",
        cone_angles=(alpha, beta, gamma),
        lengths=(ell, ell, ell),
        volume=h3_volume(alpha, beta, gamma),
        holonomy_residual=relation_residual(rep),
        perpendiculars=perpendiculars,
    )


def h4_report(alpha: float, tau: float | None = None) -> GeometryReport:
    rep = build_h4(alpha, tau)
    sol = rep.cone_data
    ell = h4_length(alpha)
    _check_length_consistency(ell, central_translation_length(rep))
    perpendiculars = {
        "ab": sol.b1,
        "bc": sol.b2,
        "cd": sol.b1,
        "da": sol.b2,
        "ac": sol.phi,
        "bd": sol.phi,
    }
    return GeometryReport(
        kind="H4",
        cone_angles=(alpha, alpha, alpha, alpha),
        lengths=(ell, ell, ell, ell),
        volume=h4_volume(alpha),
        holonomy_residual=relation_residual(rep),
        perpendiculars=perpendiculars,
        tau=sol.tau,
    )
