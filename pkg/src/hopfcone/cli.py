"""Command-line front end.

Subcommands: triangle, h3, h4, sweep, verify, fibres.  Reports are
written as JSON (default) or CSV; report-producing commands can also
render a figure next to the delimited output via --plot.

Exit codes: 0 success, 1 usage problem, 2 domain problem,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from dataclasses import dataclass, field

from .errors import BranchError, DomainError, IdenticalCircles, UsageError
from .holonomy import (
    HolonomyRep,
    build_h3,
    build_h4,
    central_translation_length,
    relation_residual,
)
from .hopf import BasePoint, fibre_over, hopf_map, rotation_about_fibre
from .invariants import (
    GeometryReport,
    flexibility_sweep,
    h3_report,
    h3_length,
    h4_length,
    h4_report,
    schlafli_volume,
    h3_volume,
    h4_volume,
)
from .su2 import (
    IsometryS3,
    SU2Element,
    TWO_PI,
    common_perpendicular,
    compose,
    distance,
    max_entry_diff,
)
from .trig import (
    residuals_h3,
    solve_triangle,
    symmetric_tau,
    tau_domain,
    triangle_exists,
)

SCHEMA = "hopf-cone/1"

DEG = math.pi / 180.0


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


class _Parser(argparse.ArgumentParser):
    """argparse maps every parse problem to exit code 2; route them
    through UsageError so main can return 1 instead."""

    def error(self, message: str):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters for one invocation."""

    command: str
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    tau: float | None = None
    samples: int = 0
    steps: int = 10_000
    tol: float = 1e-10
    fmt: str = "json"
    out: str | None = None
    seed: int = 0
    plot: str | None = None
    stereographic: bool = False
    inject_perturbation: bool = False
    bases: tuple[tuple[float, float, float], ...] = field(default=())


def _parse_base(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"base point must be three comma-separated numbers (got {text!r})")
    try:
        a, b, c = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"base point must be numeric (got {text!r})") from None
    if a * a + b * b + c * c == 0.0:
        raise UsageError("base point must be nonzero")
    return a, b, c


def _config_from(ns: argparse.Namespace) -> RunConfig:
    scale = DEG if getattr(ns, "degrees", False) else 1.0

    def angle(name: str) -> float | None:
        value = getattr(ns, name, None)
        return None if value is None else value * scale

    samples = getattr(ns, "samples", 0)
    if ns.command == "sweep" and samples < 3:
        raise UsageError(f"--samples must be at least 3 for sweep (got {samples})")
    if ns.command in ("verify", "fibres") and samples < 1:
        raise UsageError(f"--samples must be positive (got {samples})")
    steps = getattr(ns, "steps", 10_000)
    if steps < 2:
        raise UsageError(f"--steps must be at least 2 (got {steps})")

    return RunConfig(
        command=ns.command,
        alpha=angle("alpha"),
        beta=angle("beta"),
        gamma=angle("gamma"),
        tau=angle("tau"),
        samples=samples,
        steps=steps,
        tol=getattr(ns, "tol", 1e-10),
        fmt=getattr(ns, "format", "json"),
        out=getattr(ns, "out", None),
        seed=getattr(ns, "seed", 0),
        plot=getattr(ns, "plot", None),
        stereographic=getattr(ns, "stereographic", False),
        inject_perturbation=getattr(ns, "inject_perturbation", False),
        bases=tuple(_parse_base(b) for b in getattr(ns, "bases", [])),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopfcone", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p: argparse.ArgumentParser, plot: bool = True) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", metavar="PATH", default=None)
        if plot:
            p.add_argument("--plot", metavar="PATH", default=None,
                           help="render a figure of this report to PATH")

    def add_angle(p: argparse.ArgumentParser, *names: str) -> None:
        for name in names:
            p.add_argument(f"--{name}", type=float, required=True)
        p.add_argument("--degrees", action="store_true",
                       help="interpret the angle flags as degrees")

    p = sub.add_parser("triangle", help="solve the base triangle for three cone angles")
    add_angle(p, "alpha", "beta", "gamma")
    add_output_flags(p, plot=False)

    p = sub.add_parser("h3", help="report on the three-fibre structure")
    add_angle(p, "alpha", "beta", "gamma")
    p.add_argument("--steps", type=int, default=10_000,
                   help="subintervals for the volume integral cross-check")
    add_output_flags(p)

    p = sub.add_parser("h4", help="report on the four-fibre structure")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--tau", type=float, default=None,
                   help="deformation parameter; defaults to the symmetric value")
    p.add_argument("--degrees", action="store_true",
                   help="interpret the angle flags as degrees")
    p.add_argument("--steps", type=int, default=10_000,
                   help="subintervals for the volume integral cross-check")
    add_output_flags(p)

    p = sub.add_parser("sweep", help="deformation sweep at fixed cone angle")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--samples", type=int, default=9,
                   help="number of rows (uniform grid plus the symmetric point)")
    add_output_flags(p)

    p = sub.add_parser("verify", help="run the seeded self-check suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100,
                   help="random cases per suite")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--inject-perturbation", action="store_true",
                   help="deliberately spoil one holonomy case to prove failures are caught")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", metavar="PATH", default=None)

    p = sub.add_parser("fibres", help="sample fibres over base points for external plotting")
    p.add_argument("bases", nargs="+", metavar="A,B,C",
                   help="base points as comma-separated coordinate triples")
    p.add_argument("--samples", type=int, default=128,
                   help="samples per fibre")
    p.add_argument("--stereographic", action="store_true",
                   help="append stereographic projection columns")
    add_output_flags(p)

    return parser


def _serialize_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _serialize_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _fmt(value + 0.0)
    return str(value)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _render_plot(cfg: RunConfig, kind: str, data) -> None:
    if not cfg.plot:
        return
    from . import plots

    if kind == "fibres":
        fig = plots.fibre_link_figure(data)
    else:
        fig = plots.sweep_figure(data)
    plots.save_figure(fig, cfg.plot)


def cmd_triangle(cfg: RunConfig) -> int:
    sol = solve_triangle(cfg.alpha, cfg.beta, cfg.gamma)
    res = residuals_h3(cfg.alpha, cfg.beta, cfg.gamma, sol.phi, sol.psi, sol.theta)
    # + 0.0 folds negative zeros so serialized output has one zero form
    residuals = [float(r) + 0.0 for r in res]
    if cfg.fmt == "json":
        payload = {
            "schema": SCHEMA,
            "command": "triangle",
            "alpha": sol.alpha,
            "beta": sol.beta,
            "gamma": sol.gamma,
            "phi": sol.phi,
            "theta": sol.theta,
            "psi": sol.psi,
            "residuals": residuals,
        }
        _emit(cfg, _serialize_json(payload))
    else:
        header = ["alpha", "beta", "gamma", "phi", "theta", "psi",
                  "r1", "r2", "r3", "r4", "r5"]
        row = [sol.alpha, sol.beta, sol.gamma, sol.phi, sol.theta, sol.psi, *residuals]
        _emit(cfg, _serialize_csv(header, [[_csv_cell(v) for v in row]]))
    return 0


def _report_payload(cfg: RunConfig, report: GeometryReport, rep: HolonomyRep) -> dict:
    if report.kind == "H3":
        integral = schlafli_volume("H3", report.cone_angles, cfg.steps)
    else:
        integral = schlafli_volume("H4", report.cone_angles[0], cfg.steps)
    payload = {
        "schema": SCHEMA,
        "command": cfg.command,
        "kind": report.kind,
        "cone_angles": list(report.cone_angles),
    }
    if report.tau is not None:
        payload["tau"] = report.tau
    payload.update(
        {
            "lengths": list(report.lengths),
            "volume": report.volume,
            "volume_integral": integral,
            "holonomy_residual": report.holonomy_residual,
            "central_length": central_translation_length(rep),
            "trace_left": rep.central.left.trace,
            "trace_right": rep.central.right.trace,
            "perpendiculars": dict(report.perpendiculars),
        }
    )
    return payload


def _report_csv(payload: dict) -> str:
    header, row = [], []
    for key, value in payload.items():
        if key in ("schema", "command"):
            continue
        if key == "cone_angles":
            if payload["kind"] == "H4":
                # all four angles are equal, one column carries them
                header.append("alpha")
                row.append(value[0])
            else:
                header.extend(("alpha", "beta", "gamma"))
                row.extend(value)
        elif key == "lengths":
            header.append("length")
            row.append(value[0])
        elif key == "perpendiculars":
            for pkey, pval in value.items():
                header.append(f"perp_{pkey}")
                row.append(pval)
        else:
            header.append(key)
            row.append(value)
    return _serialize_csv(header, [[_csv_cell(v) for v in row]])


def cmd_h3(cfg: RunConfig) -> int:
    report = h3_report(cfg.alpha, cfg.beta, cfg.gamma)
    rep = build_h3(cfg.alpha, cfg.beta, cfg.gamma)
    payload = _report_payload(cfg, report, rep)
    if cfg.fmt == "json":
        _emit(cfg, _serialize_json(payload))
    else:
        _emit(cfg, _report_csv(payload))
    _render_plot(cfg, "fibres", [BasePoint.from_polar(p, t) for p, t in rep.axes])
    return 0


def cmd_h4(cfg: RunConfig) -> int:
    report = h4_report(cfg.alpha, cfg.tau)
    rep = build_h4(cfg.alpha, cfg.tau)
    payload = _report_payload(cfg, report, rep)
    if cfg.fmt == "json":
        _emit(cfg, _serialize_json(payload))
    else:
        _emit(cfg, _report_csv(payload))
    _render_plot(cfg, "fibres", [BasePoint.from_polar(p, t) for p, t in rep.axes])
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    rows = flexibility_sweep(cfg.alpha, cfg.samples)
    if cfg.fmt == "json":
        payload = {
            "schema": SCHEMA,
            "command": "sweep",
            "alpha": cfg.alpha,
            "samples": cfg.samples,
            "rows": [
                {
                    "tau": r.tau,
                    "residual": r.residual,
                    "b1": r.b1,
                    "b2": r.b2,
                    "phi": r.phi,
                    "delta_h": r.delta_h,
                    "near_degenerate": r.near_degenerate,
                }
                for r in rows
            ],
        }
        _emit(cfg, _serialize_json(payload))
    else:
        header = ["tau", "residual", "b1", "b2", "phi", "delta_h", "near_degenerate"]
        table = [
            [_csv_cell(v) for v in
             (r.tau, r.residual, r.b1, r.b2, r.phi, r.delta_h, r.near_degenerate)]
            for r in rows
        ]
        _emit(cfg, _serialize_csv(header, table))
    _render_plot(cfg, "sweep", rows)
    return 0


def cmd_fibres(cfg: RunConfig) -> int:
    bases = [BasePoint(*b) for b in cfg.bases]
    ts = [k * TWO_PI / cfg.samples for k in range(cfg.samples)]
    points = []
    for index, base in enumerate(bases):
        circle = fibre_over(base)
        for t in ts:
            p = circle.point(t)
            entry = {"fibre": index, "t": t, "w": p.w + 0.0, "x": p.x + 0.0,
                     "y": p.y + 0.0, "z": p.z + 0.0}
            if cfg.stereographic:
                denom = 1.0 + p.w
                if denom < 1e-12:
                    entry["px"] = entry["py"] = entry["pz"] = None
                else:
                    entry["px"] = p.x / denom + 0.0
                    entry["py"] = p.y / denom + 0.0
                    entry["pz"] = p.z / denom + 0.0
            points.append(entry)
    if cfg.fmt == "json":
        payload = {
            "schema": SCHEMA,
            "command": "fibres",
            "samples": cfg.samples,
            "stereographic": cfg.stereographic,
            "bases": [[b.a, b.b, b.c] for b in bases],
            "points": points,
        }
        _emit(cfg, _serialize_json(payload))
    else:
        header = ["fibre", "t", "w", "x", "y", "z"]
        if cfg.stereographic:
            header += ["px", "py", "pz"]
        table = [[_csv_cell(entry.get(k)) for k in header] for entry in points]
        _emit(cfg, _serialize_csv(header, table))
    _render_plot(cfg, "fibres", bases)
    return 0


def _unit4(rng: random.Random) -> SU2Element:
    while True:
        w, x, y, z = (rng.gauss(0.0, 1.0) for _ in range(4))
        if w * w + x * x + y * y + z * z > 1e-12:
            return SU2Element(w, x, y, z)


def _unit3(rng: random.Random) -> BasePoint:
    while True:
        a, b, c = (rng.gauss(0.0, 1.0) for _ in range(3))
        if a * a + b * b + c * c > 1e-12:
            return BasePoint(a, b, c)


def _random_triangle(rng: random.Random) -> tuple[float, float, float]:
    while True:
        a, b, g = (rng.uniform(0.05, TWO_PI - 0.05) for _ in range(3))
        if triangle_exists(a, b, g):
            return a, b, g


def _random_quadrangle(rng: random.Random) -> tuple[float, float]:
    alpha = rng.uniform(math.pi + 0.05, TWO_PI - 0.05)
    lo, hi = tau_domain(alpha)
    margin = 0.02 * (hi - lo)
    return alpha, rng.uniform(lo + margin, hi - margin)


def _suite_isometry(rng: random.Random, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        p, q = _unit4(rng), _unit4(rng)
        g = IsometryS3(_unit4(rng), _unit4(rng))
        h = IsometryS3(_unit4(rng), _unit4(rng))
        worst = max(worst, abs(distance(g.apply(p), g.apply(q)) - distance(p, q)))
        gh_p = compose(g, h).apply(p)
        worst = max(worst, max_entry_diff(gh_p, g.apply(h.apply(p))))
    return worst


def _suite_hopf(rng: random.Random, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        base = _unit3(rng)
        t = rng.uniform(0.0, TWO_PI)
        image = hopf_map(fibre_over(base).point(t))
        worst = max(worst, max(abs(image.a - base.a), abs(image.b - base.b),
                               abs(image.c - base.c)))
        psi, theta = base.polar
        omega = rng.uniform(0.1, TWO_PI - 0.1)
        motion = rotation_about_fibre(psi, theta, omega)
        circle = fibre_over(base)
        s = rng.uniform(0.0, TWO_PI)
        p = circle.point(s)
        worst = max(worst, max_entry_diff(motion.apply(p), p))
    return worst


def _suite_equidistance(rng: random.Random, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        b1, b2 = _unit3(rng), _unit3(rng)
        separation = b1.a * b2.a + b1.b * b2.b + b1.c * b2.c
        if abs(separation) > 0.999:
            continue
        perp = common_perpendicular(fibre_over(b1), fibre_over(b2))
        worst = max(worst, abs(perp.delta - 0.5 * math.acos(separation)))
    return worst


def _perturbed_h3(alpha: float, beta: float, gamma: float) -> HolonomyRep:
    sol = solve_triangle(alpha, beta, gamma)
    axes = ((0.0, 0.0), (0.0, sol.phi + 1e-3), (sol.psi, sol.theta))
    angles = (alpha, beta, gamma)
    a, b, c = (rotation_about_fibre(p, t, ang) for (p, t), ang in zip(axes, angles))
    return HolonomyRep("H3", (a, b, c), axes, angles, a * c * b, sol)


def _suite_holonomy(rng: random.Random, cases: int, inject: bool) -> float:
    worst = 0.0
    for i in range(cases):
        a, b, g = _random_triangle(rng)
        rep = _perturbed_h3(a, b, g) if inject and i == 0 else build_h3(a, b, g)
        worst = max(worst, relation_residual(rep))
        worst = max(worst, abs(rep.central.left.trace + 2.0))
        worst = max(worst, abs(rep.central.right.trace - 2.0 * math.cos(0.5 * (a + b + g))))
        alpha, tau = _random_quadrangle(rng)
        qrep = build_h4(alpha, tau)
        worst = max(worst, relation_residual(qrep))
        worst = max(worst, abs(qrep.central.right.trace - 2.0 * math.cos(2.0 * alpha)))
    return worst


def _suite_lengths(rng: random.Random, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        a, b, g = _random_triangle(rng)
        rep = build_h3(a, b, g)
        worst = max(worst, abs(central_translation_length(rep) - h3_length(a, b, g)))
        alpha, tau = _random_quadrangle(rng)
        qrep = build_h4(alpha, tau)
        worst = max(worst, abs(central_translation_length(qrep) - h4_length(alpha)))
    return worst


def _suite_volume(rng: random.Random, cases: int, steps: int) -> float:
    worst = 0.0
    for _ in range(max(3, cases // 20)):
        a, b, g = _random_triangle(rng)
        worst = max(worst, abs(schlafli_volume("H3", (a, b, g), steps) - h3_volume(a, b, g)))
        alpha, _ = _random_quadrangle(rng)
        worst = max(worst, abs(schlafli_volume("H4", alpha, steps) - h4_volume(alpha)))
    return worst


def cmd_verify(cfg: RunConfig) -> int:
    rng = random.Random(cfg.seed)
    cases = cfg.samples
    specs = [
        ("isometry-invariance", lambda: _suite_isometry(rng, cases), cfg.tol),
        ("hopf-round-trip", lambda: _suite_hopf(rng, cases), cfg.tol),
        ("equidistance", lambda: _suite_equidistance(rng, cases), max(cfg.tol, 1e-8)),
        ("holonomy-relations",
         lambda: _suite_holonomy(rng, cases, cfg.inject_perturbation), cfg.tol),
        ("length-consistency", lambda: _suite_lengths(rng, cases), cfg.tol),
        ("volume-integral", lambda: _suite_volume(rng, cases, cfg.steps),
         max(cfg.tol, 1e-8)),
    ]
    results = []
    for name, run, tol in specs:
        error = run()
        results.append(
            {"suite": name, "cases": cases, "max_error": error, "tol": tol,
             "passed": error <= tol}
        )
    all_passed = all(r["passed"] for r in results)
    if cfg.fmt == "json":
        payload = {
            "schema": SCHEMA,
            "command": "verify",
            "seed": cfg.seed,
            "suites": results,
            "passed": all_passed,
        }
        _emit(cfg, _serialize_json(payload))
    elif cfg.fmt == "csv":
        header = ["suite", "cases", "max_error", "tol", "passed"]
        table = [[_csv_cell(r[k]) for k in header] for r in results]
        _emit(cfg, _serialize_csv(header, table))
    else:
        lines = [
            "suite {name:<22} cases {cases:>4}  max-error {err:.3e}  tol {tol:.1e}  {verdict}".format(
                name=r["suite"], cases=r["cases"], err=r["max_error"], tol=r["tol"],
                verdict="PASS" if r["passed"] else "FAIL",
            )
            for r in results
        ]
        passed_count = sum(r["passed"] for r in results)
        lines.append(f"verify: {passed_count}/{len(results)} suites passed (seed {cfg.seed})")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if all_passed else 3


_DISPATCH = {
    "triangle": cmd_triangle,
    "h3": cmd_h3,
    "h4": cmd_h4,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "fibres": cmd_fibres,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = _config_from(ns)
        return _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, BranchError, IdenticalCircles) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
