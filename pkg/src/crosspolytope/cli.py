"""Command-line interface: construct, radius, optimize, certify, verify.

Each command prints a JSON report on stdout. Exit status: 0 success or
verdict true, 1 verdict false, 2 usage or input error, 3 unsupported
parameters (k = 2 * dim + 1 and beyond, where no closed form is known).
"""
from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import __version__
from .certify import (
    certify_cross_polytope,
    certify_packing,
    certify_simplex,
    find_close_pair,
)
from .constructions import (
    PackingSpec,
    UnsupportedParameterError,
    cross_polytope_vertices,
    optimal_packing,
    packing_radius,
    simplex_vertices,
)
from .documents import DocumentError, PointSetDocument, dumps, write_csv
from .geometry import SQRT2, Ball, DimensionError, Tolerance, as_pointset, min_pairwise_distance, pairwise_distances
from .optimizer import OptimizerConfig, maximin_optimize, sample_in_ball

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3
DEFAULT_SEED = 42
UNSUPPORTED_MSG = "unsupported: paper provides only a strict inequality"


class UsageError(Exception):
    pass


def _tol(eps_cert: float | None, default: float = 1e-6) -> Tolerance:
    eps = default if eps_cert is None else eps_cert
    try:
        return Tolerance(eps_geom=min(1e-9, eps), eps_cert=eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _distance_summary(points) -> dict:
    p = as_pointset(points)
    if p.shape[0] < 2:
        return {}
    dmin, pair = min_pairwise_distance(p)
    return {"min_distance": dmin, "min_pair": pair, "max_distance": float(pairwise_distances(p).max())}


def cmd_construct(args) -> tuple[dict, int]:
    try:
        if args.shape == "cross-polytope":
            if args.dim is None:
                raise UsageError("construct cross-polytope needs --dim")
            pts = cross_polytope_vertices(args.dim, args.radius)
            meta = {"generator": "cross-polytope", "radius": args.radius}
        else:
            if args.dim is None or args.k is None:
                raise UsageError("construct simplex needs --k and --dim")
            pts = simplex_vertices(args.k, args.dim, args.radius)
            meta = {"generator": "simplex", "k": args.k, "radius": args.radius}
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = PointSetDocument.from_array(pts, label=args.shape, **meta)
    if args.out:
        doc.write(args.out)
    results = {"card": len(doc.points), "dim": doc.dim, **_distance_summary(pts)}
    if not args.out:
        results["document"] = doc.to_dict()
    return {"results": results}, EXIT_OK


def cmd_radius(args) -> tuple[dict, int]:
    try:
        r = packing_radius(args.k, args.dim)
    except UnsupportedParameterError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    regime = "simplex" if args.k <= args.dim + 1 else "cross-polytope"
    report = {"results": {"k": args.k, "dim": args.dim, "packing_radius": r, "regime": regime}}
    if args.emit_packing:
        spec = optimal_packing(args.k, args.dim)
        PointSetDocument.from_array(
            spec.unit_ball_centers,
            label="optimal-packing",
            generator=regime,
            container_radius=spec.container.radius,
            container_center=spec.container.center.tolist(),
        ).write(args.emit_packing)
        report["certificates"] = {"packing": certify_packing(spec, Tolerance()).to_dict()}
    return report, EXIT_OK


def cmd_optimize(args) -> tuple[dict, int]:
    try:
        cfg = OptimizerConfig(
            k=args.k, dim=args.dim, surface_only=args.surface, restarts=args.restarts,
            seed=args.seed, max_iters_per_stage=args.max_iters,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = maximin_optimize(cfg)
    results = {
        "k": cfg.k,
        "dim": cfg.dim,
        "surface_only": cfg.surface_only,
        "restarts": cfg.restarts,
        "achieved_min_distance": res.achieved_min_distance,
        "per_restart_values": res.per_restart_values,
        "iterations_used": res.iterations_used,
    }
    report = {"results": results}
    if cfg.k == 2 * cfg.dim and not cfg.surface_only:
        report["certificates"] = {
            "cross-polytope": certify_cross_polytope(res.best, _tol(args.tolerance, 1e-5)).to_dict()
        }
        results["target"] = SQRT2
    elif cfg.k > 2 * cfg.dim and not cfg.surface_only:
        results["note"] = "no optimality claim: only r(2n+1, n) > 1 + sqrt(2) is known"
    doc = PointSetDocument.from_array(res.best, label="maximin", seed=cfg.seed, generator="maximin_optimize")
    if args.out:
        doc.write(args.out)
    else:
        results["points"] = doc.points
    return report, EXIT_OK


def cmd_certify(args) -> tuple[dict, int]:
    doc = PointSetDocument.read(args.input)
    tol = _tol(args.tolerance)
    pts = doc.to_array()
    try:
        if args.shape == "cross-polytope":
            cert = certify_cross_polytope(pts, tol)
        elif args.shape == "simplex":
            cert = certify_simplex(pts, tol)
        else:
            meta = doc.metadata
            radius = args.container_radius if args.container_radius is not None else meta.get("container_radius")
            if radius is None:
                raise UsageError("packing needs --container-radius or metadata.container_radius")
            center = meta.get("container_center") or [0.0] * doc.dim
            cert = certify_packing(PackingSpec(Ball(center, float(radius)), pts), tol)
    except (DimensionError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    report = {
        "results": {"shape": args.shape, "eps_cert": tol.eps_cert, **_distance_summary(pts)},
        "certificates": {args.shape: cert.to_dict()},
    }
    return report, EXIT_OK if cert.verdict else EXIT_FALSE


def verify_theorem1(dim: int, seed: int, restarts: int, tol: Tolerance) -> dict:
    res = maximin_optimize(OptimizerConfig(k=2 * dim, dim=dim, restarts=restarts, seed=seed))
    cert = certify_cross_polytope(res.best, tol)
    ok = res.achieved_min_distance >= SQRT2 - 1e-6 and cert.verdict
    return {
        "passed": int(ok), "failed": int(not ok),
        "achieved_min_distance": res.achieved_min_distance,
        "certificate": cert.to_dict(),
    }


def verify_theorem2(dim: int, trials: int, seed: int, tol: Tolerance) -> dict:
    rng = np.random.default_rng(seed)
    passed, worst_ratio, worst = 0, 0.0, 0.0
    for _ in range(trials):
        cert = find_close_pair(sample_in_ball(rng, dim + 2, dim), tol)
        w = cert.witness
        ok = cert.verdict and w["distance"] <= SQRT2 * w["circumradius"] + tol.eps_cert
        passed += int(ok)
        worst = max(worst, w["distance"])
        if w["circumradius"] > 0:
            worst_ratio = max(worst_ratio, w["distance"] / w["circumradius"])
    return {
        "passed": passed, "failed": trials - passed,
        "worst_distance": worst, "worst_distance_over_circumradius": worst_ratio,
    }


def verify_theorem3(dim: int, tol: Tolerance) -> dict:
    rows = []
    for k in range(dim + 2, 2 * dim + 1):
        spec = optimal_packing(k, dim)
        cert = certify_packing(spec, tol)
        ok = cert.verdict and spec.container.radius == 1.0 + math.sqrt(2.0)
        rows.append({"k": k, "packing_radius": spec.container.radius, "ok": ok, "certificate": cert.to_dict()})
    passed = sum(r["ok"] for r in rows)
    return {"passed": passed, "failed": len(rows) - passed, "packings": rows}


def cmd_verify(args) -> tuple[dict, int]:
    if args.dim < 2 or args.trials < 1:
        raise UsageError("verify needs --dim >= 2 and --trials >= 1")
    if args.theorem == 1:
        out = verify_theorem1(args.dim, args.seed, args.restarts, _tol(args.tolerance, 1e-5))
    elif args.theorem == 2:
        out = verify_theorem2(args.dim, args.trials, args.seed, _tol(args.tolerance))
    else:
        out = verify_theorem3(args.dim, _tol(args.tolerance))
    report = {"results": {"theorem": args.theorem, "dim": args.dim, **out}}
    return report, EXIT_OK if out["failed"] == 0 else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crosspolytope", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False):
        p.add_argument("--tolerance", type=float, default=None, help="certification slack eps_cert")
        p.add_argument("--csv", metavar="PATH", help="also write the report as a flat field,value table")
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("construct", help="write a cross-polytope or regular simplex")
    p.add_argument("shape", choices=["cross-polytope", "simplex"])
    p.add_argument("--dim", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--out", metavar="PATH")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("radius", help="minimum container radius for k unit balls")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--emit-packing", metavar="PATH")
    common(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("optimize", help="maximin placement of k points in the unit ball")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--max-iters", type=int, default=10_000)
    p.add_argument("--surface", action="store_true", help="constrain points to the unit sphere")
    p.add_argument("--out", metavar="PATH")
    common(p, seed=True)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("certify", help="check a point-set document")
    p.add_argument("input")
    p.add_argument("--shape", choices=["cross-polytope", "simplex", "packing"], default="cross-polytope")
    p.add_argument("--container-radius", type=float)
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="numerically check theorem 1, 2 or 3 in one dimension")
    p.add_argument("--theorem", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--restarts", type=int, default=64)
    common(p, seed=True)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str]) -> tuple[dict, int]:
    """Execute a command line; returns the report and the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    report = {"command": ["crosspolytope", *argv], "version": __version__}
    if hasattr(args, "seed"):
        report["seed"] = args.seed
    try:
        body, status = args.func(args)
    except UnsupportedParameterError as exc:
        body, status = {"error": f"{UNSUPPORTED_MSG} ({exc})"}, EXIT_UNSUPPORTED
    except (UsageError, DocumentError) as exc:
        body, status = {"error": str(exc)}, EXIT_USAGE
    report.update(body)
    report["exit_status"] = status
    report["duration_s"] = time.perf_counter() - start
    if getattr(args, "csv", None):
        write_csv(report, args.csv)
    return report, status


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, status = run(argv)
    stream = sys.stderr if "error" in report else sys.stdout
    print(dumps(report), file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
