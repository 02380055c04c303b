"""Command-line interface.

Subcommands: verify, distance, path, image, fibers, generate, oracle.
Exit codes are a fixed contract:

  0  verification consistent and convex / command succeeded
  1  not convex, with witnesses in the report
  2  inconclusive
  3  unreadable or invalid input, bad parameters
  4  distance query across components (prints "infinity")
  5  oracle disagreement with the main path

JSON output is a pure function of the input document, flags, and seed;
wall-clock timing goes to stderr only, so identical runs are
byte-identical.  LG_THREADS caps worker threads (0 = auto); the current
implementation is single-threaded, which trivially honors any cap.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time

from .gallery import GeneratorSpec, build_from_spec, default_gallery
from .geometry import Tolerances, convex_hull
from .gridsets import (
    GridSet,
    grid_from_raster,
    grid_report,
    grid_to_document,
    load_grid,
    segment_inside_oracle,
    tn_verdict,
)
from .metric import NoPathError, dyadic_straighten, psi_distance, shortest_psi_path
from .space import (
    EmbeddedSpace,
    SpaceValidationError,
    load_space,
    space_to_document,
)
from .verify import (
    LevelSampling,
    ReportConfig,
    default_level_radius,
    verify_fiber_connectivity,
    verify_image_convexity,
)
from . import bruteforce
from .space import fiber_components

EXIT_OK = 0
EXIT_NOT_CONVEX = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3
EXIT_DISCONNECTED = 4
EXIT_ORACLE_DISAGREEMENT = 5


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT_ERROR


def _thread_cap() -> int:
    raw = os.environ.get("LG_THREADS", "0")
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


def _tolerances(args) -> Tolerances:
    return Tolerances(
        eta_collinear=args.tol_collinear,
        eta_hull=args.tol_hull,
        eps_fiber=args.eps_fiber,
    )


def _load_document(path: str, tolerances: Tolerances):
    """Returns ("space", EmbeddedSpace) or ("grid", GridSet); raster
    files (non-JSON) are treated as 2-d 0/1 grids."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return "grid", grid_from_raster(text)
    if not isinstance(doc, dict):
        raise SpaceValidationError("document root must be an object")
    fmt = doc.get("format")
    if fmt == "grid":
        return "grid", load_grid(doc)
    if fmt == "space" or fmt is None:
        return "space", load_space(doc, tolerances=tolerances)
    raise SpaceValidationError(f"unknown document format {fmt!r}")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        body = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        body = text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def cmd_verify(args) -> int:
    started = time.monotonic()
    try:
        kind, obj = _load_document(args.input, _tolerances(args))
    except (OSError, ValueError) as exc:
        return _fail(str(exc))

    if kind == "grid":
        payload = grid_report(obj, samples=args.samples, seed=args.seed)
        text = (f"grid set: {payload['stats']['cells']} cells\n"
                f"hypotheses: {payload['hypotheses']}\n"
                f"convex: {payload['conclusions']['convex']}\n"
                f"overall: {payload['overall']}\n")
        _emit(args, payload, text)
        print(f"runtime: {time.monotonic() - started:.2f}s", file=sys.stderr)
        return EXIT_OK if payload["overall"] == "convex" else EXIT_NOT_CONVEX

    schedule = None
    if args.eps_schedule:
        try:
            schedule = tuple(float(x) for x in args.eps_schedule.split(","))
        except ValueError:
            return _fail(f"bad --eps-schedule {args.eps_schedule!r}")
    config = ReportConfig(
        eps_schedule=schedule,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
        radius_steps=args.radius_steps,
        max_levels=args.levels,
        level_radius=args.level_radius,
    )
    from .verify import local_to_global_report

    report = local_to_global_report(obj, config)
    _emit(args, report.to_json_dict(), report.to_text())
    if args.plot:
        from .plotting import save_image_figure

        points = sorted(set(obj.psi(v) for v in obj.vertex_ids()))
        hull = convex_hull(points) if obj.dimension <= 3 else None
        save_image_figure(obj, args.plot, hull=hull)
    print(f"runtime: {time.monotonic() - started:.2f}s "
          f"(threads<= {_thread_cap() or 'auto'})", file=sys.stderr)
    if report.overall == "convex":
        return EXIT_OK
    if report.overall == "not_convex":
        return EXIT_NOT_CONVEX
    return EXIT_INCONCLUSIVE


def _space_only(kind: str, obj) -> EmbeddedSpace:
    if kind != "space":
        raise SpaceValidationError("this command needs a space document")
    return obj


def cmd_distance(args) -> int:
    try:
        kind, obj = _load_document(args.input, _tolerances(args))
        space = _space_only(kind, obj)
        d = psi_distance(space, args.x0, args.x1)
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc))
    if math.isinf(d):
        print("infinity")
        return EXIT_DISCONNECTED
    print(f"{d!r}")
    return EXIT_OK


def cmd_path(args) -> int:
    try:
        kind, obj = _load_document(args.input, _tolerances(args))
        space = _space_only(kind, obj)
        d = psi_distance(space, args.x0, args.x1)
        if math.isinf(d):
            print("infinity")
            return EXIT_DISCONNECTED
        shortest = shortest_psi_path(space, args.x0, args.x1)
        straightened = dyadic_straighten(space, args.x0, args.x1,
                                         max_depth=args.max_depth)
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc))
    print(f"distance: {d!r}")
    print(f"shortest: {' '.join(str(v) for v in shortest.path)} "
          f"(length {shortest.psi_length!r}, straight {shortest.is_straight})")
    print(f"straightened: {' '.join(str(v) for v in straightened.path)} "
          f"(length {straightened.psi_length!r}, "
          f"straight {straightened.is_straight})")
    return EXIT_OK


def cmd_image(args) -> int:
    try:
        kind, obj = _load_document(args.input, _tolerances(args))
        space = _space_only(kind, obj)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    out = args.output or "image.csv"
    try:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id"] + [f"psi_{k}" for k in range(space.dimension)])
            for v in space.vertex_ids():
                writer.writerow([v] + [repr(x) for x in space.psi(v)])
        hull = None
        if space.dimension <= 8:
            points = sorted(set(space.psi(v) for v in space.vertex_ids()))
            hull = convex_hull(points)
            if args.hull_output:
                with open(args.hull_output, "w", newline="",
                          encoding="utf-8") as fh:
                    writer = csv.writer(fh)
                    writer.writerow([f"normal_{k}" for k in range(space.dimension)]
                                    + ["offset"])
                    for normal, offset in zip(hull.normals, hull.offsets):
                        writer.writerow([repr(x) for x in normal] + [repr(offset)])
        if args.plot:
            from .plotting import save_image_figure

            save_image_figure(space, args.plot, hull=hull)
    except OSError as exc:
        return _fail(str(exc))
    return EXIT_OK


def cmd_fibers(args) -> int:
    try:
        kind, obj = _load_document(args.input, _tolerances(args))
        space = _space_only(kind, obj)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    sampling = LevelSampling(max_levels=args.levels, radius=args.level_radius)
    from .verify import _dedup_image_points

    levels = _dedup_image_points(space)
    if sampling.max_levels is not None and len(levels) > sampling.max_levels:
        import numpy as np

        picks = np.linspace(0, len(levels) - 1, sampling.max_levels)
        levels = [levels[int(round(k))] for k in picks]
    radius = sampling.radius if sampling.radius is not None \
        else default_level_radius(space)
    out = args.output or "fibers.csv"
    labeled = []
    try:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["level_index"]
                            + [f"level_{k}" for k in range(space.dimension)]
                            + ["radius", "component", "vertex_id"])
            for li, level in enumerate(levels):
                comps = fiber_components(space, level, radius)
                labeled.append((level, [c.sorted_members() for c in comps]))
                for ci, comp in enumerate(comps):
                    for v in comp.sorted_members():
                        writer.writerow([li] + [repr(x) for x in level]
                                        + [repr(radius), ci, v])
        if args.plot:
            from .plotting import save_fiber_figure

            save_fiber_figure(space, labeled, args.plot)
    except OSError as exc:
        return _fail(str(exc))
    return EXIT_OK


def _parse_params(pairs) -> dict:
    params = {}
    for raw in pairs or []:
        if "=" not in raw:
            raise ValueError(f"--param must be key=value, got {raw!r}")
        key, value = raw.split("=", 1)
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


def cmd_generate(args) -> int:
    try:
        params = _parse_params(args.param)
        if args.seed is not None and "seed" not in params:
            params["seed"] = args.seed
        spec = GeneratorSpec(args.kind, params)
        if spec.kind not in GeneratorSpec.KINDS:
            raise ValueError(f"unknown generator kind {spec.kind!r}; "
                             f"choose from {', '.join(GeneratorSpec.KINDS)}")
        obj, truth = build_from_spec(spec)
    except (ValueError, TypeError) as exc:
        return _fail(str(exc))
    document = grid_to_document(obj) if isinstance(obj, GridSet) \
        else space_to_document(obj)
    out = args.output or f"{args.kind}.json"
    try:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(document, fh, sort_keys=True, indent=2)
            fh.write("\n")
        sidecar = out[:-5] if out.endswith(".json") else out
        with open(f"{sidecar}.truth.json", "w", encoding="utf-8") as fh:
            json.dump(truth, fh, sort_keys=True, indent=2)
            fh.write("\n")
    except OSError as exc:
        return _fail(str(exc))
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        kind, obj = _load_document(args.input, _tolerances(args))
    except (OSError, ValueError) as exc:
        return _fail(str(exc))

    disagreements = []
    if kind == "grid":
        grid: GridSet = obj
        cells = grid.sorted_cells()
        if len(cells) > 2000 and not args.force:
            return _fail(f"{len(cells)} cells exceeds the oracle bound; "
                         "pass --force to override")
        verdict, _ = tn_verdict(grid, samples=args.samples, seed=args.seed)
        import random as _random

        n = len(cells)
        if n <= 300:
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        else:
            rng = _random.Random(args.seed)
            chosen = set()
            attempts = 0
            while len(chosen) < args.samples and attempts < args.samples * 20:
                attempts += 1
                i, j = rng.randrange(n), rng.randrange(n)
                if i != j:
                    chosen.add((min(i, j), max(i, j)))
            pairs = sorted(chosen)
        oracle_ok = all(segment_inside_oracle(grid, cells[i], cells[j])
                        for i, j in pairs)
        if oracle_ok != verdict.is_convex:
            disagreements.append({
                "check": "grid_convexity",
                "main_verdict": verdict.status,
                "oracle_all_segments_inside": oracle_ok,
                "witnesses": [w.to_json_dict() for w in verdict.witnesses[:4]],
            })
    else:
        space: EmbeddedSpace = obj
        image = verify_image_convexity(space)
        delta = image.stats.get("delta_cover", 0.0)
        scan = bruteforce.image_midpoint_scan(space, delta) if delta else None
        if image.is_convex != (scan is None):
            disagreements.append({"check": "image_convexity",
                                  "main_verdict": image.status,
                                  "oracle_counterexample": scan})
        fibers = verify_fiber_connectivity(space)
        radius = fibers.stats["radius"]
        bad_level = None
        from .verify import _dedup_image_points

        for level in _dedup_image_points(space):
            members = bruteforce.fiber_members_bruteforce(space, level, radius)
            if members and len(bruteforce.components_bruteforce(space, members)) >= 2:
                bad_level = list(level)
                break
        if fibers.is_convex != (bad_level is None):
            disagreements.append({"check": "fiber_connectivity",
                                  "main_verdict": fibers.status,
                                  "oracle_disconnected_level": bad_level})
        if len(space) <= 12:
            from .metric import straight_path_between

            ids = space.vertex_ids()
            for i, u in enumerate(ids):
                for v in ids[i + 1:]:
                    main = straight_path_between(space, u, v) is not None
                    brute = bruteforce.straight_path_exists_bruteforce(space, u, v)
                    if main != brute:
                        disagreements.append({
                            "check": "straight_path", "pair": [u, v],
                            "main": main, "oracle": brute})

    if disagreements:
        json.dump({"disagreements": disagreements}, sys.stderr,
                  sort_keys=True, indent=2)
        sys.stderr.write("\n")
        return EXIT_ORACLE_DISAGREEMENT
    print("oracle: agreement")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexmap",
        description="Certify or refute convexity of maps on discretized spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", "-i", required=True,
                           help="space/grid JSON document or 0/1 raster")
        p.add_argument("--output", "-o", help="output file (default stdout)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--tol-collinear", type=float, default=1e-9)
        p.add_argument("--tol-hull", type=float, default=1e-9)
        p.add_argument("--eps-fiber", type=float, default=0.0,
                       help="level binning radius (0 = half min nonzero edge)")

    p = sub.add_parser("verify", help="run the local-to-global verification")
    common(p)
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"),
                   default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--eps-schedule", help="comma-separated ball radii")
    p.add_argument("--radius-steps", type=int, default=1)
    p.add_argument("--levels", type=int, default=None,
                   help="cap on sampled levels for fiber connectivity")
    p.add_argument("--level-radius", type=float, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--plot", help="render the image scatter to this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("distance", help="map distance between two vertices")
    common(p)
    p.add_argument("--x0", type=int, required=True)
    p.add_argument("--x1", type=int, required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("path", help="shortest and straightened paths")
    common(p)
    p.add_argument("--x0", type=int, required=True)
    p.add_argument("--x1", type=int, required=True)
    p.add_argument("--max-depth", type=int, default=None)
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("image", help="write image-point table (and hull)")
    common(p)
    p.add_argument("--hull-output", help="write hull facets CSV here")
    p.add_argument("--plot", help="render the image figure to this file")
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("fibers", help="write level components table")
    common(p)
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--level-radius", type=float, default=None)
    p.add_argument("--plot", help="render the components figure to this file")
    p.set_defaults(func=cmd_fibers)

    p = sub.add_parser("generate", help="emit an example space document")
    p.add_argument("--kind", required=True,
                   help=f"one of {', '.join(GeneratorSpec.KINDS)}")
    p.add_argument("--param", action="append",
                   help="key=value (value parsed as JSON); repeatable")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", help="cross-check against brute force")
    common(p)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true",
                   help="run even above the size bound")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gallery", help="list the built-in example gallery")
    p.set_defaults(func=cmd_gallery)
    return parser


def cmd_gallery(args) -> int:
    for entry in default_gallery():
        print(f"{entry.name}: kind={entry.spec.kind} "
              f"expected={entry.expected_verdict}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpaceValidationError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
