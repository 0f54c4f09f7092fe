"""Command line interface: simulate, verify, bench, render, hull."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .environment import build_grid
from .errors import ElasticHullError
from .harness import io as hio
from .harness.bench import bench_lookup
from .harness.campaign import (MISMATCH, NONCONVERGED, generate_points, instance_rng,
                               verify_campaign)
from .harness.render import FrameWriter, render_frame
from .hull import contacts, extract_hull
from .oracle import brute_force_hull, graham_scan, jarvis_march
from .scheduler import run

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_NONCONVERGED = 2
EXIT_INPUT = 3

log = logging.getLogger("elastic_hull")


def _config(args):
    overrides = {
        "seed": args.seed,
        "out": args.out,
        "frame_stride": getattr(args, "frames", None),
        "format": getattr(args, "format", None),
        "max_ticks": getattr(args, "max_ticks", None),
        "instances": getattr(args, "instances", None),
        "n_points": getattr(args, "n_points", None),
    }
    return hio.load_config(args.config, overrides)


def _out_dir(cfg) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_hull(path, hull):
    tag = "# degenerate\n" if hull.degenerate else ""
    Path(path).write_text(tag + hio.format_points(hull.vertices), encoding="utf-8")


def cmd_simulate(args) -> int:
    cfg = _config(args)
    if args.points:
        points = hio.read_points(args.points)
    else:
        rng = instance_rng(cfg.seed, 0)
        points = generate_points(rng, cfg.n_points, cfg.width, cfg.height, cfg.params.r_nail)
    grid = build_grid(points, cfg.width, cfg.height, cfg.params.r_nail)
    out = _out_dir(cfg)
    (out / "points.txt").write_text(hio.format_points(points), encoding="utf-8")

    recorder = hio.TrajectoryRecorder()
    sinks = [recorder]
    if cfg.frame_stride:
        frames_dir = out / "frames"
        frames_dir.mkdir(exist_ok=True)
        sinks.append(FrameWriter(frames_dir, cfg.format))

    def sink(tick, band, g):
        for s in sinks:
            s(tick, band, g)

    result = run(grid, cfg.params, frame_sink=sink, frame_stride=cfg.frame_stride or 10**12)
    hio.write_metrics(result, out / "metrics.csv")
    recorder.save(out / "trajectory.npz", grid)

    oracle = graham_scan(points)
    _write_hull(out / "oracle_hull.txt", oracle)
    sim = None
    if result.converged:
        sim = extract_hull(contacts(result, grid), grid)
        _write_hull(out / "hull.txt", sim)

    if not args.no_plots:
        from .harness import plotting
        plotting.plot_metrics(hio.read_metrics(out / "metrics.csv"), out / "metrics.png",
                              cfg.params.eps_v)
        plotting.plot_band(grid, result.band.pos, out / "band.png", sim, oracle,
                           initial=recorder.frames[0])

    print(f"ticks={result.ticks_elapsed} converged={str(result.converged).lower()} "
          f"particles={len(result.band)} perimeter={result.band.perimeter():.3f}")
    if sim is not None:
        print(f"hull_vertices={len(sim)} matches_graham={str(sim == oracle).lower()}")
        return EXIT_OK
    return EXIT_NONCONVERGED


def cmd_verify(args) -> int:
    cfg = _config(args)
    report = verify_campaign(cfg.seed, cfg.instances, cfg.n_points, cfg.params,
                             cfg.width, cfg.height, audit=args.audit)
    out = _out_dir(cfg)
    text = report.to_text()
    (out / "report.txt").write_text(text, encoding="utf-8")
    (out / "report.csv").write_text(report.to_csv(), encoding="utf-8")
    if not args.no_plots:
        from .harness import plotting
        plotting.plot_campaign(report, out / "campaign.png")
    sys.stdout.write(text)
    if report.count(MISMATCH):
        return EXIT_MISMATCH
    if report.count(NONCONVERGED):
        return EXIT_NONCONVERGED
    return EXIT_OK


def cmd_bench(args) -> int:
    counts = [int(v) for v in args.nail_counts.split(",")]
    report = bench_lookup(counts, args.queries, args.seed or 0)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "bench.csv").write_text(report.to_csv(), encoding="utf-8")
    if not args.no_plots:
        from .harness import plotting
        plotting.plot_bench(report, out / "bench.png")
    sys.stdout.write(report.to_csv())
    return EXIT_OK


def cmd_render(args) -> int:
    ticks, frames, nails, (width, height, r_nail) = hio.load_trajectory(args.trajectory)
    grid = build_grid(nails, width, height, r_nail)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for tick, pos in zip(ticks, frames):
        (out / f"frame_{tick:07d}.{args.format}").write_bytes(render_frame(pos, grid, args.format))
    print(f"frames={len(ticks)}")
    return EXIT_OK


ALGORITHMS = {"graham": graham_scan, "jarvis": jarvis_march, "brute": brute_force_hull}


def cmd_hull(args) -> int:
    points = hio.read_points(args.points)
    if not points:
        raise ElasticHullError("no points in input")
    hull = ALGORITHMS[args.algorithm](points)
    if hull.degenerate:
        print("# degenerate")
    sys.stdout.write(hio.format_points(hull.vertices))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="elastic-hull",
                                     description="Convex hulls from a relaxing elastic band.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, frames=False):
        p.add_argument("--config", help="JSON config file; flags override its values")
        p.add_argument("--seed", type=int)
        p.add_argument("--out")
        p.add_argument("--max-ticks", type=int, dest="max_ticks")
        p.add_argument("--no-plots", action="store_true", help="skip the matplotlib figures")
        if frames:
            p.add_argument("--frames", type=int, help="write a frame every N ticks")
            p.add_argument("--format", choices=("ppm", "svg"))

    p = sub.add_parser("simulate", help="run one instance")
    p.add_argument("--points", help="point file (one 'x y' per line)")
    p.add_argument("--n-points", type=int, dest="n_points",
                   help="generated instance size when --points is absent")
    common(p, frames=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="seeded campaign against Graham scan")
    p.add_argument("--instances", type=int)
    p.add_argument("--n-points", type=int, dest="n_points")
    p.add_argument("--audit", action="store_true",
                   help="check containment and tunneling on every tick")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="grid vs linear-scan lookup cost")
    p.add_argument("--nail-counts", default="10,100,1000,10000")
    p.add_argument("--queries", type=int, default=50_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.add_argument("--no-plots", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="re-render a stored trajectory")
    p.add_argument("--trajectory", required=True)
    p.add_argument("--out", default="frames")
    p.add_argument("--format", choices=("ppm", "svg"), default="svg")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("hull", help="exact hull of a point file, no physics")
    p.add_argument("--points", required=True)
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="graham")
    p.set_defaults(func=cmd_hull)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ElasticHullError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
