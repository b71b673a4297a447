"""Command-line interface.

Subcommands: filter, process, convert, annotate, extract-constraints,
evaluate, gen-fixtures. Exit codes: 0 success, 1 hard error, 2 completed
with some documents skipped or failed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from draftkit import __version__, _kernels, codec, pipeline, raster
from draftkit.constraints import ToleranceConfig, extract_constraints
from draftkit.dimensions import AnnotationPolicy, place_dimension, synthesize_dimensions
from draftkit.errors import DraftkitError
from draftkit.fixtures import perturb_document, random_document
from draftkit.metrics import DAConfig
from draftkit.pipeline import EvalOptions, PipelineConfig


def _add_bounds_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("custom", "sketchgraph", "cadl"), default="custom",
                   help="preset primitive-count bounds")
    p.add_argument("--min-prims", type=int, default=None, help="override lower bound")
    p.add_argument("--max-prims", type=int, default=None, help="override upper bound")


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau-pos", type=float, default=1.0, help="position tolerance, drawing units")
    p.add_argument("--tau-ang", type=float, default=0.5, help="angle tolerance, degrees")


def _config_from(args: argparse.Namespace, **kw) -> PipelineConfig:
    return PipelineConfig.from_mode(args.mode, args.min_prims, args.max_prims, **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="draftkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"draftkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filter", help="apply count bounds and dedup, write a manifest")
    p.add_argument("inputs", nargs="+", help="document files (.dxf or .json)")
    _add_bounds_flags(p)
    p.add_argument("--dedup", action="store_true", help="drop content-hash duplicates")
    p.add_argument("--out", required=True, help="manifest path (JSON lines)")

    p = sub.add_parser("process", help="normalize, annotate, and emit all artifacts")
    p.add_argument("inputs", nargs="+")
    _add_bounds_flags(p)
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--no-annotate", dest="annotate", action="store_false")
    p.add_argument("--arc-angles", action="store_true", help="also dimension arc sweep angles")
    p.add_argument("--model-space", action="store_true", help="store dimension values in model units")
    _add_tolerance_flags(p)
    p.add_argument("--render-size", type=int, default=512)
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("convert", help="convert one document between formats")
    p.add_argument("input")
    p.add_argument("--to", choices=("json", "dxf", "png"), required=True)
    p.add_argument("--render-size", type=int, default=512)
    p.add_argument("--out", required=True)

    p = sub.add_parser("annotate", help="synthesize and place dimensions on a document")
    p.add_argument("input")
    p.add_argument("--arc-angles", action="store_true")
    p.add_argument("--model-space", action="store_true")
    p.add_argument("--gap", type=float, default=15.0, help="placement offset, drawing units")
    p.add_argument("--out", required=True, help="output path (.json or .dxf)")

    p = sub.add_parser("extract-constraints", help="detect constraints and write JSON")
    p.add_argument("input")
    _add_tolerance_flags(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("evaluate", help="score predicted documents against ground truth")
    p.add_argument("gt_dir")
    p.add_argument("pred_dir")
    p.add_argument("--paradigm", choices=pipeline.PARADIGMS, default="standard")
    p.add_argument("--match-threshold", type=float, default=10.0)
    p.add_argument("--tau-v", type=float, default=0.5, help="dimension value tolerance")
    p.add_argument("--tau-e", type=float, default=5.0, help="dimension reference tolerance")
    p.add_argument("--render-size", type=int, default=512)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="write the full report as JSON")

    p = sub.add_parser("gen-fixtures", help="generate a seeded synthetic corpus")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    _add_bounds_flags(p)
    p.add_argument("--perturb", type=float, default=0.0,
                   help="also write a jittered twin corpus (sigma, drawing units)")

    sub.add_parser("kernels", help="report which compute backend is active")

    return parser


def _cmd_filter(args: argparse.Namespace) -> int:
    config = _config_from(args, dedup=args.dedup)
    _, entries = pipeline.filter_documents(args.inputs, config)
    pipeline.write_manifest(entries, args.out)
    dropped = sum(1 for e in entries if not e.retained)
    print(f"retained {len(entries) - dropped}/{len(entries)} documents -> {args.out}")
    unreadable = sum(1 for e in entries if e.primitive_count is None)
    return 2 if unreadable else 0


def _cmd_process(args: argparse.Namespace) -> int:
    policy = AnnotationPolicy(arc_angles=args.arc_angles, model_space=args.model_space)
    config = _config_from(
        args,
        dedup=args.dedup,
        annotate=args.annotate,
        policy=policy,
        tolerances=ToleranceConfig(args.tau_pos, args.tau_ang),
        render_size=args.render_size,
        jobs=args.jobs,
    )
    entries = pipeline.process_corpus(args.inputs, args.out, config)
    pipeline.write_manifest(entries, Path(args.out) / "manifest.jsonl")
    done = sum(1 for e in entries if e.outputs)
    print(f"processed {done}/{len(entries)} documents -> {args.out}")
    return 0 if done == len(entries) else 2


def _cmd_convert(args: argparse.Namespace) -> int:
    doc = pipeline.load_document(args.input)
    if args.to == "json":
        Path(args.out).write_text(codec.emit_json(doc))
    elif args.to == "dxf":
        Path(args.out).write_text(codec.emit_dxf(doc))
    else:
        img = raster.render(doc.sketch, args.render_size, args.render_size)
        raster.write_png(img, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_annotate(args: argparse.Namespace) -> int:
    doc = pipeline.load_document(args.input)
    policy = AnnotationPolicy(arc_angles=args.arc_angles, model_space=args.model_space, gap=args.gap)
    dims = tuple(
        place_dimension(d, doc.sketch, gap=args.gap)
        for d in synthesize_dimensions(doc.sketch, policy)
    )
    out_doc = codec.Document(
        sketch=doc.sketch, constraints=doc.constraints, dimensions=dims, source=doc.source
    )
    if args.out.lower().endswith(".dxf"):
        Path(args.out).write_text(codec.emit_dxf(out_doc))
    else:
        Path(args.out).write_text(codec.emit_json(out_doc))
    print(f"annotated {len(dims)} dimensions -> {args.out}")
    return 0


def _cmd_extract_constraints(args: argparse.Namespace) -> int:
    doc = pipeline.load_document(args.input)
    tol = ToleranceConfig(args.tau_pos, args.tau_ang)
    constraints = tuple(extract_constraints(doc.sketch, tol))
    out_doc = codec.Document(
        sketch=doc.sketch, constraints=constraints, dimensions=doc.dimensions, source=doc.source
    )
    Path(args.out).write_text(codec.emit_json(out_doc))
    print(f"extracted {len(constraints)} constraints -> {args.out}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    options = EvalOptions(
        paradigm=args.paradigm,
        match_threshold=args.match_threshold,
        render_size=args.render_size,
        da=DAConfig(tau_v=args.tau_v, tau_e=args.tau_e),
    )
    result = pipeline.evaluate_corpus(args.gt_dir, args.pred_dir, options, jobs=args.jobs)
    agg = result.aggregate
    print(f"paradigm: {result.paradigm}")
    print(f"scored pairs: {len(result.pair_reports)}   skipped: {len(result.skipped)}")
    for key in ("acc", "pf1", "cf1", "da", "param_mse", "img_mse", "cd"):
        if key in agg:
            print(f"  {key:>10}: {agg[key]:.6f}")
    for name, why in sorted(result.skipped.items()):
        print(f"  skipped {name}: {why}")
    if args.out:
        Path(args.out).write_text(json.dumps(result.to_dict(), sort_keys=True, indent=2) + "\n")
        print(f"report -> {args.out}")
    if not result.pair_reports and result.skipped:
        return 1
    return 2 if result.skipped else 0


def _cmd_gen_fixtures(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    lo, hi = pipeline.MODE_BOUNDS.get(args.mode, (3, 12))
    lo = args.min_prims if args.min_prims is not None else lo
    hi = args.max_prims if args.max_prims is not None else hi
    rng = random.Random(args.seed)
    perturbed_dir = out / "perturbed"
    if args.perturb > 0.0:
        perturbed_dir.mkdir(exist_ok=True)
    for i in range(args.count):
        doc = random_document(rng, min_prims=lo, max_prims=hi)
        (out / f"{i:04d}.json").write_text(codec.emit_json(doc))
        if args.perturb > 0.0:
            twin = perturb_document(doc, rng, sigma=args.perturb)
            (perturbed_dir / f"{i:04d}.json").write_text(codec.emit_json(twin))
    print(f"wrote {args.count} fixture documents -> {out}")
    return 0


def _cmd_kernels(_: argparse.Namespace) -> int:
    print(f"active backend: {_kernels.backend_name()}")
    print(f"available: {', '.join(_kernels.available_backends())}")
    return 0


_HANDLERS = {
    "filter": _cmd_filter,
    "process": _cmd_process,
    "convert": _cmd_convert,
    "annotate": _cmd_annotate,
    "extract-constraints": _cmd_extract_constraints,
    "evaluate": _cmd_evaluate,
    "gen-fixtures": _cmd_gen_fixtures,
    "kernels": _cmd_kernels,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except DraftkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
