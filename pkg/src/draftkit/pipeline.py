"""Corpus preparation and evaluation pipeline.

Documents flow through three stages: filtering (primitive-count bounds and
optional content dedup), processing (normalize, annotate, and emit plain
DXF, annotated DXF, canonical JSON, and PNG per document), and evaluation
(pair ground-truth and predicted documents by filename and aggregate
metrics). All stages are deterministic; documents are independent, so
processing may run on a bounded worker pool without changing any output.
"""
from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from draftkit import codec, metrics, raster
from draftkit.codec import Document
from draftkit.constraints import ToleranceConfig, extract_constraints
from draftkit.dimensions import AnnotationPolicy, place_dimension, synthesize_dimensions
from draftkit.errors import DraftkitError, UnreadableInputError
from draftkit.geometry import Sketch, normalize_sketch, param_vector
from draftkit.metrics import DAConfig, EvalReport

MODE_BOUNDS = {"sketchgraph": (6, 30), "cadl": (1, 25)}

PARADIGMS = ("standard", "zeroshot", "dimension")


@dataclass(frozen=True)
class PipelineConfig:
    """Filtering and processing knobs.

    mode picks preset primitive-count bounds (sketchgraph: 6..30, cadl:
    1..25, custom: whatever min_prims/max_prims say); explicit bounds
    override the preset.
    """

    mode: str = "custom"
    min_prims: int = 1
    max_prims: int = 10**9
    dedup: bool = False
    annotate: bool = True
    policy: AnnotationPolicy = AnnotationPolicy()
    tolerances: ToleranceConfig = ToleranceConfig()
    render_size: int = 512
    stroke: float = 2.0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.mode not in ("custom", *MODE_BOUNDS):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 1 <= self.min_prims <= self.max_prims:
            raise ValueError("need 1 <= min_prims <= max_prims")

    @classmethod
    def from_mode(
        cls, mode: str, min_prims: int | None = None, max_prims: int | None = None, **kw
    ) -> "PipelineConfig":
        lo, hi = MODE_BOUNDS.get(mode, (1, 10**9))
        return cls(
            mode=mode,
            min_prims=lo if min_prims is None else min_prims,
            max_prims=hi if max_prims is None else max_prims,
            **kw,
        )


@dataclass
class ManifestEntry:
    input: str
    retained: bool
    primitive_count: int | None = None
    content_hash: str | None = None
    reason: str | None = None
    outputs: dict[str, str] | None = None

    def to_dict(self) -> dict:
        out: dict = {"input": self.input, "retained": self.retained}
        if self.primitive_count is not None:
            out["primitive_count"] = self.primitive_count
        if self.content_hash is not None:
            out["content_hash"] = self.content_hash
        if self.reason is not None:
            out["reason"] = self.reason
        if self.outputs is not None:
            out["outputs"] = self.outputs
        return out


def write_manifest(entries: list[ManifestEntry], path: str | Path) -> None:
    """JSON-lines manifest, one entry per input, sorted by input path."""
    lines = [json.dumps(e.to_dict(), sort_keys=True) for e in sorted(entries, key=lambda e: e.input)]
    Path(path).write_text("\n".join(lines) + "\n" if lines else "")


def load_document(path: str | Path) -> Document:
    """Read a .dxf or .json document file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise UnreadableInputError(f"{p}: {exc}") from None
    try:
        if p.suffix.lower() == ".dxf":
            return codec.parse_dxf(text)
        return codec.parse_json(text)
    except DraftkitError as exc:
        raise UnreadableInputError(f"{p}: {exc}") from None


def content_hash(sketch: Sketch) -> str:
    """Content-addressed sketch identity, invariant to primitive order and frame.

    The sketch is normalized (degenerate ones hash raw), its parameter
    vectors sorted, and the canonical string digested with sha256.
    """
    try:
        normalized, _ = normalize_sketch(Sketch(primitives=sketch.primitives))
    except DraftkitError:
        normalized = sketch
    vecs = sorted((param_vector(p) for p in normalized.primitives), key=lambda v: (v.kind, v.values))
    canon = ";".join(f"{v.kind}:{','.join(repr(x) for x in v.values)}" for v in vecs)
    return hashlib.sha256(canon.encode("ascii")).hexdigest()


def filter_documents(
    paths: list[str | Path], config: PipelineConfig
) -> tuple[list[tuple[Path, Document]], list[ManifestEntry]]:
    """Apply primitive-count bounds and optional dedup to a corpus.

    Returns retained (path, document) pairs in input order plus one manifest
    entry per input. Unreadable inputs are recorded and skipped.
    """
    retained: list[tuple[Path, Document]] = []
    entries: list[ManifestEntry] = []
    seen_hashes: set[str] = set()
    for raw_path in paths:
        p = Path(raw_path)
        try:
            doc = load_document(p)
        except UnreadableInputError as exc:
            entries.append(ManifestEntry(input=str(p), retained=False, reason=str(exc)))
            continue
        n = len(doc.sketch.primitives)
        if not config.min_prims <= n <= config.max_prims:
            entries.append(
                ManifestEntry(
                    input=str(p),
                    retained=False,
                    primitive_count=n,
                    reason=f"primitive count {n} outside [{config.min_prims}, {config.max_prims}]",
                )
            )
            continue
        digest = content_hash(doc.sketch)
        if config.dedup and digest in seen_hashes:
            entries.append(
                ManifestEntry(
                    input=str(p),
                    retained=False,
                    primitive_count=n,
                    content_hash=digest,
                    reason="duplicate content hash",
                )
            )
            continue
        seen_hashes.add(digest)
        retained.append((p, doc))
        entries.append(
            ManifestEntry(input=str(p), retained=True, primitive_count=n, content_hash=digest)
        )
    return retained, entries


def process_document(doc: Document, out_dir: str | Path, stem: str, config: PipelineConfig) -> dict[str, str]:
    """Normalize and annotate one document, emitting all four artifacts.

    Writes {stem}.dxf (geometry only), {stem}.annotated.dxf (geometry plus
    dimensions), {stem}.json (canonical, with constraints and frame), and
    {stem}.png. Re-running over the same input produces byte-identical
    files. Returns artifact paths keyed by format.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    normalized, _ = normalize_sketch(doc.sketch)
    constraints = tuple(extract_constraints(normalized, config.tolerances))
    dims: tuple = ()
    if config.annotate:
        placed = [
            place_dimension(d, normalized, gap=config.policy.gap)
            for d in synthesize_dimensions(normalized, config.policy)
        ]
        dims = tuple(placed)
    processed = Document(sketch=normalized, constraints=constraints, dimensions=dims, source=doc.source)

    paths = {
        "dxf": out / f"{stem}.dxf",
        "dxf_annotated": out / f"{stem}.annotated.dxf",
        "json": out / f"{stem}.json",
        "png": out / f"{stem}.png",
    }
    paths["dxf"].write_text(codec.emit_dxf(processed, annotated=False))
    paths["dxf_annotated"].write_text(codec.emit_dxf(processed, annotated=True))
    paths["json"].write_text(codec.emit_json(processed))
    img = raster.render(normalized, config.render_size, config.render_size, config.stroke)
    raster.write_png(img, str(paths["png"]))
    return {k: str(v) for k, v in paths.items()}


def process_corpus(
    paths: list[str | Path], out_dir: str | Path, config: PipelineConfig
) -> list[ManifestEntry]:
    """Filter then process a corpus; returns the combined manifest."""
    retained, entries = filter_documents(paths, config)
    by_input = {e.input: e for e in entries}

    def run(item: tuple[Path, Document]) -> None:
        path, doc = item
        try:
            outputs = process_document(doc, out_dir, path.stem, config)
            by_input[str(path)].outputs = outputs
        except DraftkitError as exc:
            entry = by_input[str(path)]
            entry.retained = False
            entry.reason = f"processing failed: {exc}"

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            list(pool.map(run, retained))
    else:
        for item in retained:
            run(item)
    return entries


@dataclass(frozen=True)
class EvalOptions:
    """Evaluation knobs shared across paradigms."""

    paradigm: str = "standard"
    match_threshold: float = 10.0
    grid: float = 1.0
    render_size: int = 512
    stroke: float = 2.0
    samples_per_primitive: int = 64
    da: DAConfig = DAConfig()

    def __post_init__(self) -> None:
        if self.paradigm not in PARADIGMS:
            raise ValueError(f"unknown paradigm {self.paradigm!r}")


def evaluate_documents(gt: Document, pred: Document, options: EvalOptions = EvalOptions()) -> EvalReport:
    """Score one prediction against its ground truth."""
    pf1, matching = metrics.primitive_f1(gt.sketch, pred.sketch, options.match_threshold)
    report = EvalReport(
        acc=metrics.accuracy(gt.sketch, pred.sketch, matching, options.grid),
        param_mse=metrics.param_mse(gt.sketch, pred.sketch, matching),
        img_mse=metrics.img_mse(
            raster.render(gt.sketch, options.render_size, options.render_size, options.stroke),
            raster.render(pred.sketch, options.render_size, options.render_size, options.stroke),
        ),
        cd=metrics.chamfer(
            raster.sample_points(gt.sketch, options.samples_per_primitive),
            raster.sample_points(pred.sketch, options.samples_per_primitive),
        ),
        pf1=pf1,
        cf1=metrics.constraint_f1(gt.constraints, pred.constraints, matching),
        matched=len(matching.pairs),
        unmatched_gt=len(matching.unmatched_gt),
        unmatched_pred=len(matching.unmatched_pred),
    )
    if options.paradigm == "dimension":
        da, breakdown = metrics.dimension_accuracy(
            gt.dimensions, pred.dimensions, gt.sketch, pred.sketch, options.da
        )
        report.da = da
        report.da_breakdown = breakdown
    return report


@dataclass
class CorpusEvalResult:
    """Evaluation over a corpus: per-pair reports, aggregate means, skips."""

    paradigm: str
    pair_reports: dict[str, EvalReport] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)

    @property
    def aggregate(self) -> dict[str, float]:
        names = sorted(self.pair_reports)
        if not names:
            return {}
        keys = ["acc", "param_mse", "img_mse", "cd", "pf1", "cf1"]
        if self.paradigm == "dimension":
            keys.append("da")
        return {
            k: sum(getattr(self.pair_reports[n], k) for n in names) / len(names) for k in keys
        }

    def to_dict(self) -> dict:
        return {
            "paradigm": self.paradigm,
            "aggregate": self.aggregate,
            "pairs": {n: r.to_dict() for n, r in sorted(self.pair_reports.items())},
            "skipped": dict(sorted(self.skipped.items())),
        }


def evaluate_corpus(
    gt_dir: str | Path,
    pred_dir: str | Path,
    options: EvalOptions = EvalOptions(),
    jobs: int = 1,
) -> CorpusEvalResult:
    """Pair documents by filename stem and evaluate each pair.

    Ground truth files ending in .json or .dxf are matched against a file of
    the same name in pred_dir; missing or unreadable counterparts are
    recorded as skips. Aggregates are unweighted means over scored pairs.
    """
    gt_root = Path(gt_dir)
    pred_root = Path(pred_dir)
    result = CorpusEvalResult(paradigm=options.paradigm)
    gt_files = sorted(
        (p for p in gt_root.iterdir() if p.suffix.lower() in (".json", ".dxf")),
        key=lambda p: p.name,
    )

    def run(gt_path: Path) -> tuple[str, EvalReport | None, str | None]:
        name = gt_path.name
        pred_path = pred_root / name
        if not pred_path.exists():
            return name, None, "missing prediction"
        try:
            gt_doc = load_document(gt_path)
            pred_doc = load_document(pred_path)
            return name, evaluate_documents(gt_doc, pred_doc, options), None
        except DraftkitError as exc:
            return name, None, str(exc)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run, gt_files))
    else:
        outcomes = [run(p) for p in gt_files]

    for name, report, error in outcomes:
        if report is None:
            result.skipped[name] = error or "unknown error"
        else:
            result.pair_reports[name] = report
    return result
