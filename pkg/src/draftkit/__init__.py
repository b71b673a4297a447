"""draftkit: parametric 2D drawing toolkit.

Geometry primitives and sketches, DXF/JSON interchange, constraint
detection, dimension annotation, deterministic rasterization, and an
evaluation metric suite, wired together by a corpus pipeline and CLI.
"""
from draftkit.codec import Document, emit_dxf, emit_json, parse_dxf, parse_json
from draftkit.constraints import (
    Constraint,
    ToleranceConfig,
    classify_pair,
    classify_single,
    extract_constraints,
)
from draftkit.dimensions import (
    AnnotationPolicy,
    Dimension,
    Placement,
    place_dimension,
    synthesize_dimensions,
)
from draftkit.geometry import (
    Arc,
    Circle,
    ElementRef,
    Line,
    NormalizationTransform,
    ParamVector,
    Point,
    Primitive,
    Sketch,
    Violation,
    arc_endpoints,
    denormalize_sketch,
    normalize_sketch,
    param_vector,
    resolve_element,
    validate_sketch,
)
from draftkit.metrics import (
    DAConfig,
    EvalReport,
    Matching,
    accuracy,
    assign_min_cost,
    ce_loss,
    chamfer,
    constraint_f1,
    dimension_accuracy,
    img_mse,
    p_mse_loss,
    param_mse,
    primitive_f1,
    total_loss,
)
from draftkit.raster import PointSample, RasterImage, render, sample_points, write_png

__version__ = "0.1.0"

__all__ = [
    "AnnotationPolicy",
    "Arc",
    "Circle",
    "Constraint",
    "DAConfig",
    "Dimension",
    "Document",
    "ElementRef",
    "EvalReport",
    "Line",
    "Matching",
    "NormalizationTransform",
    "ParamVector",
    "Placement",
    "Point",
    "PointSample",
    "Primitive",
    "RasterImage",
    "Sketch",
    "ToleranceConfig",
    "Violation",
    "accuracy",
    "arc_endpoints",
    "assign_min_cost",
    "ce_loss",
    "chamfer",
    "classify_pair",
    "classify_single",
    "constraint_f1",
    "denormalize_sketch",
    "dimension_accuracy",
    "emit_dxf",
    "emit_json",
    "extract_constraints",
    "img_mse",
    "normalize_sketch",
    "p_mse_loss",
    "param_mse",
    "param_vector",
    "parse_dxf",
    "parse_json",
    "place_dimension",
    "primitive_f1",
    "render",
    "resolve_element",
    "sample_points",
    "synthesize_dimensions",
    "total_loss",
    "validate_sketch",
    "write_png",
]
