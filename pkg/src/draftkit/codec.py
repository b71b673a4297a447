"""Document model and the DXF / JSON interchange codecs.

A Document bundles a sketch with its constraints and dimensions. Two formats
are supported: a minimal ASCII DXF entity subset (POINT, LINE, CIRCLE, ARC,
DIMENSION; geometry and dimensions only) and a canonical JSON schema with
three top-level arrays plus an optional frame object (the one place
constraints and the normalization transform persist). Both emitters are
deterministic: equal documents produce byte-identical text.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from draftkit.constraints import CONSTRAINT_KINDS, Constraint
from draftkit.dimensions import DIMENSION_KINDS, Dimension, Placement
from draftkit.errors import (
    DanglingReferenceError,
    EmptyEntitiesError,
    MalformedGroupCodeError,
    SchemaViolationError,
    TruncatedEntityError,
)
from draftkit.geometry import (
    ELEMENT_TAGS,
    Arc,
    Circle,
    ElementRef,
    Line,
    NormalizationTransform,
    Point,
    Primitive,
    Sketch,
)


@dataclass(frozen=True)
class Document:
    sketch: Sketch = Sketch()
    constraints: tuple[Constraint, ...] = ()
    dimensions: tuple[Dimension, ...] = ()
    source: str = field(default="json", compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.constraints, tuple):
            object.__setattr__(self, "constraints", tuple(self.constraints))
        if not isinstance(self.dimensions, tuple):
            object.__setattr__(self, "dimensions", tuple(self.dimensions))


def validate_document(doc: Document) -> None:
    """Raise DanglingReferenceError if any constraint/dimension ref is out of range."""
    n = len(doc.sketch.primitives)
    for what, items in (("constraint", doc.constraints), ("dimension", doc.dimensions)):
        for item in items:
            for ref in item.refs:
                if not 0 <= ref.index < n:
                    raise DanglingReferenceError(
                        f"{what} references primitive {ref.index} in a sketch of {n}"
                    )


# --- DXF ------------------------------------------------------------------

_DXF_DIM_KIND_CODE = {"length": 0, "angle": 2, "diameter": 3, "radius": 4}
_DXF_CODE_DIM_KIND = {v: k for k, v in _DXF_DIM_KIND_CODE.items()}
_ELEMENT_CODE = {tag: i for i, tag in enumerate(ELEMENT_TAGS)}
_CODE_ELEMENT = {i: tag for tag, i in _ELEMENT_CODE.items()}


@dataclass
class DxfDiagnostics:
    """Parse side notes: unknown entity types seen and how often."""

    skipped: dict[str, int] = field(default_factory=dict)


def _f(value: float) -> str:
    return f"{value:.6f}"


def _pairs(*items: tuple[int, str]) -> str:
    return "".join(f"{code}\n{val}\n" for code, val in items)


def emit_dxf(doc: Document, annotated: bool = True) -> str:
    """Serialize geometry (and dimensions, unless annotated=False) as ASCII DXF.

    Numbers print with 6 decimal places. Constraints and the frame are not
    representable in this entity subset and are dropped; use JSON for them.
    """
    out: list[str] = ["0\nSECTION\n2\nENTITIES\n"]
    for p in doc.sketch.primitives:
        if isinstance(p, Point):
            out.append("0\nPOINT\n8\n0\n" + _pairs((10, _f(p.x_p)), (20, _f(p.y_p))))
        elif isinstance(p, Line):
            tags = [(10, _f(p.x_start)), (20, _f(p.y_start)), (11, _f(p.x_end)), (21, _f(p.y_end))]
            linetype = "6\nDASHED\n" if p.v == 0 else ""
            out.append("0\nLINE\n8\n0\n" + linetype + _pairs(*tags))
        elif isinstance(p, Circle):
            out.append(
                "0\nCIRCLE\n8\n0\n" + _pairs((10, _f(p.x_c)), (20, _f(p.y_c)), (40, _f(p.r)))
            )
        elif isinstance(p, Arc):
            out.append(
                "0\nARC\n8\n0\n"
                + _pairs(
                    (10, _f(p.x_a)),
                    (20, _f(p.y_a)),
                    (40, _f(p.r)),
                    (50, _f(p.theta_start)),
                    (51, _f(p.theta_end)),
                )
            )
        else:
            raise TypeError(f"not a primitive: {p!r}")
    if annotated:
        for d in doc.dimensions:
            tags = [(70, str(_DXF_DIM_KIND_CODE[d.kind])), (42, _f(d.value))]
            for ref in d.refs:
                tags.append((71, str(ref.index)))
                tags.append((72, str(_ELEMENT_CODE[ref.element])))
            if d.placement is not None:
                tags.append((11, _f(d.placement.anchor[0])))
                tags.append((21, _f(d.placement.anchor[1])))
                tags.append((40, _f(d.placement.offset)))
            out.append("0\nDIMENSION\n8\n0\n" + _pairs(*tags))
    out.append("0\nENDSEC\n0\nEOF\n")
    return "".join(out)


def _tag_stream(text: str) -> list[tuple[int, str]]:
    lines = text.replace("\r\n", "\n").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) % 2 != 0:
        raise MalformedGroupCodeError("dangling group code line at end of input")
    tags: list[tuple[int, str]] = []
    for i in range(0, len(lines), 2):
        code_line = lines[i].strip()
        try:
            code = int(code_line)
        except ValueError:
            raise MalformedGroupCodeError(f"group code {code_line!r} is not an integer") from None
        tags.append((code, lines[i + 1].strip()))
    return tags


def _num(entity: str, code: int, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise MalformedGroupCodeError(
            f"{entity} group {code} value {value!r} is not numeric"
        ) from None


def _require(entity: str, fields: dict[int, float], *codes: int) -> list[float]:
    missing = [c for c in codes if c not in fields]
    if missing:
        raise TruncatedEntityError(f"{entity} entity missing group code(s) {missing}")
    return [fields[c] for c in codes]


def parse_dxf_with_diagnostics(text: str) -> tuple[Document, DxfDiagnostics]:
    """Parse the DXF entity subset; unknown entity types are skipped and counted."""
    tags = _tag_stream(text)
    diag = DxfDiagnostics()

    # Locate the ENTITIES section.
    start = None
    for i in range(len(tags) - 1):
        if tags[i] == (0, "SECTION") and tags[i + 1] == (2, "ENTITIES"):
            start = i + 2
            break
    if start is None:
        raise EmptyEntitiesError("no ENTITIES section found")

    # Split into entities at each (0, name) tag until ENDSEC.
    entities: list[tuple[str, list[tuple[int, str]]]] = []
    current: list[tuple[int, str]] | None = None
    ended = False
    for code, value in tags[start:]:
        if code == 0:
            if value == "ENDSEC":
                ended = True
                break
            current = []
            entities.append((value, current))
        elif current is not None:
            current.append((code, value))
    if not ended:
        raise TruncatedEntityError("ENTITIES section is not closed by ENDSEC")
    if not entities:
        raise EmptyEntitiesError("ENTITIES section holds no entities")

    prims: list[Primitive] = []
    dims: list[Dimension] = []
    for name, body in entities:
        if name == "POINT":
            fields = {c: _num(name, c, v) for c, v in body if c in (10, 20)}
            x, y = _require(name, fields, 10, 20)
            prims.append(Point(x, y))
        elif name == "LINE":
            fields = {c: _num(name, c, v) for c, v in body if c in (10, 20, 11, 21)}
            xs, ys, xe, ye = _require(name, fields, 10, 20, 11, 21)
            linetypes = [v for c, v in body if c == 6]
            v_flag = 0 if any(lt.upper() == "DASHED" for lt in linetypes) else 1
            prims.append(Line(xs, ys, xe, ye, v_flag))
        elif name == "CIRCLE":
            fields = {c: _num(name, c, v) for c, v in body if c in (10, 20, 40)}
            x, y, r = _require(name, fields, 10, 20, 40)
            prims.append(Circle(x, y, r))
        elif name == "ARC":
            fields = {c: _num(name, c, v) for c, v in body if c in (10, 20, 40, 50, 51)}
            x, y, r, ts, te = _require(name, fields, 10, 20, 40, 50, 51)
            prims.append(Arc(x, y, r, ts % 360.0, te % 360.0))
        elif name == "DIMENSION":
            dims.append(_parse_dimension(body))
        else:
            diag.skipped[name] = diag.skipped.get(name, 0) + 1

    doc = Document(sketch=Sketch(primitives=tuple(prims)), dimensions=tuple(dims), source="dxf")
    validate_document(doc)
    return doc, diag


def _parse_dimension(body: list[tuple[int, str]]) -> Dimension:
    kind_code: int | None = None
    value: float | None = None
    ref_indices: list[int] = []
    ref_elements: list[int] = []
    anchor_x: float | None = None
    anchor_y: float | None = None
    offset: float | None = None
    for code, raw in body:
        if code == 70:
            kind_code = int(_num("DIMENSION", code, raw))
        elif code == 42:
            value = _num("DIMENSION", code, raw)
        elif code == 71:
            ref_indices.append(int(_num("DIMENSION", code, raw)))
        elif code == 72:
            ref_elements.append(int(_num("DIMENSION", code, raw)))
        elif code == 11:
            anchor_x = _num("DIMENSION", code, raw)
        elif code == 21:
            anchor_y = _num("DIMENSION", code, raw)
        elif code == 40:
            offset = _num("DIMENSION", code, raw)
    if kind_code is None or value is None:
        raise TruncatedEntityError("DIMENSION entity missing group code 70 or 42")
    if kind_code not in _DXF_CODE_DIM_KIND:
        raise TruncatedEntityError(f"DIMENSION kind code {kind_code} not supported")
    if len(ref_indices) != len(ref_elements) or not ref_indices:
        raise TruncatedEntityError("DIMENSION entity reference codes 71/72 unbalanced")
    refs = tuple(
        ElementRef(i, _CODE_ELEMENT.get(e, "whole")) for i, e in zip(ref_indices, ref_elements)
    )
    placement = None
    if offset is not None and anchor_x is not None and anchor_y is not None:
        placement = Placement(offset=offset, anchor=(anchor_x, anchor_y))
    return Dimension(_DXF_CODE_DIM_KIND[kind_code], value, refs, placement)


def parse_dxf(text: str) -> Document:
    """Parse ASCII DXF into a Document, discarding the diagnostics sidecar."""
    doc, _ = parse_dxf_with_diagnostics(text)
    return doc


# --- JSON -----------------------------------------------------------------

_PRIM_FIELDS = {
    "point": ("x_p", "y_p"),
    "line": ("x_start", "y_start", "x_end", "y_end", "v"),
    "circle": ("x_c", "y_c", "r"),
    "arc": ("x_a", "y_a", "r", "theta_start", "theta_end"),
}
_PRIM_TYPES = {"point": Point, "line": Line, "circle": Circle, "arc": Arc}


def document_to_dict(doc: Document) -> dict[str, Any]:
    prims = []
    for p in doc.sketch.primitives:
        entry: dict[str, Any] = {"kind": p.kind}
        for name in _PRIM_FIELDS[p.kind]:
            entry[name] = getattr(p, name)
        prims.append(entry)
    constraints = [
        {
            "kind": c.kind,
            "refs": [{"index": r.index, "element": r.element} for r in c.refs],
        }
        for c in doc.constraints
    ]
    dimensions = []
    for d in doc.dimensions:
        entry = {
            "kind": d.kind,
            "value": d.value,
            "refs": [{"index": r.index, "element": r.element} for r in d.refs],
        }
        if d.placement is not None:
            entry["placement"] = {
                "offset": d.placement.offset,
                "anchor": [d.placement.anchor[0], d.placement.anchor[1]],
            }
        dimensions.append(entry)
    payload: dict[str, Any] = {
        "primitives": prims,
        "constraints": constraints,
        "dimensions": dimensions,
    }
    if doc.sketch.frame is not None:
        f = doc.sketch.frame
        payload["frame"] = {"scale": f.scale, "offset_x": f.offset_x, "offset_y": f.offset_y}
    return payload


def emit_json(doc: Document) -> str:
    """Canonical JSON: sorted keys, 2-space indent, shortest-repr floats."""
    return json.dumps(document_to_dict(doc), sort_keys=True, indent=2) + "\n"


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaViolationError(msg)


def _as_number(obj: Any, where: str) -> float:
    _expect(isinstance(obj, (int, float)) and not isinstance(obj, bool), f"{where} must be a number")
    return float(obj)


def _parse_refs(obj: Any, where: str) -> tuple[ElementRef, ...]:
    _expect(isinstance(obj, list) and obj, f"{where}.refs must be a nonempty array")
    refs = []
    for i, r in enumerate(obj):
        _expect(isinstance(r, dict), f"{where}.refs[{i}] must be an object")
        _expect("index" in r and "element" in r, f"{where}.refs[{i}] missing index/element")
        idx = r["index"]
        _expect(isinstance(idx, int) and not isinstance(idx, bool), f"{where}.refs[{i}].index must be an integer")
        tag = r["element"]
        _expect(tag in ELEMENT_TAGS, f"{where}.refs[{i}].element {tag!r} unknown")
        refs.append(ElementRef(idx, tag))
    return tuple(refs)


def document_from_dict(obj: Any) -> Document:
    _expect(isinstance(obj, dict), "document must be a JSON object")
    for key in ("primitives", "constraints", "dimensions"):
        _expect(key in obj, f"document missing {key!r} array")
        _expect(isinstance(obj[key], list), f"{key!r} must be an array")

    prims: list[Primitive] = []
    for i, entry in enumerate(obj["primitives"]):
        where = f"primitives[{i}]"
        _expect(isinstance(entry, dict), f"{where} must be an object")
        kind = entry.get("kind")
        _expect(kind in _PRIM_FIELDS, f"{where}.kind {kind!r} unknown")
        values = []
        for name in _PRIM_FIELDS[kind]:
            _expect(name in entry, f"{where} missing field {name!r}")
            values.append(_as_number(entry[name], f"{where}.{name}"))
        if kind == "line":
            v = entry["v"]
            _expect(v in (0, 1), f"{where}.v must be 0 or 1")
            values[-1] = int(v)
        prims.append(_PRIM_TYPES[kind](*values))

    constraints: list[Constraint] = []
    for i, entry in enumerate(obj["constraints"]):
        where = f"constraints[{i}]"
        _expect(isinstance(entry, dict), f"{where} must be an object")
        kind = entry.get("kind")
        _expect(kind in CONSTRAINT_KINDS, f"{where}.kind {kind!r} unknown")
        constraints.append(Constraint(kind, _parse_refs(entry.get("refs"), where)))

    dims: list[Dimension] = []
    for i, entry in enumerate(obj["dimensions"]):
        where = f"dimensions[{i}]"
        _expect(isinstance(entry, dict), f"{where} must be an object")
        kind = entry.get("kind")
        _expect(kind in DIMENSION_KINDS, f"{where}.kind {kind!r} unknown")
        _expect("value" in entry, f"{where} missing field 'value'")
        value = _as_number(entry["value"], f"{where}.value")
        refs = _parse_refs(entry.get("refs"), where)
        placement = None
        if "placement" in entry and entry["placement"] is not None:
            pl = entry["placement"]
            _expect(isinstance(pl, dict), f"{where}.placement must be an object")
            _expect("offset" in pl and "anchor" in pl, f"{where}.placement missing offset/anchor")
            anchor = pl["anchor"]
            _expect(
                isinstance(anchor, list) and len(anchor) == 2,
                f"{where}.placement.anchor must be [x, y]",
            )
            placement = Placement(
                offset=_as_number(pl["offset"], f"{where}.placement.offset"),
                anchor=(
                    _as_number(anchor[0], f"{where}.placement.anchor[0]"),
                    _as_number(anchor[1], f"{where}.placement.anchor[1]"),
                ),
            )
        dims.append(Dimension(kind, value, refs, placement))

    frame = None
    if "frame" in obj and obj["frame"] is not None:
        fr = obj["frame"]
        _expect(isinstance(fr, dict), "frame must be an object")
        for name in ("scale", "offset_x", "offset_y"):
            _expect(name in fr, f"frame missing field {name!r}")
        frame = NormalizationTransform(
            scale=_as_number(fr["scale"], "frame.scale"),
            offset_x=_as_number(fr["offset_x"], "frame.offset_x"),
            offset_y=_as_number(fr["offset_y"], "frame.offset_y"),
        )

    doc = Document(
        sketch=Sketch(primitives=tuple(prims), frame=frame),
        constraints=tuple(constraints),
        dimensions=tuple(dims),
        source="json",
    )
    validate_document(doc)
    return doc


def parse_json(text: str) -> Document:
    """Parse canonical JSON into a Document.

    Raises SchemaViolationError for structural problems and
    DanglingReferenceError when refs point past the primitive list.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolationError(f"not valid JSON: {exc}") from None
    return document_from_dict(obj)
