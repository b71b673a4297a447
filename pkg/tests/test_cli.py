"""End-to-end command-line flows through main()."""
import json
from pathlib import Path

from draftkit import _kernels
from draftkit.cli import main
from draftkit.codec import Document, emit_json, parse_json
from draftkit.fixtures import rectangle_sketch
from draftkit.geometry import Arc, Point, Sketch


def run(*argv):
    return main([str(a) for a in argv])


def write_rect(path):
    doc = Document(sketch=rectangle_sketch(100, 100, 500, 300))
    Path(path).write_text(emit_json(doc))
    return path


def test_gen_fixtures_is_seeded_and_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("gen-fixtures", "--out", out, "--count", 4, "--seed", 7) == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == ["0000.json", "0001.json", "0002.json", "0003.json"]
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
        parse_json((a / name).read_text())
    assert "wrote 4 fixture documents" in capsys.readouterr().out


def test_gen_fixtures_perturbed_twins(tmp_path):
    out = tmp_path / "fx"
    assert run("gen-fixtures", "--out", out, "--count", 3, "--perturb", "2.0") == 0
    for i in range(3):
        original = parse_json((out / f"{i:04d}.json").read_text())
        twin = parse_json((out / "perturbed" / f"{i:04d}.json").read_text())
        assert len(twin.sketch.primitives) == len(original.sketch.primitives)
        assert twin.sketch.primitives != original.sketch.primitives


def test_filter_writes_manifest(tmp_path, capsys):
    out = tmp_path / "fx"
    run("gen-fixtures", "--out", out, "--count", 4, "--min-prims", 3, "--max-prims", 3)
    manifest = tmp_path / "manifest.jsonl"
    inputs = sorted(out.glob("*.json"))
    code = run("filter", *inputs, "--min-prims", 4, "--out", manifest)
    assert code == 0
    records = [json.loads(line) for line in manifest.read_text().splitlines()]
    assert len(records) == 4
    assert all(not r["retained"] for r in records)
    assert "retained 0/4" in capsys.readouterr().out


def test_filter_flags_unreadable_with_exit_2(tmp_path):
    rect = write_rect(tmp_path / "ok.json")
    bad = tmp_path / "bad.json"
    bad.write_text("not a document")
    assert run("filter", rect, bad, "--out", tmp_path / "m.jsonl") == 2


def test_process_emits_all_artifacts(tmp_path, capsys):
    rect = write_rect(tmp_path / "rect.json")
    out = tmp_path / "out"
    code = run("process", rect, "--out", out, "--render-size", 64)
    assert code == 0
    assert {p.name for p in out.iterdir()} == {
        "rect.dxf",
        "rect.annotated.dxf",
        "rect.json",
        "rect.png",
        "manifest.jsonl",
    }
    assert "processed 1/1" in capsys.readouterr().out
    record = json.loads((out / "manifest.jsonl").read_text())
    assert record["retained"] and sorted(record["outputs"]) == [
        "dxf",
        "dxf_annotated",
        "json",
        "png",
    ]


def test_process_no_annotate(tmp_path):
    rect = write_rect(tmp_path / "rect.json")
    out = tmp_path / "out"
    assert run("process", rect, "--no-annotate", "--out", out, "--render-size", 64) == 0
    doc = parse_json((out / "rect.json").read_text())
    assert doc.dimensions == ()


def test_process_partial_failure_exits_2(tmp_path):
    rect = write_rect(tmp_path / "rect.json")
    dot = tmp_path / "dot.json"
    dot.write_text(emit_json(Document(sketch=Sketch(primitives=(Point(5, 5),)))))
    out = tmp_path / "out"
    assert run("process", rect, dot, "--out", out, "--render-size", 64) == 2
    assert (out / "rect.json").is_file()
    assert not (out / "dot.json").exists()


def test_convert_round_trip_and_png(tmp_path):
    rect = write_rect(tmp_path / "rect.json")
    as_dxf = tmp_path / "rect.dxf"
    back = tmp_path / "back.json"
    assert run("convert", rect, "--to", "dxf", "--out", as_dxf) == 0
    assert run("convert", as_dxf, "--to", "json", "--out", back) == 0
    assert parse_json(back.read_text()).sketch == parse_json(rect.read_text()).sketch

    png = tmp_path / "rect.png"
    assert run("convert", rect, "--to", "png", "--render-size", 64, "--out", png) == 0
    assert png.read_bytes().startswith(b"\x89PNG\r\n\x1a\n")


def test_convert_missing_input_is_a_hard_error(tmp_path, capsys):
    assert run("convert", tmp_path / "ghost.json", "--to", "json", "--out", tmp_path / "o") == 1
    assert "error:" in capsys.readouterr().err


def test_annotate_adds_dimensions(tmp_path, capsys):
    doc = Document(
        sketch=Sketch(
            primitives=rectangle_sketch(100, 100, 500, 300).primitives
            + (Arc(700, 700, 80, 0, 90),)
        )
    )
    src = tmp_path / "doc.json"
    src.write_text(emit_json(doc))

    plain = tmp_path / "plain.json"
    assert run("annotate", src, "--out", plain) == 0
    assert [d.kind for d in parse_json(plain.read_text()).dimensions] == [
        "length",
        "length",
        "length",
        "length",
        "radius",
    ]

    with_angles = tmp_path / "angles.json"
    assert run("annotate", src, "--arc-angles", "--gap", "20", "--out", with_angles) == 0
    kinds = [d.kind for d in parse_json(with_angles.read_text()).dimensions]
    assert kinds.count("angle") == 1
    assert "annotated 6 dimensions" in capsys.readouterr().out

    as_dxf = tmp_path / "annotated.dxf"
    assert run("annotate", src, "--out", as_dxf) == 0
    assert as_dxf.read_text().count("DIMENSION") == 5


def test_extract_constraints_rectangle(tmp_path, capsys):
    rect = write_rect(tmp_path / "rect.json")
    out = tmp_path / "with_constraints.json"
    assert run("extract-constraints", rect, "--out", out) == 0
    doc = parse_json(out.read_text())
    assert len(doc.constraints) == 14
    assert "extracted 14 constraints" in capsys.readouterr().out


def test_evaluate_identical_corpus(tmp_path, capsys):
    out = tmp_path / "fx"
    run("gen-fixtures", "--out", out, "--count", 3, "--min-prims", 3, "--max-prims", 5)
    report = tmp_path / "report.json"
    code = run("evaluate", out, out, "--render-size", 64, "--out", report)
    assert code == 0
    stdout = capsys.readouterr().out
    assert "paradigm: standard" in stdout
    assert "scored pairs: 3   skipped: 0" in stdout
    assert "acc: 1.000000" in stdout

    payload = json.loads(report.read_text())
    assert payload["aggregate"]["pf1"] == 1.0
    assert payload["skipped"] == {}


def test_evaluate_dimension_paradigm_reports_da(tmp_path, capsys):
    out = tmp_path / "fx"
    run("gen-fixtures", "--out", out, "--count", 2, "--min-prims", 3, "--max-prims", 4)
    assert run("evaluate", out, out, "--paradigm", "dimension", "--render-size", 64) == 0
    stdout = capsys.readouterr().out
    assert "paradigm: dimension" in stdout
    assert "da: 1.000000" in stdout


def test_evaluate_partial_corpus_exits_2(tmp_path):
    gt = tmp_path / "gt"
    pred = tmp_path / "pred"
    run("gen-fixtures", "--out", gt, "--count", 2, "--min-prims", 3, "--max-prims", 4)
    pred.mkdir()
    (pred / "0000.json").write_text((gt / "0000.json").read_text())
    assert run("evaluate", gt, pred, "--render-size", 64) == 2


def test_evaluate_nothing_scored_exits_1(tmp_path):
    gt = tmp_path / "gt"
    pred = tmp_path / "pred"
    run("gen-fixtures", "--out", gt, "--count", 1, "--min-prims", 3, "--max-prims", 4)
    pred.mkdir()
    assert run("evaluate", gt, pred, "--render-size", 64) == 1


def test_kernels_reports_active_backend(capsys):
    assert run("kernels") == 0
    stdout = capsys.readouterr().out
    assert f"active backend: {_kernels.backend_name()}" in stdout
    for name in _kernels.available_backends():
        assert name in stdout
