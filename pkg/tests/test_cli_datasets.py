import json
from pathlib import Path

import pytest

from aquanim.cli import cmd_render, cmd_report, cmd_verify
from aquanim.datasets import load_confusion_csv, load_samples, load_stacked_csv
from aquanim.errors import ParseError, ValidationError

SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"
DATA_DIR = Path(__file__).resolve().parent.parent / "datasets"
SHIPPED_SPECS = sorted(p for p in SPEC_DIR.glob("*.json") if p.name != "corrupted.json")


# --- datasets ------------------------------------------------------------


def test_load_samples_with_header(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("value\n1.5\n2.5\n")
    assert load_samples(path) == [1.5, 2.5]


def test_load_samples_bad_cell(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("1.5\nnot-a-number\n")
    with pytest.raises(ParseError) as err:
        load_samples(path)
    assert err.value.line == 2


def test_load_confusion_table(tmp_path):
    cm = load_confusion_csv(DATA_DIR / "table1.csv")
    assert cm.total == 3820
    assert cm.labels == ("None", "Mild", "Severe")
    assert cm.counts[2] == (85, 34, 1666)


def test_load_confusion_negative_count(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(",a,b\na,1,-2\nb,0,3\n")
    with pytest.raises(ValidationError):
        load_confusion_csv(path)


def test_load_stacked(tmp_path):
    chart = load_stacked_csv(DATA_DIR / "bars.csv")
    assert chart.categories == ("Alpha", "Beta", "Gamma")
    assert chart.level_names == ("low", "mid", "high")
    assert chart.heights[0] == (2.0, 1.0, 3.0)


def test_load_dataset_dispatch():
    from aquanim.datasets import load_dataset

    assert load_dataset(DATA_DIR / "table1.csv", "confusion_matrix").total == 3820
    assert len(load_dataset(DATA_DIR / "samples.csv", "samples")) == 220
    with pytest.raises(ParseError):
        load_dataset(DATA_DIR / "samples.csv", "mystery")


# --- CLI exit codes ----------------------------------------------------------


def test_render_frames_zero_padded(tmp_path):
    out = tmp_path / "frames"
    assert cmd_render(str(SPEC_DIR / "rebin.json"), str(out), "frames") == 0
    files = sorted(p.name for p in out.glob("*.svg"))
    assert files[0] == "000.svg"
    assert len(files) == 31


def test_render_keyframes_document(tmp_path):
    out = tmp_path / "kf.json"
    assert cmd_render(str(SPEC_DIR / "rebin.json"), str(out), "keyframes") == 0
    doc = json.loads(out.read_text())
    assert doc["version"] == 1
    assert len(doc["frames"]) == 31


def test_render_unreadable_spec_is_exit_2(tmp_path):
    missing = tmp_path / "nope.json"
    assert cmd_render(str(missing), str(tmp_path / "o"), "frames") == 2


def test_render_malformed_spec_is_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cmd_render(str(bad), str(tmp_path / "o"), "frames") == 2


def test_render_range_mismatch_is_exit_3(tmp_path, capsys):
    spec = {
        "chart": {"kind": "histogram", "edges": [0, 1, 2], "densities": [0.6, 0.4]},
        "transition": {"kind": "histogram_rebin",
                       "new_edges": [0, 1.5, 3], "new_densities": [0.4, 0.2667]},
        "render": {"fps": 5, "duration": 1.0},
    }
    # unequal areas would also fail; keep the target area exactly 1
    spec["transition"]["new_densities"] = [0.4, 0.26666666666666666]
    path = tmp_path / "mismatch.json"
    path.write_text(json.dumps(spec))
    code = cmd_render(str(path), str(tmp_path / "o"), "frames")
    captured = capsys.readouterr()
    assert code == 3
    assert "RangeMismatch" in captured.err


def test_verify_ok_and_corrupted(capsys):
    assert cmd_verify(str(SPEC_DIR / "rebin.json"), samples=31) == 0
    assert cmd_verify(str(SPEC_DIR / "corrupted.json"), samples=31) == 4
    assert "conservation" in capsys.readouterr().err


def test_verify_endpoints_only():
    assert cmd_verify(str(SPEC_DIR / "corrupted.json"), samples=2) == 0


def test_report_outputs(tmp_path):
    out = tmp_path / "report"
    assert cmd_report(str(SPEC_DIR / "proportion_tip.json"), str(out), samples=11) == 0
    assert (out / "conservation.csv").exists()
    assert (out / "conservation.png").exists()
    assert (out / "frames_strip.png").exists()
    header = (out / "conservation.csv").read_text().splitlines()[0]
    assert header == "t,liquid,area"
