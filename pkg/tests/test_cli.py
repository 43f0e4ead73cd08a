from __future__ import annotations

import json
import re

import pytest

from holoviz.cli import main


@pytest.fixture()
def data_dir(tmp_path):
    return str(tmp_path / "store")


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def ingest_iris(capsys, data_dir, iris_bytes, tmp_path) -> str:
    csv_path = tmp_path / "iris.csv"
    csv_path.write_bytes(iris_bytes)
    code, out, _ = run(capsys, "--data-dir", data_dir, "ingest", str(csv_path))
    assert code == 0
    return re.search(r"dataset (\w+)", out).group(1)


def build_scene(capsys, data_dir, dataset_id: str) -> str:
    code, out, _ = run(capsys, "--data-dir", data_dir, "scene", dataset_id)
    assert code == 0
    return re.search(r"scene (\w+)", out).group(1)


class TestIngest:
    def test_prints_id_and_schema_table(self, capsys, data_dir, iris_bytes, tmp_path):
        csv_path = tmp_path / "iris.csv"
        csv_path.write_bytes(iris_bytes)
        code, out, err = run(capsys, "--data-dir", data_dir, "ingest", str(csv_path))
        assert code == 0 and err == ""
        assert "150 rows" in out
        assert "sepal.length" in out and "Numeric" in out
        assert "variety" in out and "3 categories" in out

    def test_missing_file_is_io_failure(self, capsys, data_dir):
        code, _, err = run(capsys, "--data-dir", data_dir, "ingest", "absent.csv")
        assert code == 2
        assert "error:" in err

    def test_bad_csv_is_validation_failure(self, capsys, data_dir, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_bytes(b"a,b\n1\n")
        code, _, err = run(capsys, "--data-dir", data_dir, "ingest", str(bad))
        assert code == 1
        assert "expected 2" in err

    def test_no_header_flag(self, capsys, data_dir, tmp_path):
        p = tmp_path / "n.csv"
        p.write_bytes(b"1,2,3\n4,5,6\n")
        code, out, _ = run(capsys, "--data-dir", data_dir, "ingest", str(p), "--no-header")
        assert code == 0 and "col1" in out


class TestScene:
    def test_builds_scene_from_dataset(self, capsys, data_dir, iris_bytes, tmp_path):
        dataset_id = ingest_iris(capsys, data_dir, iris_bytes, tmp_path)
        code, out, _ = run(capsys, "--data-dir", data_dir, "scene", dataset_id)
        assert code == 0
        assert "150 nodes" in out and "0 rows dropped" in out

    def test_unknown_dataset(self, capsys, data_dir):
        code, _, err = run(capsys, "--data-dir", data_dir, "scene", "f" * 32)
        assert code == 1 and "not found" in err

    def test_mapping_file(self, capsys, data_dir, iris_bytes, tmp_path):
        dataset_id = ingest_iris(capsys, data_dir, iris_bytes, tmp_path)
        mapping = {"x": "petal.length", "y": "petal.width", "z": "sepal.length"}
        map_path = tmp_path / "map.json"
        map_path.write_text(json.dumps(mapping))
        code, out, _ = run(
            capsys, "--data-dir", data_dir, "scene", dataset_id, "--map", str(map_path)
        )
        assert code == 0 and "150 nodes" in out

    def test_invalid_mapping_file(self, capsys, data_dir, iris_bytes, tmp_path):
        dataset_id = ingest_iris(capsys, data_dir, iris_bytes, tmp_path)
        map_path = tmp_path / "map.json"
        map_path.write_text(json.dumps({"x": "variety", "y": "x", "z": "x"}))
        code, _, err = run(
            capsys, "--data-dir", data_dir, "scene", dataset_id, "--map", str(map_path)
        )
        assert code == 1 and "x" in err


class TestRender:
    def test_writes_quilt_png(self, capsys, data_dir, iris_bytes, tmp_path):
        dataset_id = ingest_iris(capsys, data_dir, iris_bytes, tmp_path)
        scene_id = build_scene(capsys, data_dir, dataset_id)
        out_path = tmp_path / "q.png"
        code, out, _ = run(
            capsys,
            "--data-dir", data_dir,
            "render", scene_id,
            "--views", "2", "--columns", "2", "--rows", "1",
            "--tile-width", "32", "--tile-height", "32",
            "--out", str(out_path),
        )
        assert code == 0
        assert out_path.read_bytes().startswith(b"\x89PNG")

    def test_default_filename_convention(self, capsys, data_dir, iris_bytes, tmp_path, monkeypatch):
        dataset_id = ingest_iris(capsys, data_dir, iris_bytes, tmp_path)
        scene_id = build_scene(capsys, data_dir, dataset_id)
        monkeypatch.chdir(tmp_path)
        code, out, _ = run(
            capsys,
            "--data-dir", data_dir,
            "render", scene_id,
            "--views", "2", "--columns", "2", "--rows", "1",
            "--tile-width", "16", "--tile-height", "16",
        )
        assert code == 0
        assert (tmp_path / f"{scene_id}_qs2x1a1.png").exists()

    def test_ppm_flag(self, capsys, data_dir, iris_bytes, tmp_path):
        dataset_id = ingest_iris(capsys, data_dir, iris_bytes, tmp_path)
        scene_id = build_scene(capsys, data_dir, dataset_id)
        out_path = tmp_path / "q.ppm"
        code, _, _ = run(
            capsys,
            "--data-dir", data_dir,
            "render", scene_id,
            "--views", "1", "--columns", "1", "--rows", "1",
            "--tile-width", "16", "--tile-height", "16",
            "--ppm", "--out", str(out_path),
        )
        assert code == 0
        assert out_path.read_bytes().startswith(b"P6\n16 16\n255\n")

    def test_unknown_scene_exit_one(self, capsys, data_dir):
        code, _, err = run(capsys, "--data-dir", data_dir, "render", "a" * 32)
        assert code == 1 and "not found" in err

    def test_bad_view_count_exit_one(self, capsys, data_dir, iris_bytes, tmp_path):
        dataset_id = ingest_iris(capsys, data_dir, iris_bytes, tmp_path)
        scene_id = build_scene(capsys, data_dir, dataset_id)
        code, _, err = run(
            capsys, "--data-dir", data_dir, "render", scene_id, "--views", "101",
            "--columns", "11", "--rows", "10",
        )
        assert code == 1 and "100" in err
