import json

import numpy as np
import pytest

from nodal_morse.cli import (
    dump_instance,
    load_instance,
    main,
    parse_instance,
    run_campaign,
)

PATH3_TEXT = """{
  "vertices": 3,
  "edges": [
    {"u": 0, "v": 1, "h": -1},
    {"u": 1, "v": 2, "h": -1}
  ],
  "diagonal": [1, 2, 1]
}
"""


@pytest.fixture
def path3_file(tmp_path):
    path = tmp_path / "path3.json"
    path.write_text(PATH3_TEXT)
    return path


@pytest.fixture
def two_triangle_file(tmp_path, two_triangle_operator):
    path = tmp_path / "two_triangles.json"
    path.write_text(dump_instance(two_triangle_operator))
    return path


def test_round_trip_is_byte_identical(two_triangle_operator):
    text = dump_instance(two_triangle_operator)
    op = parse_instance(text)
    assert dump_instance(op) == text


def test_parse_rejects_missing_field():
    with pytest.raises(ValueError, match="diagonal"):
        parse_instance('{"vertices": 2, "edges": []}')


def test_parse_rejects_bad_edge_field():
    with pytest.raises(ValueError, match="edge 0"):
        parse_instance('{"vertices": 2, "edges": [{"u": 0, "w": 1}], "diagonal": [0, 0]}')


def test_load_instance(path3_file, path3_laplacian):
    op = load_instance(str(path3_file))
    assert np.array_equal(op.matrix, path3_laplacian.matrix)


def test_analyze_pass(path3_file, capsys):
    code = main(["analyze", "--file", str(path3_file), "--n", "3"])
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    assert report["defect"] == 0
    assert report["nu"] == 2
    assert report["mu"] == 3
    assert report["passed"] is True


def test_analyze_hypothesis_violation(two_triangle_file, capsys):
    code = main(["analyze", "--file", str(two_triangle_file), "--n", "4"])
    captured = capsys.readouterr()
    assert code == 3
    report = json.loads(captured.out)
    assert report["hypotheses"]["nonvanishing"] is False
    assert report["vanishing_analysis"]["x0"] == 2
    assert report["vanishing_analysis"]["fd_nullity"] == 2


def test_analyze_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 3, "edges": [')
    code = main(["analyze", "--file", str(bad), "--n", "1"])
    captured = capsys.readouterr()
    assert code == 2
    assert "line" in captured.err


def test_verify_small_campaign(capsys):
    code = main(
        [
            "verify", "--trials", "5", "--max-vertices", "6",
            "--max-extra-edges", "3", "--seed", "7", "--json",
        ]
    )
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    s = report["summary"]
    assert s["trials"] == 5
    assert s["passed"] + s["skipped_hypotheses"] + s["failures"] == 5
    assert s["failures"] == 0


def test_verify_deterministic(capsys):
    argv = [
        "verify", "--trials", "4", "--max-vertices", "6",
        "--max-extra-edges", "2", "--seed", "3", "--json",
    ]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second


def test_verify_trees_have_zero_defect():
    report = run_campaign(10, 5, 0, seed=1)
    ok = [r for r in report["records"] if r["status"] == "ok"]
    assert ok
    for r in ok:
        assert r["beta"] == 0
        assert r["defect"] == 0
        assert r["index_Q_kernel"] == 0


def test_campaign_worker_pool_matches_serial():
    serial = run_campaign(4, 6, 2, seed=11, workers=1)
    pooled = run_campaign(4, 6, 2, seed=11, workers=2)
    assert serial == pooled


def test_hill_free_band(capsys):
    code = main(["hill", "--potential", "zero", "--band", "1", "--samples", "33"])
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    for row in report["samples"]:
        assert row["lambda"] == pytest.approx(row["alpha"] ** 2, abs=1e-6)
    assert report["curvature"]["fd"] == pytest.approx(2.0, abs=1e-4)
    assert report["curvature"]["analytic"] == pytest.approx(2.0, abs=1e-4)


def test_hill_shifted_band(capsys):
    code = main(
        ["hill", "--potential", "const:5", "--band", "1", "--samples", "9"]
    )
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    for row in report["samples"]:
        assert row["lambda"] == pytest.approx(row["alpha"] ** 2 + 5.0, abs=1e-5)


def test_hill_csv(capsys):
    code = main(
        ["hill", "--potential", "zero", "--band", "1", "--samples", "5", "--csv"]
    )
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.strip().splitlines()
    assert lines[0] == "alpha,lambda"
    assert len(lines) == 6
    alpha, lam = lines[1].split(",")
    assert float(alpha) == pytest.approx(-np.pi)
    assert float(lam) == pytest.approx(np.pi**2, abs=1e-6)


def test_hill_bad_potential(capsys):
    code = main(["hill", "--potential", "exp:1", "--band", "1"])
    captured = capsys.readouterr()
    assert code == 2
    assert "parse error" in captured.err
