from __future__ import annotations

import json
from pathlib import Path

import pytest

from hricdv.cli import EXIT_FAILURES, EXIT_OK, EXIT_USAGE, main


def tree(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def campaign(out: Path, *extra: str) -> int:
    return main(["campaign", "--scenario", "homecare", "--method", "random", "--count", "12", "--out", str(out), *extra])


def test_gen_run_report_layout(tmp_path):
    assert main(["gen", "--scenario", "handover", "--method", "mc", "--count", "5", "--out", str(tmp_path)]) == EXIT_OK
    tests = sorted((tmp_path / "tests/handover/mc").glob("*.test"))
    assert [p.name for p in tests] == [f"00{n}.test" for n in range(1, 6)]
    assert tests[2].read_text().startswith("#test 3 mc 3\n")
    assert main(["run", "--scenario", "handover", "--method", "mc", "--profile", "fixed", "--out", str(tmp_path)]) == 0
    assert len(list((tmp_path / "logs/handover/mc/fixed").glob("*.jsonl"))) == 5
    assert main(["report", "--scenario", "handover", "--method", "mc", "--profile", "fixed", "--out", str(tmp_path)]) == 0
    reports = tmp_path / "reports/handover/mc/fixed"
    doc = json.loads((reports / "campaign.json").read_text())
    assert [t["id"] for t in doc["tests"]] == [1, 2, 3, 4, 5]
    assert len((reports / "campaign.csv").read_text().splitlines()) == 6
    assert len((reports / "coverage_curve.csv").read_text().splitlines()) == 6


def test_default_counts(tmp_path):
    assert main(["gen", "--scenario", "homecare", "--method", "bdi", "--out", str(tmp_path)]) == EXIT_OK
    assert len(list((tmp_path / "tests/homecare/bdi").glob("*.test"))) == 50


def test_pipeline_is_byte_identical(tmp_path):
    assert campaign(tmp_path / "a") == EXIT_OK
    assert campaign(tmp_path / "b", "--jobs", "3") == EXIT_OK
    a, b = tree(tmp_path / "a"), tree(tmp_path / "b")
    assert a == b
    assert any(k.endswith("campaign.json") for k in a)


def test_rerun_overwrites_identically(tmp_path):
    campaign(tmp_path)
    first = tree(tmp_path)
    campaign(tmp_path)
    assert tree(tmp_path) == first


def test_corrupt_log_is_skipped(tmp_path, caplog):
    campaign(tmp_path)
    logs = tmp_path / "logs/homecare/random/as-found"
    (logs / "005.jsonl").write_text("{not json\n")
    status = main(["report", "--scenario", "homecare", "--method", "random", "--out", str(tmp_path)])
    assert status == EXIT_FAILURES
    doc = json.loads((tmp_path / "reports/homecare/random/as-found/campaign.json").read_text())
    assert doc["skipped"] == ["005.jsonl"]
    assert len(doc["tests"]) == 11
    assert "skipping 005.jsonl" in caplog.text


def test_broken_test_file_does_not_abort_run(tmp_path):
    main(["gen", "--scenario", "handover", "--method", "random", "--count", "4", "--out", str(tmp_path)])
    (tmp_path / "tests/handover/random/002.test").write_text("#test 2 random 2\n@0 robot release\n")
    status = main(["run", "--scenario", "handover", "--method", "random", "--out", str(tmp_path)])
    assert status == EXIT_FAILURES
    assert len(list((tmp_path / "logs/handover/random/as-found").glob("*.jsonl"))) == 3


def test_empty_directories_warn(tmp_path, caplog):
    assert main(["run", "--scenario", "handover", "--method", "bdi", "--out", str(tmp_path)]) == EXIT_OK
    assert main(["report", "--scenario", "handover", "--method", "bdi", "--out", str(tmp_path)]) == EXIT_OK
    assert "no tests" in caplog.text and "no logs" in caplog.text
    doc = json.loads((tmp_path / "reports/handover/bdi/as-found/campaign.json").read_text())
    assert doc["tests"] == [] and doc["final_coverage"] == 0


@pytest.mark.parametrize("argv", [
    [],
    ["gen", "--scenario", "kitchen", "--method", "bdi"],
    ["gen", "--scenario", "handover", "--method", "fuzz"],
    ["gen", "--scenario", "handover", "--method", "bdi", "--count", "0"],
    ["run", "--scenario", "handover", "--method", "bdi", "--jobs", "0"],
    ["run", "--scenario", "handover", "--method", "bdi", "--profile", "broken"],
])
def test_usage_errors(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path)] if argv else argv) == EXIT_USAGE
