import json

import pytest

from zfpaths.errors import UnsupportedInputError
from zfpaths.harness import ALL_CHECKS, diff_reports, run_suite


def strip_timings(records):
    return {
        key: {k: v for k, v in rec.items() if k != "timings"}
        for key, rec in records.items()
    }


def test_builtin_suite_small_clean():
    report = run_suite(4, nullity_budget=(15, 800), seed=2)
    assert report.ok, report.violations
    # 10 connected graphs up to n=4 plus four disjoint path unions
    assert report.cursor == 1 + 1 + 2 + 6 + 4
    assert report.totals.get("ThreeParallel_FM3", 0) >= 1


def test_suite_classifies_k4_and_k33(tmp_path):
    path = tmp_path / "two.g6"
    path.write_text("# corpus\nC~\nEFz_\n")  # K4 and K3,3
    report = run_suite(str(path), checks=("T_iff", "E_bounds"), seed=0)
    recs = list(report.records.values())
    tags = {r["n"]: r["tag"] for r in recs}
    assert tags[4] == "ThreeParallel_FM3"
    assert tags[6] == "Beyond"


def test_suite_path_union_sharpness():
    report = run_suite(2, checks=("C_ft",), seed=0)
    unions = [r for r in report.records.values() if r["n"] in (4, 6, 8) and r["f"] == r["n"] // 2]
    assert unions, "path unions missing from the builtin corpus"
    for rec in unions:
        assert rec["f_t"] == rec["n"]  # two vertices per component
    assert report.ok


def test_suite_skips_high_degree_graphs(tmp_path):
    path = tmp_path / "star.g6"
    path.write_text("Ds_\n")  # K(1,4): degree four center
    report = run_suite(str(path), seed=0)
    rec = next(iter(report.records.values()))
    assert rec["skipped"] is True


def test_suite_records_and_resume(tmp_path):
    out = tmp_path / "records.jsonl"
    full = run_suite(3, out_path=str(out), seed=1, nullity_budget=(10, 600))
    lines = out.read_text().strip().splitlines()
    assert len(lines) == full.cursor
    # truncate to simulate an interrupted run, then resume
    out.write_text("\n".join(lines[:2]) + "\n")
    resumed = run_suite(3, out_path=str(out), resume=True, seed=1, nullity_budget=(10, 600))
    assert strip_timings(resumed.records) == strip_timings(full.records)
    assert resumed.cursor == full.cursor


def test_suite_determinism_excluding_timings(tmp_path):
    a = run_suite(3, seed=5, nullity_budget=(10, 600))
    b = run_suite(3, seed=5, nullity_budget=(10, 600))
    assert strip_timings(a.records) == strip_timings(b.records)
    assert diff_reports(a, b) == ""


def test_diff_reports_corpus_mismatch():
    a = run_suite(2, seed=0)
    b = run_suite(3, seed=0)
    with pytest.raises(UnsupportedInputError):
        diff_reports(a, b)


def test_diff_reports_field_difference():
    a = run_suite(2, checks=("E_bounds",), seed=0)
    b = run_suite(2, checks=("E_bounds",), seed=0)
    key = next(iter(b.records))
    b.records[key] = dict(b.records[key], f=99)
    text = diff_reports(a, b)
    assert key in text and "99" in text


def test_unknown_check_rejected():
    with pytest.raises(UnsupportedInputError):
        run_suite(2, checks=("T_iff", "bogus"))


def test_corrupt_resume_file_is_io_error(tmp_path):
    out = tmp_path / "r.jsonl"
    out.write_text("this is not json\n")
    with pytest.raises(OSError):
        run_suite(2, out_path=str(out), resume=True)


def test_all_checks_constant():
    assert set(ALL_CHECKS) == {"T_iff", "T_fmk", "C_ft", "P_left", "L_order", "E_bounds"}


def test_jsonl_lines_parse(tmp_path):
    out = tmp_path / "r.jsonl"
    run_suite(2, out_path=str(out), seed=0)
    for line in out.read_text().strip().splitlines():
        rec = json.loads(line)
        assert {"graph", "n", "f", "f_t", "tag", "m_certified", "drawing_ok",
                "lemma_checks", "timings"} <= set(rec)
        if rec["f_t"] is not None:
            assert rec["f"] <= rec["f_t"] <= 2 * rec["f"]
        if rec["m_certified"] is not None:
            assert rec["m_certified"] <= rec["f"]
