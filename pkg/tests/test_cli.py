# -*- coding: utf-8 -*-
"""命令行：退出码、报告格式、输入文档与确定性"""
import json
import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.app.main import main

EXPR = "(t - t^(-1)) * (-t - t^3 - t^5 - t^7)"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


# ==================== ring-eval ====================

def test_ring_eval_inline(capsys):
    code, report = run(capsys, "ring-eval", "--expr", EXPR, "--cutoff", "7")
    assert code == 0
    assert report["format_version"] == 1
    assert report["status"] == "pass"
    assert report["checks"][0]["result"] == {"value": "1", "precision": "7"}
    assert report["counterexample"] is None


def test_ring_eval_parse_error(capsys):
    code, report = run(capsys, "ring-eval", "--expr", "t + * 2")
    assert code == 2
    assert report["status"] == "error"
    assert report["error"]["detail"]["location"].startswith("expr[0]:")


def test_ring_eval_document(capsys, data_dir):
    code, report = run(capsys, "ring-eval", str(data_dir / "expressions.json"))
    assert code == 0
    assert len(report["checks"]) == 2
    assert report["checks"][0]["inputs"]["cutoff"] == "7"


def test_ring_eval_expected_mismatch(capsys, write_json):
    path = write_json("expr.json", {"expressions": [{"text": "t * t", "expected": "t^3"}]})
    code, report = run(capsys, "ring-eval", path)
    assert code == 1
    assert report["status"] == "fail"
    assert report["counterexample"]["result"]["expected"] != report["counterexample"]["result"]["value"]


# ==================== 任务校验 ====================

@pytest.mark.parametrize("argv", [
    ["coherence", "whatever.json"],
    ["system-quotient"],
    ["ring-eval"],
    ["mcg-act", "--ring", "RationalField"],
    ["system-tensor", "x.json", "--ring", "Integers"],
    ["mcg-factor", "--cases", "0"],
    ["ring-eval", "--expr", "t", "--cutoff", "abc"],
    ["rank1-eval", "--ring", "IntegersMod2", "--unit-group", "Signs"],
])
def test_invalid_job(capsys, argv):
    code, report = run(capsys, *argv)
    assert code == 2
    assert report["status"] == "error"


def test_expr_only_for_ring_eval():
    with pytest.raises(SystemExit):
        main(["mcg-act", "--expr", "t"])


def test_malformed_json(capsys, write_json):
    path = write_json("bad.json", '{"system": [')
    code, report = run(capsys, "system-validate", path)
    assert code == 2
    assert re.fullmatch(re.escape(path) + r":\d+:\d+", report["error"]["detail"]["location"])


def test_unknown_field(capsys, write_json):
    path = write_json("extra.json", {"matrices": [[[1, 0], [0, 1]]], "colour": "red"})
    code, report = run(capsys, "mcg-factor", path)
    assert code == 2
    assert report["error"]["detail"]["location"] == f"{path}:colour"


def test_missing_file(capsys, tmp_path):
    code, report = run(capsys, "mcg-act", str(tmp_path / "absent.json"))
    assert code == 2


# ==================== 生成用例 ====================

@pytest.mark.parametrize("command", [
    "system-validate",
    "mcg-factor",
    "mcg-act",
    "surgery-build",
    "psi-build",
    "coherence",
    "rank1-eval",
    "khm-check",
])
def test_generated_cases_pass(capsys, command):
    code, report = run(capsys, command, "--cases", "3", "--seed", "5")
    assert code == 0, report["counterexample"]
    assert report["command"] == command
    assert [c["index"] for c in report["checks"]] == [0, 1, 2]


@pytest.mark.parametrize("group", ["Trivial", "Signs", "FullUnits"])
def test_system_validate_unit_groups(capsys, group):
    code, _ = run(capsys, "system-validate", "--cases", "4", "--unit-group", group)
    assert code == 0


def test_rank_one_other_rings(capsys):
    code, _ = run(capsys, "rank1-eval", "--cases", "4", "--ring", "Integers", "--unit-group", "Signs")
    assert code == 0


def test_repeat_runs_are_byte_identical(tmp_path):
    outputs = []
    for name, workers in (("a.json", "1"), ("b.json", "1"), ("c.json", "2")):
        path = tmp_path / name
        assert main(["coherence", "--cases", "4", "--seed", "9", "--workers", workers, "--output", str(path)]) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_text_summary(capsys):
    code = main(["mcg-act", "--cases", "2", "--text"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("mcg-act: pass (2 项检查, 0 项失败)")


# ==================== 输入文档 ====================

def test_system_documents(capsys, data_dir):
    code, report = run(capsys, "system-validate", str(data_dir / "system_valid.json"), str(data_dir / "system_integer.json"))
    assert code == 0
    assert len(report["checks"]) == 2


def test_quotient_document(capsys, data_dir):
    code, report = run(capsys, "system-quotient", str(data_dir / "system_trivial.json"))
    assert code == 0
    assert [c["inputs"]["new_base"] for c in report["checks"]] == ["α", "β", "γ"]
    assert all(c["inputs"]["base"] == "β" for c in report["checks"])


def test_quotient_requires_trivial_group(capsys, data_dir):
    code, report = run(capsys, "system-quotient", str(data_dir / "system_valid.json"))
    assert code == 1
    assert report["counterexample"]["result"]["error"] == "QuotientError"


@pytest.mark.parametrize("ring", ["RationalField", "IntegersMod2", "NovikovOverIntegers"])
def test_tensor_document(capsys, data_dir, ring):
    code, report = run(capsys, "system-tensor", str(data_dir / "system_integer.json"), "--ring", ring)
    assert code == 0
    assert ring in report["checks"][0]["inputs"]["target"]


def test_flatten_document(capsys, data_dir):
    code, report = run(capsys, "system-flatten", str(data_dir / "tower.json"))
    assert code == 0
    outer, flat = report["checks"]
    assert outer["relation"] == "outer-cocycle"
    assert flat["result"]["indices"] == ["P/α0", "P/α1", "Q/β0"]


def test_factor_document(capsys, data_dir):
    code, report = run(capsys, "mcg-factor", str(data_dir / "factor.json"))
    assert code == 0
    twist, identity = report["checks"]
    assert twist["result"]["length"] >= 1
    assert identity["result"]["length"] == 0


def test_act_document(capsys, data_dir):
    code, report = run(capsys, "mcg-act", str(data_dir / "act.json"))
    assert code == 0
    assert report["checks"][0]["result"]["images"] == [[-1, 1, 0, 0], [1, 0, 0, 0]]


def test_surgery_document(capsys, data_dir):
    code, report = run(capsys, "surgery-build", str(data_dir / "surgery.json"))
    assert code == 0
    presentation = report["checks"][0]["result"]["presentation"]
    assert [e["framing"] for e in presentation] == [-1, 1, -1, 1]


def test_psi_cycle_document(capsys, data_dir):
    code, report = run(capsys, "psi-build", str(data_dir / "psi_cycle.json"))
    assert code == 0
    check = report["checks"][0]
    assert check["relation"] == "cycle-collapse"
    assert check["result"]["normal_form"] == []
    assert check["result"]["rewrite_steps"] > 0


def test_psi_corrupt_document(capsys, data_dir):
    code, report = run(capsys, "psi-build", str(data_dir / "psi_corrupt.json"))
    assert code == 1
    assert report["counterexample"]["result"]["error"] == "EtaConditionError"


def test_assignment_document(capsys, data_dir, write_json):
    code, _ = run(capsys, "rank1-eval", str(data_dir / "assignment.json"), "--cases", "3")
    assert code == 0
    bad = write_json("bad_assignment.json", {"assignment": {"HandlePlus": "t"}})
    code, report = run(capsys, "rank1-eval", bad, "--cases", "1")
    assert code == 1
    assert report["counterexample"]["result"]["error"] == "UnitGroupError"


def test_assignment_document_rejects_mod2_signs(capsys, write_json):
    path = write_json("mod2.json", {"ring": {"kind": "IntegersMod2", "unit_group": "Signs"}, "assignment": {}})
    code, report = run(capsys, "rank1-eval", path, "--cases", "1")
    assert code == 2
    assert report["error"]["detail"]["location"].endswith(":ring")
