import json
import xml.etree.ElementTree as ET

import pytest

from superchar.cli import conformal_rows, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_leading_term(capsys):
    code, out, _ = run(capsys, "expand", "--algebra", "n4", "--M", "2", "--m", "1", "--m2", "0", "--k1", "0",
                       "--k2", "0", "--heart", "I", "--sector", "plus", "--qmax", "8", "--window", "6",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["leading"] == {"q": "-1/8", "zeta": "-1", "re": "1", "im": "0"}


def test_expand_n2_constant(capsys):
    code, out, _ = run(capsys, "expand", "--algebra", "n2", "--M", "2", "--m", "0", "--m2", "0", "--k1", "0",
                       "--k2", "0", "--sector", "minus-tw")
    assert code == 0
    assert json.loads(out)["series"]["terms"] == [["0", "0", "0", "1"]]


def test_expand_csv(capsys):
    code, out, _ = run(capsys, "expand", "--M", "2", "--qmax", "1", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "q,zeta,re,im"
    assert "-1/8,-1,1,0" in lines


def test_expand_invalid_label(capsys):
    code, _, err = run(capsys, "expand", "--M", "2", "--heart", "III")
    assert code == 2
    assert "Ω^{(III)} empty for M=2" in err


def test_expand_rejects_bad_window(capsys):
    code, _, err = run(capsys, "expand", "--window", "0")
    assert code == 2 and "window" in err


def test_verify_pass_and_csv(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theta-anchors,n2-specials", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == ["theta-anchors,printed,pass,10,0", "n2-specials,printed,pass,4,0"]


def test_verify_two_path_reports_verdict(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "two-path", "--qmax", "4")
    body = json.loads(out)
    assert code == 0
    assert body["suites"][0]["verdict"]["III-tw"]["corrected"] == "holds"


def test_verify_failure_exit_code(capsys, tmp_path):
    junit = tmp_path / "r.xml"
    code, out, _ = run(capsys, "verify", "--suite", "m2-specials", "--qmax", "4", "--junit", str(junit))
    assert code == 1
    summary = json.loads(out)["suites"][0]
    assert summary["counterexamples"][0]["check"] == "M=2 (+)tw: triple sum (printed)"
    root = ET.parse(junit).getroot()
    assert root.get("failures") == "1"


def test_verify_corrected_reading(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "m2-specials", "--qmax", "4", "--reading", "corrected")
    assert code == 0


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "bogus")
    assert code == 2 and "bogus" in err


def test_verify_is_stable_under_parallelism(capsys):
    args = ["verify", "--suite", "kernel,theta-anchors,conformal", "--qmax", "4"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "3")
    assert serial == parallel


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nformat = csv\nsuite = kernel\n")
    code, out, _ = run(capsys, "--config", str(cfg), "verify")
    assert code == 0 and out.startswith("suite,reading")
    code, out, _ = run(capsys, "--config", str(cfg), "verify", "--format", "json")
    assert json.loads(out)["suites"][0]["suite"] == "kernel"


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "--config", str(cfg), "verify")
    assert code == 2 and "colour" in err


def test_table_rows(capsys):
    code, out, _ = run(capsys, "table", "--Mmax", "3", "--mmax", "1")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "M,m,m2,k1,k2,heart,sector,c,h,s,leading_q,leading_zeta"
    assert "2,1,0,0,0,I,untw,-9,0,0,-1/8,-1" in lines
    assert any(line.startswith("3,1,0,0,0,I,untw,-8,0,") for line in lines)


def test_table_equivalent_rows_identical():
    rows = {tuple(r[:7]): r[7:] for r in conformal_rows(5, 2)}
    for key, data in rows.items():
        M, m, m2, k1, k2, heart, sec = key
        if heart == "I":
            assert rows[(M, m, m2, str(int(k1) + 1), k2, "IV", sec)] == data


@pytest.mark.parametrize("check, code", [("T", 0), ("S", 1)])
def test_modular_single_check(capsys, check, code):
    got, out, _ = run(capsys, "modular", "--check", check, "--M", "2", "--k1", "0", "--k2", "0", "--heart", "I",
                      "--sector", "plus", "--tau", "0.1+1.3i", "--z", "0.23+0.11i", "--tol", "1e-8")
    assert got == code
    assert json.loads(out)["tau"] == "0.1+1.3i"


def test_modular_derived_s_passes(capsys):
    code, _, _ = run(capsys, "modular", "--check", "S", "--variant", "derived", "--M", "3", "--k1", "0",
                     "--k2", "1", "--heart", "III", "--sector", "minus-tw")
    assert code == 0


def test_modular_requires_m1(capsys):
    code, _, err = run(capsys, "modular", "--check", "S", "--m", "2", "--M", "3")
    assert code == 2 and "(m, m2) = (1, 0)" in err


def test_usage_error_from_argparse(capsys):
    code, _, _ = run(capsys, "modular")
    assert code == 2
