import json
import os

import pytest

from treegroups.cli import EXIT_INPUT, EXIT_OK, EXIT_VERDICT, run

HERE = os.path.dirname(__file__)
DATA = os.path.join(HERE, "data")
GOLDEN = os.path.join(HERE, "golden")


def data(name):
    return os.path.join(DATA, name)


def invoke(capsys, *argv):
    rc = run(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


# -- golden files (worked examples, byte-for-byte in --json mode) ---------------

@pytest.mark.parametrize("golden,argv", [
    ("classify_z2z3_ab.json",
     ["classify", "--group", data("z2z3.json"), "--element", "a b", "--json"]),
    ("bounds_unit_k4.json",
     ["bounds", "--entropy", "1", "--diam", "1", "--k", "4", "--json"]),
    ("dichotomy_torus_bundle.json",
     ["dichotomy", data("torus_bundle.json"), "--json"]),
])
def test_golden_outputs(capsys, golden, argv):
    rc, out, _ = invoke(capsys, *argv)
    assert rc == EXIT_OK
    with open(os.path.join(GOLDEN, golden), "r", encoding="utf-8") as fh:
        assert out == fh.read()
    json.loads(out)  # every report re-parses


def test_classify_human(capsys):
    rc, out, _ = invoke(capsys, "classify", "--group", data("z2z3.json"),
                        "--element", "a b")
    assert rc == EXIT_OK
    assert out.strip() == "hyperbolic (tau=2)"


def test_tau(capsys):
    rc, out, _ = invoke(capsys, "tau", "--group", data("z2z3.json"),
                        "--element", "a b", "--json")
    assert rc == EXIT_OK
    assert json.loads(out)["tau"] == 2


def test_fix_and_axis(capsys):
    rc, out, _ = invoke(capsys, "fix", "--group", data("z2z3.json"),
                        "--element", "a", "--radius", "5", "--json")
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["members"] == ["A:1"] and doc["diameter"] == 0
    rc, out, _ = invoke(capsys, "fix", "--group", data("klein.json"),
                        "--element", "a^2", "--radius", "6", "--max-power", "2",
                        "--json")
    assert rc == EXIT_OK
    assert json.loads(out)["diameter"] == 12
    rc, out, _ = invoke(capsys, "axis", "--group", data("z2z3.json"),
                        "--element", "a b", "--json")
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["tau"] == 2 and "A:1" in doc["members"]


def test_axis_elliptic_is_input_error(capsys):
    rc, _, err = invoke(capsys, "axis", "--group", data("z2z3.json"),
                        "--element", "a")
    assert rc == EXIT_INPUT and "elliptic" in err


def test_acyl_check_exit_codes(capsys):
    rc, out, _ = invoke(capsys, "acyl-check", "--group", data("z2z3.json"), "--k", "0")
    assert rc == EXIT_OK and "consistent" in out
    rc, out, _ = invoke(capsys, "acyl-check", "--group", data("klein.json"),
                        "--k", "5", "--length", "4", "--json")
    assert rc == EXIT_VERDICT
    doc = json.loads(out)
    assert doc["verdict"] == "falsified" and doc["witness"] == "a^2"


def test_free_witness(capsys):
    rc, out, _ = invoke(capsys, "free-witness", "--group", data("z2z3.json"),
                        "--g1", "a", "--g2", "b", "--json")
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["case"] == "elliptic_elliptic" and doc["certified"]
    rc, out, _ = invoke(capsys, "free-witness", "--group", data("f2_amalgam.json"),
                        "--g1", "b d", "--g2", "d b", "--json")
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["k"] == 2  # declared_k picked up from the spec file
    assert doc["certified"]


def test_entropy_command(capsys):
    rc, out, _ = invoke(capsys, "entropy", "--l1", "1", "--l2", "1", "--json")
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["counts"][:3] == [1, 5, 17]
    assert abs(doc["analytic_root"]["value"] - 1.0986122886681098) < 1e-10
    rc, out, _ = invoke(capsys, "entropy", "--l1", "1", "--l2", "1",
                        "--kind", "semigroup", "--radius", "10", "--json")
    assert rc == EXIT_OK
    assert json.loads(out)["counts"][:3] == [1, 3, 7]


def test_dichotomy_bound_attachment(capsys):
    rc, out, _ = invoke(capsys, "dichotomy", data("two_hyperbolic_jsj.json"),
                        "--entropy", "1", "--diam", "1", "--json")
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["verdict"] == "acylindrical" and doc["k"] == 4
    assert doc["bound_report"]["effective_systole_lb"] == pytest.approx(
        2.043635611214889e-11)
    rc, out, _ = invoke(capsys, "dichotomy", data("s2s1_sum.json"),
                        "--entropy", "1", "--diam", "1", "--json")
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc["bound_report"]["volume_lb"] is None


def test_input_errors(capsys):
    rc, _, err = invoke(capsys, "classify", "--group", "/does/not/exist.json",
                        "--element", "a")
    assert rc == EXIT_INPUT and err
    rc, _, err = invoke(capsys, "frobnicate")
    assert rc == EXIT_INPUT
    rc, _, err = invoke(capsys, "classify", "--group", data("z2z3.json"),
                        "--element", "q")
    assert rc == EXIT_INPUT and "foreign" in err
    rc, _, err = invoke(capsys, "dichotomy")
    assert rc == EXIT_INPUT
    rc, _, err = invoke(capsys, "bounds", "--entropy", "-1", "--diam", "1")
    assert rc == EXIT_INPUT


def test_unknown_flag_is_input_error(capsys):
    rc, _, err = invoke(capsys, "classify", "--group", data("z2z3.json"),
                        "--element", "a", "--frob")
    assert rc == EXIT_INPUT
