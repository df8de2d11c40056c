import json

import pytest

from g2chevalley.cli import main, parse_subgroup
from g2chevalley.gf import field_make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_roots_and_filtration_json(capsys):
    code, out, _ = run(capsys, "roots", "--parabolic", "long", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["roots"]) == 6
    code, out, _ = run(capsys, "filtration", "--parabolic", "short", "--json")
    assert [lev["dim"] for lev in json.loads(out)["levels"]] == [4, 1]


def test_subgroup_and_out_file(capsys, tmp_path):
    target = tmp_path / "z1.json"
    code, _, _ = run(capsys, "subgroup", "--name", "Xkl:1,0", "--p", "2", "--n", "2", "--out", str(target))
    data = json.loads(target.read_text())
    assert code == 0 and data["field"] == [2, 2] and set(data["families"]) == {"+", "-"}


def test_element_from_word_file(capsys, tmp_path):
    word = tmp_path / "w.json"
    word.write_text(json.dumps([{"kind": "x", "i": 1, "t": 1}, {"kind": "n", "i": -2, "t": 1}]))
    code, out, _ = run(capsys, "element", "--word", str(word), "--p", "3", "--json")
    assert code == 0 and len(json.loads(out)["matrix"]) == 7


def test_restrict_text_and_exit_code(capsys):
    code, out, _ = run(capsys, "restrict", "--subgroup", "Z2", "--p", "2", "--n", "2")
    assert code == 0 and "verdict match" in out


def test_h1(capsys):
    code, out, _ = run(capsys, "h1", "--q0", "9", "--module", "1x1t3", "--json")
    assert code == 0 and json.loads(out)["dim_over_q0"] == 2


def test_enumerate_and_conjsearch(capsys):
    code, out, _ = run(capsys, "enumerate", "--subgroup", "A2", "--p", "2")
    assert code == 0 and out.strip() == "168"
    code, out, _ = run(capsys, "conjsearch", "--a", "Xkl:1,0", "--b", "Z1", "--p", "2")
    assert code == 0 and out.startswith("conjugator:")
    code, out, _ = run(capsys, "conjsearch", "--a", "Lbar0", "--b", "Ltilde0", "--p", "2")
    assert code == 0 and out.strip() == "none"


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "relations", "--p", "3")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "--suite", "orders", "--json")
    assert code == 0 and json.loads(out)["pass"] is True


def test_errors_exit_with_two(capsys):
    code, _, err = run(capsys, "subgroup", "--name", "IrredA1inA2", "--p", "2")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "enumerate", "--subgroup", "G2", "--p", "2", "--cap", "50")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["roots", "--parabolic", "diagonal"])


def test_parse_subgroup():
    F = field_make(2, 2)
    spec = parse_subgroup("Xkl:2,3", F)
    assert (spec.k, spec.l) == (F.gen, F.gen + 1)
    assert parse_subgroup("TwistedDiag:1,0", F).r == 1
