import json

import pytest

from mocaci.cli import main
from mocaci.oa import OrthogonalArray


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_rules_bipermutive(capsys):
    code, out = run(capsys, "rules", "--diameter", "3", "--bipermutive-only")
    assert code == 0 and out.split() == ["90", "105", "150", "165"]


def test_rules_all_d2(capsys):
    code, out = run(capsys, "rules", "--diameter", "2")
    assert code == 0 and len(out.splitlines()) == 16


def test_rules_tables(capsys):
    _, out = run(capsys, "rules", "--diameter", "3", "--bipermutive-only", "--tables")
    assert out.splitlines()[0] == "90 01011010"


@pytest.mark.parametrize("argv", [["rules", "--diameter", "0"], ["rules"], ["families", "--diameter", "4"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_families_d4(capsys):
    code, out = run(capsys, "families", "--diameter", "4", "--k", "3")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert records == [{"d": 4, "k": 3, "rules": [21930, 39270, 42330]},
                       {"d": 4, "k": 3, "rules": [27030, 39270, 42330]}]


def test_families_d3_empty(capsys):
    code, out = run(capsys, "families", "--diameter", "3", "--k", "3")
    assert code == 0 and out == ""


def test_families_jobs_deterministic(capsys):
    _, one = run(capsys, "families", "--diameter", "4", "--k", "3", "--jobs", "1")
    _, eight = run(capsys, "families", "--diameter", "4", "--k", "3", "--jobs", "8")
    assert one == eight


def test_families_csv(capsys):
    _, out = run(capsys, "families", "--diameter", "4", "--k", "3", "--format", "csv")
    assert out.splitlines() == ["d,k,rule_1,rule_2,rule_3", "4,3,21930,39270,42330", "4,3,27030,39270,42330"]


def test_analyze_parity(capsys):
    code, out = run(capsys, "analyze", "--function", "6996", "--json")
    rep = json.loads(out)
    assert code == 0 and (rep["ci"], rep["nonlinearity"], rep["degree"]) == (3, 0, 1)


def test_analyze_constant_one(capsys):
    _, out = run(capsys, "analyze", "--function", "ffff", "--json")
    rep = json.loads(out)
    assert (rep["weight"], rep["ci"], rep["n"]) == (16, 4, 4)


def test_analyze_files(capsys, tmp_path):
    _, oa_text = run(capsys, "expand", "--family", '{"d": 4, "rules": [21930, 39270, 42330]}')
    _, table = run(capsys, "expand", "--family", '{"d": 4, "rules": [21930, 39270, 42330]}', "--truth-table")
    for name, content in [("f.oa", oa_text), ("f.tt", table)]:
        path = tmp_path / name
        path.write_text(content)
        _, out = run(capsys, "analyze", "--function", str(path), "--json")
        rep = json.loads(out)
        assert (rep["ci"], rep["weight"], rep["n"]) == (3, 64, 9)


def test_analyze_bad_input():
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--function", "xyz"])
    assert exc.value.code == 2


def test_expand_90_150(capsys):
    code, out = run(capsys, "expand", "--family", '{"d": 3, "k": 2, "rules": [90, 150]}')
    lines = out.splitlines()
    assert code == 0 and lines[0] == "16 4 2 4" and len(lines) == 17


def test_expand_d4_header(capsys):
    _, out = run(capsys, "expand", "--family", '{"d": 4, "k": 3, "rules": [27030, 39270, 42330]}')
    assert out.splitlines()[0] == "64 9 2 3"


def test_expand_non_orthogonal_family():
    with pytest.raises(SystemExit) as exc:
        main(["expand", "--family", '{"d": 3, "rules": [90, 165]}'])
    assert exc.value.code == 2


def test_expurgate_round_trip(capsys, tmp_path):
    _, text = run(capsys, "expand", "--family", '{"d": 4, "rules": [21930, 39270, 42330]}')
    path = tmp_path / "a.oa"
    path.write_text(text)
    code, out = run(capsys, "expurgate", "--oa", str(path), "--strength", "2")
    oa = OrthogonalArray.from_text(out)
    assert code == 0 and oa.strength >= 2 and oa.runs <= 64


def test_expurgate_strength_too_high(tmp_path):
    path = tmp_path / "a.oa"
    path.write_text("4 2 2 2\n0 0\n0 1\n1 0\n1 1\n")
    with pytest.raises(SystemExit) as exc:
        main(["expurgate", "--oa", str(path), "--strength", "3"])
    assert exc.value.code == 2


def test_labeling_dump(capsys):
    _, out = run(capsys, "labeling", "--diameter", "3", "--rules", "90,150")
    assert "11 -> 10 : 1,0" in out.splitlines()


def test_square(capsys):
    _, out = run(capsys, "square", "--diameter", "3", "--rule", "90")
    assert out.splitlines()[1] == "2 1 4 3"
