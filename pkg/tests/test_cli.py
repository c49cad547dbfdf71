import json

import pytest

from koszulkit.cli import main

A0 = {"field": "F3", "basis": [["1", 0], ["x", 1]], "unit": "1", "mul": [["x", "x", {}]],
      "retraction": {"1": "1"}}
B = {"field": "F3", "basis": [["1", 0], ["t", 0]], "unit": "1", "mul": [["t", "t", {}]],
     "retraction": {"1": "1"}}
EPS3 = {"field": "F3", "basis": [["1", 0], ["e", 0], ["e2", 0]], "unit": "1",
        "mul": [["e", "e", {"e2": "1"}], ["e", "e2", {}], ["e2", "e", {}], ["e2", "e2", {}]],
        "retraction": {"1": "1"}}
NONASSOC = {"field": "F2", "basis": [["1", 0], ["a", 0], ["b", 0]], "unit": "1",
            "mul": [["a", "a", {"b": "1"}], ["a", "b", {"a": "1"}], ["b", "a", {}], ["b", "b", {}]]}
INVOLUTION = {"field": "F3", "basis": [["1", 0], ["y", 0]], "unit": "1",
              "mul": [["y", "y", {"1": "1"}]], "retraction": {"1": "1"}}
CURVED = {"field": "F3", "basis": [["1", 0], ["h", 2]], "unit": "1", "mul": [["h", "h", {}]],
          "curvature": {"h": "1"}, "retraction": {"1": "1"}}


@pytest.fixture
def files(tmp_path):
    data = {"a0": A0, "b": B, "eps3": EPS3, "bad": NONASSOC, "k": {"basis": []},
            "inv": INVOLUTION, "curved": CURVED,
            "m1": {"kind": "twisted", "V": [["v", 0]], "x": {"v->v⊗x": "1"}},
            "m2": {"kind": "twisted", "V": [["v", 0]], "x": {"v->v⊗x": "2"}},
            "reg": {"kind": "regular"}, "triv": {"kind": "trivial"}}
    out = {}
    for name, obj in data.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(obj, ensure_ascii=False))
        out[name] = str(p)
    (tmp_path / "garbage.json").write_text("{not json")
    out["garbage"] = str(tmp_path / "garbage.json")
    return out


def run(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_check(files, capsys):
    code, rep = run(capsys, "check", files["a0"])
    assert code == 0 and rep["ok"] and rep["field"] == "F3"
    code, rep = run(capsys, "check", files["bad"])
    assert code == 1
    assert ["a", "a", "a"] in [f["witness"] for f in rep["result"]["certificate"]["failures"]]
    assert run(capsys, "check", files["k"])[0] == 0


def test_input_errors_exit_two(files, capsys):
    assert main(["check", files["garbage"]]) == 2
    assert main(["check", files["a0"], "--field", "F4"]) == 2
    assert main(["mc", files["a0"], "verify", "y"]) == 2
    assert main(["cobar", files["a0"], "--window", "1"]) == 2
    assert main(["weq", files["a0"], files["m1"], files["m1"], "--bound", "0"]) == 2
    capsys.readouterr()


def test_mc(files, capsys):
    code, rep = run(capsys, "mc", files["a0"], "list")
    assert code == 0 and rep["result"]["count"] == 3 and rep["scope"]["exhaustive"]
    assert run(capsys, "mc", files["a0"], "verify", "0")[0] == 0
    assert run(capsys, "mc", files["a0"], "verify", "2*x")[0] == 0
    code, rep = run(capsys, "mc", files["curved"], "verify", "0")
    assert code == 1 and rep["result"]["residual"] == {"h": "1"}


def test_twist(files, capsys):
    code, rep = run(capsys, "twist", files["a0"], "x")
    assert code == 0 and rep["result"]["certificate"]["ok"]


def test_bar_and_cobar(files, capsys):
    code, rep = run(capsys, "bar", files["a0"])
    assert code == 0
    assert rep["result"]["xi1"] == {"t[x]": []} and rep["result"]["curvature"] == []
    code, rep = run(capsys, "cobar", files["eps3"], "--window", "5")
    assert code == 0
    assert rep["result"]["differential"]["t[e2]"] == [["t[e]·t[e]", "1"]]
    assert rep["result"]["square"]["scope"]["checked_word_lengths"] == 3
    assert rep["scope"]["window"] == 5


def test_points_and_maps(files, capsys):
    _, rep = run(capsys, "bar-points", files["a0"], files["b"], "--convention", "augmented")
    assert rep["result"]["count"] == 3
    _, rep = run(capsys, "bar-points", files["a0"], files["b"])
    assert rep["result"]["count"] == 9
    code, rep = run(capsys, "cobar-maps", files["b"], files["a0"])
    assert code == 0 and rep["result"]["count"] == 3


def test_retraction_iso(files, capsys):
    assert run(capsys, "retraction-iso", files["inv"], "--eps", "1", "--eps2", "1 + y")[0] == 0
    assert main(["retraction-iso", files["a0"], "--eps", "1", "--eps2", "1 + x"]) == 2
    capsys.readouterr()


def test_resolution(files, capsys):
    code, rep = run(capsys, "resolution", "--degrees", "0", "--max-length", "3")
    assert code == 0
    assert rep["result"]["certificate"]["scope"]["table"]["3"]["dims"] == [3, 4, 1]


def test_hom_weq_quasi_iso(files, capsys):
    _, rep = run(capsys, "hom", files["a0"], files["m1"], files["m2"])
    assert rep["result"]["cohomology"] == {"0": 0, "1": 0}
    code, rep = run(capsys, "weq", files["a0"], files["m1"], files["m1"])
    assert code == 0 and rep["result"]["verdict"] == "confirmed_up_to"
    assert rep["result"]["bound"] == 2
    code, rep = run(capsys, "weq", files["a0"], files["m1"], files["m2"], "--morphism", "zero",
                    "--bound", "1")
    assert code == 1 and rep["result"]["verdict"] == "refuted"
    assert rep["result"]["witness"]["x"] == {"u0->u0⊗x": "1"}
    code, rep = run(capsys, "quasi-iso", files["a0"], files["m1"], files["m2"], "--morphism", "zero")
    assert code == 0 and rep["result"]["quasi_isomorphism"] is True


def test_path_object(files, capsys):
    code, rep = run(capsys, "path-object", files["a0"], files["triv"])
    assert code == 0 and rep["result"]["certificate"]["ok"]


def test_functors_and_adjoint(files, capsys):
    code, rep = run(capsys, "functor-f", files["a0"], files["b"], files["reg"], "--point", "x⊗t")
    assert code == 0 and rep["result"]["dim"] == 4
    code, rep = run(capsys, "functor-g", files["a0"], files["b"], files["reg"], "--point", "x⊗t")
    assert code == 0 and rep["result"]["module"]["x"] == {"t*->1*⊗x": "1"}
    code, rep = run(capsys, "adjoint", files["a0"], files["b"], files["reg"], files["reg"],
                    "--point", "x⊗t")
    assert code == 0 and rep["result"]["certificate"]["ok"]


@pytest.mark.parametrize("name,p", [("kx2", 3), ("kx2", 5), ("adjunction", 3),
                                    ("representability", 2)])
def test_gallery(capsys, name, p):
    code, rep = run(capsys, "gallery", name, "--p", str(p))
    assert code == 0 and rep["ok"] and rep["field"] == f"F{p}"
    if name == "kx2":
        res = rep["result"]
        assert res["mc_count"] == p and res["bar_points_over_k"] == p
        for i, row in enumerate(res["hom_cohomology"]):
            for j, h in enumerate(row):
                assert h == ({"0": 1, "1": 1} if i == j else {"0": 0, "1": 0})


def test_reports_are_byte_identical(files, capsys):
    argv = ["weq", files["a0"], files["m1"], files["m2"], "--morphism", "zero", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv + ["--jobs", "2"])
    second = capsys.readouterr().out
    assert json.loads(first)["result"] == json.loads(second)["result"]
    main(argv)
    assert capsys.readouterr().out == first


def test_text_output(files, capsys):
    assert main(["check", files["a0"]]) == 0
    assert capsys.readouterr().out.strip()
