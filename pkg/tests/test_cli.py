import json

from qweyl.cli import run


def _capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# expression commands
# ---------------------------------------------------------------------------


def test_normalize(capsys):
    code, out, _ = _capture(capsys, ["normalize", "--n", "1", "d1*x1"])
    assert code == 0
    assert out.strip() == "1 + t*x1*d1"


def test_normalize_specialized(capsys):
    code, out, _ = _capture(capsys, ["normalize", "--n", "1", "--l", "2", "d1*x1"])
    assert code == 0
    assert out.strip() == "1 - x1*d1"


def test_qcomm(capsys):
    code, out, _ = _capture(capsys, ["qcomm", "--n", "1", "d1", "x1"])
    assert code == 0
    assert out.strip() == "1"


def test_parse_error_is_exit_2(capsys):
    code, _, err = _capture(capsys, ["normalize", "--n", "1", "d1*)x1"])
    assert code == 2
    assert "position" in err


def test_flag_error_is_exit_2(capsys):
    code, _, _ = _capture(capsys, ["normalize", "d1"])
    assert code == 2


def test_poisson_center_syntax(capsys):
    code, out, _ = _capture(capsys, ["poisson", "--n", "1", "--l", "2", "r1", "s1"])
    assert code == 0
    assert out.strip() == "1 - 4*r1*s1"


def test_poisson_weyl_syntax(capsys):
    code, out, _ = _capture(capsys, ["poisson", "--n", "1", "--l", "2", "d1^2", "x1^2"])
    assert code == 0
    assert out.strip() == "1 - 4*x1^2*d1^2"


def test_poisson_non_central_is_exit_1(capsys):
    code, _, err = _capture(capsys, ["poisson", "--n", "1", "--l", "3", "d1", "x1^3"])
    assert code == 1
    assert "central" in err


def test_center_check(capsys):
    code, out, _ = _capture(capsys, ["center-check", "--l", "3", "x1^3*d1^3"])
    assert code == 0
    blob = json.loads(out)
    assert blob["central"] is True
    assert blob["decomposition"] == "r1*s1"

    code, out, _ = _capture(capsys, ["center-check", "--l", "3", "x1"])
    assert code == 1
    blob = json.loads(out)
    assert blob["central"] is False and "reason" in blob


# ---------------------------------------------------------------------------
# locus and representation commands
# ---------------------------------------------------------------------------


def test_azumaya_boundary(capsys):
    code, out, _ = _capture(capsys, ["azumaya", "--l", "2", "--a", "1", "--b", "1/4"])
    assert code == 0
    assert json.loads(out)["azumaya"] is False


def test_azumaya_with_burnside(capsys):
    code, out, _ = _capture(
        capsys, ["azumaya", "--l", "2", "--a", "1", "--b", "1", "--burnside"]
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["azumaya"] is True
    assert blob["burnside"] == {"rank": 4, "full": True, "agrees": True}


def test_rep_json(capsys):
    code, out, _ = _capture(capsys, ["rep", "--l", "2", "--a", "1", "--b", "1"])
    assert code == 0
    blob = json.loads(out)
    assert blob["exact"] is True
    assert blob["X"][0][0]["exact"] == "1"
    assert blob["X"][1][1]["exact"] == "-1"
    assert len(blob["Y"]) == 2


# ---------------------------------------------------------------------------
# endomorphism pipeline
# ---------------------------------------------------------------------------


def test_lift_validate_hat_roundtrip(tmp_path, capsys):
    code, out, _ = _capture(capsys, ["lift", "--kind", "phi", "--poly", "1"])
    assert code == 0
    descriptor = json.loads(out)
    assert descriptor["images_x"] == ["x1"]
    assert descriptor["images_d"] == ["1 + d1 + (-1 + t)*x1*d1"]

    path = tmp_path / "endo.json"
    path.write_text(out)

    code, out, _ = _capture(capsys, ["validate", str(path)])
    assert code == 0
    assert json.loads(out)["valid"] is True

    code, out, _ = _capture(
        capsys,
        ["hat", str(path), "--primes", "3,5,7,11,13,17,19,23", "--poly", "r1"],
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["verdict"] == "converged"
    assert blob["limit"]["expr"] == "1 + r1"


def test_validate_invalid_map(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "n": 1, "param": "t", "images_x": ["x1"], "images_d": ["d1 + x1"],
    }))
    code, out, _ = _capture(capsys, ["validate", str(path)])
    assert code == 1
    blob = json.loads(out)
    assert blob["valid"] is False
    assert blob["violations"][0]["residual"] == "(1 - t)*x1^2"


def test_transport(capsys):
    code, out, _ = _capture(
        capsys, ["transport", "--n", "1", "r1", "s1", "--primes", "3,5,7,11,13,17,19,23"]
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["verdict"] == "converged"
    assert blob["matches_standard"] is True
    assert blob["limit"]["expr"] == "1"


def test_json_output_deterministic(capsys):
    code1, out1, _ = _capture(capsys, ["rep", "--l", "3", "--a", "1", "--b", "2"])
    code2, out2, _ = _capture(capsys, ["rep", "--l", "3", "--a", "1", "--b", "2"])
    assert code1 == code2 == 0
    assert out1 == out2


def test_sweep_single_criterion(capsys):
    code, out, _ = _capture(capsys, ["sweep", "--only", "1"])
    assert code == 0
    assert "[PASS]" in out and "pbw-ring-axioms" in out
