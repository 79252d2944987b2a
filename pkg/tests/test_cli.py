import io
import json

import pytest

from virtres.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def six_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "six.json"
    code, _, _ = call("gen", "--n", "6", "--seed", "7", "-o", str(path))
    assert code == 0
    return path


@pytest.fixture(scope="module")
def nine_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "nine.json"
    pts = [[[1, i], [1, j]] for i, j in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 4),
                                         (3, 3), (3, 4), (4, 4)]]
    path.write_text(json.dumps({"field": "QQ", "points": pts}))
    return path


def test_gen_is_deterministic(tmp_path, six_file):
    other = tmp_path / "again.json"
    call("gen", "--n", "6", "--seed", "7", "-o", str(other))
    assert other.read_bytes() == six_file.read_bytes()
    code, out, _ = call("gen", "--n", "6", "--seed", "7")
    assert code == 0 and out.encode() == six_file.read_bytes()


def test_formula():
    code, out, _ = call("vres", "formula", "--n", "6", "--i", "1", "--j", "2")
    assert code == 0
    assert out == "top S(-2,-3)^4\nmiddle S(-2,-2)^3 + S(-1,-3)^2\n"
    code, _, err = call("vres", "formula", "--n", "6", "--i", "1", "--j", "3")
    assert code == 2 and "(i+1)(j+1)" in err


def test_hilbert_windows(six_file):
    code, out, _ = call("hilbert", "-i", str(six_file), "--rows", "2", "--cols", "3")
    assert (code, out) == (0, "1 2 3\n2 4 6\n")
    code, out, _ = call("hilbert", "-i", str(six_file), "--diff", "2", "--rows", "2",
                        "--cols", "7")
    assert out == "1 0 0 0 0 0 -1\n0 0 0 -2 0 0 2\n"


def test_betti_saturation(six_file):
    code, out, _ = call("betti", "-i", str(six_file), "--sat-a", "4")
    assert code == 0
    ranks = {}
    for line in out.splitlines():
        k, _, m = line.split()
        ranks[int(k)] = ranks.get(int(k), 0) + int(m)
    assert ranks == {1: 6, 2: 6, 3: 1}


def test_min_a_nine_points(nine_file):
    assert call("vres", "min-a", "-i", str(nine_file)) == (0, "2\n", "")
    code, out, _ = call("vres", "min-a", "-i", str(nine_file), "--max", "1")
    assert (code, out) == (1, "none <= 1\n")


def test_trim_then_verify(tmp_path, six_file):
    cx = tmp_path / "cx.json"
    code, out, _ = call("vres", "trim", "-i", str(six_file), "--at", "1,2", "-o", str(cx))
    assert code == 0
    cert = json.loads(out)
    assert cert == {"torsion": [True, True], "h0_saturation": True, "virtual": True}
    doc = json.loads(cx.read_text())
    assert doc["certificate"] == cert and doc["trim_at"] == [1, 2]
    code, out, _ = call("verify", "-i", str(cx), "--against", str(six_file))
    assert code == 0 and json.loads(out) == cert
    code, _, err = call("vres", "trim", "-i", str(six_file), "--at", "1,1")
    assert code == 2 and "reg_B" in err


def test_sat_writes_certificate(tmp_path, nine_file):
    cx = tmp_path / "sat.json"
    code, out, _ = call("vres", "sat", "-i", str(nine_file), "-o", str(cx))
    assert code == 0 and json.loads(out)["virtual"]
    doc = json.loads(cx.read_text())
    assert doc["saturation_exponent"] == 3 and len(doc["modules"]) == 3


def test_verify_false_certificate(tmp_path, six_file):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"field": "QQ", "modules": [[[0, 0]], [[1, 1]] * 4],
                               "maps": [[["x0*y0", "x0*y1", "x1*y0", "x1*y1"]]]}))
    code, out, _ = call("verify", "-i", str(bad), "--against", str(six_file))
    assert code == 1 and json.loads(out)["virtual"] is False


def test_checks(six_file, nine_file):
    assert call("check", "generic", "-i", str(six_file))[:2] == (0, "true\n")
    assert call("check", "generic", "-i", str(nine_file))[:2] == (1, "false\n")
    assert call("check", "keylemma", "-i", str(nine_file), "--a", "3")[:2] == (0, "true\n")
    code, out, _ = call("check", "delta2", "-i", str(six_file))
    assert code == 0 and out.splitlines() == ["(0,5) true", "(1,2) true", "(2,1) true",
                                              "(5,0) true"]
    code, _, err = call("check", "keylemma", "-i", str(nine_file), "--a", "1")
    assert code == 2


def test_prime_field_surrogate(six_file):
    code, out, err = call("betti", "-i", str(six_file), "--field", "fp:32003")
    assert code == 0
    assert out.endswith("# char 32003 surrogate\n")
    assert "surrogate" in err
    code, _, err = call("betti", "-i", str(six_file), "--field", "fp:12")
    assert code == 2 and "--field" in err


@pytest.mark.parametrize("content, needle", [
    ("{", "invalid JSON"),
    ('{"points": [[[1, 1], [1]]]}', "points[0]"),
    ('{"field": "RR", "points": [[[1, 1], [1, 1]]]}', "field"),
])
def test_malformed_points_file(tmp_path, content, needle):
    path = tmp_path / "p.json"
    path.write_text(content)
    code, out, err = call("betti", "-i", str(path))
    assert code == 2 and out == ""
    assert needle in err and len(err.strip().splitlines()) == 1


def test_malformed_complex_file(tmp_path, six_file):
    path = tmp_path / "c.json"
    path.write_text('{"modules": [[[0, 0]], [[1, 0]]], "maps": [[["x0", "y0"]]]}')
    code, _, err = call("verify", "-i", str(path), "--against", str(six_file))
    assert code == 2 and "maps" in err


def test_usage_errors(capsys):
    assert run(["betti"]) == 2
    assert run(["betti", "-i", "x.json", "--bogus"]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["betti", "-i", "/nonexistent/x.json"]) == 2
    assert "No such file" in capsys.readouterr().err


def test_failed_write_leaves_no_partial_file(tmp_path, six_file):
    target = tmp_path / "missing-dir" / "cx.json"
    with pytest.raises(OSError):
        call("vres", "trim", "-i", str(six_file), "--at", "1,2", "-o", str(target))
    assert not target.exists()
