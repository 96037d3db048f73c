import json

import pytest

from glinf import records
from glinf.cli import EXIT_INPUT, EXIT_NO, EXIT_OK, EXIT_UNDECIDED, main
from glinf.cosets import normalize_to_window
from glinf.matrix import GroupElement, mat_mul, random_gl, random_gl_m, theta
from glinf.residue import Modulus
from glinf.train import TrainCoset, TupleElement

Z2 = Modulus(2, 1)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_canon_identity(tmp_path, capsys):
    f = write(tmp_path, "g.json", {"p": 2, "k": 1, "n": 2, "rows": [[1, 0], [0, 1]]})
    code, out, _ = run(capsys, "canon", "--m", "1", f)
    rep = json.loads(out)
    assert code == EXIT_OK
    for key in ("q", "r", "out"):
        assert records.matrix_from_record(rep[key]).is_identity()
    cert = write(tmp_path, "c.json", rep)
    assert run(capsys, "verify", cert)[0] == EXIT_OK


def test_canon_is_deterministic(tmp_path, capsys, rng):
    g = random_gl(5, Modulus(2, 2), rng)
    f = write(tmp_path, "g.json", records.matrix_to_record(g))
    first = run(capsys, "canon", "--m", "1", f)[1]
    assert first == run(capsys, "canon", "--m", "1", f)[1]


def test_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"p\": 2,")
    code, _, err = run(capsys, "canon", str(bad))
    assert code == EXIT_INPUT and "line" in err
    f = write(tmp_path, "nc.json", {"p": 2, "k": 1, "n": 1, "rows": [[3]]})
    code, _, err = run(capsys, "canon", f)
    assert code == EXIT_INPUT and "canonical" in err
    assert run(capsys, "canon", str(tmp_path / "missing.json"))[0] == EXIT_INPUT


def test_coset_eq_codes(tmp_path, capsys, rng):
    one = GroupElement.identity(Z2, 1)
    a = write(tmp_path, "a.json", {"m": 1, "rep": records.matrix_to_record(one)})
    b = write(tmp_path, "b.json", {"m": 1, "rep": records.matrix_to_record(theta(1, 0, Z2))})
    code, out, _ = run(capsys, "coset-eq", a, b)
    assert code == EXIT_NO and json.loads(out)["outcome"] == "no"
    g = random_gl(3, Z2, rng)
    h = mat_mul(mat_mul(random_gl_m(4, 1, Z2, rng), g), random_gl_m(4, 1, Z2, rng))
    a = write(tmp_path, "g.json", {"m": 1, "rep": records.matrix_to_record(g)})
    b = write(tmp_path, "h.json", {"m": 1, "rep": records.matrix_to_record(h)})
    code, out, _ = run(capsys, "coset-eq", a, b)
    assert code == EXIT_OK
    wit = write(tmp_path, "w.json", json.loads(out))
    assert run(capsys, "verify", wit)[0] == EXIT_OK

    # a positive pair whose reduced forms differ cannot be settled without search
    while normalize_to_window(g, 1).out == normalize_to_window(h, 1).out:
        g = random_gl(3, Z2, rng)
        h = mat_mul(mat_mul(random_gl_m(4, 1, Z2, rng), g), random_gl_m(4, 1, Z2, rng))
    a = write(tmp_path, "g.json", {"m": 1, "rep": records.matrix_to_record(g)})
    b = write(tmp_path, "h.json", {"m": 1, "rep": records.matrix_to_record(h)})
    code, out, _ = run(capsys, "coset-eq", a, b, "--window", "8", "--budget", "1", "--samples", "0")
    assert code == EXIT_UNDECIDED and json.loads(out)["outcome"] == "undecided"


def test_coset_dist(tmp_path, capsys):
    one = GroupElement.identity(Z2, 1)
    a = write(tmp_path, "a.json", {"m": 1, "rep": records.matrix_to_record(one)})
    b = write(tmp_path, "b.json", {"m": 1, "rep": records.matrix_to_record(theta(1, 0, Z2))})
    code, out, _ = run(capsys, "coset-dist", a, b, "--method", "hausdorff")
    assert code == EXIT_OK and json.loads(out)["distance"] == "1"


def test_train_commands(tmp_path, capsys, rng):
    recs = [records.train_to_record(TrainCoset(1, 1, TupleElement(
        (random_gl(2, Z2, rng), random_gl(2, Z2, rng))))) for _ in range(3)]
    paths = [write(tmp_path, f"t{i}.json", r) for i, r in enumerate(recs)]
    code, out, _ = run(capsys, "train-prod", paths[0], paths[1])
    assert code == EXIT_OK and json.loads(out)["alpha"] == 1
    code, out, _ = run(capsys, "stabilize", paths[0], paths[1])
    assert code == EXIT_OK and json.loads(out)["conclusive"]
    code, out, _ = run(capsys, "assoc-check", *paths)
    assert code == EXIT_OK and json.loads(out)["outcome"] == "yes"


def test_factor_and_verify(tmp_path, capsys, rng):
    f = write(tmp_path, "g.json", records.matrix_to_record(random_gl(4, Z2, rng)))
    code, out, _ = run(capsys, "factor", "--m", "1", f)
    assert code == EXIT_OK and json.loads(out)["verified"]
    cert = json.loads(out)
    assert run(capsys, "verify", write(tmp_path, "f.json", cert))[0] == EXIT_OK
    if len(cert["factors"]) > 1:
        cert["factors"] = cert["factors"][1:]
        assert run(capsys, "verify", write(tmp_path, "f2.json", cert))[0] == EXIT_NO


def test_orbits_csv(capsys):
    code, out, _ = run(capsys, "orbits", "--p", "2", "--k", "2", "--n-min", "1", "--n-max", "4",
                       "--format", "csv")
    lines = out.strip().splitlines()
    assert code == EXIT_OK
    assert lines[0] == "n,p,k,N,orbit_count,stabilized"
    assert lines[-1] == "1,2,2,4,3,true"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--p", "2", "--k", "1", "--samples", "10")
    assert code == EXIT_OK
    assert all(c["passed"] for c in json.loads(out)["checks"])


def test_text_format(tmp_path, capsys):
    f = write(tmp_path, "g.json", {"p": 2, "k": 1, "n": 1, "rows": [[1]]})
    code, out, _ = run(capsys, "canon", "--m", "1", "--format", "text", f)
    assert code == EXIT_OK and "out: " in out


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == EXIT_INPUT
