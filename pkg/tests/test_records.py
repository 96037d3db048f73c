import json

import pytest

from glinf import records
from glinf.cosets import DoubleCoset, normalize_to_window
from glinf.errors import RecordError
from glinf.matrix import random_gl
from glinf.residue import Modulus
from glinf.train import TrainCoset, TupleElement

Z4 = Modulus(2, 2)


def test_matrix_round_trip(rng):
    g = random_gl(3, Z4, rng)
    assert records.matrix_from_record(json.loads(records.dumps(records.matrix_to_record(g)))) == g


@pytest.mark.parametrize("bad, msg", [
    ({"p": 2, "k": 2, "n": 1, "rows": [[4]]}, "not canonical"),
    ({"p": 2, "k": 2, "n": 1, "rows": [[-1]]}, "not canonical"),
    ({"p": 2, "k": 2, "n": 2, "rows": [[1, 0]]}, "expected 2 rows"),
    ({"p": 2, "k": 2, "n": 1, "rows": [[2]]}, "not invertible"),
    ({"p": 4, "k": 1, "n": 1, "rows": [[1]]}, "prime"),
    ({"p": 2, "k": 2, "rows": [[1]]}, "missing field 'n'"),
    ({"p": 2, "k": 2, "n": 1, "rows": [[1.0]]}, "not an integer"),
])
def test_loader_rejects(bad, msg):
    with pytest.raises(RecordError, match=msg):
        records.matrix_from_record(bad)


def test_coset_certificate_train_round_trips(rng):
    g = random_gl(4, Z4, rng)
    c = DoubleCoset(1, g)
    back = records.coset_from_record(records.coset_to_record(c))
    assert back.m == 1 and back.rep == g
    cert = normalize_to_window(g, 1)
    rec = records.certificate_to_record(cert)
    assert records.verify_certificate_record(json.loads(records.dumps(rec)))
    rec["out"] = records.matrix_to_record(g)
    assert not records.verify_certificate_record(rec)
    t = TrainCoset(1, 0, TupleElement((g, random_gl(2, Z4, rng))))
    t2 = records.train_from_record(records.train_to_record(t))
    assert t2.alpha == 1 and t2.gamma == 0 and t2.rep.parts == t.rep.parts


def test_json_errors_carry_location():
    with pytest.raises(RecordError, match="line 1 column"):
        records.loads("{bad")


def test_dumps_is_deterministic(rng):
    g = random_gl(3, Z4, rng)
    rec = records.certificate_to_record(normalize_to_window(g, 1))
    assert records.dumps(rec) == records.dumps(json.loads(records.dumps(rec)))
