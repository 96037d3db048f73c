import pytest

from glinf.errors import NotInvertible
from glinf.factor import Factor, generator_factorization, verify_factorization
from glinf.matrix import (GroupElement, in_gl_m, is_permutation, permutation_embed,
                          random_gl, random_gl_m, theta)
from glinf.residue import Modulus


def test_single_factor_cases(rng):
    mod = Modulus(2, 2)
    g = random_gl_m(4, 2, mod, rng)
    assert [f.element for f in generator_factorization(g, 2)] == [g]
    s = permutation_embed([2, 0, 1, 3], mod)
    out = generator_factorization(s, 2)
    assert len(out) == 1 and out[0].tag == "permutation"


def test_factors_multiply_back(rng):
    for mod in (Modulus(2, 1), Modulus(2, 2), Modulus(3, 1)):
        for n in range(1, 6):
            for m in range(3):
                for _ in range(10):
                    g = random_gl(n, mod, rng)
                    factors = generator_factorization(g, m)
                    assert verify_factorization(g, factors, m)
                    for f in factors:
                        assert is_permutation(f.element) if f.tag == "permutation" else in_gl_m(f.element, m)


def test_random_gl4_z2_m1(rng):
    mod = Modulus(2, 1)
    g = random_gl(4, mod, rng)
    assert verify_factorization(g, generator_factorization(g, 1), 1)


def test_verification_rejects_wrong_tags():
    mod = Modulus(2, 1)
    t = theta(1, 0, mod)
    assert not verify_factorization(t, [Factor("GL_m", t)], 1)


def test_non_invertible_input():
    with pytest.raises(NotInvertible):
        generator_factorization(GroupElement([[2, 0], [0, 1]], Modulus(2, 2), check=False), 1)
