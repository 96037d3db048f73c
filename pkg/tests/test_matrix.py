import itertools
import random
from fractions import Fraction

import pytest

from glinf import linalg
from glinf.errors import ModulusMismatch, NotInvertible, PreconditionError
from glinf.matrix import (GroupElement, ResidueMatrix, SubgroupSpec, enumerate_gl,
                          gl_order, in_gl_m, is_invertible, mat_inverse, mat_mul,
                          membership, metric_d, permutation_embed, random_gl, theta)
from glinf.residue import Modulus

Z2, Z4, Z3 = Modulus(2, 1), Modulus(2, 2), Modulus(3, 1)


def G(rows, mod):
    return GroupElement(rows, mod)


def test_products_and_inverses():
    u = G([[1, 1], [0, 1]], Z4)
    assert (u * u).core == ((1, 2), (0, 1))
    assert mat_inverse(u).core == ((1, 3), (0, 1))
    for mod in (Z2, Modulus(3, 2)):
        assert mat_inverse(G([[1, 1], [0, 1]], mod)).core == ((1, mod.q - 1), (0, 1))
    g = G([[2, 1], [1, 1]], Z4)
    assert (g * mat_inverse(g)).is_identity()
    assert mat_inverse(GroupElement.identity(Z4, 3)).is_identity()


def test_not_invertible_reports_rank():
    with pytest.raises(NotInvertible) as err:
        G([[2, 0], [0, 1]], Z4)
    assert err.value.rank_mod_p == 1
    assert not is_invertible(ResidueMatrix.from_rows([[2, 0], [0, 1]], Z4))


def test_padding_is_neutral(rng):
    g = random_gl(3, Z4, rng)
    h = random_gl(2, Z4, rng)
    assert g.resized(6) == g
    assert hash(g.resized(6)) == hash(g)
    assert (g.resized(5) * h) == (g * h.resized(7))
    assert metric_d(g.resized(5), h) == metric_d(g, h)


def test_mismatched_moduli():
    with pytest.raises(ModulusMismatch):
        GroupElement.identity(Z2, 1) * GroupElement.identity(Z4, 1)


def test_theta_examples():
    assert theta(1, 0, Z2).core == ((0, 1), (1, 0))
    assert theta(1, 1, Z2).core == ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    for j in range(4):
        for a in range(3):
            t = theta(j, a, Z3)
            assert (t * t).is_identity()
            assert in_gl_m(t, a)


def test_permutation_embedding_is_a_homomorphism():
    assert permutation_embed([0, 1, 2], Z2).is_identity()
    assert permutation_embed([1, 0], Z2) == theta(1, 0, Z2)
    for n in range(1, 5):
        perms = list(itertools.permutations(range(n)))
        for s in perms:
            for t in perms:
                comp = [s[t[i]] for i in range(n)]
                assert permutation_embed(comp, Z2) == permutation_embed(s, Z2) * permutation_embed(t, Z2)
    with pytest.raises(PreconditionError):
        permutation_embed([0, 0], Z2)


def test_membership_examples():
    one = GroupElement.identity(Z4, 2)
    specs = [SubgroupSpec("GL_m", m=2), SubgroupSpec("GL_k_m", m=1, j=1),
             SubgroupSpec("congruence", j=1), SubgroupSpec("orthogonal"), SubgroupSpec("symplectic")]
    assert all(membership(one, s) for s in specs)
    assert membership(theta(1, 0, Z4), SubgroupSpec("orthogonal"))
    assert membership(G([[1, 2], [0, 1]], Z4), SubgroupSpec("congruence", j=1))
    assert not membership(G([[1, 1], [0, 1]], Z4), SubgroupSpec("congruence", j=1))
    # [[1+2a, 2b], [2c, d]] is in GL_1^[1]
    assert membership(G([[3, 2, 0], [2, 1, 1], [0, 1, 2]], Z4), SubgroupSpec("GL_k_m", m=1, j=1))
    assert not membership(G([[3, 1], [2, 1]], Z4), SubgroupSpec("GL_k_m", m=1, j=1))
    with pytest.raises(PreconditionError):
        SubgroupSpec("GL_m")


def test_symplectic_form_and_literal_switch():
    # [[a, b], [c, d]] with det 1 preserves J
    g = G([[1, 1], [0, 1]], Modulus(3, 1))
    assert membership(g, SubgroupSpec("symplectic"))
    assert not membership(g, SubgroupSpec("symplectic", literal_symplectic=True))
    # an odd window is padded to the next J block
    assert membership(G([[2]], Modulus(3, 1)), SubgroupSpec("symplectic")) is False
    assert membership(G([[1]], Modulus(3, 1)), SubgroupSpec("symplectic"))


def test_gl_m_membership_matches_block_shape(rng):
    for _ in range(50):
        n, m = rng.randint(1, 5), rng.randint(0, 3)
        g = random_gl(n, Z4, rng)
        core = g.padded(max(n, m))
        expect = all(core[i][j] == (i == j) for i in range(len(core)) for j in range(len(core))
                     if i < m or j < m)
        assert in_gl_m(g, m) == expect


def test_metric_examples():
    one = GroupElement.identity(Z2)
    assert metric_d(one, theta(1, 0, Z2)) == 1
    for mod in (Z4, Modulus(3, 2)):
        e = G([[1, 0], [0, 1 + mod.p]], mod)
        assert metric_d(GroupElement.identity(mod), e) == Fraction(1, mod.p)
        assert metric_d(e, e) == 0


def test_metric_is_invariant_and_ultrametric_on_gl2_z2():
    elems = list(enumerate_gl(2, Z2))
    for a in elems:
        for z in elems:
            for u in elems:
                d = metric_d(z, u)
                assert metric_d(a * z, a * u) == d == metric_d(z * a, u * a)
                assert metric_d(a, u) <= max(metric_d(a, z), metric_d(z, u))


def test_metric_invariance_random(rng):
    for mod in (Z4, Modulus(3, 2)):
        for _ in range(100):
            a, z, u = (random_gl(rng.randint(1, 4), mod, rng) for _ in range(3))
            d = metric_d(z, u)
            assert metric_d(a * z, a * u) == d == metric_d(z * a, u * a)


def test_group_orders_by_enumeration():
    assert sum(1 for _ in enumerate_gl(2, Z2)) == 6 == gl_order(2, Z2)
    assert sum(1 for _ in enumerate_gl(2, Z4)) == 96 == gl_order(2, Z4)
    assert sum(1 for _ in enumerate_gl(3, Z2)) == 168 == gl_order(3, Z2)


def test_three_way_invertibility_over_z4():
    for flat in itertools.product(range(4), repeat=4):
        rows = [list(flat[:2]), list(flat[2:])]
        a = is_invertible(ResidueMatrix.from_rows(rows, Z4))
        try:
            linalg.inverse(rows, Z4)
            b = True
        except NotInvertible:
            b = False
        c = linalg.det(rows, 4) % 2 == 1
        assert a == b == c


def test_group_axioms_random(rng):
    for mod in (Z2, Z4, Z3):
        for _ in range(50):
            a, b, c = (random_gl(rng.randint(0, 4), mod, rng) for _ in range(3))
            assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
            assert (a * GroupElement.identity(mod)) == a
            assert (a * a.inverse()).is_identity()
