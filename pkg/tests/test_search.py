import numpy as np
import pytest

from glinf.errors import UndecidedError
from glinf.matrix import GroupElement, mat_mul, random_gl, random_gl_m
from glinf.residue import Modulus
from glinf.search import (Outcome, SearchBudget, Verdict, irreducible_polys, smith_profile,
                          two_sided_search,
                          verify_witness)


def test_undecided_is_never_false():
    v = Verdict(Outcome.UNDECIDED, "budget")
    with pytest.raises(UndecidedError):
        bool(v)
    assert not v.decided
    assert bool(Verdict(Outcome.YES)) and not bool(Verdict(Outcome.NO))


def test_smith_profile():
    mod = Modulus(2, 3)
    assert smith_profile(np.array([[2, 0], [0, 4]]), mod) == (1, 2)
    assert smith_profile(np.array([[0, 0], [0, 0]]), mod) == (3, 3)
    assert smith_profile(np.array([[2, 4], [4, 8]]), mod) == (1, 3)


def test_diagonal_witness_found(rng):
    mod = Modulus(2, 2)
    for _ in range(30):
        parts = [random_gl(3, mod, rng) for _ in range(2)]
        u, v = random_gl_m(4, 1, mod, rng), random_gl_m(4, 1, mod, rng)
        other = [mat_mul(mat_mul(u, x), v) for x in parts]
        res = two_sided_search(parts, other, 1, 1)
        assert res.outcome is Outcome.YES
        assert verify_witness(parts, other, 1, 1, res.left, res.right)


def test_non_diagonal_twist_rejected():
    mod = Modulus(2, 1)
    one = GroupElement.identity(mod)
    swap = GroupElement([[0, 1], [1, 0]], mod)
    # (1, 1) against (1, swap): would need u v = 1 and u swap' v = ... in K^0 the
    # second part is conjugation-invariant, so no common pair exists
    res = two_sided_search([one, one], [one, swap], 0, 0)
    assert res.outcome is Outcome.NO


def test_exhausted_budget_reports_undecided(rng):
    mod = Modulus(2, 1)
    g = random_gl(3, mod, rng)
    h = mat_mul(mat_mul(random_gl_m(4, 1, mod, rng), g), random_gl_m(4, 1, mod, rng))
    assert g != h
    res = two_sided_search([g], [h], 1, 1, window=8, budget=SearchBudget(exhaustive=1, samples=0))
    assert res.outcome is Outcome.UNDECIDED
    with pytest.raises(UndecidedError):
        bool(res)
    assert two_sided_search([g], [h], 1, 1, window=8).outcome is Outcome.YES


def test_irreducible_polys_counts():
    # number of monic irreducibles over F_2 of degree 1..4 is 2, 1, 2, 3
    assert len(irreducible_polys(2, 4)) == 8
    assert len(irreducible_polys(3, 2)) == 6


def test_same_charpoly_different_structure_is_no():
    mod = Modulus(2, 1)
    # companion of (x^2+x+1)^2 = x^4+x^2+1 against two copies of the companion of x^2+x+1
    c = [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0]]
    d = [[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1]]
    ident = GroupElement.identity(mod, 4)
    res = two_sided_search([ident, GroupElement(c, mod)], [ident, GroupElement(d, mod)], 0, 0)
    assert res.outcome is Outcome.NO
    assert "f(c)" in res.reason


def test_different_cubic_factor_is_no():
    mod = Modulus(2, 1)
    c = [[0, 0, 1], [1, 0, 1], [0, 1, 0]]   # x^3 + x + 1
    d = [[0, 0, 1], [1, 0, 0], [0, 1, 1]]   # x^3 + x^2 + 1
    ident = GroupElement.identity(mod, 3)
    res = two_sided_search([ident, GroupElement(c, mod)], [ident, GroupElement(d, mod)], 0, 0)
    assert res.outcome is Outcome.NO
