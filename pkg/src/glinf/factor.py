"""Factor an element of GL(N, Z/p^k) into permutations and GL^[m] elements."""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import NotInvertible
from .matrix import (GroupElement, in_gl_m, is_permutation, mat_inverse,
                     mat_mul, product, theta)


@dataclass(frozen=True)
class Factor:
    tag: str  # "permutation" or "GL_m"
    element: GroupElement


def _conjugate_into_gl_m(y: GroupElement, m: int) -> list[Factor]:
    """y = t (t y t) t with t a block swap pushing y's window past m."""
    mod = y.modulus
    shift = max(m, y.window)
    t = theta(shift, 0, mod)
    inner = mat_mul(mat_mul(t, y), t)
    return [Factor("permutation", t), Factor("GL_m", inner), Factor("permutation", t)]


def generator_factorization(g: GroupElement, m: int) -> list[Factor]:
    """Write ``g`` as a product of permutation matrices and elements of GL^[m].

    Follows the constructive route: right-multiply by an automorphism of the
    first N coordinates that sends the top m rows to the standard basis, clear
    the first m columns below them with a lower unipotent left factor, and
    rewrite both auxiliary factors as block-swap conjugates of GL^[m] elements.
    """
    mod = g.modulus
    if linalg.rank_mod_p([list(r) for r in g.core], mod.p) < g.window:
        raise NotInvertible(g.window, linalg.rank_mod_p([list(r) for r in g.core], mod.p))
    if in_gl_m(g, m):
        return [Factor("GL_m", g)]
    if is_permutation(g):
        return [Factor("permutation", g)]
    n = max(g.window, m)
    q, p = mod.q, mod.p
    core = g.padded(n)
    top = [row[:] for row in core[:m]]
    extra = linalg.complete_basis_mod_p(top, n, p)
    basis = top + [[int(i == j) for i in range(n)] for j in extra]
    b = GroupElement(basis, mod)  # invertible mod p, hence over Z/p^k
    g1 = mat_mul(g, mat_inverse(b)).padded(n)
    # g1 = [[1, 0], [c, d]]; left factor [[1, 0], [-c, 1]] lands in GL^[m]
    lower = linalg.identity(n)
    for i in range(m, n):
        for j in range(m):
            lower[i][j] = (-g1[i][j]) % q
    left = GroupElement(lower, mod, check=False)
    core_part = mat_mul(left, GroupElement(g1, mod, check=False))
    assert in_gl_m(core_part, m), "reduced factor escaped GL^[m]"
    # g = left^-1 * core_part * b
    factors = (_conjugate_into_gl_m(mat_inverse(left), m)
               + [Factor("GL_m", core_part)]
               + _conjugate_into_gl_m(b, m))
    assert product((f.element for f in factors), mod) == g
    return factors


def verify_factorization(g: GroupElement, factors: list[Factor], m: int) -> bool:
    if product((f.element for f in factors), g.modulus) != g:
        return False
    for f in factors:
        ok = is_permutation(f.element) if f.tag == "permutation" else in_gl_m(f.element, m)
        if not ok:
            return False
    return True
