"""Finitary matrices over Z/p^k and the subgroups used throughout.

A :class:`GroupElement` stands for the infinite matrix diag(core, 1, 1, ...).
Two elements are equal when those infinite matrices agree, so the window size
is bookkeeping only.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import ModulusMismatch, NotInvertible, PreconditionError
from .residue import Modulus, Residue, norm_int


@dataclass(frozen=True)
class ResidueMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of canonical ints
    modulus: Modulus

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], modulus: Modulus) -> ResidueMatrix:
        q = modulus.q
        entries = tuple(tuple(int(x) % q for x in row) for row in rows)
        r = len(entries)
        c = len(entries[0]) if r else 0
        if any(len(row) != c for row in entries):
            raise PreconditionError("ragged matrix")
        return cls(r, c, entries, modulus)

    def entry(self, i: int, j: int) -> Residue:
        return Residue(self.entries[i][j], self.modulus)

    def tolist(self) -> list:
        return [list(row) for row in self.entries]


def _trimmed(core: list) -> tuple:
    """Smallest leading window outside which ``core`` is the identity."""
    n = len(core)
    w = 0
    for i in range(n):
        for j in range(n):
            if core[i][j] != (i == j):
                w = max(w, i + 1, j + 1)
    return tuple(tuple(row[:w]) for row in core[:w])


class GroupElement:
    """Invertible finitary matrix: ``core`` on the first ``window`` coordinates."""

    __slots__ = ("core", "modulus", "_key")

    def __init__(self, core, modulus: Modulus, check: bool = True):
        q = modulus.q
        rows = [[int(x) % q for x in row] for row in core]
        if any(len(row) != len(rows) for row in rows):
            raise PreconditionError("core must be square")
        if check and rows and linalg.rank_mod_p(rows, modulus.p) < len(rows):
            raise NotInvertible(len(rows), linalg.rank_mod_p(rows, modulus.p))
        self.core = tuple(tuple(row) for row in rows)
        self.modulus = modulus
        self._key = None

    @classmethod
    def identity(cls, modulus: Modulus, window: int = 0) -> GroupElement:
        return cls(linalg.identity(window), modulus, check=False)

    @property
    def window(self) -> int:
        return len(self.core)

    def key(self) -> tuple:
        if self._key is None:
            self._key = _trimmed(self.core)
        return self._key

    def trim(self) -> GroupElement:
        return GroupElement(self.key(), self.modulus, check=False)

    def padded(self, n: int) -> list:
        """Dense core of size max(n, window) as a mutable list."""
        return linalg.pad([list(r) for r in self.core], max(n, self.window))

    def resized(self, n: int) -> GroupElement:
        return GroupElement(self.padded(n), self.modulus, check=False)

    def as_residue_matrix(self) -> ResidueMatrix:
        return ResidueMatrix.from_rows(self.core, self.modulus)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.modulus == other.modulus and self.key() == other.key()

    def __hash__(self):
        return hash((self.modulus, self.key()))

    def __mul__(self, other: GroupElement) -> GroupElement:
        return mat_mul(self, other)

    def inverse(self) -> GroupElement:
        return mat_inverse(self)

    def is_identity(self) -> bool:
        return self.key() == ()

    def __repr__(self):
        return f"GroupElement({[list(r) for r in self.core]}, p={self.modulus.p}, k={self.modulus.k})"


def _same_modulus(*elems: GroupElement) -> Modulus:
    mod = elems[0].modulus
    for e in elems[1:]:
        if e.modulus != mod:
            raise ModulusMismatch(f"{mod} vs {e.modulus}")
    return mod


def mat_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    mod = _same_modulus(a, b)
    n = max(a.window, b.window)
    return GroupElement(linalg.matmul(a.padded(n), b.padded(n), mod.q), mod, check=False)


def product(elems: Iterable[GroupElement], modulus: Modulus) -> GroupElement:
    out = GroupElement.identity(modulus)
    for e in elems:
        out = mat_mul(out, e)
    return out


def mat_inverse(a: GroupElement) -> GroupElement:
    return GroupElement(linalg.inverse([list(r) for r in a.core], a.modulus), a.modulus, check=False)


def is_invertible(a: ResidueMatrix) -> bool:
    if a.rows != a.cols:
        raise PreconditionError("is_invertible needs a square matrix")
    return linalg.rank_mod_p(a.tolist(), a.modulus.p) == a.rows


def theta(j: int, alpha: int, modulus: Modulus) -> GroupElement:
    """Swap of the coordinate blocks [alpha, alpha+j) and [alpha+j, alpha+2j)."""
    if j < 0 or alpha < 0:
        raise PreconditionError("theta needs j, alpha >= 0")
    perm = list(range(alpha)) + [alpha + j + i for i in range(j)] + [alpha + i for i in range(j)]
    return permutation_embed(perm, modulus)


def permutation_embed(sigma: Sequence[int], modulus: Modulus) -> GroupElement:
    """0-1 matrix sending the basis column e_i to e_sigma(i) (0-based).

    This is a homomorphism: embed(s o t) == embed(s) * embed(t).
    """
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise PreconditionError(f"not a permutation of 0..{n - 1}: {sigma}")
    core = linalg.zeros(n, n)
    for i, s in enumerate(sigma):
        core[s][i] = 1
    return GroupElement(core, modulus, check=False)


def is_permutation(g: GroupElement) -> bool:
    core = g.core
    for row in core:
        if sorted(row) != [0] * (len(row) - 1) + [1]:
            return False
    return all(sum(col) == 1 for col in zip(*core)) if core else True


# ---------------------------------------------------------------------------
# subgroups

KINDS = ("GL_m", "GL_k_m", "congruence", "orthogonal", "symplectic")


@dataclass(frozen=True)
class SubgroupSpec:
    kind: str
    m: int | None = None
    j: int | None = None
    literal_symplectic: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown subgroup kind {self.kind!r}")
        needs_m = self.kind in ("GL_m", "GL_k_m")
        needs_j = self.kind in ("GL_k_m", "congruence")
        if needs_m != (self.m is not None) or needs_j != (self.j is not None):
            raise PreconditionError(f"wrong parameters for {self.kind}: m={self.m}, j={self.j}")
        if self.m is not None and self.m < 0:
            raise PreconditionError("m must be >= 0")
        if self.j is not None and self.j < 1:
            raise PreconditionError("j must be >= 1")

    @classmethod
    def gl_m(cls, m: int) -> SubgroupSpec:
        return cls("GL_m", m=m)


def symplectic_form(n: int, q: int) -> list:
    out = linalg.zeros(n, n)
    for b in range(0, n - 1, 2):
        out[b][b + 1] = 1
        out[b + 1][b] = q - 1
    return out


def membership(g: GroupElement, spec: SubgroupSpec) -> bool:
    mod = g.modulus
    q, p = mod.q, mod.p
    if spec.kind in ("GL_m", "GL_k_m"):
        m = spec.m
        c = g.padded(m)
        n = len(c)
        pj = 0 if spec.kind == "GL_m" else pow(p, spec.j)
        step = pj if pj and pj < q else 0
        for i in range(n):
            for jj in range(n):
                if i < m or jj < m:
                    want = int(i == jj)
                    diff = (c[i][jj] - want) % q
                    if diff and (step == 0 or diff % step):
                        return False
        return True
    if spec.kind == "congruence":
        pj = pow(p, spec.j)
        if pj >= q:
            return g.is_identity()
        return all((x - (i == j)) % pj == 0
                   for i, row in enumerate(g.core) for j, x in enumerate(row))
    if spec.kind == "orthogonal":
        c = [list(r) for r in g.core]
        return linalg.matmul(linalg.transpose(c), c, q) == linalg.identity(len(c))
    # symplectic: pad to an even window so the J-blocks are not cut
    n = g.window + (g.window % 2)
    c = g.padded(n)
    form = symplectic_form(n, q)
    lhs = linalg.matmul(linalg.matmul(linalg.transpose(c), form, q), c, q)
    target = linalg.identity(n) if spec.literal_symplectic else form
    return lhs == target


in_gl_m = lambda g, m: membership(g, SubgroupSpec.gl_m(m))  # noqa: E731


# ---------------------------------------------------------------------------
# metric


def metric_d(z: GroupElement, u: GroupElement) -> Fraction:
    """max_ij |z_ij - u_ij| over the identity-padded matrices."""
    mod = _same_modulus(z, u)
    n = max(z.window, u.window)
    a, b = z.padded(n), u.padded(n)
    best = Fraction(0)
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if x != y:
                best = max(best, norm_int(x - y, mod))
                if best == 1:
                    return best
    return best


# ---------------------------------------------------------------------------
# enumeration and sampling


def enumerate_gl(n: int, modulus: Modulus) -> Iterable[GroupElement]:
    """All of GL(n, Z/p^k): invertible matrices mod p, then every lift."""
    p, q = modulus.p, modulus.q
    lifts = range(0, q, p)
    for flat in itertools.product(range(p), repeat=n * n):
        rows = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if linalg.rank_mod_p(rows, p) < n:
            continue
        for extra in itertools.product(lifts, repeat=n * n):
            yield GroupElement([[rows[i][j] + extra[i * n + j] for j in range(n)]
                                for i in range(n)], modulus, check=False)


def gl_order(n: int, modulus: Modulus) -> int:
    p, k = modulus.p, modulus.k
    out = p ** ((k - 1) * n * n)
    for i in range(n):
        out *= p ** n - p ** i
    return out


def random_matrix(n: int, modulus: Modulus, rng: random.Random) -> list:
    q = modulus.q
    return [[rng.randrange(q) for _ in range(n)] for _ in range(n)]


def random_gl(n: int, modulus: Modulus, rng: random.Random) -> GroupElement:
    while True:
        rows = random_matrix(n, modulus, rng)
        if not rows or linalg.rank_mod_p(rows, modulus.p) == n:
            return GroupElement(rows, modulus, check=False)


def random_gl_m(n: int, m: int, modulus: Modulus, rng: random.Random) -> GroupElement:
    """Random element of GL^[m] supported in the window n."""
    inner = random_gl(max(n - m, 0), modulus, rng)
    return GroupElement(linalg.embed([list(r) for r in inner.core], max(n, m), m), modulus, check=False)
