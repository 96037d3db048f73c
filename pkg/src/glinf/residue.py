"""Arithmetic in the residue rings Z/p^k.

Values are plain Python integers, so there is no overflow at any precision.
The integer-level helpers (``val_int``, ``inv_int``) are what the matrix code
uses in its inner loops; :class:`Residue` wraps them for callers that want a
typed scalar.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ModulusMismatch, NotAUnit, PreconditionError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Modulus:
    p: int
    k: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise PreconditionError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise PreconditionError(f"k must be an integer >= 1, got {self.k!r}")

    @property
    def q(self) -> int:
        """The ring size p**k."""
        return self.p ** self.k

    def __str__(self):
        return f"Z/{self.p}^{self.k}"

    def units(self):
        return [x for x in range(self.q) if x % self.p]


def val_int(x: int, p: int, k: int) -> int:
    """Valuation of a canonical representative, truncated at k."""
    x %= p ** k
    if x == 0:
        return k
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def inv_int(x: int, mod: Modulus) -> int:
    q = mod.q
    x %= q
    if x % mod.p == 0:
        raise NotAUnit(x, val_int(x, mod.p, mod.k))
    # extended Euclid on representatives
    old_r, r = x, q
    old_s, s = 1, 0
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
    return old_s % q


def norm_int(x: int, mod: Modulus) -> Fraction:
    """p-adic absolute value at working precision; zero maps to 0."""
    x %= mod.q
    if x == 0:
        return Fraction(0)
    return Fraction(1, mod.p ** val_int(x, mod.p, mod.k))


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: Modulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus.q)

    def _check(self, other: Residue):
        if not isinstance(other, Residue):
            raise TypeError(f"expected Residue, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"{self.modulus} vs {other.modulus}")

    def __add__(self, other):
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other):
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other):
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.modulus.p}^{self.modulus.k})"


_OPS = {
    "add": Residue.__add__,
    "sub": Residue.__sub__,
    "mul": Residue.__mul__,
}


def ring_ops(a: Residue, b: Residue | None, op: str) -> Residue:
    if op == "neg":
        return -a
    if op not in _OPS:
        raise PreconditionError(f"unknown ring operation {op!r}")
    if b is None or a.modulus != b.modulus:
        raise ModulusMismatch("ring_ops needs two residues with equal moduli")
    return _OPS[op](a, b)


def valuation(a: Residue) -> int:
    return val_int(a.value, a.modulus.p, a.modulus.k)


def norm(a: Residue) -> Fraction:
    return norm_int(a.value, a.modulus)


def inv_unit(a: Residue) -> Residue:
    return Residue(inv_int(a.value, a.modulus), a.modulus)


def reduce_precision(a: Residue, k: int) -> Residue:
    """The ring map Z/p^k -> Z/p^k' for k' <= k."""
    if k < 1 or k > a.modulus.k:
        raise PreconditionError(
            f"cannot reduce from precision {a.modulus.k} to {k}")
    return Residue(a.value, Modulus(a.modulus.p, k))
