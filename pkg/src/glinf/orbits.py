"""Orbits of GL on tuples of finitely supported vectors and covectors.

g acts by (v, w) -> (v g, g^-1 w): vectors are rows, covectors are columns,
so every pairing w(v) is invariant.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BudgetExceeded, ModulusMismatch, PreconditionError
from .matrix import GroupElement
from .residue import Modulus

FLAVORS = ("vector", "covector")


@dataclass(frozen=True)
class VectorFin:
    coords: tuple
    modulus: Modulus
    flavor: str = "vector"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise PreconditionError(f"unknown flavor {self.flavor!r}")
        c = [int(x) % self.modulus.q for x in self.coords]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coords", tuple(c))

    def dense(self, n: int) -> list:
        return list(self.coords[:n]) + [0] * max(0, n - len(self.coords))

    @property
    def support(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class OrbitState:
    vectors: tuple
    covectors: tuple

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(self.vectors))
        object.__setattr__(self, "covectors", tuple(self.covectors))
        mods = {x.modulus for x in self.vectors + self.covectors}
        if len(mods) > 1:
            raise ModulusMismatch("state mixes moduli")
        if any(x.flavor != "vector" for x in self.vectors) or \
                any(x.flavor != "covector" for x in self.covectors):
            raise PreconditionError("flavors do not match their slots")

    def pairings(self) -> tuple:
        out = []
        for v in self.vectors:
            for w in self.covectors:
                q = v.modulus.q
                out.append(sum(a * b for a, b in zip(v.coords, w.coords)) % q)
        return tuple(out)


def act(g: GroupElement, s: OrbitState) -> OrbitState:
    mod = g.modulus
    q = mod.q
    for x in s.vectors + s.covectors:
        if x.modulus != mod:
            raise ModulusMismatch(f"{mod} vs {x.modulus}")
    n = max([g.window] + [x.support for x in s.vectors + s.covectors])
    core = g.padded(n)
    inv = linalg.inverse(core, mod)
    vecs = tuple(VectorFin(tuple(linalg.matmul([v.dense(n)], core, q)[0]), mod, "vector")
                 for v in s.vectors)
    covs = tuple(VectorFin(tuple(r[0] for r in linalg.matmul(inv, [[c] for c in w.dense(n)], q)),
                           mod, "covector") for w in s.covectors)
    return OrbitState(vecs, covs)


def generators(N: int, mod: Modulus) -> list[GroupElement]:
    """Transvections 1 + c E_ij, unit scalings and adjacent transpositions."""
    q = mod.q
    out = []
    for i in range(N):
        for j in range(N):
            if i != j:
                for c in range(1, q):
                    m = linalg.identity(N)
                    m[i][j] = c
                    out.append(GroupElement(m, mod, check=False))
    for i in range(N):
        for u in mod.units():
            if u != 1:
                m = linalg.identity(N)
                m[i][i] = u
                out.append(GroupElement(m, mod, check=False))
    for i in range(N - 1):
        m = linalg.identity(N)
        m[i][i] = m[i + 1][i + 1] = 0
        m[i][i + 1] = m[i + 1][i] = 1
        out.append(GroupElement(m, mod, check=False))
    return out


def generated_group(N: int, mod: Modulus, budget: int = 200_000) -> set:
    """Closure of the generator set; used to confirm it is all of GL(N)."""
    gens = generators(N, mod)
    ident = GroupElement.identity(mod, N).key()
    seen = {ident}
    todo = deque([GroupElement.identity(mod, N)])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = x * g
            if y.key() not in seen:
                seen.add(y.key())
                if len(seen) > budget:
                    raise BudgetExceeded(f"group closure exceeded {budget} elements")
                todo.append(y)
    return seen


def _all_states(width: int, q: int) -> np.ndarray:
    """Every state in lexicographic order; row i has index i in base q."""
    idx = np.arange(q ** width, dtype=np.int64)
    digits = np.empty((idx.size, width), dtype=np.int64)
    for c in range(width - 1, -1, -1):
        digits[:, c] = idx % q
        idx //= q
    return digits


def orbit_labels(n: int, N: int, mod: Modulus, states: str = "full",
                 budget: int = 2_000_000) -> np.ndarray:
    """For every state index, the index of the least state in its orbit."""
    q = mod.q
    slots = n * (2 if states == "full" else 1)
    width = slots * N
    total = q ** width
    if total > budget:
        raise BudgetExceeded(f"{total} states exceed budget {budget}")
    allst = _all_states(width, q)
    weights = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    images = []
    for g in generators(N, mod):
        core = np.array(g.padded(N), dtype=np.int64)
        inv_t = np.array(linalg.inverse(g.padded(N), mod), dtype=np.int64).T
        out = np.empty_like(allst)
        for s in range(slots):
            block = allst[:, s * N:(s + 1) * N]
            # vectors: v g; covectors: g^-1 w, written as w^T (g^-1)^T
            out[:, s * N:(s + 1) * N] = (block @ (core if s < n else inv_t)) % q
        images.append(out @ weights)
    label = np.arange(total, dtype=np.int64)
    while True:
        before = label.copy()
        for img in images:
            # an edge x -> g x merges both labels into the smaller one
            np.minimum.at(label, img, label)
            label = np.minimum(label, label[img])
        label = label[label]
        if np.array_equal(label, before):
            return label


def orbit_count(n: int, N: int, mod: Modulus, states: str = "full",
                budget: int = 2_000_000, with_representatives: bool = False):
    """Number of GL(N)-orbits on n vectors (and n covectors for ``full``)
    supported in the first N coordinates."""
    if n < 0 or N < 0:
        raise PreconditionError("n and N must be >= 0")
    if states not in ("full", "vectors"):
        raise PreconditionError(f"unknown state family {states!r}")
    slots = n * (2 if states == "full" else 1)
    if slots == 0 or N == 0:
        return (1, [()]) if with_representatives else 1
    label = orbit_labels(n, N, mod, states, budget)
    reps = np.unique(label)
    if not with_representatives:
        return int(reps.size)
    digits = _all_states(slots * N, mod.q)[reps]
    return int(reps.size), [tuple(int(x) for x in row) for row in digits]


@dataclass
class OrbitRow:
    n: int
    p: int
    k: int
    N: int
    orbit_count: int
    stabilized: bool


def orbit_stabilization(n: int, windows, mod: Modulus, states: str = "full",
                        budget: int = 2_000_000):
    """Orbit counts over increasing windows and the observed stabilization point.

    Returns (rows, point, conclusive). ``point`` is the least window from
    which the count stays constant to the end of the table; it needs at least
    two observations. A budget overrun truncates the table and marks the
    result inconclusive.
    """
    counts = []
    conclusive = True
    for N in sorted(windows):
        try:
            counts.append((N, orbit_count(n, N, mod, states, budget)))
        except BudgetExceeded:
            conclusive = False
            break
    point = None
    if len(counts) >= 2:
        last = counts[-1][1]
        i = len(counts) - 1
        while i > 0 and counts[i - 1][1] == last:
            i -= 1
        if i < len(counts) - 1:
            point = counts[i][0]
    if point is None:
        conclusive = False
    rows = [OrbitRow(n, mod.p, mod.k, N, c, point is not None and N >= point) for N, c in counts]
    return rows, point, conclusive
