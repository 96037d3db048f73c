"""A quick property sweep over one modulus, used by ``glinf selftest``."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .cosets import DoubleCoset, coset_eq, localize_conjugators, normalize_to_window
from .factor import generator_factorization, verify_factorization
from .matrix import (enumerate_gl, gl_order, mat_mul, random_gl,
                     random_gl_m)
from .orbits import orbit_count
from .residue import Modulus, Residue
from .search import Outcome
from .train import (TrainCoset, TupleElement, associativity_check, train_coset_eq,
                    train_product)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _ring_axioms(mod: Modulus) -> bool:
    q = mod.q
    elems = [Residue(x, mod) for x in range(q)]
    zero, one = Residue(0, mod), Residue(1, mod)
    for a in elems:
        if a + zero != a or a * one != a or a + (-a) != zero:
            return False
        for b in elems:
            if a + b != b + a or a * b != b * a:
                return False
    return True


def _gl_count(mod: Modulus, n: int) -> bool:
    return sum(1 for _ in enumerate_gl(n, mod)) == gl_order(n, mod)


def run(p: int, k: int, seed: int = 0, samples: int = 40) -> list[CheckResult]:
    mod = Modulus(p, k)
    rng = random.Random(seed)
    out = [CheckResult("ring axioms", _ring_axioms(mod))]
    if gl_order(2, mod) <= 5000:
        out.append(CheckResult("GL(2) order", _gl_count(mod, 2), str(gl_order(2, mod))))
    bad = 0
    for m in (0, 1, 2):
        for _ in range(samples):
            g = random_gl(rng.randint(0, 3 * m + 3), mod, rng)
            if not normalize_to_window(g, m).verify():
                bad += 1
    out.append(CheckResult("window normalization", bad == 0, f"{bad} failures"))
    bad = 0
    for m in (1, 2):
        for _ in range(samples):
            g2 = random_gl(rng.randint(1, 3 * m), mod, rng)
            big = random_gl_m(3 * m + rng.randint(2, 6), m, mod, rng)
            cert = normalize_to_window(mat_mul(big, g2), m)
            q1, r1 = mat_mul(cert.q, big), cert.r
            try:
                localize_conjugators(cert.out, g2, m, q1, r1)
            except AssertionError:
                bad += 1
    out.append(CheckResult("conjugator localization", bad == 0, f"{bad} failures"))
    bad = 0
    for m in (0, 1, 2):
        for _ in range(samples):
            g = random_gl(rng.randint(1, 5), mod, rng)
            if not verify_factorization(g, generator_factorization(g, m), m):
                bad += 1
    out.append(CheckResult("generator factorization", bad == 0, f"{bad} failures"))
    bad = undecided = 0
    for _ in range(samples):
        m = rng.randint(1, 2)
        g = random_gl(rng.randint(1, 3 * m), mod, rng)
        h = mat_mul(mat_mul(random_gl_m(3 * m + 2, m, mod, rng), g), random_gl_m(3 * m + 2, m, mod, rng))
        res = coset_eq(DoubleCoset(m, g), DoubleCoset(m, h))
        if res.outcome is Outcome.UNDECIDED:
            undecided += 1
        elif res.outcome is not Outcome.YES:
            bad += 1
    out.append(CheckResult("coset equality on constructed pairs", bad == 0,
                           f"{bad} failures, {undecided} undecided"))
    bad = undecided = 0
    for _ in range(max(1, samples // 4)):
        n = rng.randint(1, 2)
        d = [rng.randint(0, 1) for _ in range(4)]
        cos = [TrainCoset(d[i], d[i + 1], TupleElement(tuple(
            random_gl(rng.randint(0, 2), mod, rng) for _ in range(n)))) for i in range(3)]
        res = associativity_check(*cos)
        if res.outcome is Outcome.UNDECIDED:
            undecided += 1
        elif res.outcome is not Outcome.YES:
            bad += 1
        unit = TrainCoset.identity(cos[0].alpha, n, mod)
        if train_coset_eq(train_product(unit, cos[0]), cos[0]).outcome is Outcome.NO:
            bad += 1
    out.append(CheckResult("train associativity and unit", bad == 0,
                           f"{bad} failures, {undecided} undecided"))
    counts = [orbit_count(1, N, mod, "vectors") for N in (1, 2, 3)]
    out.append(CheckResult("vector orbits stable", len(set(counts)) == 1 and counts[0] == k + 1,
                           str(counts)))
    inv_ok = all((g * g.inverse()).is_identity()
                 for g in (random_gl(rng.randint(1, 4), mod, rng) for _ in range(samples)))
    out.append(CheckResult("inverse consistency", inv_ok))
    return out
