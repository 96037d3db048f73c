"""Deciding two-sided equivalence under the depth-alpha / depth-gamma subgroups.

Given tuples g = (g_1..g_n), h = (h_1..h_n) we look for q in K^alpha and
r in K^gamma, the same for every part, with q g_l r = h_l. Eliminating q
leaves conditions that are linear in r:

    v(g) r = v(h)          (first alpha rows of g_1 and h_1)
    r w(h) = w(g)          (first alpha columns of g_1^-1 and h_1^-1)
    c_l r = r d_l          (c_l = g_1^-1 g_l, d_l = h_1^-1 h_l)

so the candidate r form an affine space over Z/p^k. Whether it holds an
invertible point depends only on its reduction mod p. Negatives come from
invariants of the action (valid for the whole infinite group) or from an
empty / exhaustively searched solution space inside the search window.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ModulusMismatch, PreconditionError, UndecidedError
from .matrix import GroupElement, in_gl_m, mat_inverse, mat_mul
from .residue import Modulus


class Outcome(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


@dataclass
class Verdict:
    outcome: Outcome
    reason: str = ""
    left: GroupElement | None = None
    right: GroupElement | None = None
    stats: dict = field(default_factory=dict)

    def __bool__(self):
        if self.outcome is Outcome.UNDECIDED:
            raise UndecidedError(self.reason or "undecided within budget")
        return self.outcome is Outcome.YES

    @property
    def decided(self) -> bool:
        return self.outcome is not Outcome.UNDECIDED


@dataclass(frozen=True)
class SearchBudget:
    exhaustive: int = 4096   # enumerate the mod-p solution space up to this size
    samples: int = 512       # random points tried when it is larger
    seed: int = 0


def _np(rows, dt=np.int64):
    return np.array(rows, dtype=dt) if len(rows) else np.zeros((0, 0), dtype=dt)


def smith_profile(a: np.ndarray, mod: Modulus) -> tuple:
    """Sorted pivot valuations of a matrix; zero pivots reported as k."""
    q, p, k = mod.q, mod.p, mod.k
    A = np.array(a, dtype=np.int64) % q
    rows, cols = A.shape
    vals = []
    for t in range(min(rows, cols)):
        sub = A[t:, t:]
        if not sub.any():
            break
        sv = linalg.valuations_np(sub, mod)
        flat = int(np.argmin(sv))
        i, j = divmod(flat, sub.shape[1])
        i += t
        j += t
        A[[t, i]] = A[[i, t]]
        A[:, [t, j]] = A[:, [j, t]]
        v = int(sv.flat[flat])
        pv = p ** v
        A[t] = (A[t] * linalg.inv_int(int(A[t, t]) // pv, mod)) % q
        f = A[t + 1:, t] // pv
        A[t + 1:] = (A[t + 1:] - np.outer(f, A[t])) % q
        A[t, t + 1:] = 0
        vals.append(v)
    vals += [k] * (min(rows, cols) - len(vals))
    return tuple(sorted(vals))


@dataclass
class _State:
    vecs: np.ndarray    # rows: fixed e_i (i < gamma), then v(g)
    covecs: np.ndarray  # columns: fixed f_i, then w(g)
    conj: list          # c_l for l >= 2
    first: list         # padded g_1


def _state(parts: list[GroupElement], alpha: int, gamma: int, n: int) -> _State:
    mod = parts[0].modulus
    q = mod.q
    g1 = parts[0].padded(n)
    g1inv = linalg.inverse(g1, mod)
    eye = np.eye(n, dtype=np.int64)
    vecs = np.vstack([eye[:gamma], _np(g1[:alpha]).reshape(alpha, n)]) if n else np.zeros((0, 0), np.int64)
    covecs = np.hstack([eye[:, :gamma], _np([row[:alpha] for row in g1inv]).reshape(n, alpha)]) if n else np.zeros((0, 0), np.int64)
    conj = [_np(linalg.matmul(g1inv, p.padded(n), q)) for p in parts[1:]]
    return _State(vecs % q, covecs % q, conj, g1)


def _words(mats: list, mod: Modulus, length: int = 2) -> list:
    """Products of length <= ``length`` over the matrices and their inverses."""
    q = mod.q
    n = mats[0].shape[0] if mats else 0
    letters = []
    for c in mats:
        letters.append(c)
        letters.append(_np(linalg.inverse(c.tolist(), mod)))
    out = [np.eye(n, dtype=np.int64)]
    frontier = [np.eye(n, dtype=np.int64)]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for a in letters:
                nxt.append((w @ a) % q)
        out += nxt
        frontier = nxt
    return out


def _left_kernel(x: np.ndarray, mod: Modulus) -> list:
    if x.shape[0] == 0:
        return []
    sol = linalg.solve_mod(x.T, np.zeros(x.shape[1], dtype=np.int64), mod)
    return sol.kernel


def _same_relations(x: np.ndarray, y: np.ndarray, mod: Modulus) -> bool:
    q = mod.q
    for a, b in ((x, y), (y, x)):
        for rel in _left_kernel(a, mod):
            if ((np.asarray(rel, dtype=np.int64) @ b) % q).any():
                return False
    return True


def _poly_rem(a: list, b: list, p: int) -> list:
    """Remainder of a by monic b over F_p, coefficients leading first."""
    a = [x % p for x in a]
    while len(a) >= len(b):
        c = a[0]
        if c:
            for i in range(len(b)):
                a[i] = (a[i] - c * b[i]) % p
        a.pop(0)
    return a


def irreducible_polys(p: int, max_deg: int) -> list:
    """Monic irreducible polynomials over F_p up to ``max_deg``, leading first."""
    out = []
    for d in range(1, max_deg + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = [1, *tail]
            if all(any(_poly_rem(f, g, p)) for g in out if 2 * (len(g) - 1) <= d):
                out.append(f)
    return out


def _poly_eval(f: list, a: np.ndarray, q: int) -> np.ndarray:
    n = a.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for c in f:
        acc = (acc @ a + c * np.eye(n, dtype=np.int64)) % q
    return acc


_IRRED_CACHE: dict = {}


def _irreducibles(p: int) -> list:
    if p not in _IRRED_CACHE:
        deg = max(d for d in range(1, 5) if p ** d <= 81 or d == 1)
        _IRRED_CACHE[p] = irreducible_polys(p, deg)
    return _IRRED_CACHE[p]


def _conjugacy_mismatch(a: np.ndarray, b: np.ndarray, mod: Modulus) -> str | None:
    """Compare conjugation invariants of two square matrices."""
    q, p = mod.q, mod.p
    ca = linalg.charpoly(a, q)
    if ca != linalg.charpoly(b, q):
        return "characteristic polynomials differ"
    for f in _irreducibles(p):
        if any(_poly_rem(list(ca), f, p)):
            continue
        fa, fb = _poly_eval(f, a, q), _poly_eval(f, b, q)
        pa, pb = fa, fb
        for i in range(1, 4):
            if smith_profile(pa, mod) != smith_profile(pb, mod):
                return f"ranks of f(c)^{i} differ for a factor f of degree {len(f) - 1}"
            pa, pb = (pa @ fa) % q, (pb @ fb) % q
    return None


def invariant_mismatch(sg: _State, sh: _State, mod: Modulus) -> str | None:
    """A reason the two states cannot be related, or None if none was found."""
    q = mod.q
    wg = _words(sg.conj, mod) if sg.conj else [np.eye(sg.vecs.shape[1], dtype=np.int64)]
    wh = _words(sh.conj, mod) if sh.conj else [np.eye(sh.vecs.shape[1], dtype=np.int64)]
    for a, b in zip(wg, wh):
        for lam in range(min(q, 4)):
            n = a.shape[0]
            if smith_profile((a - lam * np.eye(n, dtype=np.int64)) % q, mod) != \
                    smith_profile((b - lam * np.eye(n, dtype=np.int64)) % q, mod):
                return f"conjugation invariant differs (word shift {lam})"
    for a, b in zip(wg[1:], wh[1:]):
        why = _conjugacy_mismatch(a, b, mod)
        if why:
            return why
    xg = np.vstack([(sg.vecs @ w) % q for w in wg])
    xh = np.vstack([(sh.vecs @ w) % q for w in wh])
    yg = np.hstack([(w @ sg.covecs) % q for w in wg])
    yh = np.hstack([(w @ sh.covecs) % q for w in wh])
    if not np.array_equal((xg @ yg) % q, (xh @ yh) % q):
        return "pairing values differ"
    if not _same_relations(xg, xh, mod):
        return "vector relations differ"
    if not _same_relations(yg.T, yh.T, mod):
        return "covector relations differ"
    return None


def _linear_system(sg: _State, sh: _State, gamma: int, n: int, q: int):
    """Coefficient matrix and right-hand side for the entries of r."""
    var = [(a, b) for a in range(gamma, n) for b in range(gamma, n)]
    cols = [a * n + b for a, b in var]
    r0 = np.zeros(n * n, dtype=np.int64)
    for i in range(gamma):
        r0[i * n + i] = 1
    eye = np.eye(n, dtype=np.int64)
    blocks, rhs = [], []
    alpha = sg.vecs.shape[0] - gamma
    if alpha:
        vg = sg.vecs[gamma:]
        vh = sh.vecs[gamma:]
        op = np.kron(vg, eye)
        blocks.append(op)
        rhs.append(vh.reshape(-1) - op @ r0)
        wg = sg.covecs[:, gamma:]
        wh = sh.covecs[:, gamma:]
        op = np.kron(eye, wh.T)
        blocks.append(op)
        rhs.append(wg.reshape(-1) - op @ r0)
    for c, d in zip(sg.conj, sh.conj):
        op = np.kron(c, eye) - np.kron(eye, d.T)
        blocks.append(op)
        rhs.append(-(op @ r0))
    if not blocks:
        return None, None, cols, r0
    full = np.vstack(blocks) % q
    return full[:, cols], np.concatenate(rhs) % q, cols, r0


def two_sided_search(g_parts, h_parts, alpha: int, gamma: int,
                     window: int | None = None,
                     budget: SearchBudget = SearchBudget()) -> Verdict:
    """Look for (q, r) in K^alpha x K^gamma with q g_l r = h_l for every part."""
    if len(g_parts) != len(h_parts) or not g_parts:
        raise PreconditionError("tuples must have the same positive length")
    mod = g_parts[0].modulus
    for x in list(g_parts) + list(h_parts):
        if x.modulus != mod:
            raise ModulusMismatch("all parts must share one modulus")
    if alpha < 0 or gamma < 0:
        raise PreconditionError("depths must be >= 0")
    q, p = mod.q, mod.p
    if all(a == b for a, b in zip(g_parts, h_parts)):
        ident = GroupElement.identity(mod)
        return Verdict(Outcome.YES, "identical representatives", ident, ident)
    n = max([x.window for x in list(g_parts) + list(h_parts)] + [alpha, gamma, window or 0])
    sg = _state(list(g_parts), alpha, gamma, n)
    sh = _state(list(h_parts), alpha, gamma, n)
    why = invariant_mismatch(sg, sh, mod)
    if why:
        return Verdict(Outcome.NO, why, stats={"window": n})
    A, b, cols, r0 = _linear_system(sg, sh, gamma, n, q)
    if A is None:
        sol = linalg.LinearSolution(np.zeros(len(cols), dtype=np.int64),
                                    [np.eye(len(cols), dtype=np.int64)[i] for i in range(len(cols))], [])
    else:
        sol = linalg.solve_mod(A, b, mod)
    if sol is None:
        return Verdict(Outcome.NO, f"linear conditions inconsistent in window {n}", stats={"window": n})
    d = len(sol.free)
    stats = {"window": n, "free_dim": d}

    def build(coeffs):
        x = sol.x0.astype(np.int64).copy()
        for c, v in zip(coeffs, sol.free):
            if c:
                x = (x + c * np.asarray(v, dtype=np.int64)) % q
        r = r0.copy()
        r[cols] = x
        return r.reshape(n, n) % q

    def try_point(coeffs):
        r = build(coeffs)
        if linalg.rank_mod_p_np(r, p) < n:
            return None
        return r

    found = None
    exhaustive = p ** d <= budget.exhaustive
    if exhaustive:
        for coeffs in itertools.product(range(p), repeat=d):
            found = try_point(coeffs)
            if found is not None:
                break
    else:
        rng = random.Random(budget.seed)
        for _ in range(budget.samples):
            found = try_point([rng.randrange(p) for _ in range(d)])
            if found is not None:
                break
    if found is None:
        if exhaustive:
            return Verdict(Outcome.NO, f"no invertible solution in window {n} (exhaustive, {p ** d} points)", stats=stats)
        return Verdict(Outcome.UNDECIDED, f"no invertible solution among {budget.samples} samples of a {d}-dim space", stats=stats)
    r = GroupElement(found.tolist(), mod, check=False)
    left = mat_mul(mat_mul(h_parts[0], mat_inverse(r)), mat_inverse(g_parts[0]))
    ok = in_gl_m(left, alpha) and in_gl_m(r, gamma) and all(
        mat_mul(mat_mul(left, g), r) == h for g, h in zip(g_parts, h_parts))
    if not ok:
        raise AssertionError("witness failed verification")
    return Verdict(Outcome.YES, "witness found", left.trim(), r.trim(), stats)


def verify_witness(g_parts, h_parts, alpha: int, gamma: int, left: GroupElement, right: GroupElement) -> bool:
    return in_gl_m(left, alpha) and in_gl_m(right, gamma) and all(
        mat_mul(mat_mul(left, g), right) == h for g, h in zip(g_parts, h_parts))
