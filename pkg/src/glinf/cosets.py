"""Double cosets GL^[m] \\ GL / GL^[m] of the finitary general linear group."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import BudgetExceeded, ModulusMismatch, PreconditionError
from .matrix import (GroupElement, enumerate_gl, gl_order, in_gl_m, mat_inverse,
                     mat_mul, metric_d)
from .search import Outcome, SearchBudget, Verdict, two_sided_search


@dataclass(frozen=True)
class DoubleCoset:
    m: int
    rep: GroupElement

    def __post_init__(self):
        if self.m < 0:
            raise PreconditionError("m must be >= 0")

    @property
    def modulus(self):
        return self.rep.modulus


@dataclass
class ReductionCertificate:
    """q g r = out with q, r in GL^[m] and out supported in a 3m window."""
    g: GroupElement
    m: int
    q: GroupElement
    r: GroupElement
    out: GroupElement

    def verify(self) -> bool:
        return (in_gl_m(self.q, self.m) and in_gl_m(self.r, self.m)
                and mat_mul(mat_mul(self.q, self.g), self.r) == self.out
                and self.out.window <= 3 * self.m)


# row/column operations applied to G together with the accumulated Q (left) or R (right)

def _row_add(mats, dst, src, f, q):
    if f % q:
        for M in mats:
            M[dst] = [(x - f * y) % q for x, y in zip(M[dst], M[src])]


def _col_add(mats, dst, src, f, q):
    if f % q:
        for M in mats:
            for row in M:
                row[dst] = (row[dst] - f * row[src]) % q


def _swap_rows(mats, i, j):
    if i != j:
        for M in mats:
            M[i], M[j] = M[j], M[i]


def _swap_cols(mats, i, j):
    if i != j:
        for M in mats:
            for row in M:
                row[i], row[j] = row[j], row[i]


def normalize_to_window(g: GroupElement, m: int) -> ReductionCertificate:
    """Find q, r in GL^[m] with q g r supported in the first 3m coordinates.

    With blocks of sizes m, m, rest: compress the top-right band into m
    columns and the left band into m rows, then eliminate unit pivots from the
    lower-right block. What is left of that block after elimination has rank
    zero mod p and size at most m; the split-off identity part is decoupled
    from the second block by two more unipotent factors.
    """
    if m < 0:
        raise PreconditionError("m must be >= 0")
    mod = g.modulus
    q, p = mod.q, mod.p
    if m == 0:
        # GL^[0] is the whole group
        out = GroupElement.identity(mod)
        return ReductionCertificate(g, 0, mat_inverse(g), GroupElement.identity(mod), out)
    n = max(g.window, 2 * m)
    G = g.padded(n)
    Q = linalg.identity(n)
    R = linalg.identity(n)
    # top band: columns m.. of rows 0..m-1 squeezed into columns m..2m-1
    U, _ = linalg.compress_columns(linalg.block(G, 0, m, m, n), mod)
    T = linalg.embed(U, n, m)
    G = linalg.matmul(G, T, q)
    R = linalg.matmul(R, T, q)
    # left band
    L, _ = linalg.compress_rows(linalg.block(G, m, n, 0, m), mod)
    T = linalg.embed(L, n, m)
    G = linalg.matmul(T, G, q)
    Q = linalg.matmul(T, Q, q)
    # unit pivots of the lower-right block are moved to the end and cleared
    end = n
    lo = 2 * m
    while True:
        loc = next(((i, j) for i in range(lo, end) for j in range(lo, end) if G[i][j] % p), None)
        if loc is None:
            break
        e = end - 1
        _swap_rows((G, Q), loc[0], e)
        _swap_cols((G, R), loc[1], e)
        inv = linalg.inv_int(G[e][e], mod)
        for i in range(lo, n):
            if i != e:
                _row_add((G, Q), i, e, G[i][e] * inv, q)
        for j in range(lo, n):
            if j != e:
                _col_add((G, R), j, e, G[e][j] * inv, q)
        for M in (G, R):
            for row in M:
                row[e] = row[e] * inv % q
        end = e
    # decouple the identity tail [end, n) from the second block
    for i in range(m, lo):
        for c in range(end, n):
            _row_add((G, Q), i, c, G[i][c], q)
    for c in range(end, n):
        for j in range(m, lo):
            _col_add((G, R), j, c, G[c][j], q)
    cert = ReductionCertificate(g, m, GroupElement(Q, mod, check=False).trim(),
                                GroupElement(R, mod, check=False).trim(),
                                GroupElement(G, mod, check=False).trim())
    if not cert.verify():
        raise AssertionError("window reduction failed verification")
    return cert


def _completion_block(x, y, z, p):
    """W over F_p making [[x, y], [z, W]] invertible, given [x y] and [x; z] have full rank."""
    l = len(x)
    P, Qm, r = linalg.rank_factor_mod_p(x, p)
    Py = linalg.matmul(P, y, p)
    zQ = linalg.matmul(z, Qm, p)
    y1, y2 = Py[:r], Py[r:]
    z1 = [row[:r] for row in zQ]
    z2 = [row[r:] for row in zQ]
    C = [[int(i == j) for i in range(l)] for j in linalg.complete_basis_mod_p(y2, l, p)]
    Dt = [[int(i == j) for i in range(l)] for j in
          linalg.complete_basis_mod_p(linalg.transpose(z2) if z2 and z2[0] else [], l, p)]
    if len(C) != r or len(Dt) != r:
        raise AssertionError("bands are not of full rank mod p")
    D = linalg.transpose(Dt) if Dt else [[] for _ in range(l)]
    W = linalg.matmul(D, C, p) if r else linalg.zeros(l, l)
    if r:
        zy = linalg.matmul(z1, y1, p)
        W = [[(a + b) % p for a, b in zip(ra, rb)] for ra, rb in zip(W, zy)]
    return W


def localize_conjugators(g1: GroupElement, g2: GroupElement, m: int,
                         q: GroupElement, r: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Replace a witness g1 = q g2 r by one supported in an (m + 2l) window.

    Here M bounds the windows of g1, g2 and l = M - m.
    """
    mod = g1.modulus
    if len({g1.modulus, g2.modulus, q.modulus, r.modulus}) != 1:
        raise ModulusMismatch("all elements must share one modulus")
    if not (in_gl_m(q, m) and in_gl_m(r, m)):
        raise PreconditionError("q and r must lie in GL^[m]")
    if mat_mul(mat_mul(q, g2), r) != g1:
        raise PreconditionError("g1 != q g2 r")
    M = max(g1.window, g2.window, m)
    l = M - m
    bound = m + 2 * l
    if q.window <= bound and r.window <= bound:
        return q, r
    qq, p = mod.q, mod.p
    xi_e = mat_inverse(r)
    n = max(M + l, xi_e.window, q.window)
    xi = xi_e.padded(n)
    eta = q.padded(n)
    # eta g2 = g1 xi; compress the tail bands of eta (rows) and xi (columns)
    if n > M:
        L, _ = linalg.compress_rows(linalg.block(eta, M, n, m, M), mod)
        T = linalg.embed(L, n, M)
        xi = linalg.matmul(T, xi, qq)
        eta = linalg.matmul(T, eta, qq)
        U, _ = linalg.compress_columns(linalg.block(xi, m, M, M, n), mod)
        T = linalg.embed(U, n, M)
        xi = linalg.matmul(xi, T, qq)
        eta = linalg.matmul(eta, T, qq)
    x = linalg.block(xi, m, M, m, M)
    y = linalg.block(xi, m, M, M, M + l)
    z = linalg.block(xi, M, M + l, m, M)
    W = _completion_block(x, y, z, p)
    new = linalg.identity(bound)
    for i in range(l):
        for j in range(l):
            new[m + i][m + j] = x[i][j]
            new[m + i][M + j] = y[i][j]
            new[M + i][m + j] = z[i][j]
            new[M + i][M + j] = W[i][j]
    xi_new = GroupElement(new, mod)
    eta_new = mat_mul(mat_mul(g1, xi_new), mat_inverse(g2))
    q_new, r_new = eta_new.trim(), mat_inverse(xi_new).trim()
    ok = (in_gl_m(q_new, m) and in_gl_m(r_new, m)
          and q_new.window <= bound and r_new.window <= bound
          and mat_mul(mat_mul(q_new, g2), r_new) == g1)
    if not ok:
        raise AssertionError("localized witness failed verification")
    return q_new, r_new


def default_search_window(m: int) -> int:
    # normalized representatives live in 3m; localized witnesses in 3m + 2*2m
    return 7 * m


def coset_eq(a: DoubleCoset, b: DoubleCoset, window: int | None = None,
             budget: SearchBudget = SearchBudget()) -> Verdict:
    """Decide whether two double cosets coincide, with a witness when they do."""
    if a.m != b.m:
        raise PreconditionError("cosets must use the same depth m")
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"{a.modulus} vs {b.modulus}")
    m, mod = a.m, a.modulus
    if m == 0:
        return Verdict(Outcome.YES, "GL^[0] is the whole group",
                       mat_mul(b.rep, mat_inverse(a.rep)), GroupElement.identity(mod))
    ca = normalize_to_window(a.rep, m)
    cb = normalize_to_window(b.rep, m)
    w = window if window is not None else default_search_window(m)
    res = two_sided_search([ca.out], [cb.out], m, m, window=w, budget=budget)
    if res.outcome is not Outcome.YES:
        return res
    # lq ca.out rr = cb.out  =>  (cb.q^-1 lq ca.q) a (ca.r rr cb.r^-1) = b
    left = mat_mul(mat_mul(mat_inverse(cb.q), res.left), ca.q).trim()
    right = mat_mul(mat_mul(ca.r, res.right), mat_inverse(cb.r)).trim()
    if mat_mul(mat_mul(left, a.rep), right) != b.rep:
        raise AssertionError("composed witness failed verification")
    return Verdict(Outcome.YES, res.reason, left, right, res.stats)


class CosetEnumerator:
    """Members of double cosets inside GL(W), computed once and cached."""

    def __init__(self, m: int, window: int, modulus, budget: int = 200_000,
                 search: SearchBudget = SearchBudget()):
        if gl_order(window, modulus) > budget:
            raise BudgetExceeded(f"|GL({window})| = {gl_order(window, modulus)} exceeds budget {budget}")
        self.m, self.window, self.modulus = m, window, modulus
        self.search = search
        self.classes: list[list[GroupElement]] = []
        self._index: dict = {}
        self._normal: list[GroupElement] = []
        for g in enumerate_gl(window, modulus):
            self._place(g)

    def _place(self, g):
        out = normalize_to_window(g, self.m).out
        for i, rep in enumerate(self._normal):
            if out == rep or coset_eq(DoubleCoset(self.m, out), DoubleCoset(self.m, rep),
                                      budget=self.search):
                self.classes[i].append(g)
                self._index[g] = i
                return
        self._normal.append(out)
        self.classes.append([g])
        self._index[g] = len(self.classes) - 1

    def class_of(self, g: GroupElement) -> int:
        if g in self._index:
            return self._index[g]
        out = normalize_to_window(g, self.m).out
        for i, rep in enumerate(self._normal):
            if coset_eq(DoubleCoset(self.m, out), DoubleCoset(self.m, rep), budget=self.search):
                return i
        return -1

    def members(self, c: DoubleCoset) -> list[GroupElement]:
        i = self.class_of(c.rep)
        return list(self.classes[i]) if i >= 0 else []


def coset_dist(a: DoubleCoset, b: DoubleCoset, method: str = "inf",
               enumerator: CosetEnumerator | None = None, budget: int = 200_000) -> Fraction:
    """Distance between double cosets computed over their members in GL(3m).

    ``inf``: min d(g, z) for the normalized representative g of ``a`` and z in
    ``b``. ``hausdorff``: the Hausdorff distance of the two member sets.
    """
    if a.m != b.m:
        raise PreconditionError("cosets must use the same depth m")
    if method not in ("inf", "hausdorff"):
        raise PreconditionError(f"unknown method {method!r}")
    m, mod = a.m, a.modulus
    if m == 0:
        return Fraction(0)
    enum = enumerator or CosetEnumerator(m, 3 * m, mod, budget=budget)
    ga = normalize_to_window(a.rep, m).out
    mb = enum.members(DoubleCoset(m, normalize_to_window(b.rep, m).out))
    if method == "inf":
        return min(metric_d(ga, z) for z in mb)
    ma = enum.members(DoubleCoset(m, ga))
    one = max(min(metric_d(u, w) for w in mb) for u in ma)
    two = max(min(metric_d(u, w) for u in ma) for w in mb)
    return max(one, two)


def approximation_bound_holds(a: DoubleCoset, b: DoubleCoset, enumerator: CosetEnumerator) -> bool:
    """Every member of ``a`` in GL(3m) is within d(g1, g2) of some member of ``b``,
    for every pair of window representatives g1 in a, g2 in b."""
    ma = enumerator.members(a)
    mb = enumerator.members(b)
    if not ma or not mb:
        raise PreconditionError("cosets have no members in the enumeration window")
    dmin = min(metric_d(g1, g2) for g1 in ma for g2 in mb)
    return all(min(metric_d(u, w) for w in mb) <= dmin for u in ma)
