"""Integer kernels for matrices over Z/p^k.

Matrices here are lists of lists of canonical ints. Z/p^k is a local chain
ring: every ideal is (p^v), so an entry of least valuation divides every other
entry of its row or column. All elimination routines below pivot on such an
entry, which makes them exact without any gcd machinery.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotInvertible
from .residue import Modulus, inv_int, val_int

Mat = list  # list[list[int]]


def identity(n: int) -> Mat:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Mat:
    return [[0] * c for _ in range(r)]


def copy(a: Mat) -> Mat:
    return [list(row) for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Mat, b: Mat, q: int) -> Mat:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % q for col in bt] for row in a]


def pad(a: Mat, n: int) -> Mat:
    """Embed a square matrix into the top-left of 1_n."""
    m = len(a)
    if n < m:
        raise ValueError("cannot pad to a smaller size")
    out = identity(n)
    for i in range(m):
        out[i][:m] = a[i]
    return out


def block(a: Mat, r0: int, r1: int, c0: int, c1: int) -> Mat:
    return [row[c0:c1] for row in a[r0:r1]]


def embed(a: Mat, n: int, offset: int) -> Mat:
    """1_n with ``a`` placed on the diagonal starting at ``offset``."""
    out = identity(n)
    for i, row in enumerate(a):
        out[offset + i][offset:offset + len(row)] = row
    return out


def rank_mod_p(a: Mat, p: int) -> int:
    m = [[x % p for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse(a: Mat, mod: Modulus) -> Mat:
    """Gauss-Jordan over Z/p^k pivoting on the first unit in each column."""
    n = len(a)
    q, p = mod.q, mod.p
    m = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            raise NotInvertible(n, rank_mod_p(a, p))
        m[c], m[piv] = m[piv], m[c]
        inv = inv_int(m[c][c], mod)
        m[c] = [(x * inv) % q for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % q for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def det(a: Mat, q: int) -> int:
    """Bareiss fraction-free determinant over the integers, reduced mod q."""
    n = len(a)
    if n == 0:
        return 1 % q
    m = copy(a)
    sign, prev = 1, 1
    for c in range(n - 1):
        if m[c][c] == 0:
            swap = next((i for i in range(c + 1, n) if m[i][c]), None)
            if swap is None:
                return 0
            m[c], m[swap] = m[swap], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
        prev = m[c][c]
    return (sign * m[n - 1][n - 1]) % q


def compress_columns(a: Mat, mod: Modulus) -> tuple[Mat, int]:
    """Invertible U with ``a @ U`` zero outside its first ``t <= rows`` columns.

    Returns ``(U, t)``. The surviving block is lower triangular.
    """
    q, p, k = mod.q, mod.p, mod.k
    rows = len(a)
    cols = len(a[0]) if rows else 0
    A = copy(a)
    U = identity(cols)
    t = 0
    for i in range(rows):
        if t >= cols:
            break
        best, bv = None, k
        for j in range(t, cols):
            v = val_int(A[i][j], p, k)
            if v < bv:
                best, bv = j, v
        if best is None:
            continue
        if best != t:
            for M in (A, U):
                for row in M:
                    row[t], row[best] = row[best], row[t]
        pv = p ** bv
        uinv = inv_int(A[i][t] // pv, mod)
        for j in range(t + 1, cols):
            if A[i][j]:
                f = (A[i][j] // pv) * uinv % q
                for M in (A, U):
                    for row in M:
                        row[j] = (row[j] - f * row[t]) % q
        t += 1
    return U, t


def compress_rows(a: Mat, mod: Modulus) -> tuple[Mat, int]:
    """Invertible L with ``L @ a`` zero below its first ``t <= cols`` rows."""
    U, t = compress_columns(transpose(a), mod)
    return transpose(U), t


def rank_factor_mod_p(a: Mat, p: int) -> tuple[Mat, Mat, int]:
    """P, Q invertible over F_p with P a Q = diag(1_r, 0)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[x % p for x in row] for row in a]
    P = identity(rows)
    Q = identity(cols)
    r = 0
    while r < min(rows, cols):
        loc = next(((i, j) for i in range(r, rows) for j in range(r, cols) if m[i][j]), None)
        if loc is None:
            break
        i, j = loc
        m[r], m[i] = m[i], m[r]
        P[r], P[i] = P[i], P[r]
        for M in (m, Q):
            for row in M:
                row[r], row[j] = row[j], row[r]
        inv = pow(m[r][r], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        P[r] = [(x * inv) % p for x in P[r]]
        for i2 in range(rows):
            if i2 != r and m[i2][r]:
                f = m[i2][r]
                m[i2] = [(x - f * y) % p for x, y in zip(m[i2], m[r])]
                P[i2] = [(x - f * y) % p for x, y in zip(P[i2], P[r])]
        for j2 in range(r + 1, cols):
            if m[r][j2]:
                f = m[r][j2]
                for M in (m, Q):
                    for row in M:
                        row[j2] = (row[j2] - f * row[r]) % p
        r += 1
    return P, Q, r


def complete_basis_mod_p(rows: Mat, n: int, p: int) -> list[int]:
    """Indices of standard vectors that extend ``rows`` to a basis of F_p^n."""
    current = [list(r) for r in rows]
    added = []
    base = rank_mod_p(current, p) if current else 0
    for j in range(n):
        if base == n:
            break
        e = [int(i == j) for i in range(n)]
        trial = current + [e]
        rk = rank_mod_p(trial, p)
        if rk > base:
            current, base = trial, rk
            added.append(j)
    return added


# ---------------------------------------------------------------------------
# numpy kernels for larger linear systems


def _dtype(q: int, width: int):
    return np.int64 if q * q * (width + 1) < 2 ** 62 else object


def valuations_np(a: np.ndarray, mod: Modulus) -> np.ndarray:
    p, k = mod.p, mod.k
    v = np.zeros(a.shape, dtype=np.int64)
    for e in range(1, k + 1):
        v += (a % (p ** e) == 0)
    return v


@dataclass
class LinearSolution:
    """Solution set x0 + span(kernel) of a linear system over Z/p^k.

    ``free`` holds the kernel directions that survive reduction mod p; the
    affine space of solutions mod p is exactly ``x0 + span_Fp(free)``.
    """
    x0: np.ndarray
    free: list
    kernel: list


def solve_mod(A, b, mod: Modulus) -> LinearSolution | None:
    """All solutions of A x = b over Z/p^k, or None when inconsistent."""
    q, p, k = mod.q, mod.p, mod.k
    E, U = np.shape(A)
    dt = _dtype(q, max(E, U))
    A = np.array(A, dtype=dt) % q
    b = np.array(b, dtype=dt).reshape(E) % q
    V = np.eye(U, dtype=dt)
    vals = []
    for t in range(min(E, U)):
        sub = A[t:, t:]
        if not sub.any():
            break
        sv = valuations_np(sub, mod)
        flat = int(np.argmin(sv))
        i, j = divmod(flat, sub.shape[1])
        i += t
        j += t
        if i != t:
            A[[t, i]] = A[[i, t]]
            b[[t, i]] = b[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
        v = int(sv.flat[flat])
        pv = p ** v
        uinv = inv_int(int(A[t, t]) // pv, mod)
        A[t] = (A[t] * uinv) % q
        b[t] = (b[t] * uinv) % q
        f = A[t + 1:, t] // pv
        if f.any():
            A[t + 1:] = (A[t + 1:] - np.outer(f, A[t])) % q
            b[t + 1:] = (b[t + 1:] - f * b[t]) % q
        g = A[t, t + 1:] // pv
        if g.any():
            V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], g)) % q
            A[t, t + 1:] = 0
        vals.append(v)
    r = len(vals)
    if b[r:].any():
        return None
    y = np.zeros(U, dtype=dt)
    for t, v in enumerate(vals):
        if int(b[t]) % (p ** v):
            return None
        y[t] = int(b[t]) // (p ** v)
    x0 = (V @ y) % q
    free = [V[:, t].copy() for t in range(r, U)]
    kernel = free + [(V[:, t] * p ** (k - v)) % q for t, v in enumerate(vals) if v > 0]
    return LinearSolution(x0=x0, free=free, kernel=kernel)


def rank_mod_p_np(a: np.ndarray, p: int) -> int:
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        r += 1
        if r == rows:
            break
    return r


def charpoly(a: np.ndarray, q: int) -> tuple:
    """Coefficients of det(x - a), leading first, by the division-free
    Berkowitz recursion (valid over any commutative ring, here Z/q)."""
    A = np.array(a, dtype=np.int64) % q
    n = A.shape[0]
    poly = np.array([1], dtype=np.int64)
    for k in range(n):
        R = A[k, :k]
        C = A[:k, k]
        col = [1, (-A[k, k]) % q]
        v = C.copy()
        for _ in range(k):
            col.append(int(-(R @ v)) % q)
            v = (A[:k, :k] @ v) % q
        T = np.zeros((k + 2, k + 1), dtype=np.int64)
        for j in range(k + 1):
            T[j:, j] = col[:k + 2 - j]
        poly = (T @ poly) % q
    return tuple(int(x) for x in poly)
