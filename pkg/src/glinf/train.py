"""Tuples of finitary matrices modulo the diagonal action of K^alpha x K^gamma,
and the multiplication of such double cosets."""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import ModulusMismatch, PreconditionError
from .matrix import GroupElement, mat_mul, permutation_embed, theta
from .search import Outcome, SearchBudget, Verdict, two_sided_search


@dataclass(frozen=True)
class TupleElement:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise PreconditionError("a tuple needs at least one part")
        mod = parts[0].modulus
        if any(x.modulus != mod for x in parts):
            raise ModulusMismatch("parts must share one modulus")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def modulus(self):
        return self.parts[0].modulus

    @property
    def window(self) -> int:
        return max(x.window for x in self.parts)

    @classmethod
    def identity(cls, n: int, modulus) -> TupleElement:
        return cls(tuple(GroupElement.identity(modulus) for _ in range(n)))


@dataclass(frozen=True)
class TrainCoset:
    alpha: int
    gamma: int
    rep: TupleElement

    def __post_init__(self):
        if self.alpha < 0 or self.gamma < 0:
            raise PreconditionError("depths must be >= 0")

    @classmethod
    def identity(cls, depth: int, n: int, modulus) -> TrainCoset:
        return cls(depth, depth, TupleElement.identity(n, modulus))


def _check_pair(g1: TupleElement, g2: TupleElement):
    if g1.n != g2.n:
        raise PreconditionError(f"tuple lengths differ: {g1.n} vs {g2.n}")
    if g1.modulus != g2.modulus:
        raise ModulusMismatch(f"{g1.modulus} vs {g2.modulus}")


def _riffle(a: list, b: list) -> list:
    out = []
    for i in range(max(len(a), len(b))):
        if i < len(a):
            out.append(a[i])
        if i < len(b):
            out.append(b[i])
    return out


def circ_representative(g1: TupleElement, g2: TupleElement, beta: int,
                        alpha: int = 0, gamma: int = 0,
                        interleave: str = "stack") -> TupleElement:
    """Representative of the product of K^a g1 K^b and K^b g2 K^c.

    Each part is diag(g1, 1) times the matrix that places the blocks of g2
    as [[a2, 0, b2], [0, 1, 0], [c2, 0, d2]]. ``alpha`` and ``gamma`` fix
    where the rows and columns of the result split, which only matters for
    the ``riffle`` interleaving; ``stack`` keeps the residual blocks in order.
    """
    _check_pair(g1, g2)
    if min(alpha, beta, gamma) < 0:
        raise PreconditionError("depths must be >= 0")
    if interleave not in ("stack", "riffle"):
        raise PreconditionError(f"unknown interleaving {interleave!r}")
    mod = g1.modulus
    q = mod.q
    n1 = max(g1.window, alpha, beta)
    n2 = max(g2.window, beta, gamma)
    size = n1 + n2 - beta
    row_map = list(range(beta)) + list(range(n1, size))            # rows of g2
    col_map = list(range(gamma)) + list(range(gamma + n1 - beta, size))  # columns of g2
    out = []
    for a, b in zip(g1.parts, g2.parts):
        f1 = linalg.pad(a.padded(n1), size)
        f2 = linalg.zeros(size, size)
        core2 = b.padded(n2)
        for i in range(n2):
            for j in range(n2):
                f2[row_map[i]][col_map[j]] = core2[i][j]
        for t in range(n1 - beta):
            f2[beta + t][gamma + t] = 1
        prod = linalg.matmul(f1, f2, q)
        if interleave == "riffle":
            rows = list(range(alpha)) + _riffle(list(range(alpha, n1)), list(range(n1, size)))
            cols = list(range(gamma)) + _riffle(list(range(gamma, gamma + n1 - beta)),
                                                list(range(gamma + n1 - beta, size)))
            prod = [[prod[r][c] for c in cols] for r in rows]
        out.append(GroupElement(prod, mod, check=False).trim())
    return TupleElement(tuple(out))


def default_train_window(a: TrainCoset, b: TrainCoset) -> int:
    w = max(a.rep.window, b.rep.window, a.alpha, a.gamma)
    base = min(a.alpha, a.gamma)
    return base + 2 * (w - base)


def train_coset_eq(a: TrainCoset, b: TrainCoset, window: int | None = None,
                   budget: SearchBudget = SearchBudget()) -> Verdict:
    """Is there one pair (u, v) in K^alpha x K^gamma with u a_l v = b_l for all l?"""
    if (a.alpha, a.gamma) != (b.alpha, b.gamma):
        raise PreconditionError("train cosets must have equal depths")
    _check_pair(a.rep, b.rep)
    w = window if window is not None else default_train_window(a, b)
    return two_sided_search(list(a.rep.parts), list(b.rep.parts), a.alpha, a.gamma,
                            window=w, budget=budget)


def train_product(a: TrainCoset, b: TrainCoset, interleave: str = "stack") -> TrainCoset:
    if a.gamma != b.alpha:
        raise PreconditionError(f"depths do not compose: {a.gamma} vs {b.alpha}")
    _check_pair(a.rep, b.rep)
    rep = circ_representative(a.rep, b.rep, a.gamma, alpha=a.alpha, gamma=b.gamma,
                              interleave=interleave)
    return TrainCoset(a.alpha, b.gamma, rep)


def theta_sequence_term(a: TrainCoset, b: TrainCoset, j: int) -> TrainCoset:
    """The coset of g1 theta_j g2, theta acting diagonally on every part."""
    t = theta(j, a.gamma, a.rep.modulus)
    parts = tuple(mat_mul(mat_mul(x, t), y).trim() for x, y in zip(a.rep.parts, b.rep.parts))
    return TrainCoset(a.alpha, b.gamma, TupleElement(parts))


def _shift_witness(n1: int, n2: int, beta: int, j: int, mod):
    """Permutations s, t fixing the first n1 / n2 coordinates with
    theta_{j+1} = s theta_j t; valid once n1, n2 <= beta + j."""
    size = beta + 2 * j + 2
    th0 = list(range(beta)) + [beta + j + i for i in range(j)] + [beta + i for i in range(j)]
    th0 += [size - 2, size - 1]
    th1 = list(range(beta)) + [beta + j + 1 + i for i in range(j + 1)] + [beta + i for i in range(j + 1)]
    # s^-1 sends th1(i) to th0(i) for i < n2 and fixes [0, n1)
    sinv = {i: i for i in range(n1)}
    for i in range(n2):
        if sinv.get(th1[i], th0[i]) != th0[i]:
            return None
        sinv[th1[i]] = th0[i]
    if len(set(sinv.values())) != len(sinv):
        return None
    rest_src = [x for x in range(size) if x not in sinv]
    rest_dst = [x for x in range(size) if x not in set(sinv.values())]
    sinv.update(zip(rest_src, rest_dst))
    s = [0] * size
    for x, y in sinv.items():
        s[y] = x
    th0_inv = [0] * size
    for i, x in enumerate(th0):
        th0_inv[x] = i
    tperm = [th0_inv[sinv[th1[i]]] for i in range(size)]
    if any(tperm[i] != i for i in range(n2)):
        return None
    return permutation_embed(s, mod), permutation_embed(tperm, mod)


@dataclass
class StabilizationResult:
    j_star: int | None
    coset: TrainCoset | None
    stable_from: int  # index from which equality is certified by explicit permutations
    verdicts: dict
    conclusive: bool
    reason: str = ""


def stabilization_limit(a: TrainCoset, b: TrainCoset, j_max: int | None = None,
                        window: int | None = None,
                        budget: SearchBudget = SearchBudget()) -> StabilizationResult:
    """First j from which the cosets of g1 theta_j g2 stop changing.

    Once theta_j moves the middle block past both windows, consecutive terms
    are related by explicit permutations in the depth subgroups, so the tail
    is certified without search; earlier consecutive terms are compared with
    the two-sided search, scanning backwards.
    """
    if a.gamma != b.alpha:
        raise PreconditionError(f"depths do not compose: {a.gamma} vs {b.alpha}")
    _check_pair(a.rep, b.rep)
    beta = a.gamma
    mod = a.rep.modulus
    n1 = max(a.rep.window, a.alpha, beta)
    n2 = max(b.rep.window, beta, b.gamma)
    if j_max is None:
        j_max = 2 * max(n1, n2) + beta
    j0 = max(n1, n2) - beta
    verdicts = {}
    if j_max < j0:
        tail_from = j_max
    else:
        tail_from = j0
        # certify terms j0..j_max are all equal
        for j in range(j0, j_max):
            wit = _shift_witness(n1, n2, beta, j, mod)
            x, y = theta_sequence_term(a, b, j), theta_sequence_term(a, b, j + 1)
            ok = wit is not None and all(
                mat_mul(mat_mul(wit[0], u), wit[1]) == v for u, v in zip(x.rep.parts, y.rep.parts))
            if not ok:
                raise AssertionError(f"tail certificate failed at j={j}")
            verdicts[j] = Verdict(Outcome.YES, "explicit permutation witness", wit[0], wit[1])
    j_star = tail_from
    stable = theta_sequence_term(a, b, tail_from)
    for j in range(tail_from - 1, -1, -1):
        x = theta_sequence_term(a, b, j)
        res = train_coset_eq(x, stable, window=window, budget=budget)
        verdicts[j] = res
        if res.outcome is Outcome.YES:
            j_star = j
            continue
        if res.outcome is Outcome.UNDECIDED:
            return StabilizationResult(None, stable, tail_from, verdicts, False,
                                       f"comparison at j={j} undecided: {res.reason}")
        break
    if j_max < j0 and j_star == j_max:
        # no certified tail inside the range: stability through j_max is all we observed
        return StabilizationResult(j_star, stable, tail_from, verdicts, True,
                                   "stable through j_max (tail not certified)")
    return StabilizationResult(j_star, stable, tail_from, verdicts, True, "stable")


def associativity_check(a: TrainCoset, b: TrainCoset, c: TrainCoset,
                        window: int | None = None,
                        budget: SearchBudget = SearchBudget()) -> Verdict:
    left = train_product(train_product(a, b), c)
    right = train_product(a, train_product(b, c))
    return train_coset_eq(left, right, window=window, budget=budget)
