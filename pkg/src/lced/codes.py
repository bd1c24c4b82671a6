"""Linear codes, duals, complementary pairs and cyclic constructions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .fields import Field, FieldElement
from .matrix import Matrix, RankDeficient, det_rows
from .polynomial import Polynomial

__all__ = [
    "LinearCode",
    "CyclicSpec",
    "NotADivisor",
    "DegreeMismatch",
    "BudgetExceeded",
    "NotLcp",
    "from_generator",
    "is_lcp",
    "e_membership",
    "cyclic",
    "reciprocal",
    "toeplitz_blocks",
    "min_distance",
    "security_parameter",
    "DEFAULT_CODEWORD_BUDGET",
]

DEFAULT_CODEWORD_BUDGET = 2**24


class NotADivisor(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class NotLcp(ValueError):
    pass


class LinearCode:
    """Row space of a full-rank k x n generator matrix."""

    def __init__(self, gen: Matrix):
        rank = gen.rank
        if rank != gen.nrows:
            raise RankDeficient(rank, gen.nrows)
        self.gen = gen

    @property
    def field(self) -> Field:
        return self.gen.field

    @property
    def n(self) -> int:
        return self.gen.ncols

    @property
    def k(self) -> int:
        return self.gen.nrows

    def dual(self) -> "LinearCode":
        return LinearCode(self.gen.nullspace())

    def canonical_gen(self) -> Matrix:
        return self.gen.rref()

    def contains(self, vec) -> bool:
        F = self.field
        return self.gen.row_space_contains([F.encode(x) for x in vec])

    def codewords(self):
        F = self.field
        for msg in product(range(F.q), repeat=self.k):
            word = [0] * self.n
            for c, row in zip(msg, self.gen.rows):
                if c:
                    word = [F.add(w, F.mul(c, g)) for w, g in zip(word, row)]
            yield tuple(word)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.canonical_gen() == other.canonical_gen()

    def __hash__(self):
        return hash(self.canonical_gen())

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"


def from_generator(G: Matrix) -> LinearCode:
    return LinearCode(G)


def is_lcp(C: LinearCode, D: LinearCode) -> bool:
    """Complementary pair test: dimensions add up and ``G H^t`` is invertible."""
    if C.field != D.field or C.n != D.n:
        raise ValueError("codes of different length or field")
    if C.k + D.k != C.n:
        return False
    H = D.dual().gen
    return det_rows((C.gen @ H.T).rows, C.field) != 0


def e_membership(C: LinearCode) -> tuple[bool, bool]:
    """(all-ones vector in C, all-ones vector in the dual of C)."""
    e = [1] * C.n
    in_dual = all(s == 0 for s in C.gen.row_sums())
    return C.gen.row_space_contains(e), in_dual


@dataclass(frozen=True)
class CyclicSpec:
    g: Polynomial
    n: int
    lam: int | FieldElement = 1


def _check_divides(spec: CyclicSpec) -> Polynomial:
    F = spec.g.field
    target = Polynomial.x_n_minus(F, spec.n, spec.lam)
    if spec.g.is_zero() or not spec.g.divides(target):
        raise NotADivisor(f"{spec.g} does not divide x^{spec.n} - {F.format_element(F.encode(spec.lam))}")
    return target


def cyclic(spec: CyclicSpec) -> LinearCode:
    """Code generated by the shifts ``x^i g(x)``, i < n - deg g."""
    _check_divides(spec)
    g = spec.g.monic()
    F = g.field
    r = g.degree
    rows = []
    for i in range(spec.n - r):
        row = [0] * spec.n
        row[i : i + r + 1] = g.coeffs
        rows.append(row)
    return LinearCode(Matrix(F, rows, ncols=spec.n, raw=True))


def reciprocal(g: Polynomial) -> Polynomial:
    return g.reciprocal()


def toeplitz_blocks(g: Polynomial, r: int) -> tuple[Matrix, Matrix]:
    """Upper block (diagonal g_0) and lower block (diagonal g_r) of the [3r, 2r] layout."""
    if g.degree != r:
        raise DegreeMismatch(f"deg g = {g.degree} != r = {r}")
    F = g.field
    c = g.coefficient
    upper = [[c(j - i) if j >= i else 0 for j in range(r)] for i in range(r)]
    lower = [[c(r - i + j) if j <= i else 0 for j in range(r)] for i in range(r)]
    return Matrix(F, upper, r, raw=True), Matrix(F, lower, r, raw=True)


def min_distance(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """Minimum weight of a nonzero codeword by plain enumeration.

    Returns ``n + 1`` for the zero code (no nonzero codewords).
    """
    F = C.field
    total = F.q**C.k
    if total > budget:
        raise BudgetExceeded(f"{total} codewords exceed the budget of {budget}")
    if C.k == 0:
        return C.n + 1
    if F.m == 1:
        return _min_distance_prime(C)
    best = C.n
    for word in C.codewords():
        w = sum(1 for x in word if x)
        if 0 < w < best:
            best = w
    return best


def _min_distance_prime(C: LinearCode, chunk: int = 1 << 16) -> int:
    p = C.field.p
    G = np.array(C.gen.rows, dtype=np.int64)
    k = C.k
    total = p**k
    best = C.n
    powers = p ** np.arange(k, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        msgs = (idx[:, None] // powers[None, :]) % p
        words = (msgs @ G) % p
        w = int(np.count_nonzero(words, axis=1).min())
        best = min(best, w)
        if best == 1:
            break
    return best


def security_parameter(C: LinearCode, D: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """``min(d(C), d(D^perp))`` for a complementary pair."""
    if not is_lcp(C, D):
        raise NotLcp("(C, D) is not a linear complementary pair")
    return min(min_distance(C, budget), min_distance(D.dual(), budget))


def dual_code(C: LinearCode) -> LinearCode:
    return C.dual()
