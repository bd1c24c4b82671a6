"""LCED decision engine.

A k x n matrix G is LCED when some permutation matrix P makes ``G P G^t``
invertible. ``decide`` runs the proven shortcuts first (rank and the
row-sum/all-ones obstruction, the closed forms for n = k + 1, k = 1, k = 2
and n - k = 2, the block quick checks) and falls back to an exhaustive
search over S_n that evaluates each {sigma, sigma^-1} pair once, since
``det(G P_sigma G^t) == det(G P_sigma^-1 G^t)`` by transposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .codes import CyclicSpec, LinearCode, _check_divides
from .fields import Field, FieldElement
from .matrix import Matrix, RankDeficient, det_rows
from .permutation import (
    Permutation,
    heap_permutations,
    inverse_pair_classes,
    lex_permutations,
    transpositions,
)
from .polynomial import Polynomial

__all__ = [
    "Status",
    "Certificate",
    "SearchStrategy",
    "Verdict",
    "ShapeMismatch",
    "BadShape",
    "WrongCharacteristic",
    "gpg_det",
    "witness_search",
    "necessary_condition",
    "quick_sufficient",
    "quick_check",
    "canonicalize",
    "decide",
    "g4_decide",
    "k1_decide",
    "k2_decide",
    "dual_transfer",
    "dual_standard",
    "constacyclic_sufficient",
    "reciprocal_construction",
    "complement_from_witness",
]


class Status(str, Enum):
    LCED = "LCED"
    NOT_LCED = "NotLCED"
    INCONCLUSIVE = "Inconclusive"


class Certificate(str, Enum):
    IDENTITY = "Identity"
    QUICK_CHECK = "QuickCheck"
    THEOREM_011 = "Theorem011"
    CLOSED_FORM_N_K1 = "ClosedFormN_K1"
    CLOSED_FORM_K2 = "ClosedFormK2"
    CLOSED_FORM_K1 = "ClosedFormK1"
    CONSTACYCLIC_GCD = "ConstacyclicGcd"
    RECIPROCAL_CONSTRUCTION = "ReciprocalConstruction"
    WITNESS_SEARCH = "WitnessSearch"
    EXHAUSTED_SEARCH = "ExhaustedSearch"
    LIMIT_REACHED = "LimitReached"


class ShapeMismatch(ValueError):
    pass


class BadShape(ValueError):
    pass


class WrongCharacteristic(ValueError):
    pass


ORDERS = ("identity-first", "transpositions-first", "full-lex", "heap")


@dataclass(frozen=True)
class SearchStrategy:
    order: str = "identity-first"
    limit: int | None = None
    seed: int = 0
    random_probes: int = 0

    def __post_init__(self):
        if self.order not in ORDERS:
            raise ValueError(f"unknown search order {self.order!r}; expected one of {ORDERS}")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be positive or None")

    @property
    def certifying(self) -> bool:
        return self.limit is None

    def fingerprint(self) -> str:
        lim = "unlimited" if self.limit is None else str(self.limit)
        return f"order={self.order};limit={lim};seed={self.seed};probes={self.random_probes};pairing=inverse"


UNLIMITED = SearchStrategy()


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: Certificate
    witness: Permutation | None = None
    perms_examined: int = 0
    detail: str = ""
    strategy: str | None = None

    @property
    def is_lced(self) -> bool:
        return self.status is Status.LCED

    def verify(self, G: Matrix) -> bool:
        """Re-check a positive verdict from scratch."""
        if self.status is not Status.LCED:
            return False
        if self.witness is None:
            return False
        return gpg_det(G, self.witness) != 0

    def as_dict(self) -> dict:
        return {
            "status": self.status.value,
            "certificate": self.certificate.value,
            "witness": self.witness.notation() if self.witness is not None else None,
            "perms_examined": self.perms_examined,
            "detail": self.detail,
            "strategy": self.strategy,
        }


# --------------------------------------------------------------- evaluation


class _GPG:
    """Evaluates det(G P_sigma G^t) for 0-based image tuples sigma."""

    __slots__ = ("F", "rows", "k", "n", "count", "_arr", "_arr_t")

    def __init__(self, G: Matrix):
        self.F = G.field
        self.rows = [list(r) for r in G.rows]
        self.k, self.n = G.shape
        self.count = 0
        if self.F.m == 1:
            self._arr = np.array(self.rows, dtype=np.int64).reshape(self.k, self.n)
            self._arr_t = self._arr.T.copy()

    def __call__(self, s: Sequence[int]) -> int:
        self.count += 1
        F, rows, k = self.F, self.rows, self.k
        if F.m == 1:
            M = ((self._arr[:, list(s)] @ self._arr_t) % F.p).tolist()
        else:
            M = []
            for a in range(k):
                pa = [rows[a][i] for i in s]
                row = []
                for b in range(k):
                    acc = 0
                    for x, y in zip(pa, rows[b]):
                        if x and y:
                            acc = F.add(acc, F.mul(x, y))
                    row.append(acc)
                M.append(row)
        return det_rows(M, F)


def gpg_det(G: Matrix, sigma: Permutation) -> FieldElement:
    """``det(G @ P_sigma @ G^t)``."""
    if sigma.n != G.ncols:
        raise ValueError("permutation degree differs from the number of columns")
    return FieldElement(G.field, _GPG(G)(sigma.zero_based()))


def _inverse(s: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(s)
    for j, v in enumerate(s):
        inv[v] = j
    return tuple(inv)


def _probe_sequence(n: int, strategy: SearchStrategy) -> list[tuple[int, ...]]:
    ident = tuple(range(n))
    if strategy.order == "identity-first":
        probes = [ident, *transpositions(n)]
    elif strategy.order == "transpositions-first":
        probes = [*transpositions(n), ident]
    else:
        probes = []
    if strategy.random_probes:
        rng = random.Random(strategy.seed)
        for _ in range(strategy.random_probes):
            s = list(range(n))
            rng.shuffle(s)
            probes.append(tuple(s))
    return probes


def _exhaustive_sequence(n: int, strategy: SearchStrategy) -> Iterator[tuple[int, ...]]:
    if strategy.order == "full-lex":
        return lex_permutations(n)
    return heap_permutations(n)


def witness_search(G: Matrix, strategy: SearchStrategy = UNLIMITED) -> Verdict:
    """Search S_n for a permutation making ``G P G^t`` invertible.

    Each inverse pair is evaluated once. A finite ``strategy.limit`` caps the
    number of determinant evaluations; hitting it yields an Inconclusive
    verdict, never a NotLCED one.
    """
    k, n = G.shape
    fp = strategy.fingerprint()
    if G.rank < k:
        return Verdict(Status.NOT_LCED, Certificate.THEOREM_011, None, 0, "rank deficient", fp)
    if k == 0:
        return Verdict(Status.LCED, Certificate.IDENTITY, Permutation.identity(n), 0, "zero code", fp)
    evaluate = _GPG(G)
    seen: set[tuple[int, ...]] = set()
    limit = strategy.limit

    def hit(s):
        w = Permutation.from_zero_based(s)
        cert = Certificate.IDENTITY if s == tuple(range(n)) else Certificate.WITNESS_SEARCH
        return Verdict(Status.LCED, cert, w, evaluate.count, "", fp)

    def out_of_budget():
        return limit is not None and evaluate.count >= limit

    for s in _probe_sequence(n, strategy):
        if s in seen:
            continue
        seen.add(s)
        seen.add(_inverse(s))
        if out_of_budget():
            return Verdict(Status.INCONCLUSIVE, Certificate.LIMIT_REACHED, None, evaluate.count, "limit reached", fp)
        if evaluate(s):
            return hit(s)
    for s in _exhaustive_sequence(n, strategy):
        inv = _inverse(s)
        if inv < s or s in seen:
            continue
        if out_of_budget():
            return Verdict(Status.INCONCLUSIVE, Certificate.LIMIT_REACHED, None, evaluate.count, "limit reached", fp)
        if evaluate(s):
            return hit(s)
    expected = inverse_pair_classes(n)
    if evaluate.count != expected:
        raise AssertionError(f"search covered {evaluate.count} of {expected} inverse-pair classes")
    return Verdict(
        Status.NOT_LCED,
        Certificate.EXHAUSTED_SEARCH,
        None,
        evaluate.count,
        f"all {expected} inverse-pair classes of S_{n} singular",
        fp,
    )


def exhaustive_status(G: Matrix) -> Status:
    """Status by search alone (no shortcuts other than the rank check)."""
    return witness_search(G, SearchStrategy(order="heap")).status


# --------------------------------------------------------------- shortcuts


def necessary_condition(G: Matrix) -> bool:
    """All row sums zero and the all-ones vector in the row space: G is then not LCED."""
    if any(G.row_sums()):
        return False
    return G.row_space_contains([1] * G.ncols)


def quick_check(A: Matrix) -> tuple[Permutation, str] | None:
    """Probe block permutations diag(I_k, Q) for G = (I_k | A).

    ``G P G^t = I + A Q A^t``, which is invertible when ``A Q A^t`` is
    nilpotent or a scalar matrix other than -1. Q ranges over the identity
    and all transpositions of the n - k trailing coordinates.
    """
    F = A.field
    k, m = A.shape
    if m == 0 or k == 0:
        return None
    minus_one = F.neg(1)
    At = A.T
    for q in [tuple(range(m)), *transpositions(m)]:
        Q = Permutation.from_zero_based(q)
        M = A.permute_columns(Q) @ At
        lam = M.scalar_value()
        if lam is not None and lam != minus_one:
            return Permutation.identity(k).block_sum(Q), "scalar"
        if M.is_nilpotent():
            return Permutation.identity(k).block_sum(Q), "nilpotent"
    return None


def quick_sufficient(A: Matrix) -> Permutation | None:
    found = quick_check(A)
    return found[0] if found else None


def canonicalize(A: Matrix, max_orbit: int = 10**6) -> tuple[Matrix, bool]:
    """Lexicographically least matrix under row and column permutations.

    Returns ``(matrix, exact)``; when k! (n-k)! exceeds ``max_orbit`` the
    input is returned unchanged with ``exact=False``.
    """
    k, m = A.shape
    if factorial(k) * factorial(m) > max_orbit:
        return A, False
    best = None
    for cols in permutations(range(m)):
        cand = tuple(sorted(tuple(r[c] for c in cols) for r in A.rows))
        if best is None or cand < best:
            best = cand
    return Matrix(A.field, best, ncols=m, raw=True), True


def _column(field: Field | None, a) -> Matrix:
    if isinstance(a, Matrix):
        if a.ncols != 1:
            raise ShapeMismatch(f"expected a k x 1 block, got {a.shape}")
        return a
    a = list(a)
    if field is None:
        if not a or not isinstance(a[0], FieldElement):
            raise ValueError("field required for non-FieldElement vectors")
        field = a[0].field
    return Matrix(field, [[x] for x in a], ncols=1)


def _standard(A: Matrix) -> Matrix:
    return Matrix.hstack(Matrix.identity(A.field, A.nrows), A)


def _guaranteed_witness(G: Matrix, cert: Certificate, detail: str = "") -> Verdict:
    v = witness_search(G, UNLIMITED)
    if v.status is not Status.LCED:
        raise AssertionError(f"{cert.value} promised a witness but search found none")
    return Verdict(Status.LCED, cert, v.witness, v.perms_examined, detail, v.strategy)


def g4_decide(a, field: Field | None = None) -> Verdict:
    """Closed form for G = (I_k | a) with n = k + 1.

    Not LCED exactly when char F divides k + 1 and every a_i = -1.
    """
    col = _column(field, a)
    F = col.field
    k = col.nrows
    minus_one = F.neg(1)
    if (k + 1) % F.p == 0 and all(r[0] == minus_one for r in col.rows):
        return Verdict(Status.NOT_LCED, Certificate.CLOSED_FORM_N_K1, None, 0, "char | n and all a_i = -1")
    G = _standard(col)
    evaluate = _GPG(G)
    n = k + 1
    cands = [tuple(range(n))]
    for i in range(k):
        s = list(range(n))
        s[i], s[k] = k, i
        cands.append(tuple(s))
    for s in cands:
        if evaluate(s):
            return Verdict(Status.LCED, Certificate.CLOSED_FORM_N_K1, Permutation.from_zero_based(s), evaluate.count)
    v = _guaranteed_witness(G, Certificate.CLOSED_FORM_N_K1, "fallback to full search")
    return Verdict(v.status, v.certificate, v.witness, v.perms_examined + evaluate.count, v.detail, v.strategy)


def k1_decide(A: Matrix) -> Verdict:
    """Closed form for G = (1 | a_1 .. a_{n-1}): not LCED iff char | n and all a_i = 1."""
    if A.nrows != 1:
        raise ShapeMismatch(f"expected a 1 x m block, got {A.shape}")
    F = A.field
    n = A.ncols + 1
    if n % F.p == 0 and all(x == 1 for x in A.rows[0]):
        return Verdict(Status.NOT_LCED, Certificate.CLOSED_FORM_K1, None, 0, "char | n and all a_i = 1")
    return _guaranteed_witness(_standard(A), Certificate.CLOSED_FORM_K1)


def _sums_condition(G: Matrix) -> bool:
    return all(s == 0 for s in G.row_sums()) and all(s == 1 for s in G.col_sums())


def k2_decide(A: Matrix) -> Verdict:
    """Closed form for G = (I_2 | A): not LCED iff rows of G sum to 0 and columns to 1."""
    if A.nrows != 2:
        raise ShapeMismatch(f"expected a 2 x m block, got {A.shape}")
    G = _standard(A)
    if _sums_condition(G):
        return Verdict(Status.NOT_LCED, Certificate.CLOSED_FORM_K2, None, 0, "row sums 0, column sums 1")
    return _guaranteed_witness(G, Certificate.CLOSED_FORM_K2)


def dual_standard(A: Matrix) -> Matrix:
    """Block of the dual standard form: (I_k | A) -> (I_{n-k} | -A^t)."""
    return -A.T


def dual_transfer(v: Verdict, A: Matrix) -> Verdict:
    """Carry a verdict for (I_k | A) over to (I_{n-k} | -A^t)."""
    if v.status is Status.INCONCLUSIVE:
        return v
    B = dual_standard(A)
    if v.status is Status.NOT_LCED:
        return Verdict(Status.NOT_LCED, v.certificate, None, 0, "transferred to dual")
    G2 = _standard(B)
    w = witness_search(G2, UNLIMITED)
    if w.status is not Status.LCED:
        raise AssertionError("dual of an LCED matrix must be LCED")
    return Verdict(Status.LCED, v.certificate, w.witness, w.perms_examined, "transferred to dual", w.strategy)


def constacyclic_sufficient(spec: CyclicSpec) -> bool:
    """gcd(g, (x^n - lambda)/g) == 1 implies LCED; False is inconclusive."""
    target = _check_divides(spec)
    g = spec.g
    return g.gcd(target // g).degree == 0


def reciprocal_construction(g: Polynomial, n: int | None = None, k: int | None = None) -> Permutation | None:
    """Block witness for the cyclic [3r, 2r] code of g in characteristic 2.

    When g g* = g_0 + g(1)^2 x^r + g_0 x^{2r}, swapping the first and last
    r coordinates gives det(G P G^t) = g_0^{2r} g_r^{2r}. Returns None when
    the polynomial condition fails (inconclusive).
    """
    F = g.field
    if F.p != 2:
        raise WrongCharacteristic("the reciprocal construction needs characteristic 2")
    g = g.monic()
    r = g.degree
    if r < 1:
        raise BadShape("generator polynomial must have positive degree")
    if (n is not None and n != 3 * r) or (k is not None and k != 2 * r):
        raise BadShape(f"need n = 3r = {3 * r} and k = 2r = {2 * r}")
    _check_divides(CyclicSpec(g, 3 * r, 1))
    g0 = g.coefficient(0)
    g1 = g(1).value
    target = [0] * (2 * r + 1)
    target[0] = g0
    target[r] = F.mul(g1, g1)
    target[2 * r] = F.add(target[2 * r], g0)
    if g * g.reciprocal() != Polynomial(F, target, raw=True):
        return None
    from .codes import cyclic

    G = cyclic(CyclicSpec(g, 3 * r, 1)).gen
    s = list(range(3 * r))
    for j in range(r):
        s[j], s[2 * r + j] = 2 * r + j, j
    sigma = Permutation.from_zero_based(s)
    d = gpg_det(G, sigma).value
    expected = F.mul(F.pow(g0, 2 * r), F.pow(g.lead(), 2 * r))
    if d != expected or d == 0:
        raise AssertionError("block witness determinant disagrees with g_0^{2r} g_r^{2r}")
    return sigma


def complement_from_witness(G: Matrix, sigma: Permutation) -> LinearCode:
    """The code D with parity-check matrix ``G P_sigma^t``; (C, D) is an LCP iff sigma is a witness."""
    H = G.permute_columns(sigma.inverse())
    return LinearCode(H).dual()


# ----------------------------------------------------------------- dispatch


def _conjugate(sigma0: Permutation, w: Permutation) -> Permutation:
    # witness for G when w is a witness for E G P_sigma0
    return sigma0 * w * sigma0.inverse()


def decide(
    G: Matrix,
    strategy: SearchStrategy = UNLIMITED,
    *,
    closed_forms: bool = True,
    quick: bool = True,
) -> Verdict:
    """Decide whether G is LCED, with a certificate.

    ``closed_forms=False`` restricts the pipeline to the rank check, the
    row-sum/all-ones obstruction, the block quick checks and search; the
    conjecture sweeps use it so the closed forms cannot vouch for
    themselves.
    """
    k, n = G.shape
    rank = G.rank
    if rank < k:
        return Verdict(Status.NOT_LCED, Certificate.THEOREM_011, None, 0, f"rank {rank} < {k}")
    if k == 0:
        return Verdict(Status.LCED, Certificate.IDENTITY, Permutation.identity(n), 0, "zero code")
    if k == n:
        return Verdict(Status.LCED, Certificate.IDENTITY, Permutation.identity(n), 1, "k = n")
    if necessary_condition(G):
        return Verdict(Status.NOT_LCED, Certificate.THEOREM_011, None, 0, "row sums 0 and all-ones in row space")
    sf = G.standard_form()
    A = sf.A
    if closed_forms:
        v = None
        m = n - k
        if m == 1:
            v = g4_decide(A)
        elif k == 1:
            v = k1_decide(A)
        elif k == 2:
            v = k2_decide(A)
        elif m == 2:
            v = k2_decide(dual_standard(A))
            if v.status is Status.NOT_LCED:
                v = Verdict(Status.NOT_LCED, v.certificate, None, 0, "via dual")
        if v is not None:
            if v.status is Status.NOT_LCED:
                return v
            return _guaranteed_witness(G, v.certificate, v.detail)
    if quick:
        found = quick_check(A)
        if found is not None:
            w, kind = found
            witness = _conjugate(sf.P, w)
            if gpg_det(G, witness) == 0:
                raise AssertionError("quick-check witness failed re-verification")
            return Verdict(Status.LCED, Certificate.QUICK_CHECK, witness, 1, kind)
    return witness_search(G, strategy)
