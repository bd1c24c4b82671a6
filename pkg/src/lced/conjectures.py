"""Enumeration harnesses for the two open conjectures and the permutation-sum identities.

* ``sweep_guess`` checks, for every standard-form matrix (I_k | A) over a
  field, that G is not LCED exactly when all rows of G sum to 0 and all
  columns of G sum to 1.
* ``verify_pi_k`` finds every k x k matrix M for which -1 is an eigenvalue
  of P M for all permutation matrices P, and checks that the entries of M
  sum to -k (and the stronger row/column-sum -1 property).
* ``identity_suite`` checks the permutation-sum identities for
  characteristic polynomials exactly, over prime fields and over Z.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .engine import Status, UNLIMITED, decide, canonicalize
from .fields import Field, is_prime, parse_field
from .matrix import Matrix, det_rows, perm_cycle_charpoly
from .permutation import Permutation
from .polynomial import Polynomial

__all__ = [
    "SweepReport",
    "PiReport",
    "IdentityReport",
    "AllLcedCertificate",
    "BudgetExceeded",
    "PreconditionUnmet",
    "default_budget",
    "sweep_guess",
    "verify_pi_k",
    "identity_suite",
    "alpha_beta_check",
    "all_lced_certificate",
    "conjecture_predicate",
    "pi_k_holds_by_theorem",
    "row_sum_qualifiers",
]

DEFAULT_BUDGET = 10**8

NOTLCED_BUT_CONDITION_FAILS = "notlced-but-condition-fails"
CONDITION_HOLDS_BUT_LCED = "condition-holds-but-lced"


class BudgetExceeded(RuntimeError):
    pass


class PreconditionUnmet(ValueError):
    pass


def default_budget() -> int:
    env = os.environ.get("LCED_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _index_to_entries(idx: int, q: int, count: int) -> list[int]:
    # row-major, first entry most significant: lexicographic enumeration order
    out = [0] * count
    for i in range(count - 1, -1, -1):
        idx, out[i] = divmod(idx, q)
    return out


def _entries_to_index(entries: Iterable[int], q: int) -> int:
    idx = 0
    for e in entries:
        idx = idx * q + e
    return idx


def _block(F: Field, k: int, m: int, idx: int) -> Matrix:
    e = _index_to_entries(idx, F.q, k * m)
    return Matrix(F, [e[i * m : (i + 1) * m] for i in range(k)], ncols=m, raw=True)


def conjecture_predicate(G: Matrix) -> bool:
    """All rows of G sum to 0 and all columns of G sum to 1."""
    return all(s == 0 for s in G.row_sums()) and all(s == 1 for s in G.col_sums())


def _chunks(seq: Sequence, jobs: int) -> list[Sequence]:
    if jobs <= 1 or len(seq) <= 1:
        return [seq]
    size = -(-len(seq) // (jobs * 4))
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def _run_chunks(worker, payloads: list, jobs: int) -> list:
    if jobs <= 1 or len(payloads) <= 1:
        return [worker(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, payloads))


# ------------------------------------------------------------------- sweeps


@dataclass
class SweepReport:
    field: str
    k: int
    n: int
    candidates_total: int
    candidates_after_canonicalization: int
    lced_count: int = 0
    notlced_count: int = 0
    inconclusive_count: int = 0
    predicate_count: int = 0
    counterexamples: list[tuple[Matrix, str]] = field(default_factory=list)
    det_evaluations: int = 0
    budget: int = DEFAULT_BUDGET
    budget_exceeded: bool = False
    canonical: bool = False
    strategy: str = ""
    wall_time: float = 0.0

    @property
    def verified(self) -> bool:
        return not self.budget_exceeded and not self.counterexamples and self.inconclusive_count == 0

    def as_dict(self, include_timing: bool = False) -> dict:
        from .textio import format_matrix

        d = {
            "kind": "sweep",
            "field": self.field,
            "k": self.k,
            "n": self.n,
            "candidates_total": self.candidates_total,
            "candidates_after_canonicalization": self.candidates_after_canonicalization,
            "lced_count": self.lced_count,
            "notlced_count": self.notlced_count,
            "inconclusive_count": self.inconclusive_count,
            "predicate_count": self.predicate_count,
            "counterexamples": [
                {"A": format_matrix(A), "direction": direction} for A, direction in self.counterexamples
            ],
            "det_evaluations": self.det_evaluations,
            "budget": self.budget,
            "budget_exceeded": self.budget_exceeded,
            "canonical": self.canonical,
            "strategy": self.strategy,
            "verified": self.verified,
        }
        if include_timing:
            d["wall_time"] = round(self.wall_time, 6)
        return d


_STATUS_CODE = {Status.LCED: 0, Status.NOT_LCED: 1, Status.INCONCLUSIVE: 2}


def _sweep_worker(payload):
    field_lit, k, m, indices, budget = payload
    F = parse_field(field_lit)
    eye = Matrix.identity(F, k)
    out = []
    spent = 0
    for idx in indices:
        A = _block(F, k, m, idx)
        G = Matrix.hstack(eye, A)
        v = decide(G, UNLIMITED, closed_forms=False)
        spent += v.perms_examined
        out.append((idx, _STATUS_CODE[v.status], conjecture_predicate(G), v.perms_examined))
        if spent > budget:
            break
    return out


def sweep_guess(
    field: Field,
    k: int,
    n: int,
    canonical: bool = False,
    *,
    jobs: int = 1,
    budget: int | None = None,
) -> SweepReport:
    """Decide every (I_k | A) over ``field`` and compare with the conjectured criterion.

    Decisions never use the closed forms (they are consequences of the
    conjecture's proven special cases); only the rank check, the row-sum
    obstruction, the block quick checks and exhaustive search. With
    ``canonical=True`` one representative per row/column-permutation orbit
    is decided and counted with its orbit size.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    budget = default_budget() if budget is None else budget
    t0 = time.perf_counter()
    m = n - k
    q = field.q
    total = q ** (k * m)
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed the budget of {budget} determinant evaluations")
    if canonical:
        weights: dict[int, int] = {}
        for idx in range(total):
            rep, exact = canonicalize(_block(field, k, m, idx))
            key = _entries_to_index((x for r in rep.rows for x in r), q) if exact else idx
            weights[key] = weights.get(key, 0) + 1
        indices = sorted(weights)
    else:
        weights = None
        indices = range(total)
    payloads = [(field.literal(), k, m, chunk, budget) for chunk in _chunks(indices, jobs)]
    results = _run_chunks(_sweep_worker, payloads, jobs)

    report = SweepReport(
        field=field.literal(),
        k=k,
        n=n,
        candidates_total=total,
        candidates_after_canonicalization=len(indices),
        budget=budget,
        canonical=canonical,
        strategy=UNLIMITED.fingerprint() + ";closed_forms=off",
    )
    spent = 0
    processed = 0
    for chunk in results:
        for idx, status, pred, dets in chunk:
            spent += dets
            if spent > budget:
                report.budget_exceeded = True
                break
            processed += 1
            w = weights[idx] if weights else 1
            if pred:
                report.predicate_count += w
            if status == 0:
                report.lced_count += w
                if pred:
                    report.counterexamples.append((_block(field, k, m, idx), CONDITION_HOLDS_BUT_LCED))
            elif status == 1:
                report.notlced_count += w
                if not pred:
                    report.counterexamples.append((_block(field, k, m, idx), NOTLCED_BUT_CONDITION_FAILS))
            else:
                report.inconclusive_count += w
        if report.budget_exceeded:
            break
    if processed < len(indices):
        report.budget_exceeded = True
    report.det_evaluations = min(spent, budget + 1) if report.budget_exceeded else spent
    report.counterexamples.sort(key=lambda c: (c[0].rows, c[1]))
    report.wall_time = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------- Pi_k


@dataclass
class PiReport:
    field: str
    k: int
    symmetric_only: bool
    candidates_total: int = 0
    qualifying_count: int = 0
    entry_sum_violations: list[Matrix] = field(default_factory=list)
    stronger_violations: list[Matrix] = field(default_factory=list)
    trace_violations: list[Matrix] | None = None
    det_evaluations: int = 0
    budget: int = DEFAULT_BUDGET
    budget_exceeded: bool = False
    qualifiers: list[Matrix] = field(default_factory=list, repr=False)
    wall_time: float = 0.0

    @property
    def verified(self) -> bool:
        return (
            not self.budget_exceeded
            and not self.entry_sum_violations
            and not self.stronger_violations
            and not self.trace_violations
        )

    def as_dict(self, include_timing: bool = False) -> dict:
        from .textio import format_matrix

        d = {
            "kind": "pik",
            "field": self.field,
            "k": self.k,
            "symmetric_only": self.symmetric_only,
            "candidates_total": self.candidates_total,
            "qualifying_count": self.qualifying_count,
            "entry_sum_violations": [format_matrix(M) for M in self.entry_sum_violations],
            "stronger_violations": [format_matrix(M) for M in self.stronger_violations],
            "trace_violations": None
            if self.trace_violations is None
            else [format_matrix(M) for M in self.trace_violations],
            "det_evaluations": self.det_evaluations,
            "budget": self.budget,
            "budget_exceeded": self.budget_exceeded,
            "verified": self.verified,
        }
        if include_timing:
            d["wall_time"] = round(self.wall_time, 6)
        return d


def _symmetric_from_index(F: Field, k: int, idx: int) -> list[list[int]]:
    count = k * (k + 1) // 2
    e = _index_to_entries(idx, F.q, count)
    M = [[0] * k for _ in range(k)]
    it = iter(e)
    for i in range(k):
        for j in range(i, k):
            M[i][j] = M[j][i] = next(it)
    return M


def qualifies(M: Sequence[Sequence[int]], F: Field, perms: Sequence[Sequence[int]] | None = None) -> tuple[bool, int]:
    """Whether det(I + P M) = 0 for every permutation matrix P; returns (flag, dets used)."""
    k = len(M)
    if perms is None:
        perms = list(permutations(range(k)))
    used = 0
    for s in perms:
        # rows of P M are the rows of M in some order; all orders are visited
        rows = [list(M[s[i]]) for i in range(k)]
        for i in range(k):
            rows[i][i] = F.add(rows[i][i], 1)
        used += 1
        if det_rows(rows, F):
            return False, used
    return True, used


def _stronger(M: Matrix) -> bool:
    minus_one = M.field.neg(1)
    return all(s == minus_one for s in M.row_sums()) or all(s == minus_one for s in M.col_sums())


def _pik_worker(payload):
    field_lit, k, symmetric_only, indices, budget = payload
    F = parse_field(field_lit)
    perms = list(permutations(range(k)))
    out = []
    spent = 0
    for idx in indices:
        if symmetric_only:
            M = _symmetric_from_index(F, k, idx)
        else:
            e = _index_to_entries(idx, F.q, k * k)
            M = [e[i * k : (i + 1) * k] for i in range(k)]
        ok, used = qualifies(M, F, perms)
        spent += used
        out.append((idx, ok, used))
        if spent > budget:
            break
    return out


def verify_pi_k(
    field: Field,
    k: int,
    symmetric_only: bool = True,
    *,
    jobs: int = 1,
    budget: int | None = None,
) -> PiReport:
    """Enumerate k x k matrices and test the entry-sum claim on every qualifier."""
    budget = default_budget() if budget is None else budget
    t0 = time.perf_counter()
    q = field.q
    total = q ** (k * (k + 1) // 2) if symmetric_only else q ** (k * k)
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed the budget of {budget} determinant evaluations")
    payloads = [(field.literal(), k, symmetric_only, chunk, budget) for chunk in _chunks(range(total), jobs)]
    results = _run_chunks(_pik_worker, payloads, jobs)
    report = PiReport(field=field.literal(), k=k, symmetric_only=symmetric_only, candidates_total=total, budget=budget)
    check_trace = field.p == 2 and k == 3 and symmetric_only
    if check_trace:
        report.trace_violations = []
    target = field.neg(field.from_int(k))
    spent = 0
    processed = 0
    for chunk in results:
        for idx, ok, used in chunk:
            spent += used
            if spent > budget:
                report.budget_exceeded = True
                break
            processed += 1
            if not ok:
                continue
            if symmetric_only:
                M = Matrix(field, _symmetric_from_index(field, k, idx), ncols=k, raw=True)
            else:
                M = _block(field, k, k, idx)
            report.qualifying_count += 1
            report.qualifiers.append(M)
            if M.entry_sum() != target:
                report.entry_sum_violations.append(M)
            if not _stronger(M):
                report.stronger_violations.append(M)
            if check_trace and M.trace() != 1:
                report.trace_violations.append(M)
        if report.budget_exceeded:
            break
    if processed < total:
        report.budget_exceeded = True
    report.det_evaluations = spent
    report.wall_time = time.perf_counter() - t0
    return report


def row_sum_qualifiers(field: Field, k: int, count: int, rng: random.Random) -> list[Matrix]:
    """Random matrices with every row (or every column) summing to -1; all of them qualify."""
    out = []
    minus_one = field.neg(1)
    for t in range(count):
        rows = []
        for _ in range(k):
            r = [rng.randrange(field.q) for _ in range(k - 1)]
            acc = 0
            for x in r:
                acc = field.add(acc, x)
            r.append(field.sub(minus_one, acc))
            rows.append(r)
        M = Matrix(field, rows, ncols=k, raw=True)
        out.append(M if t % 2 == 0 else M.T)
    return out


def pi_k_holds_by_theorem(field: Field, k: int) -> bool:
    """Known cases: char >= k (Pi_k via the (k-1)! identity) and every k <= 3."""
    return k <= 3 or field.p >= k


# ------------------------------------------------------------- identities


def _charpoly_batch(stack: np.ndarray, mod: int | None) -> np.ndarray:
    """Characteristic polynomials of a (B, k, k) integer stack, highest degree first.

    Division-free Berkowitz recursion, so it is exact over Z (int64) and
    over Z/p when ``mod`` is given. Entries over Z must stay small enough
    for int64; the suite draws them from [-3, 3] with k <= 7.
    """
    B, k, _ = stack.shape

    def red(x):
        return x % mod if mod else x

    poly = np.stack([np.ones(B, dtype=np.int64), red(-stack[:, k - 1, k - 1])], axis=1)
    for i in range(k - 2, -1, -1):
        m = k - 1 - i
        a = stack[:, i, i]
        R = stack[:, i, i + 1 :]
        C = stack[:, i + 1 :, i]
        A1 = stack[:, i + 1 :, i + 1 :]
        t = [np.ones(B, dtype=np.int64), red(-a)]
        v = C
        for _ in range(m):
            t.append(red(-np.einsum("bi,bi->b", R, v)))
            v = red(np.einsum("bij,bj->bi", A1, v))
        new = np.zeros((B, m + 2), dtype=np.int64)
        for r in range(m + 2):
            acc = np.zeros(B, dtype=np.int64)
            for c in range(min(r, m) + 1):
                acc = red(acc + t[r - c] * poly[:, c])
            new[:, r] = acc
        poly = new
    return poly


def _perm_stack(A: np.ndarray, perms: np.ndarray) -> np.ndarray:
    # P_pi A has row i equal to row pi^-1(i) of A; over all pi this is every row order
    return A[perms]


@dataclass
class IdentityReport:
    field: str
    k: int
    trials: int
    seed: int
    checks: dict[str, list[int]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def record(self, name: str, ok: bool, note: str = ""):
        c = self.checks.setdefault(name, [0, 0])
        c[0] += 1
        if not ok:
            c[1] += 1
            if len(self.failures) < 50:
                self.failures.append(f"{name}: {note}")

    @property
    def passed(self) -> bool:
        return all(f == 0 for _, f in self.checks.values()) and bool(self.checks)

    def as_dict(self) -> dict:
        return {
            "kind": "identities",
            "field": self.field,
            "k": self.k,
            "trials": self.trials,
            "seed": self.seed,
            "checks": {name: {"checked": c, "failed": f} for name, (c, f) in sorted(self.checks.items())},
            "failures": list(self.failures),
            "passed": self.passed,
        }


def _signed_perm_sums(k: int):
    even = np.zeros((k, k), dtype=object)
    odd = np.zeros((k, k), dtype=object)
    for s in permutations(range(k)):
        P = Permutation.from_zero_based(s)
        target = even if P.sign() == 1 else odd
        for j in range(k):
            target[s[j], j] += 1
    return even, odd


def identity_suite(
    field: Field | None,
    k: int,
    trials: int = 1000,
    seed: int = 0,
    *,
    qualifiers: Sequence[Matrix] | None = None,
    direct_trials: int = 5,
) -> IdentityReport:
    """Check the permutation-sum identities exactly; ``field=None`` means over Z.

    Items: (a) even/odd/all permutation-matrix sums against multiples of the
    all-ones matrix (computed over Z, then reduced); (b) the signed sum
    vanishes; (c) trace sum equals (k-1)! times the entry sum; (d) higher
    principal-minor sums vanish; (e) the full characteristic-polynomial sum;
    (f) the same with A = I, also via cycle types; (g) the (k-1)!(k + sum M)
    relation on matrices qualifying for the -1 eigenvalue property.
    """
    if not 2 <= k <= 7:
        raise ValueError("identity suite needs 2 <= k <= 7")
    if field is not None and not field.is_prime:
        raise ValueError("identity suite runs over prime fields or Z")
    mod = field.p if field is not None else None
    label = field.literal() if field is not None else "Z"
    report = IdentityReport(label, k, trials, seed)
    rng = random.Random(seed)
    fk = factorial(k)
    f1 = factorial(k - 1)

    def red(x):
        return int(x) % mod if mod else int(x)

    # (a), (b): integer sums of permutation matrices, reduced afterwards
    even, odd = _signed_perm_sums(k)
    total = even + odd
    ok_all = all(red(total[i, j]) == red(f1) for i in range(k) for j in range(k))
    report.record("a_sum_all_perms", ok_all, "sum over S_k != (k-1)! U")
    if k >= 3:
        half = f1 // 2
        ok_even = all(even[i, j] == half and odd[i, j] == half for i in range(k) for j in range(k))
        report.record("a_even_odd_halves", ok_even, "even/odd sums != (k-1)!/2 U over Z")
        ok_red = all(red(even[i, j]) == red(half) and red(odd[i, j]) == red(half) for i in range(k) for j in range(k))
        report.record("a_even_odd_reduced", ok_red, "reduced even/odd sums")
        diff = even - odd
        report.record("b_signed_sum_zero", all(red(diff[i, j]) == 0 for i in range(k) for j in range(k)), "signed sum")

    perms = np.array(list(permutations(range(k))), dtype=np.int64)

    # (f): A = I, via batched char polys and via cycle types
    eye = np.eye(k, dtype=np.int64)
    polys = _charpoly_batch(_perm_stack(eye, perms), mod)
    summed = [red(x) for x in polys.sum(axis=0)]
    expect = [0] * (k + 1)
    expect[0] = red(fk)
    expect[1] = red(-fk)
    report.record("f_identity_charpoly_sum", summed == expect, f"{summed} != {expect}")
    if field is not None:
        acc = Polynomial(field)
        for s in perms:
            acc = acc + perm_cycle_charpoly(Permutation.from_zero_based(s).cycle_type(), k, field)
        expect_poly = Polynomial(field, list(reversed(expect)), raw=True)
        report.record("f_cycle_type_sum", acc == expect_poly, f"{acc} != {expect_poly}")

    lo, hi = (0, mod - 1) if mod else (-3, 3)
    for t in range(trials):
        A = np.array([[rng.randint(lo, hi) for _ in range(k)] for _ in range(k)], dtype=np.int64)
        total_entries = int(A.sum())
        stack = _perm_stack(A, perms)
        # (c) trace sum, directly
        tr = red(np.trace(stack, axis1=1, axis2=2).sum())
        report.record("c_trace_sum", tr == red(f1 * total_entries), f"trial {t}")
        polys = _charpoly_batch(stack, mod)
        summed = [red(x) for x in polys.sum(axis=0)]
        # (e) full sum: k! x^k - (k-1)! (sum a_ij) x^(k-1)
        expect = [0] * (k + 1)
        expect[0] = red(fk)
        expect[1] = red(-f1 * total_entries)
        report.record("e_charpoly_sum", summed == expect, f"trial {t}: {summed} != {expect}")
        # (d) via coefficients: coeff of x^(k-r) is (-1)^r delta_r
        report.record("d_delta_sums_zero", all(c == 0 for c in summed[2:]), f"trial {t}: {summed[2:]}")
        if t < direct_trials:
            _direct_delta_check(report, A, perms, mod, t)
        if t == 0 and field is not None:
            M = Matrix(field, A.tolist(), ncols=k)
            hess = list(reversed(M.char_poly().coeffs))
            hess += [0] * (k + 1 - len(hess))
            report.record("charpoly_routes_agree", hess == [red(x) for x in polys[0]], "Hessenberg vs Berkowitz")

    # (g)
    if field is None:
        for M in qualifiers if qualifiers is not None else _int_row_sum_qualifiers(k, min(trials, 50), rng):
            rows = [list(r) for r in M]
            ok = all(
                _int_det([[int(i == j) + rows[s[i]][j] for j in range(k)] for i in range(k)]) == 0 for s in perms
            )
            if not ok:
                report.record("g_qualifier_input", False, f"supplied matrix does not qualify: {rows}")
                continue
            report.record("g_factorial_relation", f1 * (k + sum(map(sum, rows))) == 0, f"{rows}")
    else:
        if qualifiers is None:
            qualifiers = row_sum_qualifiers(field, k, min(trials, 50), rng)
        perm_list = [tuple(int(x) for x in s) for s in perms]
        for M in qualifiers:
            ok, _ = qualifies(M.rows, field, perm_list)
            if not ok:
                report.record("g_qualifier_input", False, f"supplied matrix does not qualify: {M.rows}")
                continue
            lhs = field.mul(field.from_int(f1), field.add(field.from_int(k), M.entry_sum()))
            report.record("g_factorial_relation", lhs == 0, f"{M.rows}")
    return report


def _int_row_sum_qualifiers(k: int, count: int, rng: random.Random) -> list[list[list[int]]]:
    out = []
    for t in range(count):
        rows = []
        for _ in range(k):
            r = [rng.randint(-3, 3) for _ in range(k - 1)]
            rows.append(r + [-1 - sum(r)])
        out.append(rows if t % 2 == 0 else [list(c) for c in zip(*rows)])
    return out


def _direct_delta_check(report: IdentityReport, A: np.ndarray, perms: np.ndarray, mod: int | None, t: int):
    # principal-minor sums straight from the definition, independent of any char-poly routine
    k = A.shape[0]
    for r in range(2, k + 1):
        total = 0
        for s in perms:
            PA = A[s]
            for J in combinations(range(k), r):
                sub = PA[np.ix_(J, J)]
                total += _int_det(sub.tolist())
        ok = (total % mod == 0) if mod else total == 0
        report.record("d_delta_sums_direct", ok, f"trial {t}, r={r}: {total}")


def _int_det(rows: list[list[int]]) -> int:
    """Exact integer determinant by Bareiss elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, n) if a[r][c]), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1] if n else 1


# ------------------------------------------------------- consequences


def alpha_beta_check(A: Matrix, n: int | None = None, k: int | None = None, *, pi_verified: bool = False) -> bool:
    """Row/column-sum constraints satisfied by a non-LCED (I_k | A).

    True iff all column sums of A equal one beta with (n-k) beta^2 = -k and
    all row sums equal one alpha with k alpha^2 = -(n-k). Requires G not
    LCED, k >= 2, and Pi_k, Pi_(n-k) for the field (known from theory, or
    asserted by the caller with ``pi_verified=True``).
    """
    F = A.field
    kk, m = A.shape
    k = kk if k is None else k
    n = k + m if n is None else n
    if k != kk or n != k + m:
        raise PreconditionUnmet(f"A has shape {A.shape}, inconsistent with k={k}, n={n}")
    if k < 2:
        raise PreconditionUnmet("needs k >= 2")
    if not pi_verified and not (pi_k_holds_by_theorem(F, k) and pi_k_holds_by_theorem(F, m)):
        raise PreconditionUnmet(f"Pi_{k} and Pi_{m} are not known for {F}")
    G = Matrix.hstack(Matrix.identity(F, k), A)
    if decide(G).status is not Status.NOT_LCED:
        raise PreconditionUnmet("(I_k | A) is not certified non-LCED")
    cols, rows = A.col_sums(), A.row_sums()
    beta, alpha = cols[0], rows[0]
    if any(c != beta for c in cols) or any(r != alpha for r in rows):
        return False
    fk, fm = F.from_int(k), F.from_int(m)
    ok_beta = F.mul(fm, F.mul(beta, beta)) == F.neg(fk)
    ok_alpha = F.mul(fk, F.mul(alpha, alpha)) == F.neg(fm)
    return ok_beta and ok_alpha


@dataclass(frozen=True)
class AllLcedCertificate:
    p: int
    m: int
    k: int
    n: int
    ratio: int
    statement: str

    def as_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "k": self.k, "n": self.n, "ratio": self.ratio, "statement": self.statement}


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def all_lced_certificate(p: int, m: int, k: int, n: int) -> AllLcedCertificate | None:
    """Certificate that every [n, k] code over GF(p^m) is LCED, or None.

    Fires when -k/(n-k) is a non-residue mod p (m odd keeps it a
    non-square in GF(p^m)); a non-LCED code would force it to be a square.
    """
    if not is_prime(p):
        raise PreconditionUnmet(f"{p} is not prime")
    if p == 2:
        # every element of a field of characteristic 2 is a square
        return None
    if m < 1 or m % 2 == 0:
        raise PreconditionUnmet("extension degree must be odd")
    if k < 2 or n <= k:
        raise PreconditionUnmet("needs 2 <= k < n")
    if p < k:
        raise PreconditionUnmet(f"characteristic {p} < k = {k}: Pi_k is not known")
    if (n - k) % p == 0:
        raise PreconditionUnmet("n - k vanishes in the field")
    ratio = (-k * pow(n - k, -1, p)) % p
    if legendre(ratio, p) != -1:
        return None
    q = f"{p}^{m}" if m > 1 else str(p)
    return AllLcedCertificate(p, m, k, n, ratio, f"every [{n},{k}] code over GF({q}) is LCED")
