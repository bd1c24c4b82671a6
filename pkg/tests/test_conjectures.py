import random
from itertools import permutations, product
from math import factorial

import pytest

from lced.conjectures import (
    BudgetExceeded,
    PreconditionUnmet,
    all_lced_certificate,
    alpha_beta_check,
    conjecture_predicate,
    identity_suite,
    legendre,
    qualifies,
    row_sum_qualifiers,
    sweep_guess,
    verify_pi_k,
)
from lced.engine import Status, decide
from lced.fields import make_field
from lced.matrix import Matrix

from oracles import all_blocks, brute_lced, leibniz_det, rows_minus_one_cols_one, standard_form_rows

F2 = make_field(2)
F3 = make_field(3)
F5 = make_field(5)
F7 = make_field(7)


# ------------------------------------------------------------------ sweeps


def test_sweep_examples():
    r = sweep_guess(F2, 1, 2)
    assert r.candidates_total == 2 and r.notlced_count == 1 and r.lced_count == 1
    assert not r.counterexamples and r.verified

    r = sweep_guess(F3, 2, 3)
    assert r.notlced_count == 1 and r.verified
    assert not brute_lced(standard_form_rows([[2], [2]], 3), 3)

    r = sweep_guess(F2, 2, 5)
    assert r.notlced_count == 0 and r.verified


@pytest.mark.parametrize("p,k,n", [(2, 2, 4), (2, 3, 5), (3, 2, 4), (3, 1, 4), (5, 1, 3)])
def test_sweep_counts_against_oracle(p, k, n):
    F = make_field(p)
    r = sweep_guess(F, k, n)
    blocks = list(all_blocks(p, k, n - k))
    oracle_not = sum(1 for A in blocks if not brute_lced(standard_form_rows(A, p), p))
    oracle_pred = sum(1 for A in blocks if rows_minus_one_cols_one(A, p))
    assert r.candidates_total == len(blocks)
    assert r.notlced_count == oracle_not
    assert r.predicate_count == oracle_pred
    assert r.verified


def test_predicate_matches_independent_form():
    rng = random.Random(4)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        k = rng.randint(1, 3)
        m = rng.randint(1, 3)
        A = [[rng.randrange(p) for _ in range(m)] for _ in range(k)]
        G = Matrix(make_field(p), standard_form_rows(A, p))
        assert conjecture_predicate(G) == rows_minus_one_cols_one(A, p)


def test_canonical_sweep_agrees():
    plain = sweep_guess(F2, 2, 4)
    canon = sweep_guess(F2, 2, 4, canonical=True)
    assert canon.candidates_after_canonicalization < plain.candidates_total
    assert canon.candidates_total == plain.candidates_total
    for attr in ("lced_count", "notlced_count", "predicate_count"):
        assert getattr(canon, attr) == getattr(plain, attr)
    assert canon.verified


def test_sweep_parallel_is_deterministic():
    a = sweep_guess(F3, 2, 5, jobs=1)
    b = sweep_guess(F3, 2, 5, jobs=2)
    assert a.as_dict() == b.as_dict()


def test_sweep_budget():
    with pytest.raises(BudgetExceeded):
        sweep_guess(F3, 3, 7, budget=1000)
    r = sweep_guess(F2, 3, 6, budget=600)
    assert r.budget_exceeded and not r.verified


def test_sweep_budget_env(monkeypatch):
    monkeypatch.setenv("LCED_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        sweep_guess(F2, 2, 4)


# ------------------------------------------------------------------ Pi_k


def _oracle_qualifiers(p, k, symmetric):
    out = []
    perms = list(permutations(range(k)))
    for entries in product(range(p), repeat=k * k):
        M = [list(entries[i * k : (i + 1) * k]) for i in range(k)]
        if symmetric and any(M[i][j] != M[j][i] for i in range(k) for j in range(k)):
            continue
        ok = True
        for s in perms:
            # I + P_s M with (P_s M)[i] = M[s^{-1}(i)]
            inv = [0] * k
            for j, t in enumerate(s):
                inv[t] = j
            IPM = [[(int(i == j) + M[inv[i]][j]) % p for j in range(k)] for i in range(k)]
            if leibniz_det(IPM, p):
                ok = False
                break
        if ok:
            out.append(M)
    return out


def test_pik_f2_k2_symmetric_example():
    r = verify_pi_k(F2, 2, True)
    got = sorted(M.to_lists() for M in r.qualifiers)
    assert got == [[[0, 1], [1, 0]], [[1, 0], [0, 1]]]
    assert r.verified and not r.entry_sum_violations


@pytest.mark.parametrize("p,k,sym", [(2, 2, False), (2, 3, False), (3, 2, False), (3, 3, True), (5, 2, True)])
def test_pik_against_oracle(p, k, sym):
    F = make_field(p)
    r = verify_pi_k(F, k, sym)
    oracle = _oracle_qualifiers(p, k, sym)
    assert r.qualifying_count == len(oracle)
    assert sorted(M.to_lists() for M in r.qualifiers) == sorted(oracle)
    for M in oracle:
        assert sum(map(sum, M)) % p == (-k) % p
    assert r.verified


def test_pik_trace_char2():
    r = verify_pi_k(F2, 3, True)
    assert r.trace_violations == []
    assert all(M.trace().value == 1 for M in r.qualifiers)
    assert verify_pi_k(F3, 3, True).trace_violations is None


def test_row_sum_matrices_qualify():
    rng = random.Random(8)
    for F in (F2, F3, F5, F7):
        for M in row_sum_qualifiers(F, 3, 6, rng):
            ok, _ = qualifies(M.rows, F)
            assert ok


def test_pik_budget():
    with pytest.raises(BudgetExceeded):
        verify_pi_k(F7, 3, False, budget=10)


# ------------------------------------------------------------------ identities


def test_identity_examples():
    # sum over S_3 of permutation matrices is 2 U
    total = [[0] * 3 for _ in range(3)]
    for s in permutations(range(3)):
        for j, t in enumerate(s):
            total[t][j] += 1
    assert total == [[2] * 3] * 3 == [[factorial(2)] * 3] * 3
    r = identity_suite(F5, 3, trials=5)
    assert r.passed


@pytest.mark.parametrize("field", [F2, F3, F7, None])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_identity_suite_small(field, k):
    r = identity_suite(field, k, trials=30, seed=1)
    assert r.passed, r.failures
    names = set(r.checks)
    for expected in ("a_sum_all_perms", "c_trace_sum", "e_charpoly_sum", "f_identity_charpoly_sum"):
        assert expected in names
    # the signed sum vanishes only from k = 3 on (for k = 2 it is I - P_(12))
    assert ("b_signed_sum_zero" in names) == (k >= 3)


def test_identity_suite_with_qualifiers():
    quals = verify_pi_k(F3, 2, False).qualifiers
    r = identity_suite(F3, 2, trials=5, qualifiers=quals)
    assert r.passed
    assert r.checks["g_factorial_relation"][0] >= len(quals)


def test_identity_suite_detects_corruption(monkeypatch):
    import lced.conjectures as mod

    real = mod._charpoly_batch

    def broken(stack, m):
        out = real(stack, m)
        out[..., 0] += 1
        return out

    monkeypatch.setattr(mod, "_charpoly_batch", broken)
    assert not identity_suite(F7, 3, trials=3).passed


# ------------------------------------------------------------------ certificates


def test_alpha_beta_examples():
    assert alpha_beta_check(Matrix(F3, [[2], [2]]), 3, 2, pi_verified=True)
    # F_2, n = 4, k = 2: A = [[1, 0], [0, 1]] has row and column sums 1
    A = Matrix(F2, [[1, 0], [0, 1]])
    assert decide(Matrix.hstack(Matrix.identity(F2, 2), A)).status is Status.NOT_LCED
    assert alpha_beta_check(A, 4, 2)
    with pytest.raises(PreconditionUnmet):
        alpha_beta_check(Matrix(F3, [[1], [0]]), 3, 2, pi_verified=True)
    with pytest.raises(PreconditionUnmet):
        alpha_beta_check(Matrix(F3, [[2, 2, 2]]), 4, 1, pi_verified=True)


def test_legendre():
    for p in (3, 5, 7, 11, 13):
        squares = {(x * x) % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)


def test_certificate_examples():
    c = all_lced_certificate(7, 1, 2, 6)
    assert c is not None
    # -k/(n-k) = -2/4 = -1/2 = 3 mod 7, a non-residue
    assert c.ratio == 3 and legendre(3, 7) == -1
    c = all_lced_certificate(5, 1, 2, 8)
    assert c is not None
    assert legendre(c.ratio, 5) == -1
    assert all_lced_certificate(2, 1, 2, 6) is None
    with pytest.raises(PreconditionUnmet):
        all_lced_certificate(3, 1, 5, 8)


@pytest.mark.parametrize("p,k,n", [(7, 2, 6), (5, 2, 8)])
def test_certificate_spot_validation(p, k, n):
    F = make_field(p)
    assert all_lced_certificate(p, 1, k, n) is not None
    rng = random.Random(p * 100 + n)
    done = 0
    while done < 20:
        G = Matrix(F, [[rng.randrange(p) for _ in range(n)] for _ in range(k)])
        if G.rank < k:
            continue
        assert decide(G).status is Status.LCED
        done += 1
