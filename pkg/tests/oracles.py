"""Deliberately naive reference computations used as test oracles.

Nothing here imports the package; everything is plain integer arithmetic
modulo a prime so that the engine's answers can be checked independently.
"""

from __future__ import annotations

from itertools import permutations, product


def perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(M, p: int | None = None) -> int:
    """Determinant by the permutation expansion (exact over Z, or mod p)."""
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        term = perm_sign(perm)
        for i in range(n):
            term *= M[i][perm[i]]
            if term == 0:
                break
        total += term
    return total % p if p else total


def gpg(G, sigma, p: int):
    """G P_sigma G^t with (G P_sigma)[:, j] = G[:, sigma[j]] (0-based images)."""
    k = len(G)
    GP = [[row[sigma[j]] for j in range(len(row))] for row in G]
    return [[sum(a * b for a, b in zip(GP[i], G[j])) % p for j in range(k)] for i in range(k)]


def brute_lced(G, p: int) -> bool:
    """True iff some permutation gives a nonsingular G P G^t (all n! tried)."""
    n = len(G[0])
    return any(leibniz_det(gpg(G, s, p), p) for s in permutations(range(n)))


def singular_count(G, p: int) -> int:
    n = len(G[0])
    return sum(1 for s in permutations(range(n)) if leibniz_det(gpg(G, s, p), p) == 0)


def standard_form_rows(A, p: int):
    """Rows of (I_k | A)."""
    k = len(A)
    return [[1 if i == j else 0 for j in range(k)] + [x % p for x in A[i]] for i in range(k)]


def all_blocks(p: int, k: int, m: int):
    """Every k x m block over Z/p in row-major lexicographic order."""
    for entries in product(range(p), repeat=k * m):
        yield [list(entries[i * m : (i + 1) * m]) for i in range(k)]


def rows_minus_one_cols_one(A, p: int) -> bool:
    k, m = len(A), len(A[0])
    rows_ok = all(sum(r) % p == (p - 1) % p for r in A)
    cols_ok = all(sum(A[i][j] for i in range(k)) % p == 1 % p for j in range(m))
    return rows_ok and cols_ok


def rank_mod_p(M, p: int) -> int:
    M = [list(r) for r in M]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][c] % p:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def poly_mul(a, b, p: int):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def charpoly_int(M):
    """det(xI - M) over Z by Faddeev-LeVerrier with exact rationals; low-to-high."""
    from fractions import Fraction

    n = len(M)
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    A = [[Fraction(x) for x in r] for r in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = [[sum(A[i][t] * Mk[t][j] for t in range(n)) + coeffs[n - k + 1] * I[i][j] for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return [int(c) for c in coeffs]
