"""Dense exact matrices over a finite field.

Entries are kept as internal field integers (see ``lced.fields``) in a tuple
of row tuples. Low-level kernels (``det_rows``, ``rref_rows``) work directly
on lists of integer rows and are shared by the search hot path.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .fields import Field, FieldElement, MixedFields
from .permutation import Permutation
from .polynomial import Polynomial

__all__ = [
    "Matrix",
    "GaussResult",
    "StandardForm",
    "RankDeficient",
    "BadR",
    "det_rows",
    "rref_rows",
    "perm_matrix",
    "perm_cycle_charpoly",
]

MAX_DELTA_K = 12


class RankDeficient(ValueError):
    def __init__(self, rank: int, rows: int):
        super().__init__(f"matrix has rank {rank} < {rows} rows")
        self.rank = rank
        self.rows = rows


class BadR(ValueError):
    pass


# ---------------------------------------------------------------- kernels


def det_rows(rows: Sequence[Sequence[int]], F: Field) -> int:
    """Determinant of a square matrix of raw field integers."""
    n = len(rows)
    if n == 0:
        return 1
    if F.m == 1:
        p = F.p
        a = [list(r) for r in rows]
        det = 1
        for c in range(n):
            piv = c
            while piv < n and a[piv][c] == 0:
                piv += 1
            if piv == n:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            rc = a[c]
            pv = rc[c]
            det = det * pv % p
            inv = pow(pv, p - 2, p)
            for r in range(c + 1, n):
                rr = a[r]
                f = rr[c]
                if f:
                    f = f * inv % p
                    for j in range(c + 1, n):
                        rr[j] = (rr[j] - f * rc[j]) % p
        return det % p
    a = [list(r) for r in rows]
    det = 1
    for c in range(n):
        piv = c
        while piv < n and a[piv][c] == 0:
            piv += 1
        if piv == n:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.neg(det)
        rc = a[c]
        det = F.mul(det, rc[c])
        inv = F.inv(rc[c])
        for r in range(c + 1, n):
            rr = a[r]
            if rr[c]:
                f = F.mul(rr[c], inv)
                for j in range(c + 1, n):
                    rr[j] = F.sub(rr[j], F.mul(f, rc[j]))
    return det


def rref_rows(rows: Sequence[Sequence[int]], F: Field, ncols: int | None = None):
    """Reduced row-echelon form; returns ``(rref_rows, pivot_columns, det)``.

    Pivots are searched in the first ``ncols`` columns only (default: all);
    row operations apply to full rows, so an augmented block rides along.
    ``det`` is the determinant when the pivot region is square, else None.
    """
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    limit = nc if ncols is None else ncols
    pivots: list[int] = []
    det = 1
    r = 0
    for c in range(limit):
        if r == nr:
            break
        piv = r
        while piv < nr and a[piv][c] == 0:
            piv += 1
        if piv == nr:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            det = F.neg(det)
        pv = a[r][c]
        det = F.mul(det, pv)
        inv = F.inv(pv)
        a[r] = [F.mul(x, inv) for x in a[r]]
        rowr = a[r]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], rowr)]
        pivots.append(c)
        r += 1
    square = nr == limit
    if not square:
        det = None
    elif len(pivots) < nr:
        det = 0
    return a, pivots, det


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class GaussResult:
    rank: int
    det: FieldElement | None
    rref: "Matrix"
    pivots: tuple[int, ...]


@dataclass(frozen=True)
class StandardForm:
    """``E @ G @ P.matrix() == (I_k | A)``."""

    E: "Matrix"
    P: Permutation
    A: "Matrix"


class Matrix:
    """Immutable k x n matrix over a finite field."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable] = (), ncols: int | None = None, *, raw: bool = False):
        if raw:
            data = tuple(tuple(r) for r in rows)
        else:
            data = tuple(tuple(field.encode(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise ValueError("column count mismatch")
        else:
            width = ncols or 0
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # --------------------------------------------------------- constructors

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n, raw=True)

    @classmethod
    def zeros(cls, field: Field, k: int, n: int) -> "Matrix":
        return cls(field, [[0] * n for _ in range(k)], ncols=n, raw=True)

    @classmethod
    def ones(cls, field: Field, k: int, n: int | None = None) -> "Matrix":
        """All-ones matrix (k x k unless ``n`` given)."""
        n = k if n is None else n
        return cls(field, [[1] * n for _ in range(k)], ncols=n, raw=True)

    @classmethod
    def hstack(cls, *blocks: "Matrix") -> "Matrix":
        F = blocks[0].field
        k = blocks[0].nrows
        if any(b.nrows != k for b in blocks):
            raise ValueError("hstack of blocks with different row counts")
        rows = [sum((b.rows[i] for b in blocks), ()) for i in range(k)]
        return cls(F, rows, ncols=sum(b.ncols for b in blocks), raw=True)

    @classmethod
    def vstack(cls, *blocks: "Matrix") -> "Matrix":
        F = blocks[0].field
        n = blocks[0].ncols
        if any(b.ncols != n for b in blocks):
            raise ValueError("vstack of blocks with different column counts")
        return cls(F, [r for b in blocks for r in b.rows], ncols=n, raw=True)

    # ---------------------------------------------------------------- access

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx) -> FieldElement:
        i, j = idx
        return FieldElement(self.field, self.rows[i][j])

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.shape, self.rows)))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.field.literal()}, {[list(r) for r in self.rows]})"

    def __str__(self):
        fmt = self.field.format_element
        return "\n".join(" ".join(fmt(x) for x in r) for r in self.rows)

    def _same(self, other: "Matrix"):
        if other.field != self.field:
            raise MixedFields(f"matrices over {self.field} and {other.field}")

    # ------------------------------------------------------------ arithmetic

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, zip(*self.rows), ncols=self.nrows, raw=True) if self.rows else Matrix.zeros(
            self.field, self.ncols, 0
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols, raw=True)

    def __neg__(self) -> "Matrix":
        F = self.field
        return Matrix(F, [[F.neg(a) for a in r] for r in self.rows], self.ncols, raw=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        F = self.field
        cv = F.encode(c)
        return Matrix(F, [[F.mul(cv, a) for a in r] for r in self.rows], self.ncols, raw=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = []
        if F.m == 1:
            p = F.p
            for r in self.rows:
                out.append([sum(a * b for a, b in zip(r, c)) % p for c in cols])
        else:
            for r in self.rows:
                row = []
                for c in cols:
                    acc = 0
                    for a, b in zip(r, c):
                        if a and b:
                            acc = F.add(acc, F.mul(a, b))
                    row.append(acc)
                out.append(row)
        return Matrix(F, out, ncols=other.ncols, raw=True)

    def __pow__(self, e: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def permute_columns(self, sigma: Permutation) -> "Matrix":
        """``self @ P_sigma``: column j becomes old column sigma(j)."""
        idx = sigma.zero_based()
        return Matrix(self.field, [[r[i] for i in idx] for r in self.rows], self.ncols, raw=True)

    def permute_rows(self, sigma: Permutation) -> "Matrix":
        """``P_sigma @ self``: row i becomes old row sigma^-1(i)."""
        inv = sigma.inverse().zero_based()
        return Matrix(self.field, [self.rows[i] for i in inv], self.ncols, raw=True)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols), raw=True)

    def row_sums(self) -> list[int]:
        F = self.field
        out = []
        for r in self.rows:
            acc = 0
            for x in r:
                acc = F.add(acc, x)
            out.append(acc)
        return out

    def col_sums(self) -> list[int]:
        return self.T.row_sums() if self.nrows else [0] * self.ncols

    def entry_sum(self) -> int:
        F = self.field
        acc = 0
        for s in self.row_sums():
            acc = F.add(acc, s)
        return acc

    def trace(self) -> FieldElement:
        F = self.field
        acc = 0
        for i in range(min(self.shape)):
            acc = F.add(acc, self.rows[i][i])
        return FieldElement(F, acc)

    # ----------------------------------------------------------- elimination

    def gauss(self) -> GaussResult:
        rows, pivots, det = rref_rows(self.rows, self.field)
        d = None if det is None else FieldElement(self.field, det)
        return GaussResult(len(pivots), d, Matrix(self.field, rows, self.ncols, raw=True), tuple(pivots))

    @property
    def rank(self) -> int:
        return self.gauss().rank

    def det(self) -> FieldElement:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        return FieldElement(self.field, det_rows(self.rows, self.field))

    def rref(self) -> "Matrix":
        return self.gauss().rref

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [r + Matrix.identity(self.field, n).rows[i] for i, r in enumerate(self.rows)]
        rows, pivots, _ = rref_rows(aug, self.field, ncols=n)
        if len(pivots) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix(self.field, [r[n:] for r in rows], n, raw=True)

    def nullspace(self) -> "Matrix":
        """Basis (as rows) of ``{x : self @ x^T = 0}``."""
        F = self.field
        n = self.ncols
        if self.nrows == 0:
            return Matrix.identity(F, n)
        rows, pivots, _ = rref_rows(self.rows, F)
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for f in free:
            v = [0] * n
            v[f] = 1
            for r, pc in enumerate(pivots):
                v[pc] = F.neg(rows[r][f])
            basis.append(v)
        return Matrix(F, basis, ncols=n, raw=True)

    def row_space_contains(self, vec: Sequence[int]) -> bool:
        """Whether the raw vector lies in the row space."""
        if self.nrows == 0:
            return all(x == 0 for x in vec)
        base = self.gauss().rank
        return Matrix(self.field, list(self.rows) + [tuple(vec)], self.ncols, raw=True).gauss().rank == base

    def standard_form(self) -> StandardForm:
        """Row-reduce and move the first independent columns to the front."""
        F = self.field
        k, n = self.shape
        eye = Matrix.identity(F, k).rows
        aug = [r + eye[i] for i, r in enumerate(self.rows)]
        rows, pivots, _ = rref_rows(aug, F, ncols=n)
        if len(pivots) < k:
            raise RankDeficient(len(pivots), k)
        rest = [c for c in range(n) if c not in pivots]
        sigma = Permutation.from_zero_based(pivots + rest)
        E = Matrix(F, [r[n:] for r in rows], k, raw=True)
        A = Matrix(F, [[r[c] for c in rest] for r in rows], n - k, raw=True)
        return StandardForm(E, sigma, A)

    # ------------------------------------------------ characteristic polynomial

    def char_poly(self) -> Polynomial:
        """``det(xI - M)`` via Hessenberg reduction and the usual recurrence."""
        if not self.is_square:
            raise ValueError("characteristic polynomial of a non-square matrix")
        F = self.field
        n = self.nrows
        H = [list(r) for r in self.rows]
        for m in range(1, n - 1):
            piv = next((i for i in range(m, n) if H[i][m - 1]), None)
            if piv is None:
                continue
            if piv != m:
                H[m], H[piv] = H[piv], H[m]
                for r in H:
                    r[m], r[piv] = r[piv], r[m]
            inv = F.inv(H[m][m - 1])
            for i in range(m + 1, n):
                u = F.mul(H[i][m - 1], inv)
                if not u:
                    continue
                H[i] = [F.sub(a, F.mul(u, b)) for a, b in zip(H[i], H[m])]
                for r in H:
                    r[m] = F.add(r[m], F.mul(u, r[i]))
        x = Polynomial(F, [0, 1], raw=True)
        polys = [Polynomial(F, [1], raw=True)]
        for m in range(1, n + 1):
            pm = (x - Polynomial(F, [H[m - 1][m - 1]], raw=True)) * polys[m - 1]
            prod = 1
            for i in range(m - 1, 0, -1):
                prod = F.mul(prod, H[i][i - 1])
                c = F.mul(H[i - 1][m - 1], prod)
                if c:
                    pm = pm - polys[i - 1] * Polynomial(F, [c], raw=True)
            polys.append(pm)
        return polys[n]

    def minor_sum_delta(self, r: int) -> FieldElement:
        """Sum of all r x r principal minors (combinatorial; k <= 12)."""
        k = self.nrows
        if not self.is_square:
            raise ValueError("principal minors of a non-square matrix")
        if not 1 <= r <= k:
            raise BadR(f"r={r} outside 1..{k}")
        if k > MAX_DELTA_K:
            raise BadR(f"combinatorial minor sums limited to k <= {MAX_DELTA_K}")
        F = self.field
        acc = 0
        for J in combinations(range(k), r):
            acc = F.add(acc, det_rows([[self.rows[i][j] for j in J] for i in J], F))
        return FieldElement(F, acc)

    def has_eigenvalue(self, lam) -> bool:
        F = self.field
        lv = F.encode(lam)
        n = self.nrows
        shifted = [[F.sub(lv if i == j else 0, self.rows[i][j]) for j in range(n)] for i in range(n)]
        return det_rows(shifted, F) == 0

    def is_nilpotent(self) -> bool:
        if not self.is_square:
            return False
        if self.trace().value != 0:
            return False
        # square until the exponent reaches n; a zero power ends early
        M, e = self, 1
        while True:
            if not any(any(r) for r in M.rows):
                return True
            if e >= self.nrows:
                return False
            M, e = M @ M, 2 * e

    def scalar_value(self) -> int | None:
        """``c`` if the matrix equals ``c * I``, else None."""
        if not self.is_square or self.nrows == 0:
            return None
        c = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x != (c if i == j else 0):
                    return None
        return c


def perm_matrix(sigma: Permutation, field: Field) -> Matrix:
    return sigma.matrix(field)


def perm_cycle_charpoly(cycle_type: Iterable[int], k: int, field: Field) -> Polynomial:
    """``prod (x^l - 1) * (x - 1)^(k - sum l)`` for a permutation of the given cycle type."""
    lengths = [int(c) for c in cycle_type]
    if sum(lengths) > k:
        raise ValueError(f"cycle lengths {lengths} overflow k={k}")
    one = Polynomial(field, [1], raw=True)
    result = one
    for length in lengths:
        result = result * (Polynomial.monomial(field, length) - one)
    return result * (Polynomial.monomial(field, 1) - one) ** (k - sum(lengths))


def binomial_in_field(k: int, r: int, field: Field) -> FieldElement:
    return FieldElement(field, field.from_int(comb(k, r)))
