"""Permutations of {1..n} and their enumeration orders.

Matrix convention: ``(P_sigma)[i][j] = 1`` iff ``sigma(j) == i``, so that
``P_sigma @ P_tau == P_(sigma o tau)`` and ``(G @ P_sigma)[:, j] == G[:, sigma(j)]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "heap_permutations",
    "lex_permutations",
    "transpositions",
    "involution_count",
]


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {1..n}; ``images[j - 1] == sigma(j)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"{imgs} is not a permutation of 1..{len(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_zero_based(cls, images: Sequence[int]) -> "Permutation":
        return cls(tuple(i + 1 for i in images))

    @classmethod
    def from_cycles(cls, cycles: str | Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from cycle notation, e.g. ``"(1 5)(2 6)"`` or ``[(1, 5), (2, 6)]``."""
        if isinstance(cycles, str):
            text = cycles.strip()
            if text in ("", "id", "()"):
                cycles = []
            else:
                groups = re.findall(r"\(([^()]*)\)", text)
                if "".join(f"({g})" for g in groups) != re.sub(r"\s*([()])\s*", r"\1", text):
                    raise ValueError(f"bad cycle notation {text!r}")
                cycles = [[int(t) for t in re.split(r"[\s,]+", g.strip()) if t] for g in groups]
        imgs = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            for a in cyc:
                if not 1 <= a <= n or a in seen:
                    raise ValueError(f"bad cycle {cyc} for n={n}")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a - 1] = b
        return cls(tuple(imgs))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "Permutation":
        return cls.from_cycles([(i, j)], n)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(j) = self(other(j))
        if other.n != self.n:
            raise ValueError("permutations of different degree")
        return Permutation(tuple(self.images[o - 1] for o in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, s in enumerate(self.images, start=1):
            inv[s - 1] = j
        return Permutation(tuple(inv))

    def zero_based(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Lengths of the nontrivial cycles, descending."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_involution(self) -> bool:
        return all(self(self(j)) == j for j in range(1, self.n + 1))

    def notation(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __str__(self):
        return self.notation()

    def matrix(self, field):
        from .matrix import Matrix

        n = self.n
        rows = [[0] * n for _ in range(n)]
        for j in range(n):
            rows[self.images[j] - 1][j] = 1
        return Matrix(field, rows)

    def block_sum(self, other: "Permutation") -> "Permutation":
        """``diag(self, other)``: other acts on the points after ``self.n``."""
        return Permutation(self.images + tuple(self.n + o for o in other.images))


def heap_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """All permutations of range(n) (0-based tuples) by Heap's algorithm."""
    a = list(range(n))
    yield tuple(a)
    c = [0] * n
    i = 1
    while i < n:
        if c[i] < i:
            if i % 2 == 0:
                a[0], a[i] = a[i], a[0]
            else:
                a[c[i]], a[i] = a[i], a[c[i]]
            yield tuple(a)
            c[i] += 1
            i = 1
        else:
            c[i] = 0
            i += 1


def lex_permutations(n: int) -> Iterator[tuple[int, ...]]:
    return permutations(range(n))


def transpositions(n: int) -> Iterator[tuple[int, ...]]:
    """All transpositions of range(n) as 0-based image tuples, lexicographic."""
    for i, j in combinations(range(n), 2):
        a = list(range(n))
        a[i], a[j] = j, i
        yield tuple(a)


def involution_count(n: int) -> int:
    # a(n) = a(n-1) + (n-1) a(n-2)
    a, b = 1, 1
    for m in range(2, n + 1):
        a, b = b, b + (m - 1) * a
    return b if n >= 1 else 1


def inverse_pair_classes(n: int) -> int:
    """Number of orbits of S_n under sigma <-> sigma^-1."""
    return (factorial(n) + involution_count(n)) // 2
