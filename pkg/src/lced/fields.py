"""Exact arithmetic in GF(p) and GF(p^m).

Elements are stored internally as integers in ``[0, q)``: the base-p digits
of the integer are the polynomial-basis coordinates, lowest degree first.
Matrices and search loops work on these raw integers through the ``Field``
methods; ``FieldElement`` is the user-facing wrapper with operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

__all__ = [
    "Field",
    "FieldElement",
    "FieldError",
    "NonPrime",
    "ReducibleModulus",
    "MissingModulus",
    "MixedFields",
    "make_field",
    "parse_field",
]

# Precompute full add/mul tables for extension fields up to this order.
_TABLE_LIMIT = 256


class FieldError(ValueError):
    pass


class NonPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class MissingModulus(FieldError):
    pass


class MixedFields(FieldError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    # remainder of a modulo a monic polynomial, coefficient lists low-to-high
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    r = [c % p for c in a[:dm]]
    while r and r[-1] == 0:
        r.pop()
    return r


def _is_irreducible(mod: Sequence[int], p: int) -> bool:
    m = len(mod) - 1
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(list(mod), list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class Field:
    """A finite field GF(p^m) given by its characteristic, degree and modulus."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrime(f"{self.p} is not prime")
        if self.m < 1:
            raise FieldError("extension degree must be >= 1")
        if self.m == 1:
            if self.modulus is not None and len(self.modulus) not in (0, 2):
                raise FieldError("a prime field takes no modulus of degree != 1")
            object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            raise MissingModulus(f"GF({self.p}^{self.m}) needs an explicit modulus")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.m}")
        if not _is_irreducible(mod, self.p):
            raise ReducibleModulus(f"modulus {list(mod)} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    # ------------------------------------------------------------------ basics

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    def __str__(self) -> str:
        return self.literal()

    def literal(self) -> str:
        if self.m == 1:
            return str(self.p)
        return f"{self.p}^{self.m}:" + ",".join(str(c) for c in self.modulus)

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.encode(value))

    def encode(self, value) -> int:
        """Map an int, coefficient sequence or element to its internal integer."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise MixedFields(f"element of {value.field} used in {self}")
            return value.value
        if isinstance(value, int):
            return self.from_int(value)
        coeffs = [int(c) for c in value]
        if len(coeffs) > self.m:
            # reduce longer polynomials modulo the field polynomial
            if self.m == 1:
                return sum(coeffs) % self.p
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c % self.p
        return v

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> F (lands in the prime subfield)."""
        return n % self.p

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.q):
            yield FieldElement(self, v)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    # ------------------------------------------------------- raw integer ops

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._tables:
            return self._tables[0][a][b]
        return self._add_slow(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.encode([-c for c in self.coeffs(a)])

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if self._tables:
            return self._tables[1][a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.m == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def quadratic_character(self, a: int) -> str:
        """``"zero"``, ``"square"`` or ``"nonsquare"``."""
        if a == 0:
            return "zero"
        return "square" if self.is_square(a) else "nonsquare"

    def _add_slow(self, a: int, b: int) -> int:
        return self.encode([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def _mul_slow(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.encode(_poly_mod(prod, self.modulus, self.p))

    @property
    def _tables(self):
        if "tables" not in self._cache:
            if self.m > 1 and self.q <= _TABLE_LIMIT:
                q = self.q
                add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
                mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
                self._cache["tables"] = (add, mul)
            else:
                self._cache["tables"] = None
        return self._cache["tables"]

    # --------------------------------------------------------------- literals

    def parse_element(self, token: str) -> int:
        """Parse ``"2"``, ``"-1"`` or a coefficient tuple ``"c0:c1:..."``."""
        if ":" in token:
            return self.encode([int(t) for t in token.split(":")])
        return self.from_int(int(token))

    def format_element(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        return ":".join(str(c) for c in self.coeffs(a))


def make_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> Field:
    return Field(p, m, tuple(modulus) if modulus is not None else None)


def parse_field(text: str) -> Field:
    """Parse a field literal: ``"3"`` or ``"2^2:1,1,1"`` (modulus low-to-high)."""
    text = text.strip()
    if "^" not in text:
        return make_field(int(text))
    head, _, mod = text.partition(":")
    p, m = (int(t) for t in head.split("^"))
    if m == 1 and not mod:
        return make_field(p)
    if not mod:
        raise MissingModulus(f"field literal {text!r} lacks a modulus")
    return make_field(p, m, [int(c) for c in mod.split(",")])


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    @cached_property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def quadratic_character(self) -> str:
        return self.field.quadratic_character(self.value)

    def __repr__(self):
        return f"FieldElement({self.field.literal()}, {self.field.format_element(self.value)})"

    def __str__(self):
        return self.field.format_element(self.value)
