"""Univariate polynomials over a finite field, coefficients low-to-high."""

from __future__ import annotations

from typing import Iterable

from .fields import Field, FieldElement, MixedFields

__all__ = ["Polynomial"]


class Polynomial:
    """Immutable polynomial; the zero polynomial has an empty coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = (), *, raw: bool = False):
        # raw=True: coefficients are already internal field integers
        enc = list(coeffs) if raw else [field.encode(c) for c in coeffs]
        while enc and enc[-1] == 0:
            enc.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(enc))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, field: Field, degree: int, coeff=1) -> "Polynomial":
        return cls(field, [0] * degree + [field.encode(coeff)], raw=True)

    @classmethod
    def x_n_minus(cls, field: Field, n: int, lam=1) -> "Polynomial":
        """``x^n - lam``."""
        c = [0] * (n + 1)
        c[n] = 1
        c[0] = field.neg(field.encode(lam))
        if n == 0:
            c = [field.sub(1, field.encode(lam))]
        return cls(field, c, raw=True)

    @classmethod
    def parse(cls, field: Field, text: str) -> "Polynomial":
        """Parse ``"1,0,1"`` (low-to-high); extension coefficients as ``c0:c1``."""
        toks = [t for t in text.replace(" ", "").split(",") if t]
        return cls(field, [field.parse_element(t) for t in toks], raw=True)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coeffs]

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise MixedFields("polynomials over different fields")
            return other
        return Polynomial(self.field, [self.field.encode(other)], raw=True)

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(F, [F.add(self.coefficient(i), other.coefficient(i)) for i in range(n)], raw=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(F, [F.neg(c) for c in self.coeffs], raw=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Polynomial(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Polynomial(F, out, raw=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Polynomial(self.field, [1], raw=True)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(F), self
        quot = [0] * (dq + 1)
        inv_lead = F.inv(other.lead())
        db = other.degree
        for i in range(dq, -1, -1):
            c = F.mul(rem[i + db], inv_lead)
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return Polynomial(F, quot, raw=True), Polynomial(F, rem[:db], raw=True)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        F = self.field
        inv = F.inv(self.lead())
        return Polynomial(F, [F.mul(c, inv) for c in self.coeffs], raw=True)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd (zero only when both inputs are zero)."""
        a, b = self, self._check(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def reciprocal(self) -> "Polynomial":
        """``x^deg * g(1/x)``: coefficient reversal at the degree."""
        if self.is_zero():
            raise ValueError("reciprocal of the zero polynomial")
        return Polynomial(self.field, reversed(self.coeffs), raw=True)

    def __call__(self, x):
        F = self.field
        xv = F.encode(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, xv), c)
        return FieldElement(F, acc)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self.field.literal()}, {list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = F.format_element(c)
            if F.m > 1:
                cs = f"[{cs}]"
            if i == 0:
                terms.append(cs)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms)

