"""Univariate polynomials over a finite field."""

from __future__ import annotations

from .gf import Field, FieldError

NEG_INF = float("-inf")


class Poly:
    """Polynomial with ascending coefficients; the zero polynomial has none.

    Trailing zeros are stripped on construction, and the degree of the zero
    polynomial is ``-inf``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, field: Field, e: int, c: int = 1) -> "Poly":
        return cls(field, [0] * e + [c])

    @classmethod
    def from_terms(cls, field: Field, terms: dict[int, int]) -> "Poly":
        if not terms:
            return cls(field)
        c = [0] * (max(terms) + 1)
        for e, v in terms.items():
            c[e] = field.add(c[e], v)
        return cls(field, c)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def support(self) -> list[int]:
        """Exponents with nonzero coefficient, descending."""
        return [e for e in range(len(self.coeffs) - 1, -1, -1) if self.coeffs[e]]

    def coeff(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def _same(self, other: "Poly"):
        if other.field != self.field:
            raise FieldError("polynomials over different fields")

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(F, [F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [self.field.neg(x) for x in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: int) -> "Poly":
        return Poly(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        d = len(other.coeffs) - 1
        lead_inv = F.inv(other.coeffs[-1])
        quot = [0] * max(len(r) - d, 0)
        for shift in range(len(r) - 1 - d, -1, -1):
            f = F.mul(r[shift + d], lead_inv)
            if f:
                quot[shift] = f
                for j, y in enumerate(other.coeffs):
                    r[shift + j] = F.sub(r[shift + j], F.mul(f, y))
        return Poly(F, quot), Poly(F, r[:d] if d else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def mod_binomial(self, n: int, c: int) -> "Poly":
        """Remainder modulo X^n - c, folding X^(n+j) onto c * X^j."""
        F = self.field
        out = list(self.coeffs[:n]) + [0] * max(0, n - len(self.coeffs))
        for e in range(len(self.coeffs) - 1, n - 1, -1):
            x = self.coeffs[e]
            if x:
                # X^e = c^(e // n) X^(e % n) modulo X^n - c
                out[e % n] = F.add(out[e % n], F.mul(x, F.pow(c, e // n)))
        return Poly(F, out)

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def evaluate(self, points) -> list[int]:
        return [self(x) for x in points]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in self.support():
            c = self.coeffs[e]
            terms.append(f"{c}" if e == 0 else f"{'' if c == 1 else c}X{'' if e == 1 else '^' + str(e)}")
        return " + ".join(terms)


def product(field: Field, polys) -> Poly:
    acc = Poly(field, [1])
    for f in polys:
        acc = acc * f
    return acc
