"""Arithmetic in GF(p^m) and discovery of fields suited to coset-tree codes.

Elements are handled internally as plain integers: the element with
coefficient vector (c_0, ..., c_{m-1}) over GF(p) is the integer
sum(c_j * p**j).  Serialized values are relative to the field modulus,
which is chosen deterministically (the lexicographically smallest monic
irreducible polynomial, comparing c_0 first), so two fields with the same
(p, m) built by this module always agree.

Multiplication uses log/antilog tables built from the primitive element;
addition in extension fields uses Zech logarithms.  Both have numpy
counterparts (``vadd``, ``vmul``, ...) for the brute-force oracles.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import FieldError

DEFAULT_MAX_FIELD = 1 << 20
MAX_FIELD_ENV = "HLC_MAX_FIELD"


def max_field_size() -> int:
    """Field-size cap, overridable through the ``HLC_MAX_FIELD`` variable."""
    raw = os.environ.get(MAX_FIELD_ENV)
    if raw is None:
        return DEFAULT_MAX_FIELD
    try:
        return int(raw, 0)
    except ValueError:
        raise FieldError(f"{MAX_FIELD_ENV} must be an integer, got {raw!r}") from None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q = p**m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = prime_factors(q)
    if len(p) != 1:
        return None
    p = p[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


# -- polynomials over the prime field, ascending coefficient lists ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial f over GF(p)."""
    a = _trim(list(a))
    df = len(f) - 1
    while len(a) - 1 >= df:
        lead = a[-1]
        shift = len(a) - 1 - df
        for j, c in enumerate(f):
            a[shift + j] = (a[shift + j] - lead * c) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _pmod(prod, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _is_irreducible(f: list[int], p: int) -> bool:
    """Trial division of the monic f by every monic polynomial of degree <= deg(f)/2."""
    m = len(f) - 1
    if m == 1:
        return True
    if f[0] == 0:
        return False
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _pmod(f, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, coefficient tuples compared from c_0 up."""
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


def _to_coeffs(v: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        v, c = divmod(v, p)
        out.append(c)
    return out


def _from_coeffs(c, p: int) -> int:
    v = 0
    for x in reversed(list(c)):
        v = v * p + x
    return v


class Field:
    """The finite field GF(p^m) with a fixed modulus and primitive element.

    Instances are immutable and cached per (p, m); use :func:`make_field`.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...], alpha: int):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(modulus)
        self.alpha = alpha
        self._build_tables()

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        f = list(self.modulus)
        a = _to_coeffs(self.alpha, p, m)
        exp = [0] * (q - 1)
        log = [-1] * q
        cur = [1]
        for i in range(q - 1):
            v = _from_coeffs(cur, p)
            if log[v] != -1:
                raise FieldError(f"alpha={self.alpha} is not primitive in GF({q})")
            exp[i] = v
            log[v] = i
            cur = _pmulmod(cur, a, f, p)
        neg = [_from_coeffs([(-c) % p for c in _to_coeffs(v, p, m)], p) for v in range(q)]
        zech = [0] * (q - 1)
        for i in range(q - 1):
            c = _to_coeffs(exp[i], p, m)
            c[0] = (c[0] + 1) % p
            s = _from_coeffs(c, p)
            zech[i] = log[s] if s else -1
        self._exp, self._log, self._neg, self._zech = exp, log, neg, zech
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)
        self._neg_np = np.array(neg, dtype=np.int64)
        self._zech_np = np.array(zech, dtype=np.int64)

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    # -- scalar arithmetic on serialized integers --------------------------

    def check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of {self}")
        return int(a)

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        i = self._log[a]
        z = self._zech[(self._log[b] - i) % (self.q - 1)]
        return 0 if z < 0 else self._exp[(i + z) % (self.q - 1)]

    def neg(self, a: int) -> int:
        return (-a) % self.p if self.m == 1 else self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError(f"0 has no inverse in {self}")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("log of 0 is undefined")
        return self._log[a]

    def exp(self, i: int) -> int:
        """alpha ** i."""
        return self._exp[i % (self.q - 1)]

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        n = self.q - 1
        order = n
        for ell in prime_factors(n):
            while order % ell == 0 and self.pow(a, order // ell) == 1:
                order //= ell
        return order

    def total(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def dot(self, xs, ys) -> int:
        acc = 0
        for x, y in zip(xs, ys):
            if x and y:
                acc = self.add(acc, self.mul(x, y))
        return acc

    def coeffs(self, a: int) -> list[int]:
        return _to_coeffs(a, self.p, self.m)

    def from_coeffs(self, c) -> int:
        c = list(c)
        if len(c) != self.m or any(not 0 <= x < self.p for x in c):
            raise FieldError(f"bad coefficient vector {c} for {self}")
        return _from_coeffs(c, self.p)

    def __call__(self, a: int) -> "FieldElement":
        return FieldElement(self, self.check(a))

    def elements(self):
        return range(self.q)

    # -- numpy counterparts --------------------------------------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        n = self.q - 1
        la = self._log_np[a]
        z = self._zech_np[(self._log_np[b] - la) % n]
        s = np.where(z < 0, 0, self._exp_np[(la + z) % n])
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (-a) % self.p if self.m == 1 else self._neg_np[a]

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        n = self.q - 1
        s = self._exp_np[(self._log_np[a] + self._log_np[b]) % n]
        return np.where((a == 0) | (b == 0), 0, s)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "alpha": self.alpha}


@dataclass(frozen=True)
class FieldElement:
    """An element of ``field`` with serialized integer ``value``."""

    field: Field
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed-field operands: {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.check(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, v)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def order(self) -> int:
        return self.field.order(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field}({self.value})"


def arithmetic(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Apply ``op`` (add, sub, mul, div, pow, inv) to field elements.

    For ``pow`` the second operand is a plain integer exponent; ``inv`` ignores it.
    """
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    if isinstance(b, FieldElement) and b.field != a.field:
        raise FieldError(f"mixed-field operands: {a.field} and {b.field}")
    return ops[op](b)


def _find_primitive(p: int, m: int, modulus: tuple[int, ...]) -> int:
    q = p ** m
    if q == 2:
        return 1
    factors = prime_factors(q - 1)
    f = list(modulus)
    for g in range(2, q):
        c = _to_coeffs(g, p, m)
        if all(_ppowmod(c, (q - 1) // ell, f, p) != [1] for ell in factors):
            return g
    raise FieldError(f"no primitive element found in GF({q})")  # pragma: no cover


@lru_cache(maxsize=None)
def _make_field(p: int, m: int) -> Field:
    modulus = smallest_irreducible(p, m)
    return Field(p, m, modulus, _find_primitive(p, m, modulus))


def make_field(p: int, m: int = 1, max_size: int | None = None) -> Field:
    """Build GF(p^m) with its deterministic modulus and primitive element.

    The modulus is the smallest monic irreducible polynomial (coefficient
    tuples compared from the constant term up) and ``alpha`` is the smallest
    primitive element by serialized value.

    Raises:
        FieldError: if p is not prime, m < 1, or p**m exceeds the size cap.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p={p!r} is not prime")
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m!r}")
    cap = max_field_size() if max_size is None else max_size
    if p ** m > cap:
        raise FieldError(f"field size {p}^{m} = {p ** m} exceeds the cap {cap}")
    return _make_field(p, m)


def field_from_json(desc: dict, max_size: int | None = None) -> Field:
    """Rebuild a field from its descriptor, rejecting non-canonical descriptors."""
    field = make_field(int(desc["p"]), int(desc["m"]), max_size)
    if "modulus" in desc and tuple(desc["modulus"]) != field.modulus:
        raise FieldError(f"modulus {desc['modulus']} differs from canonical {list(field.modulus)}")
    if "alpha" in desc and desc["alpha"] != field.alpha:
        raise FieldError(f"alpha {desc['alpha']} differs from canonical {field.alpha}")
    return field


def check_divisibility_chain(n_levels, n: int) -> None:
    n_levels = list(n_levels)
    if not n_levels:
        raise FieldError("at least one level length is required")
    if any(x < 1 for x in n_levels) or n < 1:
        raise FieldError("lengths must be positive")
    chain = [n] + n_levels
    for big, small in zip(chain, chain[1:]):
        if big % small:
            raise FieldError(f"divisibility chain broken: {small} does not divide {big}")


def find_field(n_levels, n: int, max_size: int | None = None) -> tuple[int, int]:
    """Smallest prime power q = p^m with n_1 | q - 1 and n < q.

    ``n_levels`` is the list n_1 >= n_2 >= ... >= n_h of nested group lengths.
    """
    check_divisibility_chain(n_levels, n)
    n1 = list(n_levels)[0]
    cap = max_field_size() if max_size is None else max_size
    for q in range(n + 1, cap + 1):
        if (q - 1) % n1:
            continue
        pm = prime_power(q)
        if pm is not None:
            return pm
    raise FieldError(f"no field of size <= {cap} with {n1} | q-1 and q > {n}")


def element_of_order(field: Field, order: int) -> FieldElement:
    """alpha ** ((q-1)/order), an element of exactly the given multiplicative order."""
    if order < 1 or (field.q - 1) % order:
        raise FieldError(f"{order} does not divide the group order {field.q - 1}")
    return FieldElement(field, field.exp((field.q - 1) // order))
