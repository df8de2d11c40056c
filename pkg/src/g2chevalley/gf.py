"""Exact arithmetic in GF(p^n).

Elements are polynomial residues modulo a fixed Conway polynomial, stored as
little-endian coefficient tuples.  The Conway table below is the standard
published one, so the same (p, n) always yields bit-identical elements, and
the residue class of ``x`` is a primitive element of the multiplicative group.

Matrix arithmetic lives in :mod:`g2chevalley.linalg`; it shares the
``reduction_tensor`` defined here.
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)
MAX_DEGREE = 8

# Conway polynomials, little-endian coefficient lists (constant term first).
CONWAY = {
    2: [[1, 1], [1, 1, 1], [1, 1, 0, 1], [1, 1, 0, 0, 1], [1, 0, 1, 0, 0, 1],
        [1, 1, 0, 1, 1, 0, 1], [1, 1, 0, 0, 0, 0, 0, 1], [1, 0, 1, 1, 1, 0, 0, 0, 1]],
    3: [[1, 1], [2, 2, 1], [1, 2, 0, 1], [2, 0, 0, 2, 1], [1, 2, 0, 0, 0, 1],
        [2, 2, 1, 0, 2, 0, 1], [1, 0, 2, 0, 0, 0, 0, 1], [2, 2, 2, 0, 1, 2, 0, 0, 1]],
    5: [[3, 1], [2, 4, 1], [3, 3, 0, 1], [2, 4, 4, 0, 1], [3, 4, 0, 0, 0, 1],
        [2, 0, 1, 4, 1, 0, 1], [3, 3, 0, 0, 0, 0, 0, 1], [2, 4, 3, 0, 1, 0, 0, 0, 1]],
    7: [[4, 1], [3, 6, 1], [4, 0, 6, 1], [3, 4, 5, 0, 1], [4, 1, 0, 0, 0, 1],
        [3, 6, 4, 5, 1, 0, 1], [4, 6, 0, 0, 0, 0, 0, 1], [3, 2, 6, 4, 0, 0, 0, 0, 1]],
    11: [[9, 1], [2, 7, 1], [9, 2, 0, 1], [2, 10, 8, 0, 1], [9, 0, 10, 0, 0, 1],
         [2, 7, 6, 4, 3, 0, 1], [9, 4, 0, 0, 0, 0, 0, 1], [2, 7, 1, 7, 7, 0, 0, 0, 1]],
    13: [[11, 1], [2, 12, 1], [11, 2, 0, 1], [2, 12, 3, 0, 1], [11, 4, 0, 0, 0, 1],
         [2, 11, 11, 10, 0, 0, 1], [11, 3, 0, 0, 0, 0, 0, 1], [2, 3, 2, 12, 8, 0, 0, 0, 1]],
}


class FieldError(ValueError):
    """Unsupported field, mixed-field arithmetic, or an impossible operation."""


def _factorize(m: int) -> list[int]:
    primes, d = [], 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    return primes


class Field:
    """The finite field GF(p^n) with its Conway modulus.

    Use :func:`field_make` rather than the constructor; fields are cached so
    that identity comparison is field equality.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = tuple(CONWAY[p][n - 1])
        self._zero = FieldElement(self, (0,) * n)
        self._one = FieldElement(self, (1,) + (0,) * (n - 1))
        # x^k mod modulus for k < 2n-1; used to fold products of residues
        red = np.zeros((2 * n - 1, n), dtype=np.int64)
        cur = [1] + [0] * (n - 1)
        for k in range(2 * n - 1):
            red[k] = cur
            cur = self._shift(cur)
        self._red_rows = red
        self.reduction_tensor = np.zeros((n, n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                self.reduction_tensor[a, b] = red[a + b]

    def _shift(self, c: list[int]) -> list[int]:
        # multiply a reduced residue by x
        top = c[-1]
        out = [0] + c[:-1]
        return [(out[i] - top * self.modulus[i]) % self.p for i in range(self.n)]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field_make, (self.p, self.n))

    # constructors ---------------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        """Coerce an int (prime-field residue), coefficient sequence or element."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.n - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            raise FieldError(f"coefficient vector longer than degree {self.n}")
        return FieldElement(self, tuple(coeffs) + (0,) * (self.n - len(coeffs)))

    @property
    def zero(self) -> "FieldElement":
        return self._zero

    @property
    def one(self) -> "FieldElement":
        return self._one

    @functools.cached_property
    def gen(self) -> "FieldElement":
        """Root of the Conway polynomial; a primitive element."""
        if self.n == 1:
            return self(-self.modulus[0])
        return self([0, 1])

    def from_code(self, code: int) -> "FieldElement":
        digits = []
        for _ in range(self.n):
            code, d = divmod(code, self.p)
            digits.append(d)
        return FieldElement(self, tuple(digits))

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield self.from_code(code)

    def nonzero(self) -> Iterator["FieldElement"]:
        for code in range(1, self.q):
            yield self.from_code(code)

    def random(self, rng: np.random.Generator, nonzero: bool = False) -> "FieldElement":
        lo = 1 if nonzero else 0
        return self.from_code(int(rng.integers(lo, self.q)))

    def contains_subfield(self, other: "Field") -> bool:
        return other.p == self.p and self.n % other.n == 0

    def embed(self, a: "FieldElement") -> "FieldElement":
        """Image of ``a`` under the Conway-compatible embedding GF(p^m) -> self."""
        sub = a.field
        if not self.contains_subfield(sub):
            raise FieldError(f"{sub} is not a subfield of {self}")
        g = self.gen ** ((self.q - 1) // (sub.q - 1))
        out, power = self.zero, self.one
        for c in a.coeffs:
            out = out + power * c
            power = power * g
        return out


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    # bookkeeping ------------------------------------------------------------

    @property
    def code(self) -> int:
        return sum(c * self.field.p ** i for i, c in enumerate(self.coeffs))

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        if self.field.n == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("g" if i == 1 else f"g^{i}")
                terms.append(mono if c == 1 and i else f"{c}{'*' + mono if i else ''}")
        return "+".join(terms) or "0"

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.n, self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f"mixed-field arithmetic: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        f = self.field
        n, p = f.n, f.p
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        out = [0] * n
        for k, c in enumerate(prod):
            if c:
                row = f._red_rows[k]
                for i in range(n):
                    out[i] += c * int(row[i])
        return FieldElement(f, tuple(c % p for c in out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inversion of zero in " + repr(self.field))
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def frobenius(self, r: int = 1) -> "FieldElement":
        """a -> a^(p^r)."""
        r %= self.field.n
        return self ** (self.field.p ** r)

    def multiplicative_order(self) -> int:
        if not self:
            raise ZeroDivisionError("zero has no multiplicative order")
        m = self.field.q - 1
        order = m
        for ell in _factorize(m):
            while order % ell == 0 and (self ** (order // ell)) == 1:
                order //= ell
        return order

    def is_cube(self) -> bool:
        if not self:
            return True
        m = self.field.q - 1
        return m % 3 != 0 or self ** (m // 3) == 1

    def cube_root(self) -> "FieldElement":
        """Some c with c**3 == self; FieldError if self is not a cube."""
        if not self:
            return self
        if not self.is_cube():
            raise FieldError(f"no cube root of {self!r} in {self.field}")
        m = self.field.q - 1
        s, odd = 0, m
        while odd % 3 == 0:
            s, odd = s + 1, odd // 3
        t = pow(3, -1, odd) if odd > 1 else 0
        b = self ** (3 * t - 1)          # lies in the Sylow 3-subgroup
        z = self.field.gen ** odd        # generates it
        target, k, cur = b.inv(), 0, self.field.one
        while cur != target:
            cur, k = cur * z, k + 1
        assert k % 3 == 0
        root = (self ** t) * z ** (k // 3)
        assert root ** 3 == self
        return root


def field_make(p: int, n: int = 1) -> Field:
    """GF(p^n) with its Conway polynomial; the same object for equal (p, n)."""
    return _field_cached(int(p), int(n))


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, n: int) -> Field:
    if p not in SUPPORTED_PRIMES or not (1 <= n <= MAX_DEGREE):
        raise FieldError(f"unsupported field GF({p}^{n})")
    return Field(p, n)


def element_from_json(field: Field, data: Sequence[int] | int) -> FieldElement:
    if isinstance(data, int):
        return field(data)
    return field(list(data))


def same_field(*elements: FieldElement) -> Field:
    fields = {id(e.field): e.field for e in elements}
    if len(fields) != 1:
        raise FieldError("mixed-field arithmetic")
    return next(iter(fields.values()))


def is_prime_power_order_gen(field: Field) -> bool:
    """True if ``field.gen`` has order q - 1 (Conway polynomials are primitive)."""
    return field.gen.multiplicative_order() == field.q - 1
