"""Exact arithmetic over prime fields GF(p) and binary extension fields GF(2^e).

Elements are plain ints in ``[0, q)``.  For extension fields the int packs
the GF(2) coefficient vector of the residue polynomial, bit ``i`` holding the
coefficient of ``x^i``; the printable/hex form of an element or modulus is
therefore just the packed integer.  A :class:`Field` carries the modulus and
performs all reductions; :class:`FieldElement` wraps an int together with its
field for operator syntax and cross-field mismatch detection.
"""

from __future__ import annotations

import re

MAX_PRIME = 2**31
MAX_EXTENSION_DEGREE = 16

# Default irreducible polynomial per extension degree, from the classic table
# of primitive binary polynomials (bit i = coefficient of x^i).
DEFAULT_GF2_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10001101111,
    11: 0b100000000101,
    12: 0b1000011101011,
    13: 0b10000000011011,
    14: 0b100000010101001,
    15: 0b1000000000110101,
    16: 0b10000000000101101,
}


class FieldMismatchError(ValueError):
    """Two operands belong to different fields."""


def is_prime(p: int) -> bool:
    """Trial-division primality test, adequate for p < 2^31."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _poly_deg(a: int) -> int:
    return a.bit_length() - 1


def _poly_mod(a: int, m: int) -> int:
    dm = _poly_deg(m)
    while a and _poly_deg(a) >= dm:
        a ^= m << (_poly_deg(a) - dm)
    return a


def poly2_is_irreducible(m: int) -> bool:
    """Exhaustive divisor check for a GF(2)[x] polynomial in packed-int form."""
    e = _poly_deg(m)
    if e < 1:
        return False
    for d in range(1, e // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _poly_mod(m, cand) == 0:
                return False
    return True


class Field:
    """GF(p) for prime p, or GF(2^e) with an irreducible modulus polynomial.

    Immutable after construction; safe to share between workers.
    """

    __slots__ = ("p", "e", "q", "modulus_mask")

    def __init__(self, characteristic: int, extension_degree: int = 1,
                 modulus: int | list[int] | None = None):
        p, e = characteristic, extension_degree
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if p > MAX_PRIME:
            raise ValueError(f"characteristic {p} exceeds supported bound 2^31")
        if e < 1:
            raise ValueError("extension degree must be positive")
        if e > 1 and p != 2:
            raise ValueError("extension fields are supported for characteristic 2 only")
        if e > MAX_EXTENSION_DEGREE:
            raise ValueError(f"extension degree {e} exceeds supported bound 16")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            if modulus not in (None, [], 0):
                raise ValueError("prime fields take no modulus")
            self.modulus_mask = 0
        else:
            if modulus is None:
                mask = DEFAULT_GF2_MODULI[e]
            elif isinstance(modulus, int):
                mask = modulus
            else:
                # coefficient list, ascending degree, length e+1, leading 1
                mask = 0
                for i, c in enumerate(modulus):
                    if c not in (0, 1):
                        raise ValueError("modulus coefficients must be 0/1")
                    mask |= c << i
            if _poly_deg(mask) != e:
                raise ValueError(f"modulus degree {_poly_deg(mask)} does not match extension degree {e}")
            if not poly2_is_irreducible(mask):
                raise ValueError(f"modulus {hex(mask)} is reducible over GF(2)")
            self.modulus_mask = mask

    # -- construction helpers ------------------------------------------------

    @classmethod
    def of_order(cls, q: int) -> "Field":
        """Field of order q, detecting prime powers 2^e automatically."""
        if q >= 4 and q & (q - 1) == 0:
            return cls(2, q.bit_length() - 1)
        return cls(q)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse the text form: gf(q), gf(2^e), or gf(2^e;modulus=<hex>)."""
        m = re.fullmatch(
            r"\s*gf\(\s*(\d+)(?:\s*\^\s*(\d+))?\s*(?:;\s*modulus\s*=\s*(0x[0-9a-fA-F]+|\d+)\s*)?\)\s*",
            text,
        )
        if not m:
            raise ValueError(f"cannot parse field spec {text!r}")
        base = int(m.group(1))
        if m.group(2) is None:
            if m.group(3) is not None:
                raise ValueError("modulus is only meaningful for extension fields")
            return cls.of_order(base)
        e = int(m.group(2))
        modulus = int(m.group(3), 0) if m.group(3) else None
        if e == 1 and modulus is None:
            return cls(base)
        return cls(base, e, modulus)

    def spec_string(self) -> str:
        if self.e == 1:
            return f"gf({self.p})"
        return f"gf(2^{self.e};modulus={hex(self.modulus_mask)})"

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p
                and self.e == other.e and self.modulus_mask == other.modulus_mask)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus_mask))

    def __repr__(self):
        return f"Field({self.spec_string()!r})"

    # -- element arithmetic on ints -------------------------------------------

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element of {self.spec_string()}")
        return a

    def elements(self):
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return a ^ b

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        return a ^ b

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return a

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        # carry-less multiply then reduce by the modulus
        acc = 0
        x, y = a, b
        while y:
            if y & 1:
                acc ^= x
            x <<= 1
            y >>= 1
        return _poly_mod(acc, self.modulus_mask)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, exp: int) -> int:
        if exp < 0:
            return self.pow(self.inv(a), -exp)
        result, base = 1, a
        while exp:
            if exp & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exp >>= 1
        return result

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, self.check(value))


class FieldElement:
    """An int bound to its field, with checked operator arithmetic."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = field.check(value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"mixed fields {self.field.spec_string()} and {other.field.spec_string()}")
            return other.value
        if isinstance(other, int):
            return self.field.check(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, v))

    def __sub__(self, other):
        v = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __mul__(self, other):
        v = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, v))

    def __truediv__(self, other):
        v = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, v))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.field.spec_string()}, {self.value})"
