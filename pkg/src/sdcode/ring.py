"""Arithmetic in the quotient ring F2[x]/(x^m - 1) for odd m.

Elements are immutable, bit-packed coefficient vectors: bit j of the
integer mask is the coefficient of x^j. Several ring sizes coexist in
one process (the built-in codes use m = 15, 39 and 133), so every
binary operation checks that both operands share a modulus.
"""

from __future__ import annotations

from typing import Iterable


class RingElement:
    """A polynomial in F2[x]/(x^m - 1), stored as an m-bit mask."""

    __slots__ = ("m", "bits")

    def __init__(self, m: int, bits: int = 0):
        if m <= 0 or m % 2 == 0:
            raise ValueError(f"modulus degree must be positive and odd, got {m}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "bits", bits & ((1 << m) - 1))

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "RingElement":
        return cls(m, 0)

    @classmethod
    def one(cls, m: int) -> "RingElement":
        return cls(m, 1)

    @classmethod
    def monomial(cls, m: int, k: int) -> "RingElement":
        """x^k, with k taken mod m."""
        return cls(m, 1 << (k % m))

    @classmethod
    def all_ones(cls, m: int) -> "RingElement":
        """1 + x + ... + x^(m-1)."""
        return cls(m, (1 << m) - 1)

    @classmethod
    def from_exponents(cls, m: int, exponents: Iterable[int]) -> "RingElement":
        bits = 0
        for e in exponents:
            bits ^= 1 << (e % m)
        return cls(m, bits)

    @classmethod
    def from_string(cls, text: str) -> "RingElement":
        """Parse a '0'/'1' string; character j is the coefficient of x^j."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError("element text must be a nonempty string of 0s and 1s")
        bits = 0
        for j, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << j
        return cls(len(text), bits)

    # -- basic queries -------------------------------------------------------

    def to_string(self) -> str:
        """'0'/'1' string, index 0 = coefficient of x^0."""
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.m))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> frozenset[int]:
        """The set of exponents with nonzero coefficient."""
        out = []
        b = self.bits
        while b:
            lsb = b & -b
            out.append(lsb.bit_length() - 1)
            b ^= lsb
        return frozenset(out)

    def coeff(self, j: int) -> int:
        return (self.bits >> (j % self.m)) & 1

    def coeff_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.m)]

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and self.m == other.m
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.m, self.bits))

    def __repr__(self) -> str:
        terms = []
        for j in sorted(self.support()):
            terms.append("1" if j == 0 else ("x" if j == 1 else f"x^{j}"))
        poly = " + ".join(terms) if terms else "0"
        return f"RingElement(m={self.m}: {poly})"

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if self.m != other.m:
            raise ValueError(f"modulus mismatch: {self.m} != {other.m}")

    # -- ring operations -----------------------------------------------------

    def add(self, other: "RingElement") -> "RingElement":
        """Coefficient-wise XOR (characteristic 2)."""
        self._check(other)
        return RingElement(self.m, self.bits ^ other.bits)

    __add__ = add
    __xor__ = add

    def shift(self, k: int) -> "RingElement":
        """x^k * self mod (x^m - 1); k may be negative."""
        m = self.m
        k %= m
        if k == 0:
            return self
        b = self.bits
        return RingElement(m, ((b << k) | (b >> (m - k))) & ((1 << m) - 1))

    def mul(self, other: "RingElement") -> "RingElement":
        """Cyclic convolution over GF(2)."""
        self._check(other)
        m = self.m
        a, b = self.bits, other.bits
        if a.bit_count() > b.bit_count():
            a, b = b, a
        mask = (1 << m) - 1
        acc = 0
        while a:
            lsb = a & -a
            k = lsb.bit_length() - 1
            acc ^= ((b << k) | (b >> (m - k))) & mask
            a ^= lsb
        return RingElement(m, acc)

    __mul__ = mul

    def reciprocal(self) -> "RingElement":
        """a(x^-1) reduced mod x^m - 1: exponent negation mod m."""
        m = self.m
        bits = self.bits & 1
        b = self.bits >> 1
        j = 1
        while b:
            if b & 1:
                bits |= 1 << (m - j)
            b >>= 1
            j += 1
        return RingElement(m, bits)

    def pow(self, k: int) -> "RingElement":
        """Ring power by square-and-multiply, k >= 0."""
        if k < 0:
            raise ValueError("negative powers are not defined in this ring")
        result = RingElement.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base)
            k >>= 1
        return result


# Module-level aliases matching the operation names used elsewhere.


def add(a: RingElement, b: RingElement) -> RingElement:
    return a.add(b)


def mul_mod(a: RingElement, b: RingElement) -> RingElement:
    return a.mul(b)


def reciprocal(a: RingElement) -> RingElement:
    return a.reciprocal()


def shift(a: RingElement, k: int) -> RingElement:
    return a.shift(k)


def support(a: RingElement) -> frozenset[int]:
    return a.support()
