"""Exact arithmetic in the binary extension fields GF(2^m), m = 1..4.

Elements are plain ints in [0, 2^m). Addition is bitwise XOR; multiplication
is carry-less polynomial multiplication reduced by a fixed irreducible
polynomial per degree, so results are bit-exact and portable.
"""
from __future__ import annotations

from dataclasses import dataclass

# Lexicographically least irreducible polynomial per extension degree,
# written as an int with bit i for the x^i coefficient. Degree 1 needs no
# reduction (multiplication in GF(2) is AND).
REDUCTION_POLYS = {
    2: 0b111,      # x^2 + x + 1
    3: 0b1011,     # x^3 + x + 1
    4: 0b10011,    # x^4 + x + 1
}

SUPPORTED_DEGREES = (1, 2, 3, 4)


@dataclass(frozen=True)
class FieldSpec:
    """A binary extension field GF(2^m) with a fixed reduction polynomial."""

    m: int = 1

    def __post_init__(self) -> None:
        if self.m not in SUPPORTED_DEGREES:
            raise ValueError(f"unsupported extension degree m={self.m}; supported: {SUPPORTED_DEGREES}")

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def reduction_poly(self) -> int | None:
        return REDUCTION_POLYS.get(self.m)

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element of GF(2^{self.m})")
        return x

    def add(self, x: int, y: int) -> int:
        """Field addition (characteristic 2, so also subtraction)."""
        self.check(x)
        self.check(y)
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        """Field multiplication: carry-less product reduced mod the fixed polynomial."""
        self.check(x)
        self.check(y)
        if self.m == 1:
            return x & y
        poly = REDUCTION_POLYS[self.m]
        top = self.q
        res = 0
        a, b = x, y
        for _ in range(self.m):
            if b & 1:
                res ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= poly
        return res

    def inv(self, x: int) -> int:
        """Multiplicative inverse; zero has none."""
        self.check(x)
        if x == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        # x^(q-2) by square and multiply; q <= 16 so this is cheap.
        result = 1
        base = x
        e = self.q - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)


GF2 = FieldSpec(1)
