"""Length-2 Witt vectors over F_p or over truncated Laurent series."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Any


@lru_cache(maxsize=None)
def witt_F_coeffs(p: int) -> tuple:
    """c_i with F(x, z) = sum_{0<i<p} c_i x^i z^(p-i), reduced mod p."""
    return tuple((-(comb(p, i) // p)) % p for i in range(1, p))


def F_integer_check(p: int) -> bool:
    """(x^p + z^p - (x + z)^p) / p has integer coefficients: p divides C(p, i) for 0 < i < p."""
    return all(comb(p, i) % p == 0 for i in range(1, p))


def witt_F(x: Any, z: Any, p: int) -> Any:
    total = 0
    for i, c in enumerate(witt_F_coeffs(p), start=1):
        if c:
            total = total + (x ** i) * (z ** (p - i)) * c
    return total % p if isinstance(total, int) else total


@dataclass(frozen=True)
class WittVector2:
    """(x0, x1) with (x, y) + (z, w) = (x + z, y + w + F(x, z)).

    Components are ints (read mod p) or TruncatedLaurent series over F_p.
    """

    x0: Any
    x1: Any
    p: int

    def __post_init__(self):
        for name in ("x0", "x1"):
            v = getattr(self, name)
            if isinstance(v, int):
                object.__setattr__(self, name, v % self.p)

    @classmethod
    def zero(cls, p: int) -> "WittVector2":
        return cls(0, 0, p)

    def __add__(self, other: "WittVector2") -> "WittVector2":
        if self.p != other.p:
            raise ValueError("Witt vectors over different primes")
        p = self.p
        return WittVector2(self.x0 + other.x0, self.x1 + other.x1 + witt_F(self.x0, other.x0, p), p)

    def __neg__(self) -> "WittVector2":
        x = -self.x0
        return WittVector2(x, -self.x1 - witt_F(self.x0, x, self.p), self.p)

    def __sub__(self, other: "WittVector2") -> "WittVector2":
        return self + (-other)

    def mul_by_int(self, n: int) -> "WittVector2":
        if n < 0:
            return (-self).mul_by_int(-n)
        result, base = WittVector2.zero(self.p), self
        while n:
            if n & 1:
                result = result + base
            n >>= 1
            if n:
                base = base + base
        return result

    def equals(self, other: "WittVector2") -> bool:
        def eq(a, b):
            if isinstance(a, int) and isinstance(b, int):
                return (a - b) % self.p == 0
            if isinstance(a, int):
                a, b = b, a
            return (a - b).is_zero

        return eq(self.x0, other.x0) and eq(self.x1, other.x1)


def witt_add(a: WittVector2, b: WittVector2, p: int | None = None) -> WittVector2:
    if p is not None and (a.p != p or b.p != p):
        raise ValueError("prime mismatch")
    return a + b
