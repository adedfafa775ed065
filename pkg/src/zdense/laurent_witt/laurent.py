"""Truncated Laurent series over F_p with explicit precision horizons."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import HorizonUnderflow


@dataclass(frozen=True)
class FpPoly:
    """Dense polynomial over F_p, lowest degree first, no trailing zeros."""

    p: int
    coeffs: tuple = ()

    def __post_init__(self):
        c = [int(x) % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FpPoly(self.p, tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return FpPoly(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return FpPoly(self.p, tuple(out))


@dataclass(frozen=True)
class TruncatedLaurent:
    """sum_{k >= v_min} c_k t^k known modulo t^N.

    ``coeffs[i]`` is the coefficient of t^(v_min + i); stored exponents stay below N.
    The zero series has empty ``coeffs`` (and v_min = N).
    """

    p: int
    v_min: int
    coeffs: tuple
    N: int

    def __post_init__(self):
        c = [int(x) % self.p for x in self.coeffs][: max(0, self.N - self.v_min)]
        v = self.v_min
        while c and c[0] == 0:
            c.pop(0)
            v += 1
        while c and c[-1] == 0:
            c.pop()
        if not c:
            v = self.N
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "v_min", v)

    # construction

    @classmethod
    def from_dict(cls, p: int, terms: dict, N: int) -> "TruncatedLaurent":
        terms = {k: c % p for k, c in terms.items() if c % p and k < N}
        if not terms:
            return cls(p, N, (), N)
        lo = min(terms)
        return cls(p, lo, tuple(terms.get(k, 0) for k in range(lo, max(terms) + 1)), N)

    @classmethod
    def zero(cls, p: int, N: int) -> "TruncatedLaurent":
        return cls(p, N, (), N)

    @classmethod
    def monomial(cls, p: int, k: int, N: int, c: int = 1) -> "TruncatedLaurent":
        return cls.from_dict(p, {k: c}, N)

    # queries

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        if self.is_zero:
            raise HorizonUnderflow(f"series is zero modulo t^{self.N}; valuation unknown")
        return self.v_min

    def coeff(self, k: int) -> int:
        if k >= self.N:
            raise HorizonUnderflow(f"coefficient of t^{k} is beyond the horizon t^{self.N}")
        i = k - self.v_min
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self) -> dict:
        return {self.v_min + i: c for i, c in enumerate(self.coeffs) if c}

    def support(self) -> list[int]:
        return sorted(self.terms())

    # arithmetic

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("series over different primes")

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedLaurent.monomial(self.p, 0, self.N, other)
        self._check(other)
        N = min(self.N, other.N)
        terms = self.terms()
        for k, c in other.terms().items():
            terms[k] = terms.get(k, 0) + c
        return TruncatedLaurent.from_dict(self.p, {k: c for k, c in terms.items() if k < N}, N)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedLaurent(self.p, self.v_min, tuple(-c for c in self.coeffs), self.N)

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedLaurent(self.p, self.v_min, tuple(other * c for c in self.coeffs), self.N)
        self._check(other)
        # a = A + O(t^Na), b = B + O(t^Nb): ab = AB + O(t^min(Na + v(b), Nb + v(a)))
        N = min(self.N + other.v_min, other.N + self.v_min)
        out: dict = {}
        for i, x in self.terms().items():
            for j, y in other.terms().items():
                if i + j < N:
                    out[i + j] = out.get(i + j, 0) + x * y
        return TruncatedLaurent.from_dict(self.p, out, N)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            rel = self.N - self.valuation()
            return TruncatedLaurent.monomial(self.p, 0, rel)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "TruncatedLaurent":
        """Multiply by t^k (exact)."""
        return TruncatedLaurent(self.p, self.v_min + k, self.coeffs, self.N + k)

    def frobenius(self) -> "TruncatedLaurent":
        """x -> x^p: exponent k goes to kp (coefficients are fixed by c -> c^p on F_p)."""
        terms = {k * self.p: pow(c, self.p, self.p) for k, c in self.terms().items()}
        return TruncatedLaurent.from_dict(self.p, terms, self.N * self.p)

    def inverse(self) -> "TruncatedLaurent":
        v = self.valuation()
        rel = self.N - v  # relative precision
        u0 = self.coeffs[0]
        inv0 = pow(u0, -1, self.p)
        # unit part u = sum coeffs[i] t^i; invert term by term modulo t^rel
        u = list(self.coeffs) + [0] * max(0, rel - len(self.coeffs))
        w = [0] * rel
        for n in range(rel):
            s = (1 if n == 0 else 0) - sum(u[i] * w[n - i] for i in range(1, n + 1))
            w[n] = (s * inv0) % self.p
        return TruncatedLaurent(self.p, -v, tuple(w), rel - v)

    def __truediv__(self, other):
        return self * other.inverse()

    def equals(self, other) -> bool:
        """Equality up to the common horizon."""
        N = min(self.N, other.N)
        return {k: c for k, c in self.terms().items() if k < N} == {k: c for k, c in other.terms().items() if k < N}

    def __str__(self):
        if self.is_zero:
            return f"O(t^{self.N})"
        parts = []
        for k, c in sorted(self.terms().items()):
            mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            parts.append(mono if c == 1 else (f"{c}" if k == 0 else f"{c}*{mono}"))
        return " + ".join(parts) + f" + O(t^{self.N})"
