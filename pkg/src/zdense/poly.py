"""Exact arithmetic on integer polynomials (coefficient lists, lowest degree first)."""
from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import NotSquarefree

X = sympy.Symbol("x")


def parse_poly(text: str) -> list[int]:
    """Parse e.g. ``"x^3-x-1"`` into ``[-1, -1, 0, 1]``."""
    expr = sympy.sympify(text.replace("^", "**"), locals={"x": X})
    P = sympy.Poly(expr, X)
    coeffs = [int(c) for c in reversed(P.all_coeffs())]
    if any(sympy.Integer(c) != c0 for c, c0 in zip(coeffs, reversed(P.all_coeffs()))):
        raise ValueError(f"{text!r} does not have integer coefficients")
    return coeffs


def poly_str(coeffs) -> str:
    return str(sympy.Poly(list(reversed(coeffs)), X).as_expr()).replace("**", "^")


def degree(coeffs) -> int:
    c = trim(coeffs)
    return len(c) - 1 if c else -1


def trim(coeffs) -> list:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def evaluate(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def derivative(coeffs) -> list:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _divmod(a, b):
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a = trim(a)
    return q, a


def poly_gcd(a, b) -> list:
    a, b = trim([Fraction(x) for x in a]), trim([Fraction(x) for x in b])
    while b:
        a, b = b, _divmod(a, b)[1]
    if a:
        a = [x / a[-1] for x in a]
    return a


def is_squarefree(coeffs) -> bool:
    return degree(poly_gcd(coeffs, derivative(coeffs))) == 0


def sturm_sequence(coeffs) -> list[list[Fraction]]:
    seq = [trim([Fraction(c) for c in coeffs]), trim([Fraction(c) for c in derivative(coeffs)])]
    while seq[-1] and degree(seq[-1]) > 0:
        r = _divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-x for x in r])
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(coeffs, lo=None, hi=None) -> int:
    """Number of distinct real roots in (lo, hi]; ``None`` means -oo / +oo."""
    seq = sturm_sequence(coeffs)

    def at(x, end):
        if x is None:
            # sign at +-infinity is the sign of the leading term
            return [(p[-1] if end > 0 or degree(p) % 2 == 0 else -p[-1]) for p in seq]
        return [evaluate(p, Fraction(x)) for p in seq]

    return _sign_changes(at(lo, -1)) - _sign_changes(at(hi, +1))


def real_root_count(coeffs) -> int:
    if not is_squarefree(coeffs):
        raise NotSquarefree(f"gcd(f, f') is nonconstant for {poly_str(coeffs)}")
    return sturm_count(coeffs)


def _det(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def resultant(f, g) -> Fraction:
    """Res(f, g) as the determinant of the Sylvester matrix."""
    f, g = trim(f), trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return Fraction(0)
    if n == 0:
        return Fraction(g[0]) ** m
    if m == 0:
        return Fraction(f[0]) ** n
    size = m + n
    rows = []
    fh, gh = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    return _det(rows)


def mul_mod(a, b, f) -> list[int]:
    """(a * b) mod f in Z[x]/(f) for monic f; coordinates in the power basis."""
    d = len(f) - 1
    prod = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d + 1):
                prod[k - d + i] -= c * f[i]
    out = prod[:d] + [0] * max(0, d - len(prod))
    return [int(x) for x in out[:d]]


def pow_mod(a, e: int, f) -> list[int]:
    d = len(f) - 1
    result = [1] + [0] * (d - 1)
    base = list(a) + [0] * (d - len(a))
    while e > 0:
        if e & 1:
            result = mul_mod(result, base, f)
        base = mul_mod(base, base, f)
        e >>= 1
    return result


def discriminant(coeffs) -> int:
    return int(sympy.discriminant(sympy.Poly(list(reversed(coeffs)), X)))


def is_irreducible(coeffs) -> bool:
    return sympy.Poly(list(reversed(coeffs)), X).is_irreducible


def index_may_be_nontrivial(coeffs) -> list[int]:
    """Primes p at which Z[theta] could fail to be p-maximal (Dedekind criterion)."""
    disc = discriminant(coeffs)
    bad = []
    f = sympy.Poly(list(reversed(coeffs)), X)
    for p, e in sympy.factorint(abs(disc)).items():
        if e < 2:
            continue
        _, factors = sympy.factor_list(f.as_expr(), X, modulus=p)
        G = sympy.Integer(1)
        H = sympy.Integer(1)
        for g, mult in factors:
            G *= g
            H *= g ** (mult - 1)
        F = sympy.Poly(sympy.expand(G * H) - f.as_expr(), X)
        if not F.is_zero:
            assert all(int(c) % p == 0 for c in F.all_coeffs())
            F = sympy.Poly([int(c) // p for c in F.all_coeffs()], X)
        common = sympy.gcd(sympy.Poly(F.as_expr(), X, modulus=p), sympy.Poly(G, X, modulus=p))
        common = sympy.gcd(common, sympy.Poly(H, X, modulus=p))
        if not F.is_zero and common.degree() > 0 or F.is_zero and sympy.Poly(H, X).degree() > 0:
            bad.append(p)
    return bad
