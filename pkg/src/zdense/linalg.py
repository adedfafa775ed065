"""Small exact linear-algebra kernels over Q and F_p."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def rref_rational(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def rank_rational(rows: Sequence[Sequence]) -> int:
    return len(rref_rational(rows)[1])


def rank_gaussian_rational(vectors: Sequence[Sequence[tuple]]) -> int:
    """Complex rank of vectors with Gaussian-rational entries (re, im).

    Computed as half the rational rank of {v, i*v} in doubled real coordinates.
    """
    doubled = []
    for v in vectors:
        re = [Fraction(a) for a, _ in v]
        im = [Fraction(b) for _, b in v]
        doubled.append(re + im)
        doubled.append([-b for b in im] + re)
    rk = rank_rational(doubled)
    assert rk % 2 == 0
    return rk // 2


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    A = [[int(x) % p for x in row] for row in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x in F_p^ncols : A x = 0}."""
    R, pivots = rref_mod_p(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = (-row[f]) % p
        basis.append(x)
    return basis


def numeric_rank(M, rtol: float = 1e-9) -> int:
    """epsilon-rank of a complex matrix via singular values."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * max(1.0, s[0])))
